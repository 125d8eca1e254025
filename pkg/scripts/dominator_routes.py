"""Run the constructive dominator on every routing of small outerplanar instances.

Prints, per vertex count, the number of instances and routings and how
often each construction step fired.  A nonzero ``global-lp`` count means
the constructive steps fell back to the exact LP over all tree routings.

    python3 scripts/dominator_routes.py --max-vertices 5 --demand-max 1
"""
import argparse
import time
from collections import Counter

from pyramidal.dominate import Dominator
from pyramidal.routing import Instance, verify_certificate
from pyramidal.solvers import demand_vectors, enumerate_routings, outerplanar_family


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=5)
    ap.add_argument("--demand-max", type=int, default=1)
    ap.add_argument("--k-max", type=int, default=None)
    ap.add_argument("--cap", type=int, default=20_000)
    ap.add_argument("--all-roots", action="store_true")
    args = ap.parse_args()
    t = time.time()
    log, routings, instances, failures = Counter(), 0, 0, 0
    for n in range(3, args.max_vertices + 1):
        for g in outerplanar_family(n):
            for root in (g.order if args.all_roots else g.order[:1]):
                for dem in demand_vectors(n, args.demand_max, args.k_max, root):
                    inst = Instance(g, root, dem)
                    dom = Dominator()
                    for rt in enumerate_routings(inst, cap=args.cap).routings:
                        routings += 1
                        if verify_certificate(inst, rt, dom.dominate(inst, rt)):
                            failures += 1
                    log += dom.log
                    instances += 1
        steps = " ".join(f"{k}={v}" for k, v in sorted(log.items()))
        print(f"n<={n}: {instances} instances, {routings} routings, {failures} failures, "
              f"global-lp={log.get('global-lp', 0)} | {steps} | {time.time() - t:.1f}s", flush=True)


if __name__ == "__main__":
    main()
