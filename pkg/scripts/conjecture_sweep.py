"""Compare optimal routing and optimal tree routing costs on every small outerplanar instance.

    python3 scripts/conjecture_sweep.py --max-vertices 6 --demand-max 2 --k-max 6 --costs 10
"""
import argparse
import time

from pyramidal.cli import emit_report
from pyramidal.solvers import check_conjecture


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=6)
    ap.add_argument("--demand-max", type=int, default=2)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--costs", type=int, default=10)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--no-extremal", action="store_true", help="skip the extreme-point check")
    ap.add_argument("--allow-non-outerplanar", action="store_true",
                    help="also sweep K4, K2,3 and the 4-wheel; gaps there are notes, not violations")
    args = ap.parse_args()
    t = time.time()
    rep = check_conjecture(args.max_vertices, args.demand_max, args.costs, args.seed, k_max=args.k_max,
                           check_extremal=not args.no_extremal,
                           allow_non_outerplanar=args.allow_non_outerplanar)
    print(emit_report(rep), end="")
    for edges, dem, msg in rep.notes:
        print(f"note (non-outerplanar): {edges} {dem}: {msg}")
    print(f"elapsed {time.time() - t:.1f}s")


if __name__ == "__main__":
    main()
