"""Compare orbit counts against the closed degree formula, with timings.

    python scripts/count_table.py --amax 3 --cap 50000
"""

import argparse
import time

from affine_twist import cli, grs, hurwitz


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--amax", type=int, default=3)
    ap.add_argument("--cap", type=int, default=50000, help="skip systems whose formula exceeds this")
    ap.add_argument("--no-validate", action="store_true", help="skip per-state invariant checks")
    args = ap.parse_args()

    print(f"{'A':<10}{'mu':>4}{'formula':>10}{'ecount':>10}{'secs':>8}  match")
    for triple in cli.admissible_triples(args.amax):
        sys = grs.build_system(*triple)
        formula = hurwitz.formula_deg_ll(sys)
        if formula > args.cap:
            print(f"{str(triple):<10}{sys.mu:>4}{formula:>10}{'-':>10}{'-':>8}  skipped")
            continue
        start = time.perf_counter()
        res = hurwitz.enumerate_orbit(sys, validate=not args.no_validate)
        secs = time.perf_counter() - start
        print(f"{str(triple):<10}{sys.mu:>4}{formula:>10}{res.e_count:>10}{secs:>8.2f}  {res.match}")


if __name__ == "__main__":
    main()
