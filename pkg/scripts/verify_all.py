"""Run every verification report over a list of systems and summarise failures.

    python scripts/verify_all.py                 # default acceptance list
    python scripts/verify_all.py 2,2,4 1,3,3
"""

import argparse

from affine_twist import cli, ktheory

DEFAULT = ["1,1,1", "1,1,2", "1,2,2", "2,2,2", "2,2,3", "2,3,3", "2,3,4", "2,3,5"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("triples", nargs="*", default=DEFAULT)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--all-conventions", action="store_true", help="also try the two-relation quivers")
    args = ap.parse_args()

    for text in args.triples:
        sys = cli.system_for(cli.parse_triple(text))
        reports = cli.run_verification(sys, args.seed)
        if args.all_conventions:
            reports += [ktheory.verify_quiver_euler(sys, c) for c in ktheory.CONVENTIONS[1:]]
        total = sum(len(r.checks) for r in reports)
        failed = [(r.title, c.name) for r in reports for c in r.failures()]
        print(f"{sys}: {total - len(failed)}/{total} checks pass")
        for title, name in failed:
            print(f"    FAIL {title}: {name}")


if __name__ == "__main__":
    main()
