"""Distinction table for every tower in the catalog.

    python3 scripts/run_catalog.py [--phi-minus-one -1] [--degree 4]
"""
import argparse
import time

from orthinv.catalog import catalog
from orthinv.multiplicity import CharacterFlag, analyze, distinction_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--phi-minus-one", type=int, choices=(1, -1), default=1)
    ap.add_argument("--degree", type=int)
    ap.add_argument("--prime", type=int)
    args = ap.parse_args()
    flag = CharacterFlag(args.phi_minus_one)

    print(f"{'tower':42} {'n':>2} {'e':>2} {'f':>2} {'y':>2} {'full':>5} {'SO':>4}  time")
    bad = 0
    for entry in catalog(args.degree, args.prime):
        t0 = time.perf_counter()
        rep = distinction_report(analyze(entry.spec), flag)
        dt = time.perf_counter() - t0
        mark = "" if rep.y == entry.expected_y else f"  expected y={entry.expected_y}"
        bad += bool(mark)
        print(f"{str(entry.spec):42} {rep.n:>2} {rep.e:>2} {rep.f:>2} {rep.y:>2} "
              f"{rep.sum_full:>5} {rep.sum_special:>4}  {dt:.2f}s{mark}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
