"""Run the finite-field oracle over a grid of (q, n).

    python3 scripts/ff_sweep.py [--budget 10000000] [--max-n 3]

Cases beyond the budget are reported as incomplete instead of aborting.
"""
import argparse
import time

from orthinv.cli import oracle_command

GRID = [(3, 2), (5, 2), (7, 2), (9, 2), (11, 2), (3, 3), (5, 3), (3, 4), (7, 3), (9, 3)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", type=int)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    for q, n in GRID:
        if n > args.max_n:
            continue
        t0 = time.perf_counter()
        sec = oracle_command(q, n, args.budget)
        dt = time.perf_counter() - t0
        if not sec.get("complete"):
            print(f"q={q:<3} n={n}  incomplete ({sec.get('error')})")
            continue
        checks = sec["checks"]
        status = "ok" if all(checks.values()) else "FAIL " + ",".join(k for k, v in checks.items() if not v)
        print(f"q={q:<3} n={n}  {sec['mode']:<15} classes={sec['congruence_classes']} "
              f"orbits={sec['involution_orbits']} split={sec['split_t_orbits']}  {dt:6.2f}s  {status}")


if __name__ == "__main__":
    main()
