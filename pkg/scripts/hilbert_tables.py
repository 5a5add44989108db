"""Print Hilbert symbol tables on square-class representatives and compare
them with the brute-force count over Z/p^3 for base fields."""
import sys

from orthinv.field import Ram, TowerSpec, Unram, build_field
from orthinv.forms import hilbert_table
from orthinv.oracles import hilbert_bruteforce

FIELDS = [TowerSpec(3), TowerSpec(5), TowerSpec(7), TowerSpec(11),
          TowerSpec(5, (Unram(2),)), TowerSpec(7, (Ram(2, 1),)), TowerSpec(3, (Unram(2), Ram(2)))]


def show(spec):
    F = build_field(spec)
    tab = hilbert_table(F)
    names = ["1", "u", "pi", "u*pi"]
    print(spec)
    print("        " + " ".join(f"{s:>5}" for s in names))
    for name, row in zip(names, tab):
        print(f"  {name:>5} " + " ".join(f"{v:>5}" for v in row))
    if spec.steps:
        return True
    reps = [int(r.c[0]) for r in F.square_classes.reps]
    agree = all(tab[i][j] == hilbert_bruteforce(reps[i], reps[j], spec.p) for i in range(4) for j in range(4))
    print(f"  brute force over Z/{spec.p}^3: {'agrees' if agree else 'DISAGREES'}")
    return agree


if __name__ == "__main__":
    ok = all([show(s) for s in FIELDS])
    sys.exit(0 if ok else 1)
