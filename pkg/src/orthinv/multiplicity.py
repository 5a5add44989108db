"""Dimensions of spaces of invariant linear forms, summed over orbits.

dim Hom_{G_theta}(pi, 1) is the sum of m_T over the split T-orbits lying in
the G-orbit of theta (zero when phi(-1) = -1).  The pure-inner-form sum runs
over all similarity classes of symmetric matrices; each class contributes
the dimension attached to its involution orbit.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .embeddings import integral_jsym_embedding
from .field import build_field, y_invariant
from .forms import similarity_class_census
from .involutions import (NONQS, QSDISC, SPLIT, GOrbitLabel, g_orbit_label,
                          j_invariants, split_t_orbit_census)


@dataclass(frozen=True)
class CharacterFlag:
    phi_minus_one: int = 1

    def __post_init__(self):
        if self.phi_minus_one not in (1, -1):
            raise ValueError("phi(-1) must be +1 or -1")


PLUS = CharacterFlag(1)
MINUS = CharacterFlag(-1)


@dataclass
class DistinctionContext:
    E: object
    base: int
    F: object
    emb: object
    y: int
    census: list


@lru_cache(maxsize=None)
def analyze(spec, base=0):
    """Embedding, y-invariant and split T-orbit census of a tower spec."""
    E = build_field(spec)
    emb = integral_jsym_embedding(E, base)
    census = split_t_orbit_census(E, base, emb)
    return DistinctionContext(E, base, E.prefix(base), emb, y_invariant(E, base), census)


def dim_hom(ctx, label, flag=PLUS):
    if flag.phi_minus_one == -1:
        return 0
    return sum(c.mT for c in ctx.census if c.g_label == label)


def distinguished(ctx, label, flag=PLUS):
    return dim_hom(ctx, label, flag) > 0


@dataclass
class InventoryEntry:
    label: GOrbitLabel
    weight: int
    classes: list = field(default_factory=list)


def g_orbit_inventory(n, F=None):
    """Involution G-orbits with the number of similarity classes of symmetric
    matrices projecting to each (the S-orbit weight)."""
    F = F if F is not None else build_field_default()
    entries = {}
    for cls in similarity_class_census(F, n):
        label = g_orbit_label(cls.rep)
        entries.setdefault(label, InventoryEntry(label, 0)).classes.append(cls)
    for e in entries.values():
        e.weight = len(e.classes)
    return sorted(entries.values(), key=lambda e: e.label.sort_key())


def build_field_default():
    from .field import TowerSpec
    return build_field(TowerSpec(3))


def possible_labels(n):
    if n % 2:
        return [GOrbitLabel(SPLIT, n), GOrbitLabel(NONQS, n)]
    labels = [GOrbitLabel(SPLIT, n)]
    if n > 2:
        labels.append(GOrbitLabel(NONQS, n))
    return labels + [GOrbitLabel(QSDISC, n, d) for d in (1, 2, 3)]


def pure_inner_sum(ctx, flag=PLUS):
    """Sum of dim_hom over all similarity classes of symmetric matrices."""
    return sum(e.weight * dim_hom(ctx, e.label, flag) for e in g_orbit_inventory(ctx.emb.n, ctx.F))


def special_orthogonal_sum(ctx, flag=PLUS):
    """Sum over the similarity classes sharing the discriminant of J."""
    n = ctx.emb.n
    jdisc = j_invariants(ctx.F, n).disc_class
    total = 0
    for e in g_orbit_inventory(n, ctx.F):
        same = sum(1 for c in e.classes if c.disc_class == jdisc)
        total += same * dim_hom(ctx, e.label, flag)
    return total


@dataclass
class OrbitRow:
    label: GOrbitLabel
    weight: int
    census: list
    mT: list
    dim: int


@dataclass
class DistinctionReport:
    n: int
    e: int
    f: int
    y: int
    rows: list
    sum_full: int
    sum_special: int


def distinction_report(ctx, flag=PLUS):
    rows = []
    for e in g_orbit_inventory(ctx.emb.n, ctx.F):
        reps = [c for c in ctx.census if c.g_label == e.label]
        rows.append(OrbitRow(e.label, e.weight, reps, [c.mT for c in reps], dim_hom(ctx, e.label, flag)))
    rel_e = ctx.E.e // ctx.F.e
    rel_f = ctx.E.f // ctx.F.f
    return DistinctionReport(ctx.emb.n, rel_e, rel_f, ctx.y, rows,
                             pure_inner_sum(ctx, flag), special_orthogonal_sum(ctx, flag))
