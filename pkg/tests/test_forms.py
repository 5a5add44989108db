import itertools

import pytest
from hypothesis import given, settings, strategies as st

from conftest import Q, field_of
from orthinv import linalg
from orthinv.errors import DimensionMismatch, NotSimilar, ZeroInput
from orthinv.field import Ram, Unram
from orthinv.finite import GF
from orthinv.forms import (SymMatrix, congruence_transform, diagonalize, form_invariants,
                           hilbert_symbol, hilbert_table, is_similar, similarity_class_census)
from orthinv.oracles import hilbert_bruteforce


@pytest.mark.parametrize("p", [3, 5, 7])
def test_hilbert_matches_bruteforce(p):
    F = Q(p)
    reps = [int(r.c[0]) for r in F.square_classes.reps]
    for i, j in itertools.product(range(4), repeat=2):
        assert hilbert_table(F)[i][j] == hilbert_bruteforce(reps[i], reps[j], p)


def test_hilbert_known_values():
    F = Q(5)
    assert hilbert_symbol(F.element(2), F.element(5)) == -1
    assert hilbert_symbol(F.element(5), F.element(5)) == 1  # -1 is a square mod 5
    G = Q(3)
    assert hilbert_symbol(G.element(3), G.element(3)) == -1  # -1 is not a square mod 3
    with pytest.raises(ZeroInput):
        hilbert_symbol(F.zero, F.one)


@pytest.mark.parametrize("field", [Q(3), field_of(5, Unram(2)), field_of(7, Ram(2, 1))], ids=str)
def test_hilbert_properties_in_towers(field):
    tab = hilbert_table(field)
    for i, j, k in itertools.product(range(4), repeat=3):
        assert tab[i][j] == tab[j][i]
        assert tab[i ^ j][k] == tab[i][k] * tab[j][k]
    for a in field.square_classes.reps:
        assert hilbert_symbol(a, -a) == 1
        if not (field.one - a).is_zero():
            assert hilbert_symbol(a, field.one - a) == 1
    # nondegenerate: every nontrivial class pairs to -1 with something
    assert all(any(tab[i][j] == -1 for j in range(4)) for i in range(1, 4))


def test_diagonalize_is_exact(rng):
    F = field_of(5, Unram(2))
    for _ in range(10):
        n = rng.choice([2, 3])
        rows = [[F.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = F.random_element(rng, nonzero=False)
        if linalg.det(rows).is_zero():
            continue
        d, g = diagonalize(SymMatrix(F, rows))
        D = linalg.congruent(g, rows)
        assert all((D[i][j] - (d[i] if i == j else F.zero)).is_zero() for i in range(n) for j in range(n))


def test_diagonalize_handles_zero_diagonal():
    F = Q(7)
    S = SymMatrix(F, [[0, 1], [1, 0]])
    d, g = diagonalize(S)
    assert all(not x.is_zero() for x in d)
    assert form_invariants(S).disc_class == F.class_of(F.element(-1))


@pytest.mark.parametrize("p", [3, 5, 7, 11])
@pytest.mark.parametrize("n,count", [(1, 4), (2, 7), (3, 8), (4, 8), (5, 8)])
def test_census_sizes(p, n, count):
    census = similarity_class_census(Q(p), n)
    assert len(census) == count
    keys = {(c.disc_class, c.hasse) for c in census}
    assert len(keys) == count
    for c in census:
        inv = form_invariants(c.rep)
        assert (inv.disc_class, inv.hasse) == (c.disc_class, c.hasse)


def test_census_residue_mode():
    F = GF.of_order(9)
    census = similarity_class_census(F, 3)
    assert len(census) == 2
    assert not is_similar(census[0].rep, census[1].rep)


def test_n2_missing_class():
    # a binary form of discriminant -1 is hyperbolic, so its Hasse invariant is pinned
    F = Q(5)
    census = similarity_class_census(F, 2)
    minus_one = F.class_of(F.element(-1))
    assert sum(1 for c in census if c.disc_class == minus_one) == 1


def test_hasse_relation():
    F = Q(3)
    for c in similarity_class_census(F, 3):
        inv = form_invariants(c.rep)
        tab = hilbert_table(F)
        assert inv.hasse == inv.hasse0 * tab[F.class_of(F.element(-1))][inv.disc_class]


def test_is_similar_errors():
    F = Q(5)
    with pytest.raises(DimensionMismatch):
        is_similar(SymMatrix.diagonal(F, [1, 1]), SymMatrix.diagonal(F, [1, 1, 1]))


def test_congruence_transform_examples():
    F = Q(5)
    S = SymMatrix.diagonal(F, [1, 1])
    T = SymMatrix(F, [[0, 1], [1, 0]])
    g = congruence_transform(S, T)
    residual = linalg.matsub(linalg.congruent(g, S.matrix), T.matrix)
    assert all(x.is_zero() or x.valuation >= F.precision / 2 for r in residual for x in r)
    with pytest.raises(NotSimilar):
        congruence_transform(S, SymMatrix.diagonal(F, [1, 2]))


@pytest.mark.parametrize("field", [Q(3), Q(5), field_of(3, Unram(2))], ids=str)
def test_congruence_transform_between_census_classes(field, rng):
    for n in (2, 3):
        for c in similarity_class_census(field, n):
            g0 = [[field.element(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
            if linalg.det(g0).is_zero():
                continue
            T = c.rep.congruent(g0)
            g = congruence_transform(c.rep, T, seed=rng.randint(0, 99))
            residual = linalg.matsub(linalg.congruent(g, c.rep.matrix), T.matrix)
            floor = min(x.valuation for r in T.rows for x in r if not x.is_zero())
            assert all(x.is_zero() or x.valuation >= floor + field.precision / 2 for r in residual for x in r)


small = st.integers(-12, 12)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.lists(small, min_size=6, max_size=6), st.lists(small, min_size=9, max_size=9))
def test_invariants_are_congruence_invariant(p, entries, gentries):
    F = Q(p)
    a, b, c, d, e, f = entries
    rows = [[a, b, c], [b, d, e], [c, e, f]]
    g = [gentries[0:3], gentries[3:6], gentries[6:9]]
    M = [[F.element(x) for x in r] for r in rows]
    G = [[F.element(x) for x in r] for r in g]
    if linalg.det(M).is_zero() or linalg.det(G).is_zero():
        return
    S = SymMatrix(F, M)
    assert form_invariants(S) == form_invariants(S.congruent(G))
