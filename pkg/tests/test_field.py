from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import Q, field_of
from orthinv.errors import BadPrime, DivisionByZero, NonTame, NotSubfield, ZeroInput
from orthinv.field import (Ram, TowerSpec, Unram, build_field, norm, norm_and_trace,
                           norm_image_in_square_classes, squares_from_below, vp, y_invariant)


def test_build_examples():
    F = Q(5)
    assert (F.e, F.f, F.n) == (1, 1, 1)
    K = field_of(5, Unram(2))
    assert (K.e, K.f) == (1, 2) and K.residue_field.q == 25
    E = field_of(3, Unram(2), Ram(2))
    assert (E.e, E.f, E.n) == (2, 2, 4)


def test_build_errors():
    with pytest.raises(BadPrime):
        build_field(TowerSpec(2))
    with pytest.raises(BadPrime):
        build_field(TowerSpec(9, (Unram(2),)))
    with pytest.raises(NonTame):
        build_field(TowerSpec(3, (Ram(3),)))
    with pytest.raises(ValueError):
        TowerSpec(5, (), precision=4)


def test_build_is_deterministic():
    a = build_field(TowerSpec(7, (Unram(3),)))
    b = build_field(TowerSpec(7, (Unram(3),)))
    assert a.residue_poly == b.residue_poly
    assert a.alg.layers == b.alg.layers


def test_ring_examples():
    F = Q(5)
    p = F.element(5)
    assert (p * p).valuation == 2 and (p * p).unit_part() == F.one
    s = F.one + p
    assert s.valuation == 0 and s.unit_part() == F.element(6)
    E = field_of(5, Ram(2))
    pi = E.uniformizer
    assert pi * pi == E.element(5)
    assert pi.inverse().valuation == Fraction(-1, 2)
    with pytest.raises(DivisionByZero):
        E.zero.inverse()


def test_valuation_normalization():
    E = field_of(7, Unram(2), Ram(3))
    assert E.uniformizer.valuation == Fraction(1, 3)
    assert E.element(7).valuation == 1
    assert E.residue_size == 49


def test_square_examples():
    F = Q(5)
    assert F.element(4).is_square()
    assert not F.element(2).is_square()
    assert not F.element(5).is_square()
    with pytest.raises(ZeroInput):
        F.zero.is_square()


def test_square_class_groups():
    assert [int(r.c[0]) for r in Q(5).square_classes.reps] == [1, 2, 5, 10]
    assert [int(r.c[0]) for r in Q(3).square_classes.reps] == [1, 2, 3, 6]
    F = Q(5)
    assert F.class_of(F.element(20)) == F.class_of(F.element(5))


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_reps_pairwise_inequivalent(p):
    F = Q(p)
    reps = F.square_classes.reps
    for i in range(4):
        for j in range(4):
            assert (reps[i] / reps[j]).is_square() == (i == j)


towers = st.sampled_from([
    TowerSpec(3), TowerSpec(5), TowerSpec(5, (Unram(2),)), TowerSpec(7, (Ram(2, 1),)),
    TowerSpec(3, (Unram(2), Ram(2))), TowerSpec(5, (Ram(3),)),
])


@settings(max_examples=60, deadline=None)
@given(towers, st.integers(0, 10**6), st.integers(0, 10**6))
def test_square_class_properties(spec, s1, s2):
    import random
    E = build_field(spec)
    rng = random.Random(s1 * 7919 + s2)
    x, y = E.random_element(rng), E.random_element(rng)
    assert (x * x * y).is_square() == y.is_square()
    assert (x * y).is_square() == (E.class_of(x) == E.class_of(y))
    assert E.class_of(x * y) == E.class_of(x) ^ E.class_of(y)
    assert (x * y).valuation == x.valuation + y.valuation
    if not (x + y).is_zero():
        assert (x + y).valuation >= min(x.valuation, y.valuation)


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-1000, max_value=1000).filter(lambda q: q != 0), st.sampled_from([3, 5, 7]))
def test_rational_valuation(q, p):
    assert Q(p).element(q).valuation == vp(q, p)


def test_norm_trace_examples():
    E = field_of(5, Ram(2))
    n, t = norm_and_trace(E, 0, E.uniformizer)
    assert n == E.prefix(0).element(-5) and t.is_zero()
    K = field_of(7, Unram(3))
    x = K.element(3)
    assert norm(K, 0, x) == K.prefix(0).element(27)
    with pytest.raises(NotSubfield):
        K.restrict(K.basis_element(1), 0)


def test_norm_is_multiplicative(rng):
    E = field_of(5, Unram(2), Ram(2))
    for _ in range(10):
        a, b = E.random_element(rng), E.random_element(rng)
        assert norm(E, 0, a * b) == norm(E, 0, a) * norm(E, 0, b)
        assert norm(E, 1, a * b) == norm(E, 1, a) * norm(E, 1, b)


@pytest.mark.parametrize("spec,y", [
    (TowerSpec(5, (Unram(3),)), 1),
    (TowerSpec(7, (Ram(3),)), 1),
    (TowerSpec(5, (Unram(2),)), 2),
    (TowerSpec(5, (Unram(2), Ram(2))), 4),
    (TowerSpec(3, (Ram(2), Unram(2))), 4),
    (TowerSpec(7, (Ram(2), Unram(2))), 4),
])
def test_y_invariant(spec, y):
    E = build_field(spec)
    assert y_invariant(E) == y
    assert len(squares_from_below(E)) == y
    assert 4 // len(norm_image_in_square_classes(E)) == y


def test_unramified_quadratic_norm_image():
    E = field_of(5, Unram(2))
    image = norm_image_in_square_classes(E)
    # units are norms, the uniformizer is not: image = {1, u}
    assert image == frozenset({0, 1})


def test_even_degree_has_quadratic_subfield(catalog_tower):
    E = build_field(catalog_tower.spec)
    if E.n % 2 == 0:
        assert y_invariant(E) >= 2
    else:
        assert y_invariant(E) == 1


def test_totally_ramified_uniformizer_pair():
    for p, e in [(5, 2), (7, 3), (5, 4), (7, 6)]:
        E = field_of(p, Ram(e))
        assert E.uniformizer ** e == E.element(p)


def test_relative_y_invariant():
    E = field_of(5, Unram(2), Ram(2))
    assert y_invariant(E, 1) == 2


def test_sqrt_is_certified():
    E = field_of(5, Unram(2))
    x = E.element(11)
    r = E.sqrt(x, 12)
    assert ((r * r - x).valuation) >= 12
    with pytest.raises(ValueError):
        E.sqrt(E.uniformizer)


def test_referential_transparency():
    E = field_of(7, Unram(2), Ram(3))
    a = E.basis_element(1) + E.uniformizer
    assert (a * a).c == (a * a).c
    assert y_invariant(E) == y_invariant(E)
