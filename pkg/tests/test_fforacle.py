import numpy as np
import pytest

from conftest import Q
from orthinv.errors import BudgetExceeded
from orthinv.fforacle import (FFContext, ff_congruence_census, ff_involution_orbits,
                              ff_similitude_check, ff_split_t_orbits, finite_jsym_embedding)
from orthinv.finite import GF
from orthinv.forms import similarity_class_census


@pytest.mark.parametrize("q,n", [(3, 2), (5, 2), (3, 3), (7, 2), (9, 2)])
def test_census_and_orbits(q, n):
    ctx = FFContext(q, n)
    census = ff_congruence_census(ctx)
    assert census.classes == 2
    assert sum(census.orbit_sizes) == census.total
    assert sorted(census.disc_square) == [False, True]
    assert ff_involution_orbits(ctx) == (1 if n % 2 else 2)


def test_orbit_sizes_match_orthogonal_group_orders():
    # |GL_2(F_q)| / |O^+_2| and / |O^-_2| with |O^±_2| = 2(q ∓ 1)
    q = 5
    ctx = FFContext(q, 2)
    order = (q * q - 1) * (q * q - q)
    assert sorted(ff_congruence_census(ctx).orbit_sizes) == sorted([order // (2 * (q - 1)), order // (2 * (q + 1))])


def test_symmetric_count():
    ctx = FFContext(3, 3)
    # invertible symmetric 3x3 over F_q: q^6 - (singular count); known value 468
    assert ff_congruence_census(ctx).total == 468


def test_finite_embedding_is_j_symmetric():
    F = GF.of_order(5)
    emb = finite_jsym_embedding(F, 3)
    K = emb.K
    gen = K.primitive_element
    M = emb.matrix_of(gen)
    n = 3
    for i in range(n):
        for j in range(n):
            assert M[i][j] == M[n - 1 - j][n - 1 - i]
    a, b = gen, gen ** 5
    from orthinv import linalg
    assert linalg.equal(emb.matrix_of(a * b), linalg.matmul(emb.matrix_of(a), emb.matrix_of(b)))


@pytest.mark.parametrize("q,n", [(3, 2), (3, 3), (5, 2)])
def test_split_t_orbits_unique(q, n):
    ctx = FFContext(q, n)
    split = ff_split_t_orbits(ctx)
    parity = 1 if n % 2 else 2
    assert len(split.orbits) == parity
    assert sorted(split.per_g_orbit.values()) == [1] * parity
    assert split.norm_surjective
    assert all(o.in_JT for o in split.orbits)


@pytest.mark.parametrize("q,n", [(3, 2), (3, 3), (5, 2)])
def test_similitude(q, n):
    ctx = FFContext(q, n)
    for o in ff_split_t_orbits(ctx).orbits:
        s = ff_similitude_check(ctx, o.nu)
        assert s.mT == 1
        assert s.mZ == (1 if n % 2 else 2)
        squares = set(ctx.squares)
        assert set(s.mu_torus) == (squares if n % 2 else set(ctx.units))
        w = s.witness
        assert w["product_order"] == w["similitude_order"]
        assert w.get("scanned_similitude_order", w["similitude_order"]) == w["similitude_order"]


def test_budget_modes(monkeypatch):
    assert FFContext(3, 2).group_scan_feasible
    assert not FFContext(3, 4).group_scan_feasible
    with pytest.raises(BudgetExceeded) as info:
        FFContext(9, 3, budget=1000).symmetric_space
    assert info.value.partial["points"] == 9 ** 6
    monkeypatch.setenv("ORTHINV_BUDGET", "500")
    with pytest.raises(BudgetExceeded):
        FFContext(5, 3).symmetric_space


def test_matches_residue_census():
    """Unit-diagonal p-adic census classes reduce to the finite classes
    predicted by the discriminant."""
    q = 5
    ctx = FFContext(q, 2)
    F = Q(q)
    for c in similarity_class_census(F, 2):
        d = [x for i, row in enumerate(c.rep.rows) for j, x in enumerate(row) if i == j]
        if any(x.valuation != 0 for x in d):
            continue
        S = np.diag([int(x.c[0]) % q for x in d])
        square_disc = bool(ctx.square[int(ctx.det(S))])
        assert square_disc == (c.disc_class & 1 == 0)
        reps = ff_congruence_census(ctx).representatives
        want = next(r for r in reps if bool(ctx.square[int(ctx.det(r))]) == square_disc)
        assert ctx.orbit_of(S) == ctx.orbit_of(want)
