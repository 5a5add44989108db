import pytest

from conftest import Q, field_of
from orthinv import linalg
from orthinv.errors import HypothesisFailed, UnsupportedOrbit
from orthinv.field import Ram, Unram, build_field, y_invariant
from orthinv.forms import SymMatrix, similarity_class_census
from orthinv.involutions import (NONQS, QSDISC, SPLIT, GOrbitLabel, Involution, g_orbit_label,
                                 is_theta_split, mK0_check, similitude_image,
                                 split_t_orbit_census)
from orthinv.embeddings import integral_jsym_embedding


def test_label_validation():
    with pytest.raises(ValueError):
        GOrbitLabel(NONQS, 2)
    with pytest.raises(ValueError):
        GOrbitLabel(QSDISC, 3, 1)
    assert str(GOrbitLabel(QSDISC, 4, 2)) == "QuasiSplitDisc(pi)"


def test_J_is_split():
    for n in (2, 3, 4, 5):
        F = Q(5)
        assert g_orbit_label(SymMatrix.antidiagonal(F, n)).tag == SPLIT


def test_scaling_preserves_label():
    F = Q(3)
    for n in (2, 3, 4):
        for c in similarity_class_census(F, n):
            base = g_orbit_label(c.rep)
            for z in F.square_classes.reps:
                assert g_orbit_label(c.rep.scaled(z)) == base


def test_involution_identity():
    F = Q(7)
    nu = SymMatrix(F, [[1, 2], [2, 3]])
    theta = Involution(nu)
    g = [[F.element(x) for x in r] for r in ([1, 1], [0, 2])]
    # theta is an involution
    assert linalg.equal(theta.apply(theta.apply(g)), g)
    assert Involution(nu.scaled(F.element(3))) == theta


def test_census_is_theta_split(catalog_tower, rng):
    E = build_field(catalog_tower.spec)
    emb = integral_jsym_embedding(E)
    sample = [E.random_element(rng) for _ in range(3)]
    census = split_t_orbit_census(E, 0, emb)
    assert len(census) == y_invariant(E)
    for c in census:
        assert is_theta_split(c.theta, emb, sample)


def test_census_labels_by_y(catalog_tower):
    E = build_field(catalog_tower.spec)
    census = split_t_orbit_census(E)
    tags = sorted(c.g_label.tag for c in census)
    y = catalog_tower.expected_y
    if y == 1:
        assert tags == [SPLIT]
    elif y == 2:
        assert tags.count(SPLIT) == 1 and len(tags) == 2 and NONQS not in tags
    else:
        assert tags == [NONQS, SPLIT, SPLIT, SPLIT]


def test_similitude_image_rejects_foreign_orbits():
    E = field_of(5, Ram(2))
    census = split_t_orbit_census(E)
    labels = {c.g_label for c in census}
    F = E.prefix(0)
    foreign = next(c.rep for c in similarity_class_census(F, 2) if g_orbit_label(c.rep) not in labels)
    with pytest.raises(UnsupportedOrbit):
        similitude_image(Involution(foreign), labels)


def test_mK0():
    assert mK0_check(field_of(3, Unram(2))) == 2
    assert mK0_check(field_of(5, Unram(4))) == 2
    assert mK0_check(field_of(3, Ram(2), Unram(3))) == 2
    with pytest.raises(HypothesisFailed):
        mK0_check(field_of(5, Unram(2), Ram(2)))
