import pytest

from conftest import Q, field_of
from orthinv import linalg
from orthinv.embeddings import (anti_triangular_to_J, companion_embedding, companion_matrix,
                                composite_embedding, integral_jsym_embedding, is_nu_symmetric,
                                nu_symmetric_test, step_embedding, trace_form_gram)
from orthinv.errors import FieldMismatch, HypothesisFailed
from orthinv.field import Ram, Unram, build_field, norm
from orthinv.forms import SymMatrix


def test_companion_matrix_shape():
    F = Q(5)
    M = companion_matrix(F.element(5), 3, F)
    assert M[0][2] == F.element(5) and M[1][0] == F.one and M[2][1] == F.one
    assert linalg.det(M) == F.element(5)


def test_ramified_step_is_j_symmetric():
    E = field_of(7, Ram(3))
    emb = companion_embedding(E, 0)
    assert emb.j_symmetric and emb.is_integral()
    assert linalg.equal(emb.matrix_of(E.uniformizer), companion_matrix(E.prefix(0).element(7), 3, E.prefix(0)))


def test_unramified_trace_form_is_anti_triangular():
    K = field_of(5, Unram(3))
    G, _ = trace_form_gram(K, 0)
    F = K.prefix(0)
    for i in range(3):
        for j in range(3):
            if i + j < 2:
                assert G[i][j].is_zero()
            elif i + j == 2:
                assert G[i][j] == F.one


def test_anti_triangular_reduction_reaches_J():
    F = Q(7)
    G = [[F.element(x) for x in row] for row in ([0, 0, 1], [0, 1, 3], [1, 3, 5])]
    g = anti_triangular_to_J(G, F)
    assert linalg.equal(linalg.matmul(linalg.matmul(g, G), linalg.transpose(g)), linalg.antidiagonal(3, F))
    with pytest.raises(ValueError):
        anti_triangular_to_J([[F.one, F.zero], [F.zero, F.one]], F)


def test_catalog_embedding_certificates(catalog_tower, rng):
    E = build_field(catalog_tower.spec)
    emb = integral_jsym_embedding(E)
    assert emb.j_symmetric and emb.is_integral()
    for _ in range(5):
        a, b = E.random_element(rng), E.random_element(rng)
        assert linalg.equal(emb.matrix_of(a * b), linalg.matmul(emb.matrix_of(a), emb.matrix_of(b)))
        assert linalg.det(emb.matrix_of(a)) == norm(E, 0, a)
        assert emb.element_of(emb.vector_of(a)) == a


def test_relative_embedding_over_intermediate_field(rng):
    E = field_of(5, Unram(2), Ram(2))
    emb = integral_jsym_embedding(E, 1)
    assert emb.n == 2 and emb.j_symmetric
    x = E.random_element(rng)
    assert linalg.det(emb.matrix_of(x)) == norm(E, 1, x)


def test_composite_mismatch():
    A = step_embedding(field_of(5, Unram(2), Ram(2)), 1)
    B = integral_jsym_embedding(field_of(5, Ram(2)))
    with pytest.raises(FieldMismatch):
        composite_embedding(A, B)
    with pytest.raises(HypothesisFailed):
        companion_embedding(field_of(5, Unram(2)), 0)


def test_nu_symmetry_exactly_on_JT(rng):
    E = field_of(5, Unram(2), Ram(2))
    emb = integral_jsym_embedding(E)
    F = emb.F
    x = E.random_element(rng)
    nu = linalg.matmul(emb.J, emb.matrix_of(x))
    ok, t = nu_symmetric_test(emb, SymMatrix(F, nu))
    assert ok and t == x
    assert is_nu_symmetric(emb, nu)
    D = SymMatrix.diagonal(F, [1, 2, 1, 1])
    assert nu_symmetric_test(emb, D) == (False, None)
    assert not is_nu_symmetric(emb, D.matrix)
