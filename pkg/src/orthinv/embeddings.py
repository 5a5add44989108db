"""J-symmetric embeddings of tower fields into matrix algebras.

An embedding is determined by an ordered basis of E over a prefix field F;
matrix_of(x) is the matrix of multiplication by x in that basis (columns are
coordinates of x·b_k).  The basis is J-symmetric when every such matrix is
symmetric about the anti-diagonal.
"""

from . import linalg
from .errors import FieldMismatch, HypothesisFailed, Reducible
from .field import Ram, Unram


class Embedding:
    def __init__(self, E, base, basis):
        self.E = E
        self.base = base
        self.F = E.prefix(base)
        self.n = E.n // self.F.n
        self.basis = [E.element(b) for b in basis]
        if len(self.basis) != self.n:
            raise ValueError(f"expected {self.n} basis elements, got {len(self.basis)}")
        P = linalg.transpose([E.relative_coords(b, base) for b in self.basis])
        self.coords_matrix = P
        self._Pinv = linalg.inverse(P, self.F)
        self._J = linalg.antidiagonal(self.n, self.F)
        self.basis_images = [self.matrix_of(b) for b in self.basis]
        self.j_symmetric = all(self._is_j_symmetric(M) for M in self.basis_images)

    def vector_of(self, x):
        return linalg.matvec(self._Pinv, self.E.relative_coords(self.E.element(x), self.base))

    def matrix_of(self, x):
        x = self.E.element(x)
        return linalg.transpose([self.vector_of(x * b) for b in self.basis])

    def element_of(self, vec):
        """Inverse of vector_of."""
        acc = self.E.zero
        for c, b in zip(vec, self.basis):
            acc = acc + self.E.element(c) * b
        return acc

    @property
    def J(self):
        return self._J

    def _is_j_symmetric(self, M):
        J = self._J
        return linalg.equal(linalg.matmul(linalg.matmul(J, linalg.transpose(M)), J), M)

    def is_integral(self):
        """Basis is an O_F-basis of O_E: change of basis to the monomial
        integral basis lies in GL_n(O_F)."""
        P = self.coords_matrix
        if any(x.valuation < 0 for row in P for x in row):
            return False
        return linalg.det(P).valuation == 0

    def __repr__(self):
        return f"Embedding({self.E} over {self.F}, n={self.n}, j_symmetric={self.j_symmetric})"


def _layer_field(E, base):
    K = E.prefix(base + 1)
    return K, E.spec.steps[base]


def companion_matrix(tau, n, field):
    """Image of a root of x^n - tau: tau in the top-right corner, ones below
    the diagonal."""
    M = linalg.zeros(n, n, field)
    for i in range(1, n):
        M[i][i - 1] = field.one
    M[0][n - 1] = M[0][n - 1] + field.element(tau)
    return M


def kummer_irreducible(tau, n):
    """Sufficient test that x^n - tau is irreducible for tame n."""
    if n == 1:
        return True
    from math import gcd
    if gcd(tau.ord, n) == 1:
        return True
    if n == 2:
        return not tau.is_square()
    return False


def companion_embedding(E, base):
    """Power basis 1, w, ..., w^(e-1) of the ramified step above `base`."""
    K, step = _layer_field(E, base)
    if not isinstance(step, Ram):
        raise HypothesisFailed(f"step {base} is not a radical (ramified) step")
    F = E.prefix(base)
    tau = F.from_coords(K.alg.layers[-1][0]) * -1
    if not kummer_irreducible(tau, step.e):
        raise Reducible("x^n - tau is not irreducible")
    return Embedding(K, base, K.relative_basis(base))


def anti_triangular_to_J(G, field):
    """Rows g with g·G·ᵗg = J for a symmetric G vanishing above its
    anti-diagonal and equal to 1 on it.  Pairs off hyperbolic planes from the
    outside in; only division by 2 is needed."""
    n = len(G)
    vecs = linalg.identity(n, field)

    def B(u, v):
        return linalg.sum_of([a * b for a, b in zip(u, linalg.matvec(G, v))])

    lo, hi = 0, n - 1
    half = field.one / (field.one + field.one)
    while lo < hi:
        a, b = vecs[lo], vecs[hi]
        if not B(a, a).is_zero() or not (B(a, b) - field.one).is_zero():
            raise ValueError("Gram matrix is not anti-triangular with unit anti-diagonal")
        c = B(b, b)
        b = [y - c * half * x for x, y in zip(a, b)]
        vecs[hi] = b
        for k in range(lo + 1, hi):
            v = vecs[k]
            alpha, beta = B(v, b), B(v, a)
            vecs[k] = [vi - alpha * ai - beta * bi for vi, ai, bi in zip(v, a, b)]
        lo += 1
        hi -= 1
    if lo == hi and not (B(vecs[lo], vecs[lo]) - field.one).is_zero():
        raise ValueError("middle basis vector is not of norm 1")
    return vecs


def trace_form_gram(K, base):
    """Gram matrix tr(a·y^i·y^j) for the unramified step above `base`,
    with y the step generator and a = 1/h'(y)."""
    F = K.prefix(base)
    f = K.n // F.n
    y = K.basis_element(F.n) if f > 1 else K.one
    low = [F.from_coords(c) for c in K.alg.layers[-1]]
    deriv = K.element(f) * y ** (f - 1)
    for i in range(1, f):
        deriv = deriv + K.element(low[i]) * K.element(i) * y ** (i - 1)
    a = deriv.inverse()
    powers = [y ** i for i in range(2 * f - 1)]
    tr = [linalg.trace(K.regular_matrix(a * pw, base)) for pw in powers]
    return [[tr[i + j] for j in range(f)] for i in range(f)], y


def unramified_jsym_embedding(E, base):
    """Trace-form construction for an unramified step, rebased to Gram J."""
    K, step = _layer_field(E, base)
    if not isinstance(step, Unram):
        raise HypothesisFailed(f"step {base} is not unramified")
    F = E.prefix(base)
    G, y = trace_form_gram(K, base)
    g = anti_triangular_to_J(G, F)
    f = len(G)
    powers = [y ** j for j in range(f)]
    basis = [linalg.sum_of([K.element(g[i][j]) * powers[j] for j in range(f)]) for i in range(f)]
    return Embedding(K, base, basis)


def composite_embedding(outer, inner):
    """E/L in M_s(L) and L/F in M_r(F) give E/F in M_rs(F) with basis
    a_1 b_1, a_1 b_2, ..., a_2 b_1, ..."""
    if outer.F.spec.steps != inner.E.spec.steps or outer.F.p != inner.E.p:
        raise FieldMismatch("outer base field does not match inner field")
    if not (outer.j_symmetric and inner.j_symmetric):
        raise HypothesisFailed("composite requires J-symmetric factors")
    E = outer.E
    basis = [a * E.element(b) for a in outer.basis for b in inner.basis]
    emb = Embedding(E, inner.base, basis)
    assert emb.j_symmetric
    return emb


def step_embedding(E, level):
    K, step = _layer_field(E, level)
    if K.n == E.prefix(level).n:
        return Embedding(K, level, [K.one])
    if isinstance(step, Ram):
        return companion_embedding(E, level)
    return unramified_jsym_embedding(E, level)


def integral_jsym_embedding(E, F_sub=0):
    """Compose the per-step embeddings from F_sub up to E."""
    base = E.prefix_length(F_sub)
    top = len(E.spec.steps)
    if base == top:
        return Embedding(E, base, [E.one])
    emb = step_embedding(E, base)
    for level in range(base + 1, top):
        emb = composite_embedding(step_embedding(E, level), emb)
    return emb


def nu_symmetric_test(emb, nu):
    """(True, x) if J·nu = matrix_of(x) for some x in E, else (False, None)."""
    F = emb.F
    n = emb.n
    target = linalg.matmul(emb.J, nu.matrix if hasattr(nu, "matrix") else nu)
    A = [[emb.basis_images[k][i][j] for k in range(n)] for i in range(n) for j in range(n)]
    b = [target[i][j] for i in range(n) for j in range(n)]
    sol = linalg.solve(A, b)
    if sol is None:
        return False, None
    x = emb.element_of(sol)
    if not linalg.equal(emb.matrix_of(x), target):
        return False, None
    return True, x


def is_nu_symmetric(emb, nu):
    """Direct check that X -> nu^-1·ᵗX·nu preserves the image of emb."""
    M = nu.matrix if hasattr(nu, "matrix") else nu
    Minv = linalg.inverse(M, emb.F)
    for X in emb.basis_images:
        Y = linalg.matmul(linalg.matmul(Minv, linalg.transpose(X)), M)
        if not linalg.equal(Y, X):
            return False
    return True
