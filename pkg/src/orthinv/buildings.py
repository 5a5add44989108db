"""Additive norms and graded lattice chains on V = Q_p^n.

Lattices are stored as square matrices whose columns form an O_F-basis.
Two lattices are equal when the change-of-basis matrix between them is
integral with unit determinant.  Valuations are normalized so val(p) = 1.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DegenerateChain, DimensionMismatch
from .field import TowerSpec, Unram, Ram, build_field


def _qp(p):
    return build_field(TowerSpec(p))


def _ceil(x):
    return math.ceil(Fraction(x))


def _vec(F, v):
    return [F.element(Fraction(a)) if not hasattr(a, "valuation") else a for a in v]


def _mat(F, M):
    return [_vec(F, row) for row in M]


@dataclass
class AdditiveNorm:
    """x_e^c(sum a_i e_i) = min_i (val(a_i) + c_i); columns of `basis` are e_i."""
    p: int
    basis: list
    c: tuple

    def __post_init__(self):
        F = _qp(self.p)
        self.basis = _mat(F, self.basis)
        self.c = tuple(Fraction(x) for x in self.c)
        n = len(self.basis)
        if len(self.c) != n or any(len(r) != n for r in self.basis):
            raise DimensionMismatch("basis and c must have matching dimension")
        if linalg.det(self.basis).is_zero():
            raise DegenerateChain("norm basis is singular")
        self._inv = linalg.inverse(self.basis, F)

    @property
    def n(self):
        return len(self.c)

    @property
    def field(self):
        return _qp(self.p)

    def coords(self, v):
        return linalg.matvec(self._inv, _vec(self.field, v))

    def __call__(self, v):
        return norm_eval(self, v)


def norm_eval(x, v):
    best = math.inf
    for a, ci in zip(x.coords(v), x.c):
        if not a.is_zero():
            best = min(best, a.valuation + ci)
    return best


def lattice_equal(F, A, B):
    """Column spans of A and B over O_F coincide."""
    T = linalg.matmul(linalg.inverse(A, F), B)
    return all(t.is_zero() or t.valuation >= 0 for row in T for t in row) and \
        linalg.det(T).valuation == 0


def lattice_contains(F, A, B):
    """span(B) ⊆ span(A)."""
    T = linalg.matmul(linalg.inverse(A, F), B)
    return all(t.is_zero() or t.valuation >= 0 for row in T for t in row)


@dataclass
class GradedLatticeChain:
    """Segment L_0 ⊋ ... ⊋ L_{m-1} ⊋ p·L_0 with strictly increasing grades
    in [g_0, g_0 + 1); the full chain is its homothety orbit."""
    p: int
    lattices: list
    grades: list

    def __post_init__(self):
        F = _qp(self.p)
        self.lattices = [_mat(F, L) for L in self.lattices]
        self.grades = [Fraction(g) for g in self.grades]
        self.validate()

    @property
    def rank(self):
        return len(self.lattices)

    @property
    def facet_dimension(self):
        return self.rank - 1

    @property
    def field(self):
        return _qp(self.p)

    def validate(self):
        F = self.field
        m = len(self.lattices)
        if m == 0 or len(self.grades) != m:
            raise DegenerateChain("a chain needs at least one lattice and one grade per lattice")
        for L in self.lattices:
            if linalg.det(L).is_zero():
                raise DegenerateChain("lattice basis is singular")
        nxt = self.lattices[1:] + [linalg.matscale(F.element(self.p), self.lattices[0])]
        for k, (A, B) in enumerate(zip(self.lattices, nxt)):
            if not lattice_contains(F, A, B) or lattice_equal(F, A, B):
                raise DegenerateChain(f"lattice {k} does not strictly contain its successor")
        g = self.grades + [self.grades[0] + 1]
        if any(a >= b for a, b in zip(g, g[1:])):
            raise DegenerateChain("grades must strictly increase along the segment, within one period")

    def lattice(self, index):
        """L_index for any integer index, by homothety."""
        k, j = divmod(index, self.rank)
        F = self.field
        return linalg.matscale(F.element(Fraction(self.p) ** k), self.lattices[j]), self.grades[j] + k

    def norm_value(self, v):
        """max over chain lattices containing v of their grade."""
        F = self.field
        v = _vec(F, v)
        if all(a.is_zero() for a in v):
            return math.inf
        best = -math.inf
        for L, g in zip(self.lattices, self.grades):
            coords = linalg.matvec(linalg.inverse(L, F), v)
            k = min(a.valuation for a in coords if not a.is_zero())
            best = max(best, g + math.floor(k))
        return best

    def equals(self, other):
        F = self.field
        return self.rank == other.rank and self.grades == other.grades and all(
            lattice_equal(F, A, B) for A, B in zip(self.lattices, other.lattices))


def lattice_at(x, r):
    """L_{x,r} = {v : x(v) >= r}, as basis columns p^ceil(r - c_i) e_i."""
    F = x.field
    cols = [[b[i] for b in x.basis] for i in range(x.n)]
    cols = [[F.element(Fraction(x.p) ** _ceil(r - ci)) * a for a in col] for col, ci in zip(cols, x.c)]
    return linalg.transpose(cols)


def chain_from_norm(x):
    """Graded lattice chain of x, indexed so L_0 has the least grade >= 0."""
    fracs = sorted({ci - math.floor(ci) for ci in x.c})
    grades = fracs
    lattices = [lattice_at(x, r) for r in grades]
    return GradedLatticeChain(x.p, lattices, grades)


def _rank_mod_p(vectors, p):
    rows = [[int(a) % p for a in v] for v in vectors]
    rank, col = 0, 0
    n = len(rows[0]) if rows else 0
    while rank < len(rows) and col < n:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [a * inv % p for a in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _as_int_mod_p(a, p):
    q = Fraction(a.c[0])
    return q.numerator * pow(q.denominator, -1, p) % p


def norm_from_chain(chain):
    """An adapted basis of L_0: its reduction mod p refines the flag
    L_j / p·L_0, and each vector is graded by the deepest L_j holding it."""
    F = chain.field
    p = chain.p
    L0 = chain.lattices[0]
    L0inv = linalg.inverse(L0, F)
    chosen, labels = [], []
    for j in reversed(range(chain.rank)):
        Lj = chain.lattices[j]
        A = linalg.matmul(L0inv, Lj)
        for k in range(len(A)):
            col = [A[i][k] for i in range(len(A))]
            cand = [_as_int_mod_p(a, p) for a in col]
            if _rank_mod_p([c for c, _ in chosen] + [cand], p) > len(chosen):
                vec = [row[k] for row in Lj]
                chosen.append((cand, vec))
                labels.append(chain.grades[j])
    if len(chosen) != len(L0):
        raise DegenerateChain("chain does not span a full flag")
    basis = linalg.transpose([v for _, v in chosen])
    return AdditiveNorm(p, basis, tuple(labels))


def norms_agree(x, y, sample):
    return all(norm_eval(x, v) == norm_eval(y, v) for v in sample)


# -- parahorics


def parahoric_member(g, chain):
    """g·L_j = L_j for every lattice of the segment."""
    F = chain.field
    g = _mat(F, g)
    if linalg.det(g).is_zero():
        return False
    return all(lattice_equal(F, L, linalg.matmul(g, L)) for L in chain.lattices)


def standard_vertex_chain(p, n):
    F = _qp(p)
    return GradedLatticeChain(p, [linalg.identity(n, F)], [0])


# -- Moy-Prasad filtrations for E = Q_p > unram(f) > ram(e)


@dataclass(frozen=True)
class FiltrationModel:
    """V = E with basis ϖ_E^j·β_k (j outer), so P_E^k has block-j
    coordinates of valuation >= ceil((k - j)/e)."""
    p: int
    e: int
    f: int
    twist: int = 0

    @property
    def n(self):
        return self.e * self.f

    @property
    def tower(self):
        steps = []
        if self.f > 1:
            steps.append(Unram(self.f))
        if self.e > 1:
            steps.append(Ram(self.e, self.twist))
        return build_field(TowerSpec(self.p, tuple(steps)))

    def block_of(self, index):
        return index // self.f

    def ideal_lattice(self, k):
        """Basis matrix of P_E^k."""
        F = _qp(self.p)
        diag = [Fraction(self.p) ** _ceil(Fraction(k - self.block_of(i), self.e)) for i in range(self.n)]
        return [[F.element(diag[i]) if i == j else F.zero for j in range(self.n)] for i in range(self.n)]

    def matrix_of(self, x):
        """Left multiplication by x on the flat basis of the tower."""
        return self.tower.regular_matrix(x, 0)

    def uniformizer_matrix(self):
        E = self.tower
        return self.matrix_of(E.uniformizer)


def depth_shift(r, e):
    return _ceil(Fraction(r) * e)


def filtration_member(X, r, model):
    """X·P_E^k ⊆ P_E^{k + ceil(e r)} for k = 0..e-1."""
    F = _qp(model.p)
    X = _mat(F, X)
    s = depth_shift(r, model.e)
    for k in range(model.e):
        src = model.ideal_lattice(k)
        dst = model.ideal_lattice(k + s)
        if not lattice_contains(F, dst, linalg.matmul(X, src)):
            return False
    return True


@dataclass
class BlockShape:
    """e×e block pattern over M_f.  `lattice[a][b]` is the exponent t with
    block (a, b) of g_{y,r} equal to M_f(P_F^t); `quotient` maps the blocks
    surviving in g_{y,r:r+} to their P_F exponent.  An empty quotient means
    the graded piece is zero."""
    e: int
    f: int
    r: Fraction
    lattice: list
    quotient: dict

    @property
    def is_zero(self):
        return not self.quotient


def block_shape(e, f, r):
    r = Fraction(r)
    s = depth_shift(r, e)
    lattice = [[_ceil(Fraction(s - a + b, e)) for b in range(e)] for a in range(e)]
    quotient = {}
    if (r * e).denominator == 1:
        for b in range(e):
            a = (b + s) % e
            quotient[(a, b)] = (b + s) // e
    return BlockShape(e, f, r, lattice, quotient)


def block_exponent(model, r, a, b, search=4):
    """Least t with p^t times a unit in block (a, b) lying in g_{y,r},
    found by membership tests on the matrix unit."""
    F = _qp(model.p)
    i, j = a * model.f, b * model.f
    for t in range(-search, search + 1):
        X = [[F.zero] * model.n for _ in range(model.n)]
        X[i][j] = F.element(Fraction(model.p) ** t)
        if filtration_member(X, r, model):
            return t
    raise DegenerateChain("block exponent outside the search window")


def observed_block_shape(model, r):
    """Block shape measured from filtration_member alone."""
    r = Fraction(r)
    e = model.e
    lattice = [[block_exponent(model, r, a, b) for b in range(e)] for a in range(e)]
    nxt = r + Fraction(1, 2 * e)
    after = [[block_exponent(model, nxt, a, b) for b in range(e)] for a in range(e)]
    quotient = {(a, b): lattice[a][b] for a in range(e) for b in range(e) if after[a][b] > lattice[a][b]}
    return BlockShape(e, model.f, r, lattice, quotient)
