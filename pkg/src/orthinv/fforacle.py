"""Brute-force orbit enumeration over GL_n(F_q).

Field elements are replaced by their integer indices and arithmetic by lookup
tables, so whole spaces of matrices are processed as numpy arrays.  Orbits
of the congruence action S -> ᵗgSg are found by label propagation along a
generating set of GL_n(F_q); when the whole group is small enough it is
also scanned element by element to count similitudes directly.
"""

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .embeddings import anti_triangular_to_J
from .errors import BadPrime, BudgetExceeded, DimensionMismatch
from .finite import GF, smallest_irreducible

DEFAULT_BUDGET = 10**7


def default_budget():
    return int(float(os.environ.get("ORTHINV_BUDGET", DEFAULT_BUDGET)))


class FFContext:
    """Lookup tables for F_q plus a J-symmetric embedding of F_{q^n}."""

    def __init__(self, q, n, budget=None):
        if n < 2:
            raise DimensionMismatch("n must be at least 2")
        self.F = GF.of_order(q)
        if self.F.p == 2:
            raise BadPrime("q must be odd")
        self.q, self.n = q, n
        self.budget = default_budget() if budget is None else budget
        els = [self.F.from_index(i) for i in range(q)]
        self.add = np.array([[(a + b).index for b in els] for a in els], dtype=np.int64)
        self.mul = np.array([[(a * b).index for b in els] for a in els], dtype=np.int64)
        self.neg = np.array([(-a).index for a in els], dtype=np.int64)
        self.inv = np.array([0] + [a.inverse().index for a in els[1:]], dtype=np.int64)
        self.square = np.array([a.is_square() and not a.is_zero() for a in els])
        gen = self.F.primitive_element
        self.log = np.full(q, -1, dtype=np.int64)
        self.antilog = np.zeros(q - 1, dtype=np.int64)
        x = self.F.one
        for k in range(q - 1):
            self.antilog[k] = x.index
            self.log[x.index] = k
            x = x * gen
        self.m = n * (n + 1) // 2
        self.upper = [(i, j) for i in range(n) for j in range(i, n)]

    @property
    def units(self):
        return list(range(1, self.q))

    @property
    def squares(self):
        return [z for z in self.units if self.square[z]]

    # -- vectorized matrix arithmetic on index arrays of shape (..., n, n)

    def matmul(self, A, B):
        n = self.n
        out = np.empty(np.broadcast_shapes(A.shape, B.shape), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                acc = self.mul[A[..., i, 0], B[..., 0, j]]
                for k in range(1, n):
                    acc = self.add[acc, self.mul[A[..., i, k], B[..., k, j]]]
                out[..., i, j] = acc
        return out

    def congruent(self, g, S):
        return self.matmul(np.swapaxes(g, -1, -2), self.matmul(S, g))

    def scale(self, z, S):
        return self.mul[z, S]

    def det(self, A):
        n = self.n
        total = np.zeros(A.shape[:-2], dtype=np.int64)
        for perm in itertools.permutations(range(n)):
            term = A[..., 0, perm[0]]
            for i in range(1, n):
                term = self.mul[term, A[..., i, perm[i]]]
            if _parity(perm):
                term = self.neg[term]
            total = self.add[total, term]
        return total

    # -- symmetric matrices <-> integer codes

    def encode(self, S):
        code = np.zeros(S.shape[:-2], dtype=np.int64)
        for i, j in reversed(self.upper):
            code = code * self.q + S[..., i, j]
        return code

    def decode(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        S = np.zeros(codes.shape + (self.n, self.n), dtype=np.int64)
        c = codes.copy()
        for i, j in self.upper:
            c, r = np.divmod(c, self.q)
            S[..., i, j] = r
            S[..., j, i] = r
        return S

    def J(self):
        return np.fliplr(np.eye(self.n, dtype=np.int64))

    def generators(self):
        """Transvections I + a·E_ij (a in an F_p-basis of F_q) and
        diag(gen, 1, ..., 1); together they generate GL_n(F_q)."""
        n, gens = self.n, []
        basis = [self.F.p ** k for k in range(self.F.degree)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    for a in basis:
                        g = np.eye(n, dtype=np.int64)
                        g[i, j] = a
                        gens.append(g)
        d = np.eye(n, dtype=np.int64)
        d[0, 0] = self.F.primitive_element.index
        gens.append(d)
        return gens

    @cached_property
    def group_order(self):
        q, n = self.q, self.n
        out = 1
        for k in range(n):
            out *= q**n - q**k
        return out

    @cached_property
    def symmetric_space(self):
        """(codes, matrices) of all invertible symmetric matrices."""
        size = self.q**self.m
        work = size * len(self.generators())
        if work > self.budget:
            raise BudgetExceeded(f"symmetric-space scan needs {work} steps, budget {self.budget}",
                                 partial={"q": self.q, "n": self.n, "points": size})
        codes = np.arange(size, dtype=np.int64)
        S = self.decode(codes)
        keep = self.det(S) != 0
        return codes[keep], S[keep]

    @cached_property
    def orbit_labels(self):
        """Congruence-orbit label (smallest code in the orbit) per code."""
        codes, S = self.symmetric_space
        size = self.q**self.m
        label = np.full(size, -1, dtype=np.int64)
        label[codes] = codes
        images = [self.encode(self.congruent(g, S)) for g in self.generators()]
        while True:
            before = label.copy()
            for img in images:
                np.minimum.at(label, img, label[codes])
                label[codes] = np.minimum(label[codes], label[img])
            if np.array_equal(before, label):
                break
        # propagate to a fixed point of the representative map
        while True:
            nxt = label[label[codes]]
            if np.array_equal(nxt, label[codes]):
                break
            label[codes] = nxt
        return label

    def orbit_of(self, S):
        return int(self.orbit_labels[self.encode(np.asarray(S))])

    @cached_property
    def group_scan_feasible(self):
        return self.q ** (self.n * self.n) <= min(DEFAULT_BUDGET, self.budget)

    @cached_property
    def group_elements(self):
        if not self.group_scan_feasible:
            raise BudgetExceeded(f"GL_{self.n}(F_{self.q}) scan exceeds budget",
                                 partial={"order": self.group_order})
        n, q = self.n, self.q
        codes = np.arange(q ** (n * n), dtype=np.int64)
        M = np.zeros((codes.size, n, n), dtype=np.int64)
        c = codes
        for k in range(n * n):
            c, r = np.divmod(c, q)
            M[:, k // n, k % n] = r
        return M[self.det(M) != 0]

    # -- the torus F_{q^n}^x inside GL_n(F_q)

    @cached_property
    def torus(self):
        return finite_jsym_embedding(self.F, self.n)

    @cached_property
    def torus_matrices(self):
        """Index matrices of all q^n - 1 nonzero elements, generator first."""
        emb = self.torus
        K = emb.K
        gen = K.primitive_element
        out, x = [], K.one
        for _ in range(K.q - 1):
            out.append([[a.index for a in row] for row in emb.matrix_of(x)])
            x = x * gen
        return np.array(out, dtype=np.int64)


def _parity(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inv % 2


@dataclass
class FiniteEmbedding:
    F: object
    K: object
    basis: list
    P_inv: list

    def coords(self, x):
        d = self.F.degree
        return [self.F.element(tuple(x.c[k * d:(k + 1) * d])) for k in range(len(x.c) // d)]

    def matrix_of(self, x):
        cols = [linalg.matvec(self.P_inv, self.coords(x * b)) for b in self.basis]
        return linalg.transpose(cols)


def finite_jsym_embedding(F, n):
    """F_{q^n} in M_n(F_q), J-symmetric, from the trace form tr(xy/h'(y))."""
    h = smallest_irreducible(F, n)
    K = F.extend(h)
    y = K.generator()
    deriv = K.element(0)
    for i in range(1, n + 1):
        coeff = h[i] if i < n else F.one
        deriv = deriv + K.element(_lift(K, coeff)) * i * y ** (i - 1)
    a = deriv.inverse()
    powers = [y**i for i in range(2 * n - 1)]

    def trace(x):
        emb = FiniteEmbedding(F, K, powers[:n], linalg.identity(n, F))
        return linalg.trace(emb.matrix_of(x))

    tr = [trace(a * pw) for pw in powers]
    G = [[tr[i + j] for j in range(n)] for i in range(n)]
    g = anti_triangular_to_J(G, F)
    basis = [linalg.sum_of([K.element(_lift(K, g[i][j])) * powers[j] for j in range(n)]) for i in range(n)]
    P = linalg.transpose([FiniteEmbedding(F, K, [], None).coords(b) for b in basis])
    return FiniteEmbedding(F, K, basis, linalg.inverse(P, F))


def _lift(K, a):
    """Coordinates of the base-field element a inside K."""
    return tuple(a.c) + (0,) * (K.degree - len(a.c))


# -- oracle operations


@dataclass
class CongruenceCensus:
    classes: int
    representatives: list
    orbit_sizes: list
    total: int
    disc_square: list


def ff_congruence_census(ctx):
    codes, S = ctx.symmetric_space
    labels = ctx.orbit_labels[codes]
    reps, sizes = np.unique(labels, return_counts=True)
    discs = []
    for r in reps:
        d = int(ctx.det(ctx.decode(r)))
        discs.append(bool(ctx.square[d]))
    assert int(sizes.sum()) == codes.size
    return CongruenceCensus(len(reps), [ctx.decode(r) for r in reps], [int(s) for s in sizes],
                            int(codes.size), discs)


def involution_orbit_of(ctx, S):
    """Involution orbit = congruence orbits of S up to scalars; labelled by
    the smallest congruence label among the scalar multiples."""
    S = np.asarray(S)
    return min(ctx.orbit_of(ctx.scale(z, S)) for z in ctx.units)


def ff_involution_orbits(ctx):
    census = ff_congruence_census(ctx)
    return len({involution_orbit_of(ctx, R) for R in census.representatives})


@dataclass
class SplitTOrbit:
    nu: np.ndarray
    size: int
    g_orbit: int
    in_JT: bool


@dataclass
class SplitTCensus:
    orbits: list
    per_g_orbit: dict
    norm_surjective: bool


def ff_split_t_orbits(ctx):
    """All symmetric ν with T θ_ν-split, up to scalars, grouped into T-orbits."""
    codes, S = ctx.symmetric_space
    T = ctx.torus_matrices
    t = T[1] if len(T) > 1 else T[0]
    # θ_ν(t) = t^-1  <=>  ᵗt·ν = ν·t
    lhs = ctx.matmul(np.broadcast_to(t.T, S.shape), S)
    rhs = ctx.matmul(S, np.broadcast_to(t, S.shape))
    ok = np.all(lhs == rhs, axis=(-1, -2))
    split_codes = codes[ok]
    split_set = set(int(c) for c in split_codes)
    JT = {int(c) for c in ctx.encode(ctx.matmul(np.broadcast_to(ctx.J(), T.shape), T))}

    def line(code):
        return min(int(c) for c in ctx.encode(ctx.scale(np.array(ctx.units)[:, None, None],
                                                         ctx.decode(code))))

    lines = sorted({line(c) for c in split_set})
    seen, orbits = set(), []
    for c in lines:
        if c in seen:
            continue
        nu = ctx.decode(c)
        imgs = ctx.encode(ctx.congruent(T, np.broadcast_to(nu, T.shape)))
        orbit = {line(int(i)) for i in set(imgs.tolist())}
        seen |= orbit
        orbits.append(SplitTOrbit(nu, len(orbit), involution_orbit_of(ctx, nu), c in JT))
    per = {}
    for o in orbits:
        per[o.g_orbit] = per.get(o.g_orbit, 0) + 1
    norms = {int(ctx.det(M)) for M in T}
    return SplitTCensus(orbits, per, norms == set(ctx.units))


@dataclass
class SimilitudeCheck:
    mT: int
    mZ: int
    mu: list
    mu_torus: list
    witness: dict = field(default_factory=dict)


def ff_similitude_check(ctx, nu):
    """m_T = [μ(G_θ) : μ(T∩G_θ)], m_Z = [μ(G_θ) : (F_q^x)^2].

    μ(G_θ) is the set of z with zν congruent to ν; μ(T∩G_θ) is read off by
    running through T.  With a full group scan the similitude group is also
    counted directly and checked against orbit-stabilizer arithmetic.
    """
    nu = np.asarray(nu)
    home = ctx.orbit_of(nu)
    mu = [z for z in ctx.units if ctx.orbit_of(ctx.scale(z, nu)) == home]
    T = ctx.torus_matrices
    imgs = ctx.congruent(T, np.broadcast_to(nu, T.shape))
    mu_t = [z for z in ctx.units if np.all(imgs == ctx.scale(z, nu), axis=(-1, -2)).any()]
    assert set(mu_t) <= set(mu)
    sq = len(ctx.squares)
    witness = {"orbit_size": int(np.sum(ctx.orbit_labels == home)),
               "group_order": ctx.group_order}
    orth = ctx.group_order // witness["orbit_size"]
    witness["orthogonal_order"] = orth
    t_orth = int(np.all(imgs == nu, axis=(-1, -2)).sum())
    t_sim = int(sum(np.all(imgs == ctx.scale(z, nu), axis=(-1, -2)).sum() for z in ctx.units))
    witness["torus_similitudes"] = t_sim
    witness["torus_orthogonal"] = t_orth
    # |(T∩G_θ)·O_θ| = |T∩G_θ|·|O_θ|/|T∩O_θ| must equal |G_θ| exactly when m_T = 1
    witness["product_order"] = t_sim * orth // t_orth
    witness["similitude_order"] = len(mu) * orth
    if ctx.group_scan_feasible:
        G = ctx.group_elements
        out = ctx.congruent(G, np.broadcast_to(nu, G.shape))
        count = int(sum(np.all(out == ctx.scale(z, nu), axis=(-1, -2)).sum() for z in ctx.units))
        witness["scanned_similitude_order"] = count
        assert count == witness["similitude_order"]
    return SimilitudeCheck(len(mu) // len(mu_t), len(mu) // sq, mu, mu_t, witness)
