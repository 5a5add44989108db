"""Quadratic forms over tower fields: Hilbert symbols, diagonalization,
(disc, Hasse) invariants, similarity classes and explicit isometries."""

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import (DimensionMismatch, FieldMismatch, NotSimilar,
                     PrecisionExhausted, SearchBudgetExceeded, ZeroInput)
from .field import LocalField
from .finite import GF


class SymMatrix:
    """An invertible symmetric matrix over a LocalField (or a finite field)."""

    def __init__(self, field, rows, check=True):
        self.field = field
        self.rows = tuple(tuple(field.element(x) for x in row) for row in rows)
        self.n = len(self.rows)
        if check:
            if any(len(r) != self.n for r in self.rows):
                raise DimensionMismatch("matrix is not square")
            if not linalg.is_symmetric(self.matrix):
                raise ValueError("matrix is not symmetric")
            if linalg.det(self.matrix).is_zero():
                raise ZeroInput("matrix is singular")

    @property
    def matrix(self):
        return [list(r) for r in self.rows]

    @classmethod
    def diagonal(cls, field, entries):
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def antidiagonal(cls, field, n):
        return cls(field, linalg.antidiagonal(n, field))

    def congruent(self, g):
        return SymMatrix(self.field, linalg.congruent(g, self.matrix))

    def scaled(self, z):
        z = self.field.element(z)
        return SymMatrix(self.field, [[z * x for x in r] for r in self.rows], check=False)

    def det(self):
        return linalg.det(self.matrix)

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SymMatrix({[[x for x in r] for r in self.rows]})"


def _hilbert_classes(F, i, j):
    """Hilbert symbol of two square-class indices of F."""
    alpha, beta = i >> 1, j >> 1
    chi1 = -1 if i & 1 else 1
    chi2 = -1 if j & 1 else 1
    q = F.residue_size
    sign = -1 if (alpha * beta * ((q - 1) // 2)) % 2 else 1
    return sign * (chi1 ** beta) * (chi2 ** alpha)


@lru_cache(maxsize=None)
def hilbert_table(F):
    return tuple(tuple(_hilbert_classes(F, i, j) for j in range(4)) for i in range(4))


def hilbert_symbol(a, b):
    """(a, b) for nonzero a, b in a common tower field, odd residue characteristic.

    Writing a = pi^alpha u1 and b = pi^beta u2 with units u1, u2,
    (a, b) = (-1)^(alpha beta (q-1)/2) chi(u1)^beta chi(u2)^alpha.
    """
    F = a.field if hasattr(a, "field") else b.field
    a, b = F.element(a), F.element(b)
    if a.is_zero() or b.is_zero():
        raise ZeroInput("Hilbert symbol of zero")
    return hilbert_table(F)[F.class_of(a)][F.class_of(b)]


def diagonalize(S):
    """Return (d, g) with ᵗg·S·g = diag(d), computed exactly.

    Pivot: a diagonal entry of minimal valuation, unless some off-diagonal
    entry has strictly smaller valuation, in which case the two basis vectors
    are added first.
    """
    M = S.matrix if isinstance(S, SymMatrix) else [list(r) for r in S]
    F = M[0][0].field
    n = len(M)
    A = [list(r) for r in M]
    g = linalg.identity(n, F)

    def add_to(t, s, c):
        # basis vector t += c * basis vector s
        for row in g:
            row[t] = row[t] + c * row[s]
        A[t] = [x + c * y for x, y in zip(A[t], A[s])]
        for row in A:
            row[t] = row[t] + c * row[s]

    def swap(a, b):
        for row in g:
            row[a], row[b] = row[b], row[a]
        A[a], A[b] = A[b], A[a]
        for row in A:
            row[a], row[b] = row[b], row[a]

    for i in range(n):
        diag = [(A[j][j].valuation, j) for j in range(i, n) if not A[j][j].is_zero()]
        off = [(A[a][b].valuation, a, b) for a in range(i, n) for b in range(a + 1, n)
               if not A[a][b].is_zero()]
        best_diag = min(diag) if diag else None
        best_off = min(off) if off else None
        if best_diag is None and best_off is None:
            raise ZeroInput("singular form")
        if best_diag is None or (best_off is not None and best_off[0] < best_diag[0]):
            _, a, b = best_off
            add_to(a, b, 1)
            pivot = a
        else:
            pivot = best_diag[1]
        if pivot != i:
            swap(i, pivot)
        inv = A[i][i].inverse()
        for k in range(i + 1, n):
            if not A[k][i].is_zero():
                add_to(k, i, -(A[k][i] * inv))
    return [A[i][i] for i in range(n)], g


@dataclass(frozen=True)
class FormInvariants:
    n: int
    disc_class: int
    disc0_class: int
    hasse: int
    hasse0: int


def sign_class(F, n):
    """Square class of (-1)^(n(n-1)/2)."""
    return F.class_of(F.element(-1 if (n * (n - 1) // 2) % 2 else 1))


def invariants_of_diagonal(F, d):
    n = len(d)
    classes = [F.class_of(x) for x in d]
    tab = hilbert_table(F)
    disc = 0
    for c in classes:
        disc ^= c
    hasse0 = 1
    self_part = 1
    for i in range(n):
        self_part *= tab[classes[i]][classes[i]]
        for j in range(i + 1, n):
            hasse0 *= tab[classes[i]][classes[j]]
    hasse = hasse0 * self_part
    inv = FormInvariants(n, disc, disc ^ sign_class(F, n), hasse, hasse0)
    minus_one = F.class_of(F.element(-1))
    assert inv.hasse == inv.hasse0 * tab[minus_one][disc]
    return inv


def form_invariants(S):
    d, _ = diagonalize(S)
    return invariants_of_diagonal(S.field, d)


def is_similar(S1, S2):
    if S1.n != S2.n:
        raise DimensionMismatch(f"dimensions {S1.n} and {S2.n} differ")
    if S1.field is not S2.field:
        raise FieldMismatch("forms over different fields")
    if isinstance(S1.field, GF):
        return _ff_disc(S1) == _ff_disc(S2)
    a, b = form_invariants(S1), form_invariants(S2)
    return a.disc_class == b.disc_class and a.hasse == b.hasse


def _ff_disc(S):
    return linalg.det(S.matrix).is_square()


@dataclass(frozen=True)
class CensusClass:
    rep: SymMatrix
    disc_class: int
    hasse: int


def similarity_class_census(field, n):
    """One diagonal representative per similarity class, lexicographically
    minimal over tuples of square-class representatives."""
    if isinstance(field, GF):
        one, u = field.one, field.nonresidue
        return [CensusClass(SymMatrix.diagonal(field, [one] * n), 0, 1),
                CensusClass(SymMatrix.diagonal(field, [one] * (n - 1) + [u]), 1, 1)]
    reps = field.square_classes.reps
    seen = {}
    for idx in itertools.product(range(4), repeat=n):
        if list(idx) != sorted(idx):
            continue
        inv = invariants_of_diagonal(field, [reps[i] for i in idx])
        key = (inv.disc_class, inv.hasse)
        if key not in seen:
            seen[key] = CensusClass(SymMatrix.diagonal(field, [reps[i] for i in idx]), *key)
    return sorted(seen.values(), key=lambda c: (c.disc_class, -c.hasse))


def congruence_transform(S, T, seed=0, budget=200000):
    """An explicit g with ᵗg·S·g = T, certified to half the digit budget.

    The first diagonal entry of T is represented by S via a seeded search
    over small vectors, the value is corrected by a Hensel square root, and
    the orthogonal complement is handled recursively.
    """
    if not is_similar(S, T):
        raise NotSimilar("forms have different invariants")
    F = S.field
    if S == T:
        return linalg.identity(S.n, F)
    dT, gT = diagonalize(T)
    spread = max(abs(x.valuation) for x in diagonalize(S)[0] + dT)
    work = F.precision + 8 + int(2 * S.n * (spread + 1))
    rng = random.Random(seed)
    h = _represent(F, S.matrix, dT, rng, [budget], work)
    g = linalg.matmul(h, linalg.inverse(gT, F))
    residual = linalg.matsub(linalg.congruent(g, S.matrix), T.matrix)
    floor = min(x.valuation for r in T.rows for x in r if not x.is_zero())
    worst = min((x.valuation for r in residual for x in r if not x.is_zero()), default=None)
    if worst is not None and worst < floor + F.precision / 2:
        raise PrecisionExhausted(f"isometry certified only to {worst - floor} digits")
    return g


def _represent(F, S, targets, rng, budget, work):
    k = len(targets)
    d, g = diagonalize(S)
    t = targets[0]
    if k == 1:
        s = F.sqrt(t / d[0], work)
        return linalg.matmul(g, [[s]])
    v = _find_vector(F, d, t, rng, budget)
    val = linalg.sum_of([di * x * x for di, x in zip(d, v)])
    s = F.sqrt(t / val, work)
    v = [x * s for x in v]
    val = linalg.sum_of([di * x * x for di, x in zip(d, v)])
    m = min((x.valuation, i) for i, x in enumerate(v) if not x.is_zero())[1]
    cols = [v]
    for i in range(k):
        if i == m:
            continue
        c = d[i] * v[i] / val
        cols.append([(F.one if j == i else F.zero) - c * v[j] for j in range(k)])
    B = linalg.transpose(cols)
    W = linalg.transpose(cols[1:])
    D = [[d[i] if i == j else F.zero for j in range(k)] for i in range(k)]
    rest = linalg.congruent(W, D)
    h_rest = _represent(F, rest, targets[1:], rng, budget, work)
    H = [[F.one] + [F.zero] * (k - 1)] + [[F.zero] + row for row in h_rest]
    return linalg.matmul(g, linalg.matmul(B, H))


def _find_vector(F, d, t, rng, budget):
    target = F.class_of(t)
    res = F.residue_field
    units = [F.lift(res.from_index(i)) for i in range(1, min(res.q, 2 * F.p + 1))]
    cands = [F.zero] + units + [x * F.uniformizer for x in units]
    k = len(d)
    for h in range(1, len(cands)):
        level = [idx for idx in itertools.product(range(h + 1), repeat=k) if max(idx) == h]
        rng.shuffle(level)
        for idx in level:
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchBudgetExceeded("no representing vector within budget")
            v = [cands[i] for i in idx]
            val = linalg.sum_of([di * x * x for di, x in zip(d, v)])
            if not val.is_zero() and F.class_of(val) == target:
                return v
    raise SearchBudgetExceeded("candidate set exhausted")
