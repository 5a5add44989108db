"""Tame extension towers of Q_p and their arithmetic.

A tower field is modelled exactly: every step is a simple extension whose
modulus has rational coefficients, so the tower is a number field dense in the
p-adic field it describes, and ring operations are exact.  Valuations are read
off the integral basis of monomials in the step generators, normalized so that
val(p) = 1.  Only square roots (and the solvers built on them) produce
p-adic approximations; those are truncated to the tower's digit budget.
"""

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import isprime

from . import linalg
from .errors import (BadPrime, DivisionByZero, NonTame, NotSubfield,
                     PrecisionExhausted, ZeroInput)
from .finite import GF, smallest_irreducible
from .tower import TowerAlgebra

PRECISION_FLOOR = 8
DEFAULT_PRECISION = 32


@dataclass(frozen=True)
class Unram:
    f: int

    def __str__(self):
        return f"unram({self.f})"


@dataclass(frozen=True)
class Ram:
    e: int
    twist: int = 0

    def __str__(self):
        return f"ram({self.e}; twist={self.twist})"


@dataclass(frozen=True)
class TowerSpec:
    p: int
    steps: tuple = ()
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.precision < PRECISION_FLOOR:
            raise ValueError(f"precision {self.precision} is below the floor {PRECISION_FLOOR}")
        for s in self.steps:
            if isinstance(s, Unram) and s.f < 1 or isinstance(s, Ram) and s.e < 1:
                raise ValueError(f"step degrees must be positive: {s}")

    @property
    def degree(self):
        return math.prod(s.f if isinstance(s, Unram) else s.e for s in self.steps)

    def prefix(self, k):
        return TowerSpec(self.p, self.steps[:k], self.precision)

    def __str__(self):
        return " > ".join([f"Q({self.p})"] + [str(s) for s in self.steps])


def vp(x, p):
    """p-adic valuation of a nonzero int or Fraction."""
    x = Fraction(x)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _truncate_rational(c, p, digits):
    """A rational r with vp(c - r) >= digits and small height."""
    if c == 0:
        return 0
    c = Fraction(c)
    v = vp(c, p)
    if v >= digits:
        return 0
    unit = c / Fraction(p) ** v
    mod = p ** (digits - v)
    r = (unit.numerator * pow(unit.denominator, -1, mod)) % mod
    if r > mod // 2:
        r -= mod
    return Fraction(r) * Fraction(p) ** v


class FieldElement:
    """An element of a tower field, stored by exact flat coordinates."""

    __slots__ = ("field", "c", "_val")

    def __init__(self, field, coords):
        self.field = field
        self.c = coords
        self._val = None

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                return self.field.element(other)
            return other
        return self.field.element(other)

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.alg.add(self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.alg.sub(self.c, other.c))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, self.field.alg.neg(self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, self.field.alg.scale(other, self.c))
        other = self._coerce(other)
        return FieldElement(self.field, self.field.alg.mul(self.c, other.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(self.field, self.field.alg.power(self.c, k))

    def inverse(self):
        return self.field.inverse(self)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field:
            other = self.field.element(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self):
        return not any(self.c)

    @property
    def valuation(self):
        """val(x) with val(p) = 1; math.inf for zero."""
        if self._val is None:
            self._val = self.field.valuation(self)
        return self._val

    @property
    def ord(self):
        """Valuation in units of the uniformizer (an integer)."""
        return int(self.valuation * self.field.e)

    def unit_part(self):
        return self.field.unit_part(self)

    def residue(self):
        return self.field.residue(self)

    def is_square(self):
        return self.field.is_square(self)

    def approx(self, digits):
        p = self.field.p
        return FieldElement(self.field, tuple(_truncate_rational(x, p, digits) for x in self.c))

    def __repr__(self):
        if self.field.n == 1:
            return f"{self.c[0]}"
        terms = [f"{x}*b{i}" for i, x in enumerate(self.c) if x]
        return " + ".join(terms) if terms else "0"


def check_tame(spec):
    p = spec.p
    if p < 3 or p % 2 == 0 or not isprime(p):
        raise BadPrime(f"p = {p} must be an odd prime")
    for s in spec.steps:
        if isinstance(s, Ram) and s.e % p == 0:
            raise NonTame(f"ram({s.e}) over p = {p} is wildly ramified (p divides e)")


class LocalField:
    """A tame tower over Q_p realized as exact flat-coordinate arithmetic."""

    def __init__(self, spec):
        check_tame(spec)
        p = spec.p
        self.spec = spec
        self.p = p
        self.precision = spec.precision
        alg = TowerAlgebra(None)
        res = GF(p)
        kinds, layer_vals = [], []
        unif = (Fraction(p),)
        unif_val = Fraction(1)
        e_abs = f_abs = 1
        for step in spec.steps:
            zeta_lift = _lift(res.primitive_element, alg, kinds)
            if isinstance(step, Unram):
                hbar = smallest_irreducible(res, step.f)
                low = [_lift(c, alg, kinds) for c in hbar[:-1]]
                alg = alg.extended(low)
                res = res.extend(hbar)
                kinds.append("unram")
                layer_vals.append(Fraction(0))
                unif = alg.embed(unif, None)
                f_abs *= step.f
            else:
                k = step.twist % (res.q - 1)
                tau = alg.mul(alg.power(zeta_lift, k), unif)
                prev = alg.dim
                alg = alg.extended([alg.neg(tau)] + [alg.zero()] * (step.e - 1))
                kinds.append("ram")
                unif_val = unif_val / step.e
                layer_vals.append(unif_val)
                if step.e == 1:
                    unif = alg.embed(tau, None)
                else:
                    unif = tuple(1 if i == prev else 0 for i in range(alg.dim))
                e_abs *= step.e
        self.alg = alg
        self.kinds = tuple(kinds)
        self.residue_field = res
        self.e = e_abs
        self.f = f_abs
        self.n = alg.dim
        self._unif = unif
        self._unit_pos = _unit_positions(alg.degrees, self.kinds)
        self._basis_vals = tuple(
            sum((d * v for d, v in zip(alg.digits(i), layer_vals)), Fraction(0))
            for i in range(self.n))

    # construction helpers

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field is self:
                return value
            if value.field.n <= self.n and self.spec.steps[:len(value.field.spec.steps)] == value.field.spec.steps \
                    and value.field.p == self.p:
                return FieldElement(self, self.alg.embed(value.c, None))
            raise NotSubfield(f"{value.field} is not a prefix of {self}")
        if isinstance(value, tuple):
            return FieldElement(self, tuple(value))
        return FieldElement(self, (Fraction(value),) + (0,) * (self.n - 1))

    def from_coords(self, coords):
        return FieldElement(self, tuple(coords))

    def basis_element(self, i):
        return FieldElement(self, tuple(1 if j == i else 0 for j in range(self.n)))

    @property
    def zero(self):
        return FieldElement(self, self.alg.zero())

    @property
    def one(self):
        return FieldElement(self, self.alg.one())

    @cached_property
    def uniformizer(self):
        return FieldElement(self, self._unif)

    @cached_property
    def uniformizer_inverse(self):
        return self.uniformizer.inverse()

    @cached_property
    def residue_poly(self):
        return self.residue_field.minimal_polynomial(self.residue_field.primitive_element)

    def lift(self, r):
        """The canonical lift of a residue-field element."""
        return FieldElement(self, _lift(r, self.alg, self.kinds))

    @cached_property
    def teichmuller_generator(self):
        return self.lift(self.residue_field.primitive_element)

    @cached_property
    def nonresidue(self):
        return self.lift(self.residue_field.nonresidue)

    @property
    def residue_size(self):
        return self.residue_field.q

    def prefix(self, k):
        if isinstance(k, LocalField):
            if k.p != self.p or self.spec.steps[:len(k.spec.steps)] != k.spec.steps:
                raise NotSubfield(f"{k} is not a prefix of {self}")
            return k
        if not 0 <= k <= len(self.spec.steps):
            raise NotSubfield(f"prefix length {k} out of range")
        return build_field(self.spec.prefix(k))

    def prefix_length(self, F_sub):
        if isinstance(F_sub, LocalField):
            self.prefix(F_sub)
            return len(F_sub.spec.steps)
        self.prefix(F_sub)
        return F_sub

    # arithmetic

    def valuation(self, x):
        best = math.inf
        p = self.p
        for c, bv in zip(x.c, self._basis_vals):
            if c:
                v = vp(c, p) + bv
                if v < best:
                    best = v
        return best if best is math.inf else Fraction(best)

    def inverse(self, x):
        if x.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.n == 1:
            return FieldElement(self, (1 / Fraction(x.c[0]),))
        cols = [self.alg.mul(x.c, self.basis_element(j).c) for j in range(self.n)]
        sol = _solve_rational([[cols[j][i] for j in range(self.n)] for i in range(self.n)],
                              list(self.alg.one()))
        return FieldElement(self, tuple(sol))

    def unit_part(self, x):
        if x.is_zero():
            raise ZeroInput("zero has no unit part")
        k = x.ord
        if k == 0:
            return x
        if k > 0:
            return x * self.uniformizer_inverse ** k
        return x * self.uniformizer ** (-k)

    def residue(self, x):
        """Reduction of an integral element to the residue field."""
        if x.valuation < 0:
            raise ValueError("residue of a non-integral element")
        p = self.p
        coords = []
        for i in self._unit_pos:
            c = Fraction(x.c[i])
            coords.append((c.numerator * pow(c.denominator, -1, p)) % p)
        return self.residue_field.element(tuple(coords))

    def is_square(self, x):
        if x.is_zero():
            raise ZeroInput("is_square of zero")
        if x.ord % 2:
            return False
        return x.unit_part().residue().is_square()

    @cached_property
    def square_classes(self):
        return SquareClassGroup(self)

    def class_of(self, x):
        return self.square_classes.class_of(x)

    def sqrt(self, x, digits=None):
        """A square root of x, correct to `digits` digits beyond val(x).

        Hensel/Newton lifting from the residue square root; the result is an
        approximation truncated to the working budget.
        """
        if digits is None:
            digits = self.precision
        if not self.is_square(x):
            raise ValueError("not a square")
        if self.n == 1:
            exact = _rational_sqrt(Fraction(x.c[0]))
            if exact is not None:
                return self.element(exact)
        k = x.ord
        w = x.unit_part()
        r0 = self.residue_field.sqrt(w.residue())
        r = self.lift(r0)
        half = Fraction(1, 2)
        work = digits + 2
        for _ in range(2 * work + 8):
            err = (r * r - w).valuation
            if err >= digits:
                break
            r = ((r + w / r) * half).approx(work)
        else:
            raise PrecisionExhausted("square root did not converge")
        return r * self.uniformizer ** (k // 2)

    # relative structure over a prefix

    def relative_coords(self, x, k):
        F = self.prefix(k)
        m = F.n
        return [F.from_coords(x.c[j * m:(j + 1) * m]) for j in range(self.n // m)]

    def relative_basis(self, k):
        m = self.prefix(k).n
        return [self.basis_element(j * m) for j in range(self.n // m)]

    def regular_matrix(self, x, k):
        basis = self.relative_basis(k)
        cols = [self.relative_coords(x * b, k) for b in basis]
        return linalg.transpose(cols)

    def restrict(self, x, k):
        """View an element lying in the prefix field as an element of it."""
        F = self.prefix(k)
        if any(x.c[F.n:]):
            raise NotSubfield("element does not lie in the requested subfield")
        return F.from_coords(x.c[:F.n])

    def embed(self, x):
        return self.element(x)

    # sampling

    def random_element(self, rng, height=None, nonzero=True, integral=False):
        p = self.p
        height = height if height is not None else p * p
        while True:
            coords = tuple(Fraction(rng.randint(-height, height)) for _ in range(self.n))
            x = FieldElement(self, coords)
            if not integral and rng.random() < 0.3:
                x = x * self.uniformizer_inverse ** rng.randint(1, 2)
            if not nonzero or not x.is_zero():
                return x

    def __repr__(self):
        return f"LocalField({self.spec})"

    def __str__(self):
        return str(self.spec)


@lru_cache(maxsize=None)
def build_field(spec):
    return LocalField(spec)


def _rational_sqrt(x):
    if x <= 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _lift(r, alg, kinds):
    positions = _unit_positions(alg.degrees, kinds)
    coords = [0] * alg.dim
    for pos, c in zip(positions, r.c):
        coords[pos] = c
    return tuple(coords)


def _unit_positions(degrees, kinds):
    """Flat indices of the monomials in unramified generators only, in
    residue-field coordinate order."""
    size = math.prod(degrees) if degrees else 1
    pos = {}
    for i in range(size):
        rest, r, rs, ok = i, 0, 1, True
        for d, kind in zip(degrees, kinds):
            dig = rest % d
            rest //= d
            if kind == "ram":
                if dig:
                    ok = False
                    break
            else:
                r += dig * rs
                rs *= d
        if ok:
            pos[r] = i
    return [pos[r] for r in range(len(pos))]


def _solve_rational(A, b):
    n = len(A)
    M = [[Fraction(v) for v in A[i]] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c])
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


CLASS_NAMES = ("1", "u", "pi", "u*pi")


@dataclass
class SquareClassGroup:
    """F^x / (F^x)^2 with representatives 1, u, pi, u*pi.

    Class indices are 2-bit codes: bit 0 records the residue character of the
    unit part, bit 1 the parity of the valuation, so the group law is XOR.
    """

    field: LocalField
    reps: tuple = dc_field(init=False)

    def __post_init__(self):
        F = self.field
        u, w = F.nonresidue, F.uniformizer
        self.reps = (F.one, u, w, u * w)

    def class_of(self, x):
        x = self.field.element(x)
        if x.is_zero():
            raise ZeroInput("zero has no square class")
        parity = x.ord % 2
        chi = x.unit_part().residue().chi()
        return (0 if chi == 1 else 1) | (parity << 1)

    def rep(self, i):
        return self.reps[i]

    @staticmethod
    def mul(i, j):
        return i ^ j

    def name(self, i):
        return CLASS_NAMES[i]

    def __len__(self):
        return 4


def span(classes):
    """Subgroup of the square-class group generated by the given indices."""
    group = {0}
    for c in classes:
        group |= {g ^ c for g in group}
    return frozenset(group)


def norm_and_trace(E, F_sub, x):
    k = E.prefix_length(F_sub)
    x = E.element(x)
    M = E.regular_matrix(x, k)
    return linalg.det(M), linalg.trace(M)


def norm(E, F_sub, x):
    return norm_and_trace(E, F_sub, x)[0]


def y_invariant(E, F_sub=0):
    """[(E^x)^2 ∩ F^x : (F^x)^2], by testing each class of F for squareness in E."""
    F = E.prefix(F_sub)
    return sum(1 for r in F.square_classes.reps if E.is_square(E.element(r)))


def squares_from_below(E, F_sub=0):
    """Classes of F that become squares in E."""
    F = E.prefix(F_sub)
    return frozenset(i for i, r in enumerate(F.square_classes.reps) if E.is_square(E.element(r)))


def norm_image_in_square_classes(E, F_sub=0):
    """Image of N_{E/F}(E^x) in F^x/(F^x)^2, as a set of class indices."""
    F = E.prefix(F_sub)
    gens = [E.teichmuller_generator, E.uniformizer, E.one + E.uniformizer, E.nonresidue]
    return span(F.class_of(norm(E, F_sub, g)) for g in gens)
