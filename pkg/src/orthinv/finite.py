"""Finite fields of odd characteristic, built as towers over F_p.

Residue fields of p-adic towers and the fields of the brute-force oracle both
use this class.  Elements are indexed by the integer sum(c_k * p**k) of their
flat coordinates; "smallest" always refers to that index.
"""

from functools import cached_property

from sympy import factorint, isprime

from .errors import BadPrime, DivisionByZero
from .tower import TowerAlgebra


class GFElement:
    __slots__ = ("field", "c")

    def __init__(self, field, coords):
        self.field = field
        self.c = coords

    def _coerce(self, other):
        if isinstance(other, GFElement):
            return other
        return self.field.element(other)

    def __add__(self, other):
        other = self._coerce(other)
        return GFElement(self.field, self.field.alg.add(self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return GFElement(self.field, self.field.alg.sub(self.c, other.c))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return GFElement(self.field, self.field.alg.neg(self.c))

    def __mul__(self, other):
        other = self._coerce(other)
        return GFElement(self.field, self.field.alg.mul(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return GFElement(self.field, self.field.alg.power(self.c, k))

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a finite field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return isinstance(other, GFElement) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self):
        return not any(self.c)

    @property
    def index(self):
        p = self.field.p
        return sum(x * p ** k for k, x in enumerate(self.c))

    def is_square(self):
        if self.is_zero():
            return True
        return (self ** ((self.field.q - 1) // 2)).c == self.field.alg.one()

    def chi(self):
        """Quadratic character: 1 on nonzero squares, -1 on non-squares."""
        if self.is_zero():
            raise DivisionByZero("quadratic character of zero")
        return 1 if self.is_square() else -1

    def __repr__(self):
        return f"GF({self.field.q})[{self.index}]"


class GF:
    """F_p[y_1]/(h_1)[y_2]/(h_2)... with each h_i irreducible."""

    def __init__(self, p, alg=None):
        if p % 2 == 0 or not isprime(p):
            raise BadPrime(f"{p} is not an odd prime")
        self.p = p
        self.alg = alg if alg is not None else TowerAlgebra(p)
        self.degree = self.alg.dim
        self.q = p ** self.degree

    @classmethod
    def of_order(cls, q):
        """F_q from a single extension of F_p by the smallest irreducible."""
        fac = factorint(q)
        if len(fac) != 1:
            raise BadPrime(f"{q} is not a prime power")
        (p, k), = fac.items()
        base = cls(p)
        if k == 1:
            return base
        return base.extend(smallest_irreducible(base, k))

    def extend(self, poly):
        """Adjoin a root of the monic irreducible `poly` (low-first list)."""
        low = [self.element(c).c for c in poly[:-1]]
        return GF(self.p, self.alg.extended(low))

    def element(self, value):
        if isinstance(value, GFElement):
            return value
        if isinstance(value, tuple):
            return GFElement(self, tuple(x % self.p for x in value))
        return GFElement(self, (value % self.p,) + (0,) * (self.degree - 1))

    def from_index(self, index):
        coords = []
        for _ in range(self.degree):
            index, r = divmod(index, self.p)
            coords.append(r)
        return GFElement(self, tuple(coords))

    @property
    def zero(self):
        return GFElement(self, self.alg.zero())

    @property
    def one(self):
        return GFElement(self, self.alg.one())

    def elements(self):
        for i in range(self.q):
            yield self.from_index(i)

    def generator(self):
        """The adjoined root of the top layer, as an element."""
        s = self.alg.sizes[-2] if len(self.alg.sizes) > 1 else 1
        if self.degree == 1:
            return self.one
        coords = [0] * self.degree
        coords[s] = 1
        return GFElement(self, tuple(coords))

    @cached_property
    def primitive_element(self):
        """Smallest element of multiplicative order q - 1."""
        order = self.q - 1
        primes = list(factorint(order)) if order > 1 else []
        for i in range(1, self.q):
            x = self.from_index(i)
            if all((x ** (order // r)) != self.one for r in primes):
                return x
        raise AssertionError("no primitive element")

    @cached_property
    def nonresidue(self):
        for i in range(1, self.q):
            x = self.from_index(i)
            if not x.is_square():
                return x
        raise AssertionError("no non-residue")

    @cached_property
    def _roots(self):
        table = {}
        for x in self.elements():
            table.setdefault((x * x).c, x)
        return table

    def sqrt(self, x):
        """A square root of x, or None if x is not a square."""
        r = self._roots.get(self.element(x).c)
        return r

    def minimal_polynomial(self, x):
        """Minimal polynomial of x over F_p, monic, low-first coefficient list."""
        powers = [self.one.c]
        while True:
            nxt = self.alg.mul(powers[-1], x.c)
            sol = _solve_mod_p([list(v) for v in powers], list(nxt), self.p)
            if sol is not None:
                return [(-c) % self.p for c in sol] + [1]
            powers.append(nxt)

    def __eq__(self, other):
        return isinstance(other, GF) and self.p == other.p and self.alg.layers == other.alg.layers

    def __hash__(self):
        return hash((self.p, self.alg.layers))

    def __repr__(self):
        return f"GF({self.q})"


def _solve_mod_p(columns, target, p):
    """Solve sum_j a_j * columns[j] = target over F_p; None if inconsistent."""
    rows = len(target)
    k = len(columns)
    aug = [[columns[j][i] % p for j in range(k)] + [target[i] % p] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][k] for i in range(r, rows)):
        return None
    sol = [0] * k
    for i, c in enumerate(pivots):
        sol[c] = aug[i][k]
    return sol


# polynomials over a GF: low-first lists of GFElement

def _trim(a):
    while len(a) > 1 and a[-1].is_zero():
        a = a[:-1]
    return a


def poly_mod(a, m):
    a = list(a)
    lead_inv = m[-1].inverse()
    dm = len(m) - 1
    while len(a) - 1 >= dm and not (len(a) == 1 and a[0].is_zero()):
        if a[-1].is_zero():
            a.pop()
            continue
        c = a[-1] * lead_inv
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = a[shift + i] - c * mi
        a.pop()
    return _trim(a) if a else [m[0].field.zero]


def poly_mul(a, b):
    field = a[0].field
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def poly_powmod(a, k, m):
    field = m[0].field
    result = [field.one]
    base = poly_mod(a, m)
    while k:
        if k & 1:
            result = poly_mod(poly_mul(result, base), m)
        k >>= 1
        if k:
            base = poly_mod(poly_mul(base, base), m)
    return result


def poly_gcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while not (len(b) == 1 and b[0].is_zero()):
        a, b = b, poly_mod(a, b)
    lead = a[-1].inverse()
    return [c * lead for c in a]


def is_irreducible(poly, field):
    """Rabin's test for a monic polynomial over `field`."""
    d = len(poly) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    x = [field.zero, field.one]
    xq = x
    powers = {}
    for k in range(1, d + 1):
        xq = poly_powmod(xq, field.q, poly)
        powers[k] = xq
    diff = _sub(powers[d], x)
    if not (len(diff) == 1 and diff[0].is_zero()):
        return False
    for r in factorint(d):
        g = poly_gcd(poly, _sub(powers[d // r], x))
        if len(g) > 1:
            return False
    return True


def _sub(a, b):
    field = (a + b)[0].field
    n = max(len(a), len(b))
    a = list(a) + [field.zero] * (n - len(a))
    b = list(b) + [field.zero] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def smallest_irreducible(field, degree):
    """Smallest monic irreducible of the given degree over `field`.

    Candidates are ordered by the integer whose base-q digits (constant term
    first) are the coefficient indices.
    """
    q = field.q
    for code in range(q ** degree):
        coeffs = []
        c = code
        for _ in range(degree):
            c, r = divmod(c, q)
            coeffs.append(field.from_index(r))
        poly = coeffs + [field.one]
        if is_irreducible(poly, field):
            return poly
    raise AssertionError("no irreducible polynomial found")
