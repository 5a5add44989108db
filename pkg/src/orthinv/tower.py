"""Flat-coordinate arithmetic in iterated simple extensions.

An algebra K_0[y_1]/(h_1)[y_2]/(h_2)... is stored by the low coefficients of
each monic modulus h_i, every coefficient being a flat tuple of the previous
level.  An element of level i is a flat tuple of length n_i whose j-th block of
n_{i-1} entries is the coefficient of y_i^j.  K_0 is Q (entries are ints or
Fractions) or F_p (entries are ints reduced mod p).
"""

from itertools import chain


class TowerAlgebra:
    def __init__(self, modulus=None, layers=()):
        self.modulus = modulus
        self.layers = tuple(tuple(tuple(c) for c in low) for low in layers)
        self.degrees = tuple(len(low) for low in self.layers)
        sizes = [1]
        for d in self.degrees:
            sizes.append(sizes[-1] * d)
        self.sizes = tuple(sizes)
        self.dim = sizes[-1]

    def extended(self, low_coeffs):
        return TowerAlgebra(self.modulus, self.layers + (tuple(low_coeffs),))

    def truncated(self, level):
        return TowerAlgebra(self.modulus, self.layers[:level])

    def _red(self, v):
        return v % self.modulus if self.modulus else v

    def zero(self, level=None):
        return (0,) * self.sizes[self._lvl(level)]

    def one(self, level=None):
        return (1,) + (0,) * (self.sizes[self._lvl(level)] - 1)

    def _lvl(self, level):
        return len(self.degrees) if level is None else level

    def add(self, a, b):
        m = self.modulus
        if m:
            return tuple((x + y) % m for x, y in zip(a, b))
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.modulus
        if m:
            return tuple((x - y) % m for x, y in zip(a, b))
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self._red(-x) for x in a)

    def scale(self, c, a):
        return tuple(self._red(c * x) for x in a)

    def mul(self, a, b, level=None):
        level = self._lvl(level)
        if level == 0:
            return (self._red(a[0] * b[0]),)
        d = self.degrees[level - 1]
        if d == 1:
            return self.mul(a, b, level - 1)
        s = self.sizes[level - 1]
        A = [a[i * s:(i + 1) * s] for i in range(d)]
        B = [b[i * s:(i + 1) * s] for i in range(d)]
        zero = (0,) * s
        prod = [zero] * (2 * d - 1)
        for i, ai in enumerate(A):
            if not any(ai):
                continue
            for j, bj in enumerate(B):
                if any(bj):
                    prod[i + j] = self.add(prod[i + j], self.mul(ai, bj, level - 1))
        low = self.layers[level - 1]
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if not any(c):
                continue
            for i, hi in enumerate(low):
                if any(hi):
                    prod[k - d + i] = self.sub(prod[k - d + i], self.mul(c, hi, level - 1))
        return tuple(chain.from_iterable(prod[:d]))

    def power(self, a, k, level=None):
        result = self.one(level)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base, level)
            k >>= 1
            if k:
                base = self.mul(base, base, level)
        return result

    def embed(self, a, level):
        """Pad a level-`level` element up to the top level."""
        return tuple(a) + (0,) * (self.dim - len(a))

    def digits(self, index):
        """Per-layer exponents of the flat basis monomial with this index."""
        out = []
        for lvl in range(len(self.degrees)):
            out.append((index // self.sizes[lvl]) % self.degrees[lvl])
        return tuple(out)
