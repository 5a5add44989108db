"""Dense matrix helpers over any field whose elements support + - * / and
is_zero().  Matrices are lists of row lists."""

from .errors import DivisionByZero


def identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def zeros(rows, cols, field):
    return [[field.zero] * cols for _ in range(rows)]


def antidiagonal(n, field):
    """The matrix J with ones on the anti-diagonal."""
    return [[field.one if i + j == n - 1 else field.zero for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    out = []
    for row in A:
        new_row = []
        for col in Bt:
            acc = None
            for a, b in zip(row, col):
                if a.is_zero() or b.is_zero():
                    continue
                t = a * b
                acc = t if acc is None else acc + t
            new_row.append(acc if acc is not None else row[0] - row[0])
        out.append(new_row)
    return out


def matadd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matsub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matscale(c, A):
    return [[c * a for a in row] for row in A]


def matvec(A, v):
    return [sum_of([a * x for a, x in zip(row, v)]) for row in A]


def sum_of(items):
    acc = items[0]
    for x in items[1:]:
        acc = acc + x
    return acc


def congruent(g, S):
    """ᵗg·S·g."""
    return matmul(matmul(transpose(g), S), g)


def equal(A, B):
    return all((a - b).is_zero() for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def is_symmetric(A):
    n = len(A)
    return all((A[i][j] - A[j][i]).is_zero() for i in range(n) for j in range(i + 1, n))


def det(A):
    n = len(A)
    M = [list(r) for r in A]
    sign = 1
    result = None
    for c in range(n):
        piv = next((r for r in range(c, n) if not M[r][c].is_zero()), None)
        if piv is None:
            return M[0][0] - M[0][0]
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        pv = M[c][c]
        result = pv if result is None else result * pv
        inv = pv.inverse()
        for r in range(c + 1, n):
            if M[r][c].is_zero():
                continue
            f = M[r][c] * inv
            M[r] = [a - f * b if k >= c else a for k, (a, b) in enumerate(zip(M[r], M[c]))]
    return result if sign == 1 else -result


def trace(A):
    return sum_of([A[i][i] for i in range(len(A))])


def solve(A, b):
    """Solve A·x = b.  Returns None when the system is inconsistent; free
    variables are set to zero."""
    rows = len(A)
    cols = len(A[0])
    M = [list(A[i]) + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    zero = b[0] - b[0]
    if any(not M[i][cols].is_zero() for i in range(r, rows)):
        return None
    x = [zero] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def inverse(A, field):
    n = len(A)
    M = [list(A[i]) + identity(n, field)[i] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if piv is None:
            raise DivisionByZero("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def block(blocks):
    """Assemble a matrix from a grid of equally sized blocks."""
    out = []
    for brow in blocks:
        for i in range(len(brow[0])):
            out.append([x for blk in brow for x in blk[i]])
    return out
