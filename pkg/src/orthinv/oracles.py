"""Brute-force reference computations used to check closed-form results."""


def hilbert_bruteforce(a, b, p):
    """(a, b) over Q_p for integers a, b with vp <= 1, by solvability mod p^3.

    A primitive solution of z^2 = a x^2 + b y^2 can be scaled so one
    coordinate is 1.  With that coordinate fixed, a solution modulo p^3 lifts
    by Hensel's lemma because the relevant partial derivative has valuation
    at most 1; conversely a p-adic solution reduces to one.
    """
    m = p ** 3
    squares = {(z * z) % m for z in range(m)}
    a, b = a % m, b % m
    # x = 1: z^2 - b y^2 = a
    if any((a + b * y * y) % m in squares for y in range(m)):
        return 1
    # y = 1: z^2 - a x^2 = b
    if any((b + a * x * x) % m in squares for x in range(m)):
        return 1
    # z = 1: a x^2 + b y^2 = 1
    by2 = {(b * y * y) % m for y in range(m)}
    if any((1 - a * x * x) % m in by2 for x in range(m)):
        return 1
    return -1
