"""Independent reference implementations used only by the tests."""

from fractions import Fraction


def doubling(k):
    """Sylvester matrix by block doubling of nested lists."""
    h = [[1]]
    for _ in range(k):
        h = [r + r for r in h] + [r + [-v for v in r] for r in h]
    return h


def dense_mul(rows, x):
    return [sum(a * b for a, b in zip(r, x)) for r in rows]


def pascal(limit=80):
    """Binomials from Pascal's rule, with zero outside the triangle."""
    rows = [[1]]
    for a in range(1, limit):
        prev = rows[-1]
        rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, a)] + [1])

    def c(a, b):
        if a < 0 or b < 0 or b > a:
            return 0
        return rows[a][b]

    return c


C = pascal()


def p1(n, m):
    if m % 2 == 1:
        return n * C(n // 2 - 1, (m - 1) // 2) ** 2
    return m * C(n // 2, m // 2) ** 2 - n * C(n // 2 - 1, m // 2 - 1) ** 2


def p2(n, m):
    q = n // 4
    total = 0
    j = 0
    while j <= m - q:
        total += C(q - 1, (m - 1) // 2 - j) ** 2 * C(q, j) * C(q, m - q - j)
        j += 1
    j = 0
    while j <= m - q - 1:
        total += C(q, (m - 1) // 2 - j) ** 2 * C(q - 1, j) * C(q - 1, m - q - j - 1)
        j += 1
    return total


def q1(n, m):
    return abs(n - 2 * m) + Fraction(2 * (n - 1) * p1(n, m), C(n, m))


def q2(n, m):
    return abs(2 * n - 4 * m) + Fraction(n * (n - 2) * p2(n, m),
                                         C(n // 2, n // 4) * C(n // 2, m - n // 4))


def q1_max(n):
    return max(q1(n, m) for m in range(1, n + 1))


def q2_max(n):
    return max(q2(n, m) for m in range(n // 4, 3 * n // 4 + 1) if m % 2)
