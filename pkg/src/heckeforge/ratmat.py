"""Exact rational matrices on top of the integer kernels.

A RatMat stores an n x n integer matrix `num` (flat, row-major) together
with a positive denominator `den`; the represented matrix is num/den.  The
pair is kept normalized (gcd of all entries and den is 1) so equality is
literal.  All arithmetic is exact.
"""

from fractions import Fraction
from math import gcd

from heckeforge import kernels


class SingularMatrixError(ZeroDivisionError):
    pass


def _normalize(num, den):
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = den
    for x in num:
        if x:
            g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return num, den


class RatMat:
    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den=1, normalized=False):
        self.n = n
        if normalized:
            self.num = tuple(num)
            self.den = den
        else:
            num, den = _normalize(list(num), den)
            self.num = tuple(num)
            self.den = den

    @classmethod
    def from_rows(cls, rows):
        """Build from nested lists of ints / Fractions."""
        n = len(rows)
        den = 1
        flat = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            for x in row:
                f = Fraction(x)
                flat.append(f)
                den = den * f.denominator // gcd(den, f.denominator)
        num = [int(f * den) for f in flat]
        return cls(n, num, den)

    @classmethod
    def identity(cls, n):
        num = [0] * (n * n)
        for i in range(n):
            num[i * n + i] = 1
        return cls(n, num, 1, normalized=True)

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        rows = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(rows)

    def rows(self):
        n, d = self.n, self.den
        return [[Fraction(self.num[i * n + j], d) for j in range(n)] for i in range(n)]

    def entry(self, i, j):
        return Fraction(self.num[i * self.n + j], self.den)

    def __mul__(self, other):
        if isinstance(other, RatMat):
            if other.n != self.n:
                raise ValueError("size mismatch")
            return RatMat(self.n, kernels.mat_mul(list(self.num), list(other.num), self.n),
                          self.den * other.den)
        return NotImplemented

    def scale(self, c):
        c = Fraction(c)
        num = [x * c.numerator for x in self.num]
        return RatMat(self.n, num, self.den * c.denominator)

    def inv(self):
        det = kernels.bareiss_det(list(self.num), self.n)
        if det == 0:
            raise SingularMatrixError("matrix is singular")
        adj = kernels.adjugate(list(self.num), self.n)
        return RatMat(self.n, [x * self.den for x in adj], det)

    def det(self):
        return Fraction(kernels.bareiss_det(list(self.num), self.n),
                        self.den ** self.n)

    def transpose(self):
        n = self.n
        num = [self.num[j * n + i] for i in range(n) for j in range(n)]
        return RatMat(n, num, self.den, normalized=True)

    def is_iwahori(self, p, r):
        """Membership in the Iwahori subgroup of level p^r (r=0: GL_n(Z_p))."""
        return kernels.is_iwahori_scaled(list(self.num), self.den, self.n, p, r)

    def is_integral(self, p):
        return kernels.is_iwahori_scaled(list(self.num), self.den, self.n, p, 0)

    def __eq__(self, other):
        if not isinstance(other, RatMat):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.num == other.num

    def __hash__(self):
        return hash((self.n, self.den, self.num))

    def __repr__(self):
        return f"RatMat({self.rows()!r})"


def j_embed(g):
    """Diagonal embedding GL_{n-1} -> GL_n, block diag(g, 1)."""
    n = g.n + 1
    rows = [[Fraction(0)] * n for _ in range(n)]
    gr = g.rows()
    for i in range(n - 1):
        for j in range(n - 1):
            rows[i][j] = gr[i][j]
    rows[n - 1][n - 1] = Fraction(1)
    return RatMat.from_rows(rows)


def coset_equal(a, b, p, r):
    """gK = hK for the level-p^r Iwahori (exact; r=0 gives spherical K)."""
    inv = a.inv()
    return kernels.mul_is_iwahori(list(inv.num), inv.den, list(b.num), b.den,
                                  a.n, p, r)
