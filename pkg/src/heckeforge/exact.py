"""Exact scalars: rationals, cyclotomic fields Q(zeta_m), p-adic valuations.

Rationals are fractions.Fraction throughout.  A Cyclo is an element of
Q(zeta_m) stored as its canonical representative in the power basis
zeta^0..zeta^{phi(m)-1}, i.e. reduced modulo the m-th cyclotomic
polynomial.  Cross-conductor arithmetic lifts both operands to the lcm
conductor, so equality is literal equality of reduced coefficient vectors
at a common conductor.  No floating point anywhere.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, inf
from typing import NamedTuple

PADIC_INFINITY = inf


class PadicVal(NamedTuple):
    prime: int
    value: object  # int or math.inf

    def __int__(self):
        return int(self.value)


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def vp(x, p):
    """p-adic valuation of an int, Fraction or Cyclo; vp(0) = +inf.

    For a Cyclo this is the minimum of the coefficient valuations in the
    power basis (Z[zeta_m] is the maximal order, so this detects
    p-integrality exactly).
    """
    if isinstance(x, Cyclo):
        vals = [vp(c, p) for c in x.c]
        return min(vals) if vals else PADIC_INFINITY
    x = Fraction(x)
    if x == 0:
        return PADIC_INFINITY
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_valuation(x, p):
    """Exact valuation as a PadicVal; rejects non-prime p."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    return PadicVal(p, vp(x, p))


@lru_cache(maxsize=None)
def euler_phi(m):
    result = m
    mm = m
    d = 2
    while d * d <= mm:
        if mm % d == 0:
            while mm % d == 0:
                mm //= d
            result -= result // d
        d += 1
    if mm > 1:
        result -= result // mm
    return result


def _int_poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_div_exact(a, b):
    """Exact division of integer polynomials (b monic up to leading 1/-1)."""
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    lead = b[-1]
    out = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        q = a[i + db] // lead
        out[i] = q
        if q:
            for j, y in enumerate(b):
                a[i + j] -= q * y
    if any(a[db:]) or any(a[:db]):
        raise ArithmeticError("division not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _int_poly_div_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _reduce_mod_cyclotomic(m, coeffs):
    """Reduce Fraction coefficients of a poly in zeta_m (any degree < m or
    given with exponents already folded mod m) modulo Phi_m."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg + 1):
                c[i - deg + j] -= lead * Fraction(phi[j])
        c.pop()
    while len(c) < deg:
        c.append(Fraction(0))
    return tuple(c[:deg])


class Cyclo:
    """Element of Q(zeta_m) in the reduced power basis."""

    __slots__ = ("m", "c")

    def __init__(self, m, coeffs):
        self.m = m
        phi = euler_phi(m)
        c = [Fraction(x) for x in coeffs]
        if len(c) != phi:
            raise ValueError(f"need {phi} coefficients for conductor {m}")
        self.c = tuple(c)

    @classmethod
    def rational(cls, x):
        return cls(1, [Fraction(x)])

    @classmethod
    def zeta(cls, m, k=1):
        """zeta_m^k."""
        k %= m
        coeffs = [Fraction(0)] * m
        coeffs[k] = Fraction(1)
        return cls(m, _reduce_mod_cyclotomic(m, coeffs))

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        return None

    def lift(self, big_m):
        """Rewrite in Q(zeta_{big_m}); requires m | big_m."""
        if big_m == self.m:
            return self
        if big_m % self.m != 0:
            raise ValueError("conductor must be a multiple")
        step = big_m // self.m
        coeffs = [Fraction(0)] * big_m
        for i, x in enumerate(self.c):
            if x:
                coeffs[i * step] += x
        return Cyclo(big_m, _reduce_mod_cyclotomic(big_m, coeffs))

    def _common(self, other):
        m = self.m * other.m // gcd(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return Cyclo(a.m, [x + y for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.m, [-x for x in self.c])

    def __sub__(self, other):
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        m = a.m
        prod = [Fraction(0)] * m
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[(i + j) % m] += x * y
        return Cyclo(m, _reduce_mod_cyclotomic(m, prod))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via extended gcd with Phi_m."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclo.rational(1 / self.as_rational())
        phi = [Fraction(x) for x in cyclotomic_poly(self.m)]
        a = list(self.c)
        # extended Euclid in Q[x]: find s with s*a = 1 (mod Phi_m)
        r0, r1 = phi, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _deg(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _int_free_mul(q, s1))
        if _deg(r1) < 0:
            raise ZeroDivisionError("not invertible (zero divisor?)")
        lead = r1[0]
        inv_coeffs = [x / lead for x in s1]
        return Cyclo(self.m, _reduce_mod_cyclotomic(self.m, inv_coeffs))

    def __truediv__(self, other):
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclo._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclo.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        """Complex conjugation zeta -> zeta^{-1}."""
        m = self.m
        coeffs = [Fraction(0)] * m
        for i, x in enumerate(self.c):
            if x:
                coeffs[(m - i) % m] += x
        return Cyclo(m, _reduce_mod_cyclotomic(m, coeffs))

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.c[0]

    def reduced(self):
        """Canonical representative at the smallest conductor d | m."""
        if self.is_rational():
            return Cyclo(1, [self.c[0]]) if self.m != 1 else self
        best = self
        for d in sorted(_divisors(self.m)):
            if d == self.m:
                break
            down = _descend(self, d)
            if down is not None:
                best = down
                break
        return best

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.c == b.c

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo({self.c[0]})"
        return f"Cyclo(m={self.m}, {list(self.c)})"

    def to_json(self):
        small = self.reduced()
        return {"m": small.m, "coeffs": [str(x) for x in small.c]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["m"], [Fraction(s) for s in obj["coeffs"]])


def _divisors(m):
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            if d != m // d:
                out.append(m // d)
        d += 1
    return out


def _descend(x, d):
    """Rewrite x in Q(zeta_d) if possible (d | m), else None: solve the
    linear system expressing x in the lifted power basis of zeta_d."""
    m = x.m
    phi_d = euler_phi(d)
    basis = [Cyclo.zeta(d, j).lift(m).c for j in range(phi_d)]
    # solve sum_j c_j basis[j] = x.c by Gaussian elimination (phi(m) rows)
    rows = len(x.c)
    aug = [[basis[j][i] for j in range(phi_d)] + [x.c[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for col in range(phi_d):
        piv = next((k for k in range(r, rows) if aug[k][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for k in range(rows):
            if k != r and aug[k][col] != 0:
                c = aug[k][col]
                aug[k] = [v - c * w for v, w in zip(aug[k], aug[r])]
        piv_cols.append(col)
        r += 1
    # consistency: rows beyond the pivots must have zero RHS
    for k in range(r, rows):
        if aug[k][phi_d] != 0:
            return None
    coeffs = [Fraction(0)] * phi_d
    for row_idx, col in enumerate(piv_cols):
        coeffs[col] = aug[row_idx][phi_d]
    return Cyclo(d, coeffs)


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _deg(p):
    p = _trim(p)
    if len(p) == 1 and p[0] == 0:
        return -1
    return len(p) - 1


def _poly_divmod(a, b):
    a, b = _trim(a), _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while _deg(r) >= _deg(b):
        d = _deg(r) - _deg(b)
        coef = r[_deg(r)] / b[_deg(b)]
        q[d] += coef
        for i in range(len(_trim(b))):
            r[i + d] -= coef * b[i]
        r = _trim(r)
    return q, r


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _int_free_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out
