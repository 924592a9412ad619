"""Finite-order characters of (Z/p^s)^*, normalized Gauss sums and the
twisted character-sum engine, all in exact cyclotomic arithmetic.

A character is stored by its images on the standard generators of the unit
group ((-1, 5) for p = 2, s >= 3; a primitive root otherwise) plus a chosen
value at the uniformizer; evaluation goes through a discrete-log table.
"""

import itertools
from fractions import Fraction
from math import gcd

from heckeforge.exact import Cyclo, is_prime, vp


def unit_group_generators(p, s):
    """Generators (g, order) of (Z/p^s)^*."""
    mod = p ** s
    if p == 2:
        if s == 1:
            return []
        if s == 2:
            return [(3, 2)]
        return [(mod - 1, 2), (5, 2 ** (s - 2))]
    phi = (p - 1) * p ** (s - 1)
    for g in range(2, mod):
        if g % p == 0:
            continue
        seen = 1
        x = g
        while x != 1:
            x = x * g % mod
            seen += 1
        if seen == phi:
            return [(g, phi)]
    raise ArithmeticError("no primitive root found")


def _dlog_table(p, s):
    """unit -> exponent vector over the generator list."""
    mod = p ** s
    gens = unit_group_generators(p, s)
    table = {}
    ranges = [range(order) for _, order in gens]
    count = 0
    for exps in itertools.product(*ranges):
        x = 1
        for (g, _), e in zip(gens, exps):
            x = x * pow(g, e, mod) % mod
        table[x] = exps
        count += 1
    if len(table) != count:
        raise ArithmeticError("generator presentation is not free")
    return gens, table


class MultChar:
    """Character of (Z/p^s)^* extended to Q_p^* by a value at p."""

    def __init__(self, p, s, gen_exponents, chi_p=None):
        if not is_prime(p):
            raise ValueError("p must be prime")
        self.p = p
        self.s = s
        self.gens, self._dlog = _dlog_table(p, s)
        self.exps = tuple(e % order for e, (_, order)
                          in zip(gen_exponents, self.gens))
        if len(self.exps) != len(self.gens):
            raise ValueError("one exponent per generator")
        self.chi_p = Cyclo.rational(1) if chi_p is None else chi_p
        self._values = {}
        for unit, dlog in self._dlog.items():
            val = Cyclo.rational(1)
            for e, k, (_, order) in zip(dlog, self.exps, self.gens):
                if k:
                    val = val * Cyclo.zeta(order, e * k)
            self._values[unit] = val

    def value(self, a):
        """chi on a unit (any integer prime to p, or a p-unit Fraction)."""
        a = Fraction(a)
        if vp(a, self.p) != 0:
            raise ValueError("argument is not a p-unit")
        mod = self.p ** self.s
        num = a.numerator % mod
        den = a.denominator % mod
        return self._values[num * pow(den, -1, mod) % mod]

    def value_quasi(self, x):
        """chi extended to Q_p^*: chi(p)^{v_p(x)} times the unit-part value."""
        x = Fraction(x)
        v = vp(x, self.p)
        unit = x / Fraction(self.p) ** v
        return self.chi_p ** v * self.value(unit)

    def conductor_exponent(self):
        """Smallest t with chi trivial on units congruent to 1 mod p^t."""
        mod = self.p ** self.s
        for t in range(self.s + 1):
            pt = self.p ** t
            if all(self._values[u] == 1 for u in self._values
                   if u % pt == 1 % pt):
                return t
        return self.s

    def is_trivial(self):
        return all(v == 1 for v in self._values.values())

    def order(self):
        ords = [order // gcd(order, k) if k else 1
                for k, (_, order) in zip(self.exps, self.gens)]
        out = 1
        for o in ords:
            out = out * o // gcd(out, o)
        return out

    def inverse(self):
        return MultChar(self.p, self.s,
                        [-k for k in self.exps], self.chi_p.inverse())

    def __mul__(self, other):
        if other.p != self.p or other.s != self.s:
            raise ValueError("characters live on different groups")
        return MultChar(self.p, self.s,
                        [a + b for a, b in zip(self.exps, other.exps)],
                        self.chi_p * other.chi_p)

    def __repr__(self):
        return f"MultChar(p={self.p}, s={self.s}, exps={self.exps})"


def all_characters(p, s, chi_p=None):
    """The full dual group of (Z/p^s)^*, of order phi(p^s)."""
    gens = unit_group_generators(p, s)
    ranges = [range(order) for _, order in gens]
    return [MultChar(p, s, exps, chi_p) for exps in itertools.product(*ranges)]


class AddChar:
    """The standard additive character: trivial on Z_p, a/p^t -> zeta_{p^t}^a."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError("p must be prime")
        self.p = p

    def value(self, x):
        x = Fraction(x)
        v = vp(x, self.p)
        if x == 0 or v >= 0:
            return Cyclo.rational(1)
        t = -v
        pt = self.p ** t
        scaled = x * pt  # now a p-unit rational or p-integral
        num = scaled.numerator % pt
        den = scaled.denominator % pt
        return Cyclo.zeta(pt, num * pow(den, -1, pt) % pt)


def classical_gauss_sum(chi):
    """tau(chi) = sum over units mod the conductor of chi(a) zeta^a.

    This is the chi(f_chi)-normalized part: chi(f_chi) G(chi) = tau(chi).
    """
    t = chi.conductor_exponent()
    if t == 0:
        raise ValueError("character has trivial conductor")
    pt = chi.p ** t
    psi = AddChar(chi.p)
    acc = Cyclo.rational(0)
    for a in range(1, pt):
        if a % chi.p:
            acc = acc + chi.value(a) * psi.value(Fraction(a, pt))
    return acc


def gauss_sum(chi):
    """The normalized Gauss sum G(chi) = chi(p)^{-t} tau(chi), the full sum
    of chi(a/f) psi(a/f) over a mod the conductor f = p^t."""
    t = chi.conductor_exponent()
    if t == 0:
        raise ValueError("character has trivial conductor")
    return chi.chi_p ** (-t) * classical_gauss_sum(chi)


def gauss_sum_oracle(chi, extra=1):
    """Independent route to G(chi): sum chi(g) psi(g / p^t) over units at a
    level deeper than the conductor, then divide out the fiber count.
    Exercises a longer summation with a different grouping of terms."""
    t = chi.conductor_exponent()
    if t == 0:
        raise ValueError("character has trivial conductor")
    p = chi.p
    level = t + extra
    mod = p ** level
    psi = AddChar(p)
    c = Fraction(1, p ** t)
    acc = Cyclo.rational(0)
    for g in range(1, mod):
        if g % p:
            acc = acc + chi.value(g) * psi.value(c * g)
    return chi.chi_p ** (-t) * acc * Fraction(1, p ** extra)


def twisted_sum(chi, c, level):
    """sum over units gamma mod p^level of chi(gamma) psi(c gamma),
    computed by direct summation; the closed form is asserted against it.

    Nonzero only when v_p(c) = -t for t the conductor exponent, in which
    case the value is p^{level-t} chi(a)^{-1} tau(chi) for c = a p^{-t}.
    """
    t = chi.conductor_exponent()
    if t == 0:
        raise ValueError("character has trivial conductor")
    if level < t:
        raise ValueError("level must be at least the conductor exponent")
    c = Fraction(c)
    p = chi.p
    mod = p ** level
    psi = AddChar(p)
    acc = Cyclo.rational(0)
    for g in range(1, mod):
        if g % p:
            acc = acc + chi.value(g) * psi.value(c * g)
    closed = twisted_sum_closed(chi, c, level)
    if not acc == closed:
        raise ArithmeticError("closed form disagrees with direct summation")
    return acc


def twisted_sum_closed(chi, c, level):
    t = chi.conductor_exponent()
    c = Fraction(c)
    p = chi.p
    if c == 0 or vp(c, p) != -t:
        return Cyclo.rational(0)
    a = c * Fraction(p) ** t
    return (Fraction(p) ** (level - t)
            * chi.value(a).inverse() * classical_gauss_sum(chi))


def birch_constants(n, q, r, s, chi):
    """The two constant bundles of the local and global integral formulas.

    q is the residue cardinality (numeric: the prime), r the Iwahori level
    exponent, s the conductor exponent of chi; needs r >= s >= 1.  Returns
    the scalars and the exponent bookkeeping for audit.
    """
    if not r >= s >= 1:
        raise ValueError("need r >= s >= 1")
    tau = classical_gauss_sum(chi)
    nf = Fraction(q) ** r
    nfchi = Fraction(q) ** s
    euler = Fraction(1)
    for nu in range(1, n + 1):
        euler *= 1 / (1 - Fraction(q) ** (-nu))
    exps_local = {
        "N(f)": -(n + 1) * n * (n - 1) // 6,
        "N(f_chi)": -n * (n + 1) // 2,
        "gauss": n * (n + 1) // 2,
    }
    exps_global = {
        "N(f)": -n * (n - 1) * (n - 2) // 6,
        "N(f_chi)": -n * (n - 1) // 2,
        "gauss": n * (n - 1) // 2,
    }
    c_local = (euler * nf ** exps_local["N(f)"] * nfchi ** exps_local["N(f_chi)"]
               * tau ** exps_local["gauss"])
    c_global = (euler * nf ** exps_global["N(f)"]
                * nfchi ** exps_global["N(f_chi)"] * tau ** exps_global["gauss"])
    return {
        "c_local": c_local,
        "c_global": c_global,
        "euler_factor": euler,
        "exponents_local": exps_local,
        "exponents_global": exps_global,
        "gauss_part": tau,
    }
