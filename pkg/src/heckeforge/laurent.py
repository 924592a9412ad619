"""Multivariate Laurent polynomials and matrices over cyclotomic scalars.

Variables are global names; a monomial is a sorted tuple of (name, exponent)
pairs with nonzero integer exponents (possibly negative).  Coefficients are
Cyclo scalars.  These carry the symbolic side of the matrix identity
checks; numeric evaluation hands off to RatMat.
"""

from fractions import Fraction

from heckeforge.exact import Cyclo
from heckeforge.ratmat import RatMat


class LaurentInversionError(ArithmeticError):
    """Raised when a matrix determinant is not a unit of the Laurent ring."""

    def __init__(self, det):
        self.det = det
        super().__init__(f"determinant is not a unit monomial: {det!r}")


def _coerce_scalar(x):
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo.rational(x)
    return None


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: dict monomial-key -> Cyclo, zero coefficients dropped
        t = {}
        if terms:
            for k, v in terms.items():
                if v:
                    t[k] = v
        self.terms = t

    @classmethod
    def const(cls, c):
        c = _coerce_scalar(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, name, exp=1):
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): Cyclo.rational(1)})

    @classmethod
    def _coerce(cls, x):
        if isinstance(x, LaurentPoly):
            return x
        s = _coerce_scalar(x)
        return None if s is None else cls.const(s)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = LaurentPoly._coerce(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        for k, v in other.terms.items():
            s = t.get(k)
            s = v if s is None else s + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = LaurentPoly._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    @staticmethod
    def _mul_keys(k1, k2):
        e = dict(k1)
        for name, ex in k2:
            ne = e.get(name, 0) + ex
            if ne:
                e[name] = ne
            else:
                e.pop(name, None)
        return tuple(sorted(e.items()))

    def __mul__(self, other):
        other = LaurentPoly._coerce(other)
        if other is None:
            return NotImplemented
        t = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = self._mul_keys(k1, k2)
                prod = v1 * v2
                s = t.get(k)
                s = prod if s is None else s + prod
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_unit(self):
        return len(self.terms) == 1

    def unit_inverse(self):
        if not self.is_unit():
            raise LaurentInversionError(self)
        (k, v), = self.terms.items()
        ik = tuple(sorted((name, -ex) for name, ex in k))
        return LaurentPoly({ik: v.inverse()})

    def __eq__(self, other):
        other = LaurentPoly._coerce(other)
        if other is None:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(v == other.terms[k] for k, v in self.terms.items())

    def is_constant(self):
        return not self.terms or set(self.terms) == {()}

    def constant_value(self):
        if not self.terms:
            return Cyclo.rational(0)
        if set(self.terms) != {()}:
            raise ValueError("not constant")
        return self.terms[()]

    def substitute(self, assign):
        """Substitute scalars or polynomials for (some) variables."""
        out = LaurentPoly.const(0)
        for k, v in self.terms.items():
            term = LaurentPoly.const(v)
            for name, ex in k:
                if name in assign:
                    val = assign[name]
                    if isinstance(val, LaurentPoly):
                        term = term * val ** ex
                    elif isinstance(val, Fraction) or isinstance(val, int):
                        term = term * LaurentPoly.const(Fraction(val) ** ex)
                    else:  # Cyclo
                        term = term * LaurentPoly.const(val ** ex)
                else:
                    term = term * LaurentPoly.var(name, ex)
            out = out + term
        return out

    def rename(self, mapping):
        """Rename variables (used for symmetry checks)."""
        t = {}
        for k, v in self.terms.items():
            nk = tuple(sorted((mapping.get(name, name), ex) for name, ex in k))
            t[nk] = t.get(nk, LaurentPoly.const(0).constant_value()) + v
        return LaurentPoly(t)

    def variables(self):
        names = set()
        for k in self.terms:
            for name, _ in k:
                names.add(name)
        return names

    def min_degree_in(self, name):
        """Minimal exponent of `name` over all terms (0 if absent everywhere)."""
        degs = [dict(k).get(name, 0) for k in self.terms]
        return min(degs) if degs else 0

    def __repr__(self):
        if not self.terms:
            return "LPoly(0)"
        bits = []
        for k, v in sorted(self.terms.items()):
            mono = "*".join(f"{n}^{e}" if e != 1 else n for n, e in k) or "1"
            bits.append(f"({v!r})*{mono}")
        return "LPoly(" + " + ".join(bits) + ")"


def lvar(name, exp=1):
    return LaurentPoly.var(name, exp)


def lconst(c):
    return LaurentPoly.const(c)


class LaurentMatrix:
    __slots__ = ("n", "entries")

    def __init__(self, entries):
        self.n = len(entries)
        rows = []
        for row in entries:
            if len(row) != self.n:
                raise ValueError("matrix must be square")
            rows.append(tuple(LaurentPoly._coerce(x) for x in row))
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __mul__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = LaurentPoly.const(0)
                for k in range(n):
                    a = self.entries[i][k]
                    if a:
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return LaurentMatrix(rows)

    def __add__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return LaurentMatrix([[a + b for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return LaurentMatrix([[a - b for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return LaurentMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c):
        c = LaurentPoly._coerce(c)
        return LaurentMatrix([[c * a for a in row] for row in self.entries])

    def transpose(self):
        n = self.n
        return LaurentMatrix([[self.entries[j][i] for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))

    def det(self):
        n = self.n
        cache = {}

        def minor(r, cols):
            if not cols:
                return LaurentPoly.const(1)
            key = (r, cols)
            got = cache.get(key)
            if got is not None:
                return got
            acc = LaurentPoly.const(0)
            for idx, c in enumerate(cols):
                a = self.entries[r][c]
                if a:
                    rest = cols[:idx] + cols[idx + 1:]
                    sub = minor(r + 1, rest)
                    term = a * sub
                    acc = acc + (term if idx % 2 == 0 else -term)
            cache[key] = acc
            return acc

        return minor(0, tuple(range(n)))

    def inverse(self):
        """Exact inverse; requires det to be a unit (single monomial)."""
        d = self.det()
        if not d.is_unit():
            raise LaurentInversionError(d)
        dinv = d.unit_inverse()
        n = self.n
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                sub = [[self.entries[r][c] for c in range(n) if c != j]
                       for r in range(n) if r != i]
                cof = LaurentMatrix(sub).det() if n > 1 else LaurentPoly.const(1)
                if (i + j) % 2:
                    cof = -cof
                rows[j][i] = cof * dinv
        return LaurentMatrix(rows)

    def substitute(self, assign):
        return LaurentMatrix([[a.substitute(assign) for a in row]
                              for row in self.entries])

    def to_ratmat(self, assign=None):
        """Evaluate to an exact rational matrix."""
        m = self.substitute(assign) if assign else self
        rows = []
        for row in m.entries:
            out = []
            for a in row:
                c = a.constant_value()
                out.append(c.as_rational())
            rows.append(out)
        return RatMat.from_rows(rows)

    def __repr__(self):
        return f"LaurentMatrix({[[repr(e) for e in row] for row in self.entries]})"
