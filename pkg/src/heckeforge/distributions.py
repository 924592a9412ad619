"""The p-adic distribution engine: ray-class towers, eigen-symbols, the
distribution relation, boundedness, character integration and the
functional equation.

The rational model of the tower at level m is (Z/p^m)^*; an abstract model
glues a finite cyclic class-group part onto it.  Values live in E^d with d
components indexed by the embedding integers nu; everything is exact.
"""

from fractions import Fraction

from heckeforge.exact import Cyclo, vp
from heckeforge.gauss import all_characters
from heckeforge.modules import full_dual_roots, kappa_of


class QTower:
    """Levels m >= 1 with C(p^m) = (Z/p^m)^* and reduction transitions."""

    def __init__(self, p):
        self.p = p

    def elements(self, m):
        mod = self.p ** m
        return [a for a in range(mod) if a % self.p != 0]

    def lifts(self, m, x):
        """Preimages of x in C(p^{m+1}); kernel order p for m >= 1."""
        mod = self.p ** m
        return [x + k * mod for k in range(self.p)
                if (x + k * mod) % self.p != 0]

    def project(self, m, x):
        return x % self.p ** (m - 1)

    def mul(self, m, x, y):
        return x * y % self.p ** m

    def inv(self, m, x):
        return pow(x, -1, self.p ** m)

    def one(self, m):
        return 1

    def minus_one(self, m):
        return self.p ** m - 1

    def characters(self, m, chi_p=None):
        return all_characters(self.p, m, chi_p)

    def char_value(self, chi, m, x):
        return chi.value(x)

    def char_conductor_level(self, chi):
        return max(chi.conductor_exponent(), 1)


class AbstractTower:
    """C_m = Z/h x (Z/p^m)^*: a finite-group generalization with a cyclic
    class-group part of order h; transitions are identity x reduction."""

    def __init__(self, p, h):
        self.p = p
        self.h = h
        self._q = QTower(p)

    def elements(self, m):
        return [(c, u) for c in range(self.h) for u in self._q.elements(m)]

    def lifts(self, m, x):
        c, u = x
        return [(c, v) for v in self._q.lifts(m, u)]

    def project(self, m, x):
        c, u = x
        return (c, self._q.project(m, u))

    def mul(self, m, x, y):
        return ((x[0] + y[0]) % self.h, self._q.mul(m, x[1], y[1]))

    def inv(self, m, x):
        return ((-x[0]) % self.h, self._q.inv(m, x[1]))

    def one(self, m):
        return (0, 1)

    def minus_one(self, m):
        return (0, self._q.minus_one(m))

    def characters(self, m, chi_p=None):
        out = []
        for j in range(self.h):
            for chi in self._q.characters(m, chi_p):
                out.append((j, chi))
        return out

    def char_value(self, chi, m, x):
        j, fin = chi
        c, u = x
        return Cyclo.zeta(self.h, j * c) * fin.value(u) if self.h > 1 \
            else fin.value(u)

    def char_conductor_level(self, chi):
        return max(chi[1].conductor_exponent(), 1)


class Distribution:
    """Level-indexed values on tower cosets, each a tuple indexed by nus."""

    def __init__(self, tower, nus, values, eigen=None):
        self.tower = tower
        self.nus = tuple(nus)
        self.values = {m: dict(level) for m, level in values.items()}
        self.eigen = eigen  # optional dict: kappa, eta_n, eta_prime, n

    @property
    def levels(self):
        return sorted(self.values)

    def value(self, m, x):
        return self.values[m][x]

    def component(self, m, x, nu):
        return self.values[m][x][self.nus.index(nu)]

    def to_json(self):
        def scal(x):
            return x.to_json() if isinstance(x, Cyclo) else str(Fraction(x))
        return {
            "p": self.tower.p,
            "nus": list(self.nus),
            "levels": [{
                "m": m,
                "cosets": [{"x": x if isinstance(x, int) else list(x),
                            "value": [scal(v) for v in vec]}
                           for x, vec in sorted(self.values[m].items(),
                                                key=lambda kv: str(kv[0]))],
            } for m in self.levels],
        }

    @classmethod
    def from_json(cls, obj):
        """Rebuild a rational-model distribution from its serialization."""
        def scal(v):
            return Cyclo.from_json(v) if isinstance(v, dict) else Fraction(v)

        tower = QTower(obj["p"])
        values = {}
        for level in obj["levels"]:
            values[level["m"]] = {
                c["x"]: tuple(scal(v) for v in c["value"])
                for c in level["cosets"]}
        return cls(tower, obj["nus"], values)


class EigenSymbol:
    """Base data at a deep level plus the eigen-operator push-down rule:
    B(x, level m) = kappa^{-1} sum of B over the lifts of x at m+1."""

    def __init__(self, tower, kappa, base_level, base_data, nus):
        if not kappa:
            raise ValueError("eigenvalue must be nonzero (finite slope)")
        self.tower = tower
        self.kappa = kappa
        self.base_level = base_level
        self.base_data = dict(base_data)
        self.nus = tuple(nus)
        d = len(self.nus)
        for x in tower.elements(base_level):
            if x not in self.base_data:
                raise ValueError(f"missing base datum at {x}")
            if len(self.base_data[x]) != d:
                raise ValueError("component count mismatch")

    def layer(self, m):
        """B_m by repeated push-down from the base level."""
        if m > self.base_level:
            raise ValueError("level beyond the base data")
        data = self.base_data
        level = self.base_level
        kinv = _inverse_scalar(self.kappa)
        while level > m:
            level -= 1
            new = {}
            for x in self.tower.elements(level):
                acc = None
                for lift in self.tower.lifts(level, x):
                    vec = data[lift]
                    acc = vec if acc is None else tuple(
                        a + b for a, b in zip(acc, vec))
                new[x] = tuple(kinv * a for a in acc)
            data = new
        return data


def _inverse_scalar(x):
    if isinstance(x, Cyclo):
        return x.inverse()
    return 1 / Fraction(x)


def build_mu(sym, m0):
    """values mu(x + p^m) = kappa^{-m} B_m(x) for m0 <= m <= base level."""
    if m0 < 1 or m0 > sym.base_level:
        raise ValueError("need 1 <= m0 <= base level")
    kinv = _inverse_scalar(sym.kappa)
    values = {}
    for m in range(m0, sym.base_level + 1):
        layer = sym.layer(m)
        scale = kinv ** m
        values[m] = {x: tuple(scale * v for v in vec)
                     for x, vec in layer.items()}
    return Distribution(sym.tower, sym.nus, values)


def check_distribution_relation(mu):
    """mu(x + p^m) = sum over a mod p of mu(x + a p^m + p^{m+1}), exactly,
    for every coset and consecutive stored levels."""
    levels = mu.levels
    if len(levels) < 2:
        raise ValueError("need at least two stored levels")
    for m, m1 in zip(levels, levels[1:]):
        if m1 != m + 1:
            raise ValueError("stored levels must be consecutive")
        for x, vec in mu.values[m].items():
            acc = None
            for lift in mu.tower.lifts(m, x):
                lv = mu.values[m1][lift]
                acc = lv if acc is None else tuple(
                    a + b for a, b in zip(acc, lv))
            if any(a != b for a, b in zip(acc, vec)):
                return False, (x, m)
    return True, None


def check_boundedness(mu, p, floor=0):
    """Every stored coordinate has v_p >= floor (the integral-lattice
    normalization is the caller's floor parameter)."""
    for m in mu.levels:
        for x, vec in mu.values[m].items():
            for idx, v in enumerate(vec):
                if v and vp(v, p) < floor:
                    return False, (x, m, mu.nus[idx], v)
    return True, None


def integrate_character(mu, chi):
    """sum over x in C(p^m) of chi(x) mu(x + p^m) at the shallowest level
    above the conductor; stability is asserted one level deeper when a
    deeper level is stored."""
    tower = mu.tower
    lvl = tower.char_conductor_level(chi)
    levels = mu.levels
    if lvl > levels[-1]:
        raise ValueError("character conductor exceeds the stored depth")
    m = max(lvl, levels[0])
    out = _integrate_at(mu, chi, m)
    if m + 1 in mu.values:
        deeper = _integrate_at(mu, chi, m + 1)
        if any(a != b for a, b in zip(out, deeper)):
            raise ArithmeticError("character integral is not level-stable")
    return out


def _integrate_at(mu, chi, m):
    tower = mu.tower
    acc = None
    for x in tower.elements(m):
        c = tower.char_value(chi, m, x)
        vec = mu.values[m][x]
        term = tuple(c * v for v in vec)
        acc = term if acc is None else tuple(a + b for a, b in zip(acc, term))
    return acc


def fourier_inversion_check(mu, m, chi_p=None):
    """sum over all characters chi of C(p^m) of chi(x0)^{-1} * integral of
    chi d(mu) equals |C(p^m)| * mu(x0 + p^m), for every x0."""
    tower = mu.tower
    chars = tower.characters(m, chi_p)
    elements = tower.elements(m)
    integrals = {}
    for idx, chi in enumerate(chars):
        integrals[idx] = _integrate_at(mu, chi, m)
    size = len(elements)
    for x0 in elements:
        acc = None
        for idx, chi in enumerate(chars):
            cval = tower.char_value(chi, m, x0)
            term = tuple(cval.inverse() * v for v in integrals[idx])
            acc = term if acc is None else tuple(
                a + b for a, b in zip(acc, term))
        want = tuple(size * v for v in mu.values[m][x0])
        if any(a != b for a, b in zip(acc, want)):
            return False, x0
    return True, None


def kappa_hat(n, s, nu, nu_min, kappa_pair):
    """The interpolation constant
    N(f_chi)^{n(n-1)(n-2)/6 + (nu - nu_min) n(n-1)/2} (kappa kappa')^{-s}
    with N(f_chi) = p^s passed in via its exponent bookkeeping.

    Returns (value, exponents) where exponents records the power of
    N(f_chi) both by the formula and by an independent binomial route.
    """
    from math import comb

    e_formula = n * (n - 1) * (n - 2) // 6 + (nu - nu_min) * (n * (n - 1) // 2)
    e_audit = comb(n, 3) + (nu - nu_min) * comb(n, 2)
    if e_formula != e_audit:
        raise ArithmeticError("exponent audit failed")
    return {"nfchi_exponent": e_formula, "kappa_exponent": -s, "audit": e_audit}


def kappa_hat_value(n, p, s, nu, nu_min, kappa_pair):
    info = kappa_hat(n, s, nu, nu_min, kappa_pair)
    nfchi = Fraction(p) ** s
    base = nfchi ** info["nfchi_exponent"]
    kp = kappa_pair if isinstance(kappa_pair, Cyclo) else Fraction(kappa_pair)
    return base * _inverse_scalar(kp) ** s, info


# ---------------------------------------------------------------------------
# the involution and the functional equation

def involution_vee(tower, m, x, n):
    """x -> (-1)^{n-1} x^{-1}, with the sign inside the p-component."""
    y = tower.inv(m, x)
    if (n - 1) % 2 == 1:
        y = tower.mul(m, tower.minus_one(m), y)
    return y


def value_vee_reindexer(nus):
    """The coordinate reindexing nu -> -nu on value vectors.

    Returns (dual_nus, fn); fn permutes a tuple indexed by nus into one
    indexed by dual_nus."""
    nus = tuple(nus)
    dual = tuple(sorted(-v for v in nus))
    positions = {v: i for i, v in enumerate(nus)}

    def fn(vec):
        return tuple(vec[positions[-v]] for v in dual)

    return dual, fn


def dual_symbol(sym, n, kappa_dual):
    """Synthetic twisted eigen-symbol: base'(x) = (kd/k)^M vee(base(x^vee)).

    The scale (kappa_dual / kappa)^M at the base level M makes the
    push-down bookkeeping reproduce mu_dual(x^vee) = (mu(x))^vee exactly;
    without it the two sides differ by (kappa/kappa_dual)^M.
    """
    tower = sym.tower
    M = sym.base_level
    dual_nus, reindex = value_vee_reindexer(sym.nus)
    scale = _inverse_scalar(sym.kappa) ** M * kappa_dual ** M
    base = {}
    for x in tower.elements(M):
        src = sym.base_data[involution_vee(tower, M, x, n)]
        base[x] = tuple(scale * v for v in reindex(src))
    return EigenSymbol(tower, kappa_dual, M, base, dual_nus)


def dual_kappa_pair(n, q, lam_full, lam_prime_full):
    """kappa_{lam^vee} kappa_{lam'^vee} together with the eigenvalue data
    (eta_n, eta'_{n-1}) entering the kappa-inversion relation."""
    q = Fraction(q)
    lam_vee = full_dual_roots(lam_full, q)[: n - 1]
    lam_p_vee = full_dual_roots(lam_prime_full, q)
    kd = kappa_of(lam_vee, q) * kappa_of(lam_p_vee, q)
    eta_n = q ** (-(n * (n - 1) // 2)) * _product(lam_full)
    eta_prime = q ** (-((n - 1) * (n - 2) // 2)) * _product(lam_prime_full)
    return kd, eta_n, eta_prime


def _product(xs):
    out = Fraction(1)
    for x in xs:
        out = out * x
    return out


def verify_inversekappa(n, q, lam_full, lam_prime_full):
    """kappa = eta_n^{n-1} eta'^n kappa_dual, the eigenvalue relation the
    functional equation consumes (stated there per level as
    kappa(f) = zeta^{1-n} zeta'^{-n} kappa_dual(f))."""
    q = Fraction(q)
    kappa = kappa_of(lam_full[: n - 1], q) * kappa_of(lam_prime_full, q)
    kd, eta_n, eta_prime = dual_kappa_pair(n, q, lam_full, lam_prime_full)
    return kappa == kd * eta_n ** (n - 1) * eta_prime ** n


def check_functional_equation(mu, mu_dual, n, value_vee=None):
    """(mu(x))^vee = mu_dual(x^vee) at every stored coset and level, in the
    component form tau_nu -> tau_{-nu}; plus the eigenvalue relation when
    both distributions carry eigen metadata."""
    dual_nus, reindex = value_vee_reindexer(mu.nus)
    if value_vee is not None:
        reindex = value_vee
    if tuple(mu_dual.nus) != dual_nus:
        return {"ok": False, "witness": "component index sets do not match",
                "kappa_relation_ok": None}
    if mu.levels != mu_dual.levels:
        return {"ok": False, "witness": "level ranges differ",
                "kappa_relation_ok": None}
    tower = mu.tower
    for m in mu.levels:
        for x, vec in mu.values[m].items():
            xv = involution_vee(tower, m, x, n)
            want = reindex(vec)
            got = mu_dual.values[m][xv]
            if any(a != b for a, b in zip(want, got)):
                return {"ok": False, "witness": (x, m),
                        "kappa_relation_ok": None}
    kappa_ok = None
    if mu.eigen and mu_dual.eigen:
        eta_n = mu.eigen["eta_n"]
        eta_prime = mu.eigen["eta_prime"]
        kappa = mu.eigen["kappa"]
        kd = mu_dual.eigen["kappa"]
        kappa_ok = kappa == kd * eta_n ** (n - 1) * eta_prime ** n
    return {"ok": True, "witness": None, "kappa_relation_ok": kappa_ok}
