"""Distinguished GL(n) matrices and the exact matrix-identity checks.

Everything is built twice where it matters: once over a Laurent ring in the
formal variables (f, x, u_i, w_i) and once over exact rationals with f a
prime power.  The congruence statements (mod f*p) become exact valuation
checks; the equality statements are checked literally.
"""

from dataclasses import dataclass
from fractions import Fraction

from heckeforge.exact import vp
from heckeforge.laurent import LaurentMatrix, LaurentPoly, lconst, lvar
from heckeforge.ratmat import RatMat, j_embed


@dataclass(frozen=True)
class GlnContext:
    """Rank, prime, Iwahori level; f defaults to p^r, uniformizer to p."""

    n: int
    p: int
    r: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("rank must be >= 2")
        if self.r < 1:
            raise ValueError("level must be >= 1")

    @property
    def f(self):
        return Fraction(self.p) ** self.r

    @property
    def pi(self):
        return Fraction(self.p)


@dataclass(frozen=True)
class NamedMatrix:
    tag: str
    value: object  # LaurentMatrix or RatMat


# ---------------------------------------------------------------------------
# symbolic builders (LaurentMatrix); numeric callers substitute afterwards

def weyl_longest(n):
    return LaurentMatrix([[1 if j == n - 1 - i else 0 for j in range(n)]
                          for i in range(n)])


def t_matrix(n, f):
    """diag(f^{n-1}, ..., f, 1)."""
    f = LaurentPoly._coerce(f)
    return LaurentMatrix.diagonal([f ** (n - 1 - i) for i in range(n)])


def h_one(n):
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][n - 2 - i] = 1  # w_{n-1} block
        rows[i][n - 1] = 1
    rows[n - 1][n - 1] = 1
    return LaurentMatrix(rows)


def h_matrix(n, f):
    """h^(f) = t_(f)^{-1} h^(1) t_(f); entry (i,j) is h^(1)_{ij} f^{i-j}."""
    t = t_matrix(n, f)
    return t.inverse() * h_one(n) * t


def j_emb(g):
    """Diagonal embedding GL_{n-1} -> GL_n for LaurentMatrix."""
    n = g.n + 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        for j in range(n - 1):
            rows[i][j] = g.entries[i][j]
    rows[n - 1][n - 1] = 1
    return LaurentMatrix(rows)


def j_delta(g, pi, delta):
    """g in GL_n goes to diag(g, pi^delta) in GL_{n+1}."""
    n = g.n + 1
    pi = LaurentPoly._coerce(pi)
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        for j in range(n - 1):
            rows[i][j] = g.entries[i][j]
    rows[n - 1][n - 1] = pi ** delta
    return LaurentMatrix(rows)


def delta_matrix(n, pi, delta):
    pi = LaurentPoly._coerce(pi)
    return LaurentMatrix.diagonal([lconst(1)] * (n - 1) + [pi ** delta])


def d_matrix(n, x):
    """diag(x, 1, ..., 1)."""
    return LaurentMatrix.diagonal([LaurentPoly._coerce(x)] + [lconst(1)] * (n - 1))


def upper_unipotent(n, superdiag):
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, e in enumerate(superdiag):
        rows[i][i + 1] = e
    return LaurentMatrix(rows)


def corrector_matrix(n, f):
    """Lower bidiagonal matrix with diagonal (-1, 1, ..., 1, -1), subdiagonal -f."""
    f = LaurentPoly._coerce(f)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[0][0] = -1
    rows[n - 1][n - 1] = lconst(-1)
    for i in range(1, n):
        rows[i][i - 1] = -f
    return LaurentMatrix(rows)


def conjugated_toeplitz(n, f, x):
    """d_(x)^{-1} * [upper Toeplitz in powers of f] * d_(x), size (n-1)."""
    f = LaurentPoly._coerce(f)
    m = n - 1
    rows = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            rows[i][j] = f ** (j - i)
    dx = d_matrix(m, x)
    return dx.inverse() * LaurentMatrix(rows) * dx


def dual_diag(n, x):
    """diag(-x, -1, ..., -1, (-1)^n x^{-1}) in GL_{n-1}; needs n >= 3."""
    if n < 3:
        raise ValueError("the contragredient diagonal needs rank >= 3")
    x = LaurentPoly._coerce(x)
    sign_last = lconst(1) if n % 2 == 0 else lconst(-1)
    return LaurentMatrix.diagonal(
        [-x] + [lconst(-1)] * (n - 3) + [sign_last * x ** (-1)])


def w_tilde(n):
    return j_emb(weyl_longest(n - 1)) * weyl_longest(n)


_STANDARD = {
    "t_(f)", "h^(1)", "h^(f)", "w_n", "w_tilde", "d_(x)", "n_mat", "n'_mat",
    "d_fe", "Delta_delta",
}


def build_standard(ctx, tag, *, symbolic=False, x=None, delta=0):
    """Construct one of the named matrices for rank ctx.n.

    With symbolic=True the result is over the Laurent ring in f (and x);
    otherwise f = p^r and x must be a rational when required.
    """
    n = ctx.n
    f = lvar("f") if symbolic else lconst(ctx.f)
    if x is None:
        xx = lvar("x") if symbolic else None
    else:
        xx = LaurentPoly._coerce(x)
    if tag == "t_(f)":
        m = t_matrix(n, f)
    elif tag == "h^(1)":
        m = h_one(n)
    elif tag == "h^(f)":
        m = h_matrix(n, f)
    elif tag == "w_n":
        m = weyl_longest(n)
    elif tag == "w_tilde":
        m = w_tilde(n)
    elif tag == "d_(x)":
        m = d_matrix(n, xx)
    elif tag == "n_mat":
        m = corrector_matrix(n, f)
    elif tag == "n'_mat":
        m = conjugated_toeplitz(n, f, xx)
    elif tag == "d_fe":
        m = dual_diag(n, xx)
    elif tag == "Delta_delta":
        m = delta_matrix(n, lconst(ctx.pi) if not symbolic else lvar("f"), delta)
    else:
        raise ValueError(f"unknown tag {tag!r} (choose from {sorted(_STANDARD)})")
    return NamedMatrix(tag, m)


def iwahori_member(g, p, r):
    """Is the rational matrix g in the level-p^r Iwahori subgroup?"""
    if isinstance(g, RatMat):
        return g.is_iwahori(p, r)
    return RatMat.from_rows(g).is_iwahori(p, r)


# ---------------------------------------------------------------------------
# the family of matrices behind the distribution relation

def _entry_val(x, p):
    """Valuation for Fraction entries."""
    return vp(x, p)


def build_distribution_family(ctx, u_sup, w_sup):
    """Exact construction of h(u,w), u^-, w^-, d, d', the correction matrix
    and the Iwahori pair (k, k'), over the rationals with f = p^r.

    u_sup: n-1 superdiagonal entries of u in U_n; w_sup: n-2 entries for
    U_{n-1}.  Returns a dict of RatMat values plus the verified relations.
    The diagonal d collects the last column of j(u^-) h(u,w) j(w^-) in
    reverse order and d' is its exact entrywise inverse, which makes
    det(d) det(d') = 1 hold literally.
    """
    n, p, r = ctx.n, ctx.p, ctx.r
    if len(u_sup) != n - 1 or len(w_sup) != n - 2:
        raise ValueError("need n-1 u-entries and n-2 w-entries")
    f = ctx.f
    pi = ctx.pi
    u = upper_unipotent(n, [lconst(Fraction(e)) for e in u_sup]).to_ratmat()
    w = upper_unipotent(n - 1, [lconst(Fraction(e)) for e in w_sup]).to_ratmat()
    tf = t_matrix(n, f).to_ratmat()
    th = h_one(n).to_ratmat()
    h_uw = (tf * j_embed(w) * tf.inv()) * th * (tf * u.inv() * tf.inv())

    m = n - 1
    um_rows = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    wm_rows = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    for k in range(1, m):
        um_rows[k][k - 1] = f * Fraction(u_sup[n - 2 - k])
        if n - 2 - k < len(w_sup):
            wm_rows[k][k - 1] = -f * Fraction(w_sup[n - 2 - k])
    u_minus = RatMat.from_rows(um_rows)
    w_minus = RatMat.from_rows(wm_rows)

    probe = j_embed(u_minus) * h_uw * j_embed(w_minus)
    last_col = [probe.entry(i, n - 1) for i in range(n)]
    d = RatMat.diagonal(list(reversed(last_col[:-1])))
    d_prime = RatMat.diagonal([1 / v for v in last_col[:-1]])

    reduced = j_embed(d_prime) * probe * j_embed(d)
    n_corr = reduced.inv() * th

    tfp = t_matrix(n, f * pi).to_ratmat()
    tfpi = tfp.inv()
    k_prime_big = (tfpi * j_embed(d_prime * u_minus) * tfp).inv()
    k_mat = tfpi * (j_embed(w_minus * d) * n_corr) * tfp
    k_prime = RatMat.from_rows([row[: n - 1] for row in k_prime_big.rows()[: n - 1]])

    tpi = t_matrix(n, pi).to_ratmat()
    lhs = tpi.inv() * j_embed(w) * h_matrix(n, lconst(f)).to_ratmat() * u.inv() * tpi
    rhs = k_prime_big * h_matrix(n, lconst(f * pi)).to_ratmat() * k_mat.inv()

    fp_val = r + 1  # valuation of f*p
    corr_ok = all(
        _entry_val(n_corr.entry(i, j) - (1 if i == j else 0), p) >= fp_val
        for i in range(n) for j in range(n))
    block_ok = all(
        _entry_val(probe.entry(i, j) - th.entry(i, j), p) >= fp_val
        for i in range(n) for j in range(n - 1))
    det_pair = d.det() * d_prime.det()
    det_k = k_mat.det()
    det_kp = k_prime_big.det()
    return {
        "h(u,w)": h_uw, "u^-": u_minus, "w^-": w_minus,
        "d(u,w)": d, "d'(u,w)": d_prime, "n": n_corr,
        "k_{u,w}": k_mat, "k'_{u,w}": k_prime,
        "last_column": last_col,
        "identity_ok": lhs == rhs,
        "correction_ok": corr_ok,
        "columns_ok": block_ok,
        "det_pair": det_pair,
        "det_pair_ok": det_pair == 1,
        "k_iwahori": k_mat.is_iwahori(p, r),
        "k'_iwahori": k_prime.is_iwahori(p, r),
        "det_relation_ok": _entry_val(det_k - det_kp, p) >= fp_val,
        "det_k": det_k,
    }


def family_symbolic(n):
    """Symbolic twin of the family over Q(f, u_i, w_i), truncated d'.

    Returns the pieces plus the two mod-f^2 congruence checks: the block
    columns agree with h^(1) up to terms in (f^2), and with the linear
    truncation d'_i = 2 - v_i we get det(d) det(d') - 1 in (f^2).
    """
    f = lvar("f")
    us = [lvar(f"u{i+1}") for i in range(n - 1)]
    ws = [lvar(f"w{i+1}") for i in range(n - 2)]
    u = upper_unipotent(n, us)
    w = upper_unipotent(n - 1, ws)
    tf = t_matrix(n, f)
    tfi = LaurentMatrix.diagonal([f ** -(n - 1 - i) for i in range(n)])
    h_uw = (tf * j_emb(w) * tfi) * h_one(n) * (tf * _unipotent_inverse(u) * tfi)

    m = n - 1
    um = [[lconst(1 if i == j else 0) for j in range(m)] for i in range(m)]
    wm = [[lconst(1 if i == j else 0) for j in range(m)] for i in range(m)]
    for k in range(1, m):
        um[k][k - 1] = f * us[n - 2 - k]
        if n - 2 - k < len(ws):
            wm[k][k - 1] = lconst(-1) * f * ws[n - 2 - k]
    u_minus, w_minus = LaurentMatrix(um), LaurentMatrix(wm)
    probe = j_emb(u_minus) * h_uw * j_emb(w_minus)
    last_col = [probe.entries[i][n - 1] for i in range(n)]
    d = LaurentMatrix.diagonal(list(reversed(last_col[:-1])))
    d_prime = LaurentMatrix.diagonal([lconst(2) - v for v in last_col[:-1]])

    h1 = h_one(n)
    diff_ok = all(
        (probe.entries[i][j] - h1.entries[i][j]).min_degree_in("f") >= 2
        for i in range(n) for j in range(n - 1)
        if (probe.entries[i][j] - h1.entries[i][j]))
    det_pair = d.det() * d_prime.det() - lconst(1)
    det_ok = (not det_pair) or det_pair.min_degree_in("f") >= 2
    return {
        "h(u,w)": h_uw, "u^-": u_minus, "w^-": w_minus,
        "d(u,w)": d, "d'(u,w)": d_prime, "last_column": last_col,
        "columns_ok": diff_ok, "det_pair_ok": det_ok,
    }


def _unipotent_inverse(u):
    """Inverse of an upper unipotent LaurentMatrix (Neumann series)."""
    n = u.n
    nil = u - LaurentMatrix.identity(n)
    out = LaurentMatrix.identity(n)
    power = LaurentMatrix.identity(n)
    for k in range(1, n):
        power = power * nil
        out = out + (power if k % 2 == 0 else -power)
    return out


def verify_epimorphism(ctx):
    """Exhaustive check that (u, w) -> det(k_{u,w}) mod (1 + f p) covers
    (1+f)/(1+fp), together with det(k) = det(k') mod fp throughout.

    Returns (ok, witness) where witness maps each class of the cyclic
    order-p quotient to a preimage pair; on an identity failure the
    offending pair is returned instead.
    """
    import itertools

    n, p, r = ctx.n, ctx.p, ctx.r
    f = ctx.f
    witness = {}
    for u_sup in itertools.product(range(p), repeat=n - 1):
        for w_sup in itertools.product(range(p), repeat=n - 2):
            fam = build_distribution_family(ctx, u_sup, w_sup)
            if not (fam["identity_ok"] and fam["det_relation_ok"]
                    and fam["correction_ok"]):
                return False, {"counterexample": (u_sup, w_sup)}
            cls = (fam["det_k"] - 1) / f
            if cls.denominator % p == 0:
                return False, {"counterexample": (u_sup, w_sup)}
            cls_mod = (cls.numerator * pow(cls.denominator, -1, p)) % p
            witness.setdefault(cls_mod, (u_sup, w_sup))
    ok = len(witness) == p
    return ok, witness


# ---------------------------------------------------------------------------
# contragredient matrix identity

def verify_inverseh(n, p=None, r=None, x=None, symbolic=True):
    """Check the contragredient matrix identity in GL_n:

        j(w_{n-1} d n') (d_(x) h^(f))^{-t} w_n n
            = j(f^n 1_{n-1}) f^{1-n} d_((-1)^{n-1} x^{-1}) h^(f)

    together with its side conditions.  Symbolic mode works over the
    Laurent ring in f and x; numeric mode needs (p, r, x).  Restricted to
    n >= 3 (the diagonal d degenerates at n = 2).  Returns (ok, details);
    on failure the difference matrix is included.
    """
    if n < 3:
        raise ValueError("identity restricted to n >= 3")
    if symbolic:
        f, xx = lvar("f"), lvar("x")
    else:
        f, xx = lconst(Fraction(p) ** r), lconst(Fraction(x))
    wn = weyl_longest(n)
    wn1 = weyl_longest(n - 1)
    d = dual_diag(n, xx)
    nprime = conjugated_toeplitz(n, f, xx)
    ncorr = corrector_matrix(n, f)
    hf = h_matrix(n, f)
    dx = d_matrix(n, xx)
    lhs = j_emb(wn1 * d * nprime) * (dx * hf).inverse().transpose() * wn * ncorr
    sign = 1 if (n - 1) % 2 == 0 else -1
    rhs_scale = f ** (1 - n)
    jfn = LaurentMatrix.diagonal([f ** n] * (n - 1) + [lconst(1)])
    rhs = (jfn * d_matrix(n, lconst(sign) * xx ** (-1)) * hf).scale(rhs_scale)
    diff = lhs - rhs
    ok = lhs == rhs
    details = {"ok": ok, "det_jd_nprime": (d.det() * nprime.det()) == lconst(1)}
    if not ok:
        details["difference"] = diff
    if not symbolic:
        details["w d n' w in I"] = (wn1 * d * nprime * wn1).to_ratmat().is_iwahori(p, r)
        details["n in I"] = ncorr.to_ratmat().is_iwahori(p, r)
    return ok and details["det_jd_nprime"], details


def verify_inverseft(n, f=None):
    """t-matrix twist identity in GL_{n-1}: iota(t_(f) f) f^n = t_(f) f,
    where iota(g) = w g^{-t} w with the GL_{n-1} long Weyl element."""
    m = n - 1
    ff = lvar("f") if f is None else lconst(f)
    t = t_matrix(m, ff)
    g = t.scale(ff)
    wm = weyl_longest(m)
    lhs = (wm * g.inverse().transpose() * wm).scale(ff ** n)
    return lhs == g


def iota_involution(g):
    """iota(g) = w_n g^{-t} w_n for a LaurentMatrix or RatMat."""
    n = g.n
    if isinstance(g, RatMat):
        w = weyl_longest(n).to_ratmat()
        return w * g.inv().transpose() * w
    w = weyl_longest(n)
    return w * g.inverse().transpose() * w
