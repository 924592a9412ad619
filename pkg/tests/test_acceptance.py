"""Acceptance gate: one test per numbered criterion, each printing a
PASS/FAIL line.  Everything is exact arithmetic; the only tolerances are
the stated wall-clock budgets."""

import itertools
import random
import time
from fractions import Fraction as F

from heckeforge import distributions as dist
from heckeforge import gauss, hecke, modules, weights
from heckeforge.laurent import lvar
from heckeforge.matrices import (GlnContext, verify_epimorphism,
                                 verify_inverseh)
from heckeforge.suite import run_suite


RESULTS = []


def _report(num, name, ok):
    line = f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    RESULTS.append(line)
    print(line)
    return ok


def test_criterion_01_gritsenko_factorization():
    budget_ok = True
    all_ok = True
    for (n, p, r) in ((2, 2, 1), (2, 3, 1), (3, 2, 1)):
        t0 = time.monotonic()
        ok, details = hecke.verify_gritsenko(GlnContext(n, p, r))
        took = time.monotonic() - t0
        all_ok = all_ok and ok
        budget_ok = budget_ok and took < 60
    assert _report(1, "gritsenko-factorization", all_ok and budget_ok)


def test_criterion_02_hecke1_decompositions():
    ok = True
    for (n, p, r) in ((2, 2, 1), (2, 3, 1), (3, 2, 1)):
        ctx = GlnContext(n, p, r)
        for nu in range(n + 1):
            cs = hecke.expand_V(ctx, nu)
            ok = ok and len(cs) == p ** (nu * (n - nu))
            ok = ok and hecke.check_disjoint(cs)[0]
        vp_sum = hecke.expand_Vp(ctx)
        ok = ok and len(vp_sum) == p ** ((n + 1) * n * (n - 1) // 6)
        ok = ok and hecke.check_disjoint(vp_sum)[0]
        for tag in ("V1", "Vp"):
            ok = ok and hecke.check_coverage(ctx, tag, samples=200, seed=11) == 0
    assert _report(2, "hecke1-decompositions", ok)


def test_criterion_03_index_formulas():
    t0 = time.monotonic()
    results = {}
    for (n, p) in ((2, 2), (2, 3), (3, 2), (3, 3)):
        results[(n, p)] = hecke.count_indices(GlnContext(n, p, 1))
    took = time.monotonic() - t0
    uni_ok = all(r["unipotent_match"] for r in results.values())
    gamma_ok = all(r["gamma_match"] for r in results.values())
    ok = uni_ok and gamma_ok and took < 120
    _report(3, "index-formulas", ok)
    assert uni_ok
    assert took < 120
    # The enumerated pullback-subgroup index differs from the stated
    # absolute gamma formula by the unit-group torsion factor
    # ((p-1)^2 p^{2r-3} at n=3, (p-1)/p at n=2): e.g. 4 enumerated vs 32
    # stated at (n,p,r)=(3,2,1).  The level-to-level ratio, which is the
    # quantity the distribution relation consumes, does match the formula
    # and is verified in the hecke suite.  Kept as stated, hence red:
    assert gamma_ok, {
        key: (r["gamma_index"], r["gamma_formula"]) for key, r in results.items()
    }


def _random_conjugated_module(rng, n):
    base = [F(x) for x in rng.sample(range(1, 16), n)]
    spectra = [list(p) for p in itertools.permutations(base)]
    d = len(spectra)
    conj = [[F(1 if i == j else 0) for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            conj[i][j] = F(rng.randrange(-2, 3))
    mod = modules.HeckeModule.from_spectra(n, rng.choice([2, 3]), spectra, conj)
    return mod, base


def test_criterion_04_projection_operators():
    rng = random.Random(100)
    ok = True
    for n in (2, 3):
        for _ in range(100):
            mod, base = _random_conjugated_module(rng, n)
            roots = modules.HeckeRoots(base, mod.q)
            vec = [F(rng.randrange(-5, 6)) for _ in range(mod.dim)]
            pv = modules.project(vec, roots, mod)
            ok = ok and modules.project(pv, roots, mod) == pv
            ok = ok and modules.in_eigenspace(pv, roots, mod)
            nu = rng.randrange(1, n + 1)
            ok = ok and (modules.project(
                modules.mat_vec(mod.V(nu), vec), roots, mod)
                == modules.mat_vec(mod.V(nu), pv))
            match = [F(1 if k == 0 else 0) for k in range(mod.dim)]
            diag_mod = modules.HeckeModule.from_spectra(
                n, mod.q, [list(p) for p in itertools.permutations(base)])
            ok = ok and modules.project(match, roots, diag_mod) == match
            if not ok:
                break
    assert _report(4, "projection-operators", ok)


def test_criterion_05_dual_hecke_roots():
    rng = random.Random(200)
    ok = modules.verify_recisums(20)
    for n in (2, 3):
        for _ in range(25):
            mod, base = _random_conjugated_module(rng, n)
            dual = mod.contragredient()
            vec = [F(rng.randrange(-4, 5)) for _ in range(mod.dim)]
            lam = base[0]
            lam_vee = modules.dual_root(lam, mod.q, n)
            ok = ok and all(x == 0 for x in dual.apply_H(vec, lam_vee))
    for n in (2, 3):
        q = F(2)
        lam_full = [F(v) for v in rng.sample([1, 3, 5, 7, 9], n)]
        lam_prime = [F(v) for v in rng.sample([1, 3, 5, 7, 9], n - 1)]
        left = modules.HeckeModule.from_spectra(
            n, q, [list(p) for p in itertools.permutations(lam_full)])
        right = modules.HeckeModule.from_spectra(
            n - 1, q, [list(p) for p in itertools.permutations(lam_prime)])
        pm = modules.ProductModule(left, right)
        vec = [[F(1)] * right.dim for _ in range(left.dim)]
        good, c, reason = modules.verify_dual_projection(
            pm, vec, lam_full, lam_prime)
        ok = ok and good and c != 0
    assert _report(5, "dual-hecke-roots", ok)


def test_criterion_06_matrix_identities():
    ok = True
    for n in (3, 4, 5):
        good, _ = verify_inverseh(n, symbolic=True)
        ok = ok and good
    rng = random.Random(300)
    for _ in range(10):
        n = rng.choice([3, 4, 5])
        p = rng.choice([2, 3, 5])
        r = rng.choice([1, 2])
        while True:
            x = F(rng.randrange(1, 60), rng.choice([1, 3, 7, 11]))
            if x.numerator % p and x.denominator % p:
                break
        good, details = verify_inverseh(n, p, r, x, symbolic=False)
        ok = ok and good and details["n in I"] and details["w d n' w in I"]
    for (n, p) in ((2, 2), (2, 3), (3, 2), (3, 3)):
        good, witness = verify_epimorphism(GlnContext(n, p, 1))
        ok = ok and good and len(witness) == p
    assert _report(6, "matrix-identities", ok)


def test_criterion_07_gauss_sums():
    t0 = time.monotonic()
    quad5 = next(c for c in gauss.all_characters(5, 1) if c.order() == 2)
    quad3 = next(c for c in gauss.all_characters(3, 1) if c.order() == 2)
    g5, g3 = gauss.gauss_sum(quad5), gauss.gauss_sum(quad3)
    ok = (g5 * g5 == 5) and (g3 * g3 == -3)
    for (p, s) in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3),
                   (5, 1), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1),
                   (19, 1), (23, 1)):
        if p ** s > 27:
            continue
        for chi in gauss.all_characters(p, s):
            if chi.conductor_exponent() != s or s == 0:
                continue
            tau = gauss.classical_gauss_sum(chi)
            ok = ok and tau * tau.conj() == p ** s
    for p in (2, 3, 5):
        for level in (1, 2):
            for chi in gauss.all_characters(p, level):
                t = chi.conductor_exponent()
                if t == 0 or t > level:
                    continue
                for v in range(-level, 2):
                    c = F(p) ** v
                    # twisted_sum asserts its closed form internally
                    gauss.twisted_sum(chi, c, level)
    took = time.monotonic() - t0
    assert _report(7, "gauss-sums", ok and took < 30)


def test_criterion_08_critical_value_combinatorics():
    rng = random.Random(400)
    ok = True
    checked = 0
    while checked < 500:
        n = rng.randrange(2, 6)
        w = rng.randrange(-4, 10)
        mu = _pure(rng, w, n)
        if mu is None:
            continue
        v = rng.randrange(-4, 10)
        nu = _pure(rng, v, n - 1)
        if nu is None:
            continue
        checked += 1
        data = weights.critical_data(mu, nu)
        emb = data["emb"]
        if data["parity_ok"]:
            ok = ok and data["critical_set"] == [F(1, 2) + t for t in emb]
            if emb:
                ok = ok and data["bijection_ok"] is True
        else:
            ok = ok and data["critical_set"] == []
        wv = data["w"] + data["v"]
        ok = ok and all((wv - t) in emb for t in emb)
    for a in range(0, 9):
        b = -rng.randrange(0, 5)
        count = len(weights.emb_set([0], [a, b]))
        ok = ok and count == a - b + 1
    assert _report(8, "critical-value-combinatorics", ok)


def _pure(rng, w, n):
    mu = [0] * n
    for i in range((n + 1) // 2):
        x = rng.randrange(-8, 9)
        mu[i] = x
        mu[n - 1 - i] = w - x
    if n % 2 == 1:
        if w % 2:
            return None
        mu[n // 2] = w // 2
    if any(mu[i] <= mu[i + 1] for i in range(n - 1)):
        return None
    return mu


def test_criterion_09_distribution_engine():
    rng = random.Random(500)
    ok = True
    for p in (2, 3, 5):
        tower = dist.QTower(p)
        depth = 4 if p < 5 else 4
        base = {x: (F(rng.randrange(-9, 10)), F(rng.randrange(-9, 10)))
                for x in tower.elements(depth)}
        sym = dist.EigenSymbol(tower, F(2), depth, base, [0, 1])
        mu = dist.build_mu(sym, 1)
        ok = ok and dist.check_distribution_relation(mu)[0]
        ok = ok and dist.fourier_inversion_check(mu, 2)[0]
        unit_base = {x: (F(rng.randrange(12)),) for x in tower.elements(3)}
        unit_sym = dist.EigenSymbol(tower, F(1 + p), 3, unit_base, [0])
        ok = ok and dist.check_boundedness(dist.build_mu(unit_sym, 1), p)[0]
        slope_base = {x: (F(1),) for x in tower.elements(3)}
        slope_sym = dist.EigenSymbol(tower, F(p), 3, slope_base, [0])
        bad, witness = dist.check_boundedness(dist.build_mu(slope_sym, 1), p)
        ok = ok and not bad and witness is not None
    assert _report(9, "distribution-engine", ok)


def test_criterion_10_functional_equation():
    rng = random.Random(600)
    ok = True
    for p in (3, 5):
        for n in (2, 3):
            q = F(p)
            lam = [F(v) for v in rng.sample([1, 2, 3, 5, 7, 11], n)]
            lamp = [F(v) for v in rng.sample([1, 2, 3, 5, 7, 11], n - 1)]
            kappa = (modules.kappa_of(lam[: n - 1], q)
                     * modules.kappa_of(lamp, q))
            kd, eta_n, eta_p = dist.dual_kappa_pair(n, q, lam, lamp)
            tower = dist.QTower(p)
            nus = [-1, 0, 1]
            base = {x: tuple(F(rng.randrange(-6, 7)) for _ in nus)
                    for x in tower.elements(3)}
            sym = dist.EigenSymbol(tower, kappa, 3, base, nus)
            mu = dist.build_mu(sym, 1)
            mu.eigen = {"kappa": kappa, "eta_n": eta_n, "eta_prime": eta_p}
            mu_dual = dist.build_mu(dist.dual_symbol(sym, n, kd), 1)
            mu_dual.eigen = {"kappa": kd}
            out = dist.check_functional_equation(mu, mu_dual, n)
            ok = ok and out["ok"] and out["kappa_relation_ok"]
            # corrupted eigenvalue and corrupted value are both detected
            mu_dual.eigen = {"kappa": kd * 3}
            ok = ok and dist.check_functional_equation(
                mu, mu_dual, n)["kappa_relation_ok"] is False
            x0 = tower.elements(1)[0]
            vec = list(mu_dual.values[1][x0])
            vec[0] += 1
            mu_dual.values[1][x0] = tuple(vec)
            out_bad = dist.check_functional_equation(mu, mu_dual, n)
            ok = ok and not out_bad["ok"] and out_bad["witness"] is not None
    assert _report(10, "functional-equation", ok)


def test_criterion_11_satake_shintani():
    ok = True
    q = lvar("q")
    for n in range(2, 5):
        for nu in range(n + 1):
            got = hecke.satake(n, nu)
            want = q ** (nu * (nu + 1) // 2) * _sigma_oracle(n, nu)
            ok = ok and got == want
    for p in (2, 3):
        c02, c11, consistent = hecke.gl2_satake_regression(p)
        ok = ok and (c02, c11, consistent) == (1, p + 1, True)
    for n in (2, 3, 4):
        poly = hecke.shintani_lfactor(list(range(2, n + 2)),
                                      list(range(3, n + 2)))
        deg = max(dict(k).get("T", 0) for k in poly.terms)
        ok = ok and deg == n * (n - 1)
    assert _report(11, "satake-shintani", ok)


def _sigma_oracle(n, nu):
    from heckeforge.laurent import LaurentPoly
    y = lvar("Y")
    prod = LaurentPoly.const(1)
    for i in range(1, n + 1):
        prod = prod * (1 + lvar(f"X{i}") * y)
    out = LaurentPoly.const(0)
    for key, coeff in prod.terms.items():
        d = dict(key)
        if d.get("Y", 0) == nu:
            rest = tuple(sorted((k, v) for k, v in d.items() if k != "Y"))
            out = out + LaurentPoly({rest: coeff})
    return out


def test_criterion_12_end_to_end():
    t0 = time.monotonic()
    reports = run_suite(seed=0)
    took = time.monotonic() - t0
    fails = [r for r in reports if r["status"] == "fail"]
    again = run_suite(seed=0)

    def strip(reps):
        return [{k: v for k, v in r.items() if k != "ms"} for r in reps]

    ok = not fails and took < 600 and strip(reports) == strip(again)
    assert _report(12, "end-to-end-suite", ok), [r["case"] for r in fails]
