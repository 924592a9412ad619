import itertools
import random
from fractions import Fraction as F

import pytest

from heckeforge import modules as M
from heckeforge.exact import PADIC_INFINITY


def perm_spectra(base):
    return [list(p) for p in itertools.permutations(base)]


def test_commutation_enforced():
    with pytest.raises(ValueError):
        M.HeckeModule(2, 2, [[[F(0), F(1)], [F(0), F(0)]],
                             [[F(1), F(0)], [F(0), F(2)]]])


def test_apply_H_examples():
    mod = M.HeckeModule.from_spectra(2, 2, [[F(1), F(2)], [F(2), F(1)]])
    m = [F(1), F(1)]
    assert mod.apply_H(m, F(1)) == [F(0), F(0)]
    assert mod.apply_H(m, F(3)) == [F(2), F(2)]  # (3-1)(3-2) m
    mu = F(7)
    want = (mu - 1) * (mu - 2)
    assert mod.apply_H(m, mu) == [want, want]


def test_project0_on_eigenvector_is_scalar():
    q = F(2)
    lam = [F(3), F(5)]
    mod = M.HeckeModule.from_spectra(2, q, perm_spectra(lam))
    roots = M.HeckeRoots(lam, q, m=1)
    e1 = [F(1), F(0)]
    scalar = lam[0] * q ** -1 * roots.eta(1) - roots.eta(2)
    assert M.project0(e1, roots, mod) == [scalar, F(0)]
    assert M.project0([F(0), F(0)], roots, mod) == [F(0), F(0)]
    # the swapped-spectrum component is killed
    assert M.project0([F(0), F(1)], roots, mod) == [F(0), F(0)]


def test_project0_precondition_error():
    q = F(2)
    mod = M.HeckeModule.from_spectra(2, q, [[F(1), F(2)], [F(3), F(4)]])
    roots = M.HeckeRoots([F(1), F(2)], q)
    with pytest.raises(ValueError, match="lam_1"):
        M.project0([F(1), F(1)], roots, mod)


def test_project_identity_and_idempotence():
    rng = random.Random(31)
    for n in (2, 3):
        base = [F(x) for x in rng.sample(range(1, 15), n)]
        mod = M.HeckeModule.from_spectra(n, 2, perm_spectra(base))
        roots = M.HeckeRoots(base, 2)
        e_match = [F(1 if k == 0 else 0) for k in range(mod.dim)]
        assert M.project(e_match, roots, mod) == e_match
        vec = [F(rng.randrange(-4, 5)) for _ in range(mod.dim)]
        pv = M.project(vec, roots, mod)
        assert M.project(pv, roots, mod) == pv
        assert M.in_eigenspace(pv, roots, mod)


def test_project_is_coordinate_projection_diagonal():
    # 3-dim diagonal module with distinct joint spectra: the normalized
    # projection onto the first spectrum is the coordinate projection
    q = F(3)
    spectra = [[F(1), F(2), F(5)], [F(2), F(5), F(1)], [F(5), F(1), F(2)]]
    mod = M.HeckeModule.from_spectra(3, q, spectra)
    roots = M.HeckeRoots(spectra[0], q)
    vec = [F(7), F(-4), F(9)]
    assert M.project(vec, roots, mod) == [F(7), F(0), F(0)]


def test_project_denominator_witness():
    q = F(2)
    # distinct projection roots keep all denominators nonzero; a vanishing
    # one needs a clash with the eta-extension beyond m, e.g. m=1 with the
    # extension root equal to lam_1
    lam = [F(3), F(3)]
    mod = M.HeckeModule.from_spectra(2, q, perm_spectra([F(3), F(5)]))
    roots = M.HeckeRoots(lam, q, m=1)
    with pytest.raises(ZeroDivisionError, match=r"i=1, j=2"):
        M.project([F(1), F(1)], roots, mod)


def test_projection_equivariance():
    rng = random.Random(41)
    for _ in range(10):
        n = rng.choice([2, 3])
        base = [F(x) for x in rng.sample(range(1, 15), n)]
        conj = [[F(1 if i == j else 0) for j in range(
            len(perm_spectra(base)))] for i in range(len(perm_spectra(base)))]
        d = len(conj)
        for i in range(d):
            for j in range(i + 1, d):
                conj[i][j] = F(rng.randrange(-2, 3))
        mod = M.HeckeModule.from_spectra(n, 3, perm_spectra(base), conj)
        roots = M.HeckeRoots(base, 3)
        vec = [F(rng.randrange(-3, 4)) for _ in range(mod.dim)]
        pv = M.project(vec, roots, mod)
        for nu in range(1, n + 1):
            lhs = M.project(M.mat_vec(mod.V(nu), vec), roots, mod)
            rhs = M.mat_vec(mod.V(nu), pv)
            assert lhs == rhs


def test_contragredient_examples():
    q = F(2)
    mod = M.HeckeModule.from_spectra(2, q, perm_spectra([F(3), F(5)]))
    dual = mod.contragredient()
    m = [F(1), F(1)]
    lam_vee = M.dual_root(F(3), q, 2)
    assert lam_vee == F(2, 3)
    assert all(x == 0 for x in dual.apply_H(m, lam_vee))
    ddual = dual.contragredient()
    assert all(M.mat_eq(a, b) for a, b in zip(ddual.U, mod.U))


def test_contragredient_needs_invertible():
    mod = M.HeckeModule.from_spectra(2, 2, [[F(0), F(1)], [F(1), F(0)]])
    with pytest.raises(ZeroDivisionError):
        mod.contragredient()


def test_dual_root_involution_and_eta():
    q = F(3)
    lam_full = [F(2), F(5), F(7)]
    vee = M.full_dual_roots(lam_full, q)
    back = M.full_dual_roots(vee, q)
    assert list(back) == lam_full
    # eta_n of the dual is the inverse of eta_n
    n = 3
    eta_n = q ** (-(n * (n - 1) // 2)) * F(2 * 5 * 7)
    eta_n_vee = q ** (-(n * (n - 1) // 2)) * vee[0] * vee[1] * vee[2]
    assert eta_n_vee == 1 / eta_n


def test_recisums():
    assert M.verify_recisums(20)
    # n=5, nu=2: 1 + 10 - 8 = 3 = (2*3)/2
    assert (1 * 2 // 2) + (5 * 4 // 2) - 2 * 4 == 3


def test_slope_data():
    s = M.slope_data([F(1)], [F(1)], 0, 2, 2)
    assert s.kappa == 1 and s.kappa_prime == 1 and s.ordinary
    # n=3: kappa = q^{-1} 2^2 1 = 2; with lam' = (1,1) the pair has
    # kappa' = 1/2, so the product is a unit and the slope vanishes
    s3 = M.slope_data([F(2), F(1)], [F(1), F(1)], 0, 2, 2)
    assert s3.kappa == 2 and s3.kappa_prime == F(1, 2)
    assert s3.slope == 0 and s3.ordinary
    s3b = M.slope_data([F(2), F(1)], [F(2), F(1)], 0, 2, 2)
    assert s3b.slope == 2 and not s3b.ordinary and s3b.finite
    szero = M.slope_data([F(0), F(1)], [F(1), F(1)], 0, 2, 2)
    assert not szero.finite and szero.slope == PADIC_INFINITY


def test_dual_projection_constant_regressions():
    q = F(2)
    left = M.HeckeModule.from_spectra(2, q, perm_spectra([F(1), F(3)]))
    right = M.HeckeModule.from_spectra(1, q, [[F(5)]])
    pm = M.ProductModule(left, right)
    vec = [[F(1)], [F(1)]]
    ok, c, reason = M.verify_dual_projection(pm, vec, [F(1), F(3)], [F(5)])
    assert ok, reason
    assert c == F(4, 9)  # regression value for this datum

    lam3, lamp3 = [F(1), F(2), F(3)], [F(1), F(5)]
    left3 = M.HeckeModule.from_spectra(3, q, perm_spectra(lam3))
    right3 = M.HeckeModule.from_spectra(2, q, perm_spectra(lamp3))
    pm3 = M.ProductModule(left3, right3)
    vec3 = [[F(1)] * right3.dim for _ in range(left3.dim)]
    ok3, c3, reason3 = M.verify_dual_projection(pm3, vec3, lam3, lamp3)
    assert ok3, reason3
    assert c3 == F(8192, 18225)  # regression value
    assert c3 != 0


def test_dual_projection_degenerate_zero_vector():
    q = F(2)
    left = M.HeckeModule.from_spectra(2, q, perm_spectra([F(1), F(3)]))
    right = M.HeckeModule.from_spectra(1, q, [[F(5)]])
    pm = M.ProductModule(left, right)
    zero = [[F(0)], [F(0)]]
    ok, c, reason = M.verify_dual_projection(pm, zero, [F(1), F(3)], [F(5)])
    assert not ok and reason == "projection of the test vector vanished"
