"""The compiled and pure kernels must agree everywhere."""

import random

from heckeforge import _pykernels, kernels


def _rand_mat(rng, n, lo=-50, hi=50):
    return [rng.randrange(lo, hi) for _ in range(n * n)]


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_mat_mul_agrees():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.choice([2, 3, 4, 5])
        a, b = _rand_mat(rng, n), _rand_mat(rng, n)
        assert kernels.mat_mul(a, b, n) == _pykernels.mat_mul(a, b, n)


def test_det_and_adjugate_agree():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.choice([2, 3, 4])
        a = _rand_mat(rng, n)
        assert kernels.bareiss_det(a, n) == _pykernels.bareiss_det(a, n)
        assert kernels.adjugate(a, n) == _pykernels.adjugate(a, n)


def test_adjugate_identity():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.choice([2, 3, 4])
        a = _rand_mat(rng, n)
        det = kernels.bareiss_det(a, n)
        adj = kernels.adjugate(a, n)
        prod = kernels.mat_mul(a, adj, n)
        for i in range(n):
            for j in range(n):
                assert prod[i * n + j] == (det if i == j else 0)


def test_big_integers_stay_exact():
    a = [10 ** 40 + 1, 3, 7, 10 ** 35]
    b = [2, 10 ** 50, 1, 5]
    got = kernels.mat_mul(a, b, 2)
    assert got[0] == (10 ** 40 + 1) * 2 + 3
    assert got[1] == (10 ** 40 + 1) * 10 ** 50 + 15


def test_iwahori_membership_agrees():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.choice([2, 3])
        p = rng.choice([2, 3])
        r = rng.choice([0, 1, 2])
        num = _rand_mat(rng, n, -12, 13)
        den = rng.choice([1, p, p * p, 3])
        assert (kernels.is_iwahori_scaled(num, den, n, p, r)
                == _pykernels.is_iwahori_scaled(num, den, n, p, r))


def test_vp_int():
    assert kernels.vp_int(24, 2) == 3
    assert kernels.vp_int(-54, 3) == 3
    assert kernels.vp_int(7, 5) == 0
