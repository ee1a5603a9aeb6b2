from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rmduality import circular
from rmduality.exact import morris_moment
from rmduality.jack import jack_expand, jack_principal
from rmduality.partitions import gen_pochhammer


def test_weight_coeff_against_numeric():
    c, d = 0.9, 1.7
    th = np.linspace(-0.5, 0.5, 400001)
    for k in (-2, 0, 1, 3):
        f = (
            np.exp(1j * np.pi * c * th)
            * np.abs(1 + np.exp(2j * np.pi * th)) ** d
            * np.exp(2j * np.pi * k * th)
        )
        num = np.trapezoid(f, th)
        assert_allclose(circular.weight_coeff(c, d, k), num, rtol=1e-8)


def test_pair_coeff_even_beta_binomial():
    import math

    for beta in (2, 4):
        for q in range(-(beta // 2) - 2, beta // 2 + 3):
            val = circular.pair_coeff(beta, q)
            if abs(q) > beta // 2:
                assert val == pytest.approx(0.0, abs=1e-14)
            else:
                assert val == pytest.approx(
                    (-1) ** q * math.comb(beta, beta // 2 + q)
                )


@pytest.mark.parametrize("N", [1, 2, 3])
def test_morris_values(N):
    obs = circular.factor_product_observable(
        circular.modulus_power_factor(1.0, 2), N
    )
    val = circular.torus_average(N, 2.0, obs)
    assert_allclose(val.real, morris_moment(N, 1, 2.0), rtol=1e-10)


def test_odd_beta_against_trapezoid():
    # CE_{1,2}[1] moment of prod |1+z_l|^2 via the pair-coefficient engine
    obs = circular.factor_product_observable(
        circular.modulus_power_factor(1.0, 1), 2
    )
    val = circular.torus_average(2, 1.0, obs)
    m = 4096
    th1 = (np.arange(m) + 0.5) / m - 0.5
    T1, T2 = np.meshgrid(th1, th1, indexing="ij")
    z1, z2 = np.exp(2j * np.pi * T1), np.exp(2j * np.pi * T2)
    w = np.abs(z2 - z1)
    f = np.abs((1 + z1) * (1 + z2)) ** 2
    ref = np.sum(w * f) / np.sum(w)
    assert_allclose(val.real, ref, rtol=1e-6)


def _jack_sign_observable(kappa, alpha, p, sign=-1):
    expn = jack_expand(kappa, alpha, max_len=p)
    obs = {}
    for mu, cf in expn.items():
        if len(mu) > p:
            continue
        padded = tuple(mu) + (0,) * (p - len(mu))
        for perm in set(permutations(padded)):
            obs[perm] = obs.get(perm, 0.0) + float(cf)
    return obs, (sign) ** sum(kappa)


@pytest.mark.parametrize("alpha,beta", [(Fraction(1, 2), 4.0), (Fraction(1), 2.0)])
def test_jack_average_weighted_circle(alpha, beta):
    # <P_kappa(-z)> with weight parameters (a, b) matches the Pochhammer ratio
    p = 2
    a, b = 1.3, 0.7
    for kappa in [(1,), (2,), (1, 1), (2, 1)]:
        obs, sgn = _jack_sign_observable(kappa, alpha, p)
        lhs = sgn * circular.torus_average(p, beta, obs, c=a - b, d=a + b)
        rhs = (
            float(jack_principal(kappa, alpha, p))
            * float(gen_pochhammer(-b, kappa, alpha))
            / float(gen_pochhammer(1 + a + (p - 1) / alpha, kappa, alpha))
        )
        assert_allclose(lhs.real, rhs, rtol=1e-9, atol=1e-12)
        assert abs(lhs.imag) < 1e-9


def test_exp_factor_and_binomial():
    f = circular.exp_factor(0.3)
    assert f[0] == pytest.approx(1.0)
    assert f[3] == pytest.approx(0.3**3 / 6)
    g = circular.binomial_factor(0.25, 3)
    assert set(g) == {0, 1, 2, 3}
    h = circular.binomial_factor(0.25, -1.5)
    assert h[1] == pytest.approx(-1.5 * 0.25)
    with pytest.raises(ValueError):
        circular.binomial_factor(1.5, -0.5)
