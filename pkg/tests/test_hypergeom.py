import math
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import hyp2f1

from rmduality.hypergeom import (
    ArgumentOutOfDomain,
    DivergentSeries,
    HypergeomSpec,
    PoleInDenominator,
    euler_transform_2f1,
    f00_batch,
    f00_two_sets,
    f01_two_sets,
    hyper_2f0,
    hyper_pfq,
    integral_oracle,
    kummer_transform_1f1,
    transform_2f0_to_1f1,
    transform_2f1_argflip,
)
from rmduality.jack import jack_eval, jack_principal
from rmduality.partitions import gen_pochhammer, partitions_of
from rmduality.quadrature import me_average


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_binomial_formula(alpha, p):
    r, x = 1.5, 0.3
    res = hyper_pfq(HypergeomSpec((r,), (), alpha, ("equal", x, p), max_weight=40))
    assert_allclose(res.value.real, (1 - x) ** (-r * p), rtol=1e-8)
    assert res.tail_estimate < 1e-10
    x2 = (0.2, -0.5, 0.6)[:p]
    res2 = hyper_pfq(HypergeomSpec((r,), (), alpha, ("vector", x2), max_weight=90))
    assert_allclose(
        res2.value.real, np.prod([(1 - v) ** (-r) for v in x2]), rtol=1e-8
    )


def test_scalar_2f1():
    res = hyper_pfq(HypergeomSpec((0.3, 0.7), (1.2,), 1.0, ("equal", 0.4, 1)))
    assert_allclose(res.value.real, hyp2f1(0.3, 0.7, 1.2, 0.4), rtol=1e-10)


def test_finite_mode_truncation_independent():
    spec1 = HypergeomSpec((-2, 0.7), (1.3,), 0.5, ("equal", 0.25, 2), max_weight=10)
    spec2 = HypergeomSpec((-2, 0.7), (1.3,), 0.5, ("equal", 0.25, 2), max_weight=80)
    a, b = hyper_pfq(spec1), hyper_pfq(spec2)
    assert a.exact and b.exact
    assert a.value == b.value
    # one-term truncation example
    res = hyper_pfq(HypergeomSpec((-1, 0.9), (1.4,), 1.7, ("equal", 0.3, 1)))
    assert_allclose(res.value.real, 1 - 0.9 / 1.4 * 0.3, rtol=1e-12)


def test_symmetry_in_numerator_parameters():
    a = hyper_pfq(HypergeomSpec((0.4, 1.1), (1.6,), 0.5, ("equal", 0.3, 2)))
    b = hyper_pfq(HypergeomSpec((1.1, 0.4), (1.6,), 0.5, ("equal", 0.3, 2)))
    assert_allclose(a.value, b.value, rtol=1e-12)


def test_f00_examples():
    res = f00_two_sets((0.1, 0.2), (1.0, 1.0), 0.77)
    assert_allclose(res.value.real, math.exp(0.3), rtol=1e-10)
    res = f00_two_sets((0.0, 0.0), (0.4, 0.9), 1.3)
    assert_allclose(res.value.real, 1.0, rtol=1e-12)
    res = f00_two_sets((0.5,), (0.4,), 1.0)
    assert_allclose(res.value.real, math.exp(0.2), rtol=1e-10)


def test_f00_hciz_determinant_oracle():
    # alpha = 1: N = 2 determinant form of the unitary group integral
    x = (0.3, -0.8)
    y = (0.5, 1.1)
    res = f00_two_sets(x, y, 1.0)
    num = np.linalg.det([[np.exp(x[i] * y[j]) for j in range(2)] for i in range(2)])
    den = (x[1] - x[0]) * (y[1] - y[0])
    pred = num / den / 1.0
    # normalization: 0F0 -> 1 at x -> 0; the determinant ratio carries 1/0! 1!
    assert_allclose(res.value.real, pred.real, rtol=1e-8)


def test_f01_examples():
    res = f01_two_sets(1.0, (1.0,), (1.0,), 1.0)
    assert_allclose(
        res.value.real, sum(1 / math.factorial(k) ** 2 for k in range(30)), rtol=1e-10
    )
    res = f01_two_sets(1.3, (0.0, 0.0), (0.5, 0.2), 2.0)
    assert_allclose(res.value.real, 1.0, rtol=1e-12)


def test_f00_batch_matches_single():
    xs = np.array([[0.3, -0.8], [1.2, 0.4], [0.0, 0.0]])
    y = (0.5, -0.2)
    out = f00_batch(xs, y, 2.0)
    for i in range(len(xs)):
        single = f00_two_sets(tuple(xs[i]), y, 2.0).value
        assert_allclose(out[i], single, rtol=1e-10)


def test_euler_transform():
    lhs = hyper_pfq(HypergeomSpec((-2, 0.7), (1.3,), 0.5, ("equal", 0.25, 2)))
    rhs = euler_transform_2f1(-2, 0.7, 1.3, 0.5, ("equal", 0.25, 2))
    assert_allclose(lhs.value, rhs.value, rtol=1e-12)
    assert_allclose(
        euler_transform_2f1(0.6, 0.8, 1.5, 2.0, ("equal", 0.0, 2)).value, 1.0
    )
    with pytest.raises(ArgumentOutOfDomain):
        euler_transform_2f1(0.5, 0.5, 1.0, 1.0, ("equal", 1.2, 1))


def test_kummer_transform():
    lhs = hyper_pfq(HypergeomSpec((-1.0,), (2.0,), 1.0, ("equal", 0.3, 1)))
    rhs = kummer_transform_1f1(-1.0, 2.0, 1.0, ("equal", 0.3, 1))
    assert_allclose(lhs.value, rhs.value, rtol=1e-10)
    # a = c: both sides are the multivariate exponential
    rhs2 = kummer_transform_1f1(1.4, 1.4, 0.5, ("vector", (0.2, 0.7)))
    assert_allclose(rhs2.value.real, math.exp(0.9), rtol=1e-10)
    lhs3 = hyper_pfq(HypergeomSpec((0.8,), (1.9,), 2.0, ("vector", (0.3, -0.4))))
    rhs3 = kummer_transform_1f1(0.8, 1.9, 2.0, ("vector", (0.3, -0.4)))
    assert_allclose(lhs3.value, rhs3.value, rtol=1e-9)


def test_argflip_transform():
    for alpha, args in [(1.0, (0.3, 0.5)), (0.5, (0.25, 0.6)), (2.0, (0.4,))]:
        N, b, c = 2, 0.8, 1.4
        lhs = hyper_pfq(HypergeomSpec((-N, b), (c,), alpha, ("vector", args)))
        rhs = transform_2f1_argflip(N, b, c, alpha, ("vector", args))
        assert_allclose(lhs.value, rhs.value, rtol=1e-10)


def test_2f0_to_1f1():
    for a, b, alpha, xs in [
        (1, 3.5, 1.0, (2.0,)),
        (2, 3.5, 1.0, (2.5,)),
        (1, 4.0, 2.0, (2.0, 1.5)),
    ]:
        n = len(xs)
        lhs = hyper_2f0(-a, 1 + b - a + (n - 1) / alpha, alpha, tuple(1 / v for v in xs))
        rhs = transform_2f0_to_1f1(a, b, alpha, xs)
        assert_allclose(lhs.value, rhs.value, rtol=1e-11)
    with pytest.raises(ArgumentOutOfDomain):
        transform_2f0_to_1f1(2, 1.5, 1.0, (2.0,))


def test_integral_oracles():
    v = integral_oracle("circular1F1", {"a": 1.0, "b": 1.0, "t": 0.0})
    assert_allclose(v.real, 1.0, rtol=1e-10)
    v = integral_oracle("circular1F1", {"a": 1.0, "b": 1.0, "t": 0.3})
    s = hyper_pfq(HypergeomSpec((-1.0,), (2.0,), 1.0, ("equal", 0.3, 1)))
    assert_allclose(v, s.value, rtol=1e-8)
    v = integral_oracle("circular2F1", {"a": 1.0, "b": 1.0, "r": 1.0, "t": 0.3})
    s = hyper_pfq(HypergeomSpec((1.0, -1.0), (2.0,), 1.0, ("equal", 0.3, 1)))
    assert_allclose(v, s.value, rtol=1e-8)
    v = integral_oracle("bessel0F1", {"c": 1, "beta": 2.0, "u": 0.5}, n=1)
    s = hyper_pfq(HypergeomSpec((), (1.0,), 1.0, ("equal", 0.5, 1)))
    assert_allclose(v, s.value, rtol=1e-8)
    v = integral_oracle("cw1a", {"a": 1.0, "b": 1.0, "alpha": 1.0, "t": 0.4}, n=2)
    s = hyper_pfq(HypergeomSpec((-1.0,), (3.0,), 1.0, ("equal", 0.4, 2)))
    assert_allclose(v, s.value, rtol=1e-8)


def test_circular_2f1_average_form():
    # <prod (1 + t z_l)^{-r}> over the weighted circle equals the 2F1 series
    from rmduality import circular

    p, alpha = 2, 1.0
    a, b, r, t = 1.2, 0.8, 1.4, 0.35
    obs = circular.factor_product_observable(
        circular.binomial_factor(t, -r), p, total_cap=90
    )
    lhs = circular.torus_average(p, 2.0 / alpha, obs, c=a - b, d=a + b)
    rhs = hyper_pfq(
        HypergeomSpec((r, -b), ((p - 1) / alpha + a + 1,), alpha, ("equal", t, p))
    )
    assert_allclose(lhs, rhs.value, rtol=1e-8)


def test_jacobi_2f1_average_form():
    # <prod (1 - t x_l)^{-r}> over the (0,1) ensemble equals the 2F1 series
    for alpha, beta in [(1.0, 2.0), (0.5, 4.0), (2.0, 1.0)]:
        p, a1, a2, r, t = 2, 1.0, 0.5, 1.3, 0.4
        lhs = me_average(
            ("jacobi", a1, a2),
            p,
            beta,
            lambda x: np.prod((1 - t * x) ** (-r), axis=1),
        )
        rhs = hyper_pfq(
            HypergeomSpec(
                (r, (p - 1) / alpha + a1 + 1),
                (2 * (p - 1) / alpha + a1 + a2 + 2,),
                alpha,
                ("equal", t, p),
            )
        )
        assert_allclose(lhs, rhs.value.real, rtol=1e-7)


def test_jack_averages_laguerre_jacobi_prime():
    # Laguerre and (1+x)-type Jack averages against their Pochhammer forms
    rng = np.random.default_rng(0)
    for alpha, beta in [(1.0, 2.0), (0.5, 4.0)]:
        N, a = 2, 0.7
        for kappa in [(1,), (2,), (1, 1), (2, 1)]:
            lhs = me_average(
                ("laguerre", a, 1.0),
                N,
                beta,
                lambda lam, k=kappa: np.array(
                    [jack_eval(k, alpha, tuple(v)) for v in lam]
                ),
            )
            rhs = float(jack_principal(kappa, alpha, N)) * float(
                gen_pochhammer(a + 1 + (N - 1) / alpha, kappa, alpha)
            )
            assert_allclose(lhs, rhs, rtol=1e-7)
    # Jacobi two-parameter average
    alpha, beta = 1.0, 2.0
    N, a1, a2 = 2, 0.6, 0.9
    for kappa in [(1,), (2,), (1, 1)]:
        lhs = me_average(
            ("jacobi", a1, a2),
            N,
            beta,
            lambda lam, k=kappa: np.array([jack_eval(k, alpha, tuple(v)) for v in lam]),
        )
        rhs = float(jack_principal(kappa, alpha, N)) * float(
            gen_pochhammer(a1 + 1 + (N - 1) / alpha, kappa, alpha)
        ) / float(gen_pochhammer(a1 + a2 + 2 + 2 * (N - 1) / alpha, kappa, alpha))
        assert_allclose(lhs, rhs, rtol=1e-7)
    # (1+x)^{-...} ensemble average with alternating-sign principal value
    alpha, beta = 1.0, 2.0
    N, b1, b2 = 2, 0.4, 3.0
    for kappa in [(1,), (1, 1)]:
        lhs = me_average(
            ("jacobi_prime", b1, b1 + b2 + 2 + 2 * (N - 1) / alpha),
            N,
            beta,
            lambda lam, k=kappa: np.array([jack_eval(k, alpha, tuple(v)) for v in lam]),
        )
        rhs = float(jack_principal(kappa, alpha, N)) * (-1) ** sum(kappa) * float(
            gen_pochhammer(b1 + 1 + (N - 1) / alpha, kappa, alpha)
        ) / float(gen_pochhammer(-b2, kappa, alpha))
        assert_allclose(lhs, rhs, rtol=1e-6)


def test_1f1_charpoly_average_form():
    # terminating 1F1 as a characteristic-polynomial average; the ratio is
    # constant across the argument grid
    alpha, a, a1 = 1.0, 2, 0.5
    beta_dual = 2 * alpha

    def series(xs):
        return hyper_pfq(
            HypergeomSpec((-a,), ((a1 + len(xs)) / alpha,), alpha, ("vector", xs))
        ).value

    def average(xs):
        return me_average(
            ("laguerre", a1, beta_dual / 2),
            a,
            beta_dual,
            lambda y: np.prod(
                [np.prod(x - y, axis=1) for x in xs],
                axis=0,
            ),
        )

    grids = [(0.3, 0.9), (0.5, 1.4), (1.0, 2.0)]
    ratios = [series(g) / average(g) for g in grids]
    assert_allclose([r.real for r in ratios], ratios[0].real, rtol=1e-7)


def test_error_conditions():
    with pytest.raises(PoleInDenominator):
        hyper_pfq(HypergeomSpec((0.5,), (-1.0,), 1.0, ("equal", 0.3, 2)))
    with pytest.raises(DivergentSeries):
        hyper_pfq(HypergeomSpec((0.5, 0.8), (), 1.0, ("equal", 0.9, 2), max_weight=40))
