import math
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rmduality.jack import (
    conjugate,
    dual_cauchy_residual,
    jack_equal_args,
    jack_eval,
    jack_expand,
    jack_principal,
    schur_bialternant,
    zonal_C,
)
from rmduality.partitions import (
    gen_pochhammer,
    hook_product,
    partitions_of,
)


def test_expansion_examples():
    assert jack_expand((1, 1), Fraction(3)) == {(1, 1): 1}
    exp2 = jack_expand((2,), Fraction(1))
    assert exp2[(1, 1)] == 1
    assert jack_expand((2,), Fraction(2))[(1, 1)] == Fraction(2, 3)


@pytest.mark.parametrize("kappa", [(2,), (3, 1), (2, 2), (4, 2, 1), (3, 3, 2)])
def test_alpha_one_is_schur(kappa):
    rng = np.random.default_rng(0)
    for n in range(len(kappa), 5):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        assert_allclose(
            jack_eval(kappa, 1, tuple(x)),
            schur_bialternant(kappa, x),
            rtol=1e-12,
        )


def test_eval_examples():
    assert jack_eval((1,), 0.7, (0.3, 0.4)) == pytest.approx(0.7)
    assert jack_eval((1, 1), 2.0, (0.5,)) == 0.0
    assert jack_eval((2,), 1, (1.0, 1.0)) == pytest.approx(3.0)


def test_zero_variable_stability():
    rng = np.random.default_rng(3)
    for kappa in [(2, 1), (3,)]:
        x = tuple(rng.standard_normal(3))
        a = jack_eval(kappa, 1.7, x)
        b = jack_eval(kappa, 1.7, x + (0.0, 0.0))
        assert_allclose(a, b, rtol=1e-12)


def test_principal_examples():
    assert jack_principal((1,), Fraction(2), 5) == 5
    assert jack_principal((2,), Fraction(3), 2) == 2 + Fraction(2, 4)
    assert jack_principal((1, 1), Fraction(1), 2) == 1


def test_equal_args():
    assert jack_equal_args((1,), 1.0, 3.0, 2) == pytest.approx(6.0)
    assert jack_equal_args((2, 1), 1.0, 0.0, 3) == 0.0
    # rectangular pattern: P_{(p)^N}(i*y) is the full product, checked directly
    p, N = 2, 2
    y = np.array([0.7, 1.3])
    val = jack_eval((p,) * N, 0.5, tuple(1j * y))
    assert_allclose(val, np.prod((1j * y) ** N) * 1.0, rtol=1e-10)


def test_zonal_examples():
    rng = np.random.default_rng(1)
    x = tuple(rng.standard_normal(3))
    for alpha in (0.5, 1.0, 2.0):
        assert_allclose(zonal_C((1,), alpha, x), sum(x), rtol=1e-12)
    assert zonal_C((), 2.0, x) == pytest.approx(1.0)
    assert zonal_C((2,), 1.0, (1.0, 1.0)) == pytest.approx(3.0)


def test_dual_cauchy_small():
    assert abs(dual_cauchy_residual(1, 1, 1.3, [0.4], [0.5])) < 1e-14
    rng = np.random.default_rng(2)
    for alpha in (Fraction(1, 2), 1, 2, 3.7):
        x = rng.uniform(-1, 1, 2)
        y = rng.uniform(-1, 1, 1)
        assert abs(dual_cauchy_residual(2, 1, alpha, x, y)) < 1e-12


def test_hook_duality_in_r():
    # h'_{kappa'} at 1/alpha equals the Pochhammer/principal ratio, any r
    for alpha in (Fraction(1, 2), Fraction(2), Fraction(5, 3)):
        inv = 1 / alpha
        for n in range(1, 7):
            for kappa in partitions_of(n, max_len=4):
                vals = []
                for r in range(len(kappa), 7):
                    num = gen_pochhammer(r * alpha, kappa, inv)
                    den = jack_principal(kappa, inv, r)
                    vals.append(num / den)
                assert all(v == vals[0] for v in vals)
                assert vals[0] == hook_product(conjugate(kappa), alpha)


def test_ratio_identities():
    # [k]^(1)/C((1)^k) = h'^2/|kappa|! and the Schur principal ratio
    for n in range(1, 7):
        for kappa in partitions_of(n):
            h1 = hook_product(kappa, Fraction(1))
            for k in range(1, 6):
                lhs = gen_pochhammer(k, kappa, Fraction(1)) / (
                    Fraction(1) ** n * math.factorial(n) / h1 * jack_principal(kappa, Fraction(1), k)
                ) if jack_principal(kappa, Fraction(1), k) else None
                if lhs is not None:
                    assert lhs == h1 * h1 / math.factorial(n)
            for k in range(1, 6):
                for N in range(1, 6):
                    kc = conjugate(kappa)
                    sk = jack_principal(kappa, Fraction(1), k)
                    skc = jack_principal(kc, Fraction(1), N)
                    pk = gen_pochhammer(k, kappa, Fraction(1))
                    pNc = gen_pochhammer(N, kc, Fraction(1))
                    if pk != 0:
                        assert pNc * sk / pk == skc


def test_doubled_hook_identity():
    # (1/(|k|! 2^{|k|})) h'_{2k}|(1) = 2^{|k|}[N/2]^{(2)} / C^{(2)}((1)^N)
    # and its repeated-parts companion with alpha = 1/2
    from rmduality.partitions import double_partition, square_partition

    def c_principal(kappa, alpha, N):
        n = sum(kappa)
        return (
            alpha**n
            * math.factorial(n)
            / hook_product(kappa, alpha)
            * jack_principal(kappa, alpha, N)
        )

    for n in range(1, 6):
        for kappa in partitions_of(n, max_len=3):
            lhs = hook_product(double_partition(kappa), Fraction(1)) / (
                math.factorial(n) * Fraction(2) ** n
            )
            lhs_sq = hook_product(square_partition(kappa), Fraction(1)) / (
                math.factorial(n) * Fraction(2) ** n
            )
            for N in range(len(kappa), 5):
                c2 = c_principal(kappa, Fraction(2), N)
                if c2 != 0:
                    rhs = (
                        Fraction(2) ** n
                        * gen_pochhammer(Fraction(N, 2), kappa, Fraction(2))
                        / c2
                    )
                    assert lhs == rhs
                ch = c_principal(kappa, Fraction(1, 2), N)
                if ch != 0:
                    rhs_sq = gen_pochhammer(2 * N, kappa, Fraction(1, 2)) / (
                        Fraction(2) ** n * ch
                    )
                    assert lhs_sq == rhs_sq
