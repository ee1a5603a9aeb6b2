import math
from fractions import Fraction

import pytest

from rmduality.partitions import (
    conjugate,
    dominance_leq,
    double_partition,
    gen_pochhammer,
    hook_product,
    normalize,
    partitions_in_box,
    partitions_of,
    square_partition,
)


def test_conjugate_examples():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert conjugate((2, 2)) == (2, 2)


def test_conjugate_involution_and_weight():
    for n in range(9):
        for k in partitions_of(n):
            assert conjugate(conjugate(k)) == k
            assert sum(conjugate(k)) == n
            if k:
                assert len(conjugate(k)) == k[0]


def test_dominance():
    assert dominance_leq((2, 2), (3, 1))
    assert not dominance_leq((3, 1), (2, 2))
    assert dominance_leq((4,), (4,))


def test_hook_product():
    a = Fraction(7, 3)
    assert hook_product((1,), a) == a
    assert hook_product((2, 1), a) == a * a * (2 * a + 1)
    assert hook_product((2,), Fraction(1)) == 2
    with pytest.raises(ValueError):
        hook_product((1,), 0)


def test_gen_pochhammer_examples():
    u = Fraction(5, 4)
    a = Fraction(3, 2)
    assert gen_pochhammer(u, (1,), a) == u
    assert gen_pochhammer(u, (2,), a) == u * (u + 1)
    assert gen_pochhammer(u, (1, 1), a) == u * (u - 1 / a)


def test_pochhammer_conjugation_duality():
    # [u]^(alpha) against the conjugate partition at 1/alpha
    for alpha in (Fraction(1, 2), Fraction(1), Fraction(2), 3.7):
        inv = 1 / alpha if isinstance(alpha, Fraction) else 1.0 / alpha
        u = Fraction(3, 7) if isinstance(alpha, Fraction) else 0.43
        for n in range(9):
            for k in partitions_of(n):
                lhs = gen_pochhammer(u, k, alpha)
                rhs = gen_pochhammer(-alpha * u, conjugate(k), inv)
                rhs = rhs * (-alpha) ** (-n) if n else rhs
                if isinstance(alpha, Fraction):
                    assert lhs == rhs
                else:
                    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_pochhammer_duplication():
    u = Fraction(9, 5)
    for n in range(7):
        for k in partitions_of(n):
            lhs = gen_pochhammer(u, double_partition(k), Fraction(1))
            rhs = (
                Fraction(4) ** n
                * gen_pochhammer(u / 2, k, Fraction(2))
                * gen_pochhammer((u + 1) / 2, k, Fraction(2))
            )
            assert lhs == rhs
            lhs2 = gen_pochhammer(u, square_partition(k), Fraction(1))
            rhs2 = gen_pochhammer(u, k, Fraction(1, 2)) * gen_pochhammer(
                u - 1, k, Fraction(1, 2)
            )
            assert lhs2 == rhs2


def test_truncation_at_negative_integer():
    alpha = Fraction(5, 3)
    for N in (1, 2, 3):
        for n in range(8):
            for k in partitions_of(n):
                val = gen_pochhammer(-N, k, alpha)
                if k and k[0] > N:
                    assert val == 0
                else:
                    assert val != 0


def test_box_enumeration():
    assert partitions_in_box(1, 1) == [(), (1,)] or partitions_in_box(1, 1) == [
        (),
        (1,),
    ]
    assert list(partitions_in_box(2, 1)) == [(), (1,), (1, 1)]
    assert list(partitions_in_box(1, 2)) == [(), (1,), (2,)]
    for a in range(1, 9):
        for b in range(1, 9):
            assert len(partitions_in_box(a, b)) == math.comb(a + b, a)


def test_normalize():
    assert normalize([0, 3, 1, 0, 2]) == (3, 2, 1)
    with pytest.raises(ValueError):
        normalize([-1, 2])
