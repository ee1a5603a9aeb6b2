"""Exact partition combinatorics.

Partitions are plain tuples of weakly decreasing positive integers with
trailing zeros trimmed; the empty partition is ``()``.  Everything here is
pure and exact: rational inputs (``int`` / ``Fraction``) give rational
outputs, floats give floats.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = [
    "normalize",
    "weight",
    "length",
    "conjugate",
    "dominance_leq",
    "cells",
    "arm",
    "leg",
    "hook_product",
    "hook_lower",
    "gen_pochhammer",
    "partitions_in_box",
    "partitions_of",
    "double_partition",
    "square_partition",
]


def normalize(parts):
    """Sort descending, drop zeros, return a canonical tuple."""
    t = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if any(p < 0 for p in t):
        raise ValueError("partition parts must be nonnegative")
    return t


def weight(kappa):
    return sum(kappa)


def length(kappa):
    return len(kappa)


@lru_cache(maxsize=None)
def conjugate(kappa):
    """Conjugate (diagram transpose): (kappa')_j = #{i : kappa_i >= j}."""
    if not kappa:
        return ()
    return tuple(sum(1 for p in kappa if p >= j) for j in range(1, kappa[0] + 1))


def dominance_leq(mu, kappa):
    """Prefix-sum partial order: sum(mu[:s]) <= sum(kappa[:s]) for all s."""
    n = max(len(mu), len(kappa))
    sm = sk = 0
    for i in range(n):
        sm += mu[i] if i < len(mu) else 0
        sk += kappa[i] if i < len(kappa) else 0
        if sm > sk:
            return False
    return True


def cells(kappa):
    """Iterate the diagram cells as 1-based (row, column) pairs."""
    for i, p in enumerate(kappa, start=1):
        for j in range(1, p + 1):
            yield i, j


def arm(kappa, i, j):
    """a(s) = kappa_i - j for the cell s = (i, j)."""
    return kappa[i - 1] - j


def leg(kappa, i, j):
    """l(s) = number of rows below row i whose part is >= j."""
    return sum(1 for p in kappa[i:] if p >= j)


def hook_product(kappa, alpha):
    """Upper hook product: prod over cells of (alpha*(a+1) + l)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    out = _one(alpha)
    for i, j in cells(kappa):
        out *= alpha * (arm(kappa, i, j) + 1) + leg(kappa, i, j)
    return out


def hook_lower(kappa, alpha):
    """Lower hook product: prod over cells of (alpha*a + l + 1)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    out = _one(alpha)
    for i, j in cells(kappa):
        out *= alpha * arm(kappa, i, j) + leg(kappa, i, j) + 1
    return out


def gen_pochhammer(u, kappa, alpha):
    """Generalized Pochhammer symbol.

    Evaluated as the finite product prod_j prod_{i=0}^{kappa_j - 1}
    (u - (j-1)/alpha + i): no Gamma functions, so the vanishing at
    nonpositive-integer arguments is exact.
    """
    exact = _is_rational(u) and _is_rational(alpha)
    a = Fraction(alpha) if exact else alpha
    uu = Fraction(u) if exact else u
    out = Fraction(1) if exact else 1.0
    for j, p in enumerate(kappa, start=1):
        base = uu - Fraction(j - 1, 1) / a if exact else uu - (j - 1) / a
        for i in range(p):
            out *= base + i
    return out


def partitions_in_box(max_parts, max_part):
    """All partitions with at most ``max_parts`` rows and parts <= ``max_part``.

    Ordered by increasing weight, then reverse-lexicographically.  The count
    is binomial(max_parts + max_part, max_parts).
    """
    out = []
    for n in range(max_parts * max_part + 1):
        out.extend(partitions_of(n, max_len=max_parts, max_part=max_part))
    assert len(out) == comb(max_parts + max_part, max_parts)
    return out


@lru_cache(maxsize=None)
def partitions_of(n, max_len=None, max_part=None):
    """Partitions of n (reverse-lexicographic order), optionally boxed."""
    if max_len is None:
        max_len = n
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    if max_len == 0 or max_part == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, max_len - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def double_partition(kappa):
    """2*kappa: every part doubled."""
    return tuple(2 * p for p in kappa)


def square_partition(kappa):
    """kappa^2: every part repeated twice."""
    out = []
    for p in kappa:
        out.extend((p, p))
    return tuple(out)


def _is_rational(x):
    return isinstance(x, (int, Fraction))


def _one(alpha):
    return Fraction(1) if _is_rational(alpha) else 1.0
