"""Jack polynomial engine.

``P_kappa^(alpha)`` is monic in the monomial basis and triangular with
respect to dominance order.  The expansion coefficients are produced by the
standard second-order eigenoperator recursion, which moves a box between two
rows and therefore never increases the number of parts: coefficients for
partitions of at most ``max_len`` rows close among themselves, so an
expansion for evaluation in n variables only touches partitions with at
most n rows.

Rational ``alpha`` (int / Fraction) gives exact rational coefficients;
float ``alpha`` gives float coefficients.
"""

import math
import threading
from fractions import Fraction

import numpy as np

from .partitions import (
    conjugate,
    dominance_leq,
    gen_pochhammer,
    hook_lower,
    hook_product,
    partitions_of,
    weight,
)

__all__ = [
    "jack_expand",
    "jack_eval",
    "jack_principal",
    "jack_equal_args",
    "zonal_C",
    "monomial_sym",
    "dual_cauchy_residual",
    "schur_bialternant",
]

_CACHE = {}
_CACHE_LOCK = threading.Lock()


def _alpha_key(alpha):
    if isinstance(alpha, (int, Fraction)):
        return Fraction(alpha)
    return float(alpha)


def _eps(mu, alpha):
    """n-independent part of the eigenoperator eigenvalue."""
    s1 = sum(p * (p - 1) for p in mu)
    s2 = sum(i * p for i, p in enumerate(mu, start=1))
    if isinstance(alpha, Fraction):
        return s1 - Fraction(2, 1) / alpha * s2
    return s1 - 2.0 / alpha * s2


def jack_expand(kappa, alpha, max_len=None):
    """Monomial expansion of P_kappa^(alpha), restricted to <= max_len rows.

    Returns a dict mapping partitions mu (with mu <= kappa in dominance,
    |mu| = |kappa|, at most max_len rows) to the coefficient of m_mu.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    n = weight(kappa)
    if max_len is None or max_len > n:
        max_len = n
    key = (kappa, _alpha_key(alpha), max_len)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return hit

    a = Fraction(alpha) if isinstance(alpha, (int, Fraction)) else float(alpha)
    two_over_a = (Fraction(2) / a) if isinstance(a, Fraction) else 2.0 / a
    coeffs = {kappa: Fraction(1) if isinstance(a, Fraction) else 1.0}
    eps_kappa = _eps(kappa, a)
    # reverse-lex order refines dominance, so sources are always ready
    for mu in partitions_of(n, max_len=max_len):
        if mu == kappa or not dominance_leq(mu, kappa):
            continue
        acc = Fraction(0) if isinstance(a, Fraction) else 0.0
        lm = len(mu)
        for i in range(lm):
            for j in range(i + 1, lm):
                for s in range(1, mu[j] + 1):
                    src = list(mu)
                    src[i] += s
                    src[j] -= s
                    nu = tuple(sorted((p for p in src if p), reverse=True))
                    c = coeffs.get(nu)
                    if c is not None:
                        acc += (mu[i] - mu[j] + 2 * s) * c
        if acc:
            denom = eps_kappa - _eps(mu, a)
            if denom == 0:
                raise ArithmeticError(
                    f"singular eigenoperator solve for kappa={kappa}, "
                    f"alpha={alpha}: degenerate eigenvalue at mu={mu}"
                )
            coeffs[mu] = two_over_a * acc / denom
    with _CACHE_LOCK:
        _CACHE.setdefault(key, coeffs)
    return coeffs


def monomial_sym(mu, x):
    """Monomial symmetric polynomial m_mu(x).

    ``x`` is a 1-d sequence, or an array whose last axis indexes the
    variables (evaluation is then broadcast over the leading axes).
    """
    x = np.asarray(x)
    n = x.shape[-1]
    if len(mu) > n:
        return np.zeros(x.shape[:-1]) if x.ndim > 1 else 0.0
    # group equal parts; sum over injective assignments of part-groups
    groups = []
    for p in mu:
        if groups and groups[-1][0] == p:
            groups[-1][1] += 1
        else:
            groups.append([p, 1])

    def rec(g, free):
        if g == len(groups):
            return np.ones(x.shape[:-1], dtype=x.dtype) if x.ndim > 1 else 1.0
        p, mult = groups[g]
        total = 0.0
        for sub in _combos(free, mult):
            term = rec(g + 1, tuple(v for v in free if v not in sub))
            for idx in sub:
                term = term * x[..., idx] ** p
            total = total + term
        return total

    return rec(0, tuple(range(n)))


def _combos(pool, k):
    from itertools import combinations

    return combinations(pool, k)


def jack_eval(kappa, alpha, x):
    """P_kappa^(alpha)(x) via the monomial expansion; 0 if too few variables."""
    x = tuple(x)
    if len(kappa) > len(x):
        return 0.0
    if not kappa:
        return 1.0
    xs = np.asarray(x)
    coeffs = jack_expand(kappa, alpha, max_len=len(x))
    total = 0.0
    for mu, c in coeffs.items():
        total += (float(c) if isinstance(c, Fraction) else c) * monomial_sym(mu, xs)
    return total


def jack_principal(kappa, alpha, N):
    """P_kappa^(alpha) at N ones, by the hook-ratio product formula."""
    if len(kappa) > N:
        return Fraction(0) if isinstance(alpha, (int, Fraction)) else 0.0
    exact = isinstance(alpha, (int, Fraction))
    a = Fraction(alpha) if exact else alpha
    num = Fraction(1) if exact else 1.0
    for i, p in enumerate(kappa, start=1):
        for j in range(1, p + 1):
            num *= N - (i - 1) + a * (j - 1)
    return num / hook_lower(kappa, a)


def jack_equal_args(kappa, alpha, t, p):
    """P_kappa^(alpha) at p copies of t (homogeneity of degree |kappa|)."""
    k = weight(kappa)
    if len(kappa) > p:
        return 0.0
    principal = jack_principal(kappa, alpha, p)
    if k == 0:
        return 1.0 * principal
    return t**k * (
        float(principal) if isinstance(principal, Fraction) else principal
    )


def zonal_C(kappa, alpha, x):
    """C normalization: (alpha^|kappa| |kappa|! / h'_kappa) P_kappa(x)."""
    k = weight(kappa)
    pref = (alpha**k) * math.factorial(k) / float(hook_product(kappa, alpha))
    return pref * jack_eval(kappa, alpha, x)


def zonal_C_principal(kappa, alpha, N):
    """C_kappa^(alpha) at N ones."""
    k = weight(kappa)
    pref = (alpha**k) * math.factorial(k) / float(hook_product(kappa, alpha))
    return pref * float(jack_principal(kappa, alpha, N))


def dual_cauchy_residual(N, p, alpha, x, y):
    """prod (1 - x_k y_l) minus its dual Cauchy expansion over kappa in (p)^N."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    lhs = np.prod([1 - xk * yl for xk in x for yl in y])
    inv = (
        Fraction(1) / Fraction(alpha)
        if isinstance(alpha, (int, Fraction))
        else 1.0 / alpha
    )
    total = 0.0
    for n in range(N * p + 1):
        for kappa in partitions_of(n, max_len=N, max_part=p):
            total += (
                (-1) ** n
                * jack_eval(kappa, alpha, x)
                * jack_eval(conjugate(kappa), inv, y)
            )
    return lhs - total


def schur_bialternant(kappa, x):
    """Schur polynomial via the bialternant ratio (test oracle for alpha=1)."""
    x = np.asarray(x, dtype=complex)
    n = len(x)
    if len(kappa) > n:
        return 0.0
    lam = list(kappa) + [0] * (n - len(kappa))
    num = np.array([[xi ** (lam[j] + n - 1 - j) for j in range(n)] for xi in x])
    den = np.array([[xi ** (n - 1 - j) for j in range(n)] for xi in x])
    return np.linalg.det(num) / np.linalg.det(den)


# generalized Pochhammer re-export used together with the engine
poch = gen_pochhammer
hookp = hook_product
