"""Analytic Fourier backend for circular-ensemble averages.

Averages over ``CE_{beta,N}[w]`` of Laurent polynomials in the eigenvalue
phases ``z_l = exp(2*pi*i*theta_l)`` reduce to convolutions of two analytic
Fourier coefficient families:

* weight coefficients of ``w(theta) = exp(pi*i*c*theta) |1 + z|^d``:
  ``W(k) = Gamma(d+1) / (Gamma(1 + (d+c)/2 + k) Gamma(1 + (d-c)/2 - k))``
* pair coefficients of ``|2 sin(pi u)|^beta``:
  ``g(q) = (-1)^q Gamma(beta+1) / (Gamma(1 + beta/2 + q) Gamma(1 + beta/2 - q))``

For even integer beta the pair coefficients have finite support and the
moments are exact; otherwise the convolutions are truncated with doubling
until stable.  Supported sizes: N <= 3.
"""

import math
import threading
from fractions import Fraction

import numpy as np
from scipy.special import loggamma

__all__ = [
    "QuadratureNotConverged",
    "weight_coeff",
    "pair_coeff",
    "torus_moment",
    "torus_average",
    "factor_product_observable",
    "laurent_product",
    "charpoly_factor",
    "modulus_power_factor",
    "exp_factor",
    "binomial_factor",
    "jack_pair_observable",
]


class QuadratureNotConverged(RuntimeError):
    pass


def _rgamma(z):
    """1/Gamma(z), zero at the poles, complex-safe."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    pole = (np.abs(z.imag) < 1e-300) & (z.real <= 0) & (
        np.abs(z.real - np.round(z.real)) < 1e-12
    )
    ok = ~pole
    out[ok] = np.exp(-loggamma(z[ok]))
    return out


def weight_coeff(c, d, k):
    """Fourier coefficient of exp(pi*i*c*theta)|1+e^{2pi i theta}|^d at e^{2pi i k theta}."""
    k = np.asarray(k)
    pref = np.exp(loggamma(d + 1)) if not _is_zero(d) else 1.0
    return pref * _rgamma(1 + (d + c) / 2 + k) * _rgamma(1 + (d - c) / 2 - k)


def pair_coeff(beta, q):
    """Fourier coefficient of |2 sin(pi u)|^beta at e^{2 pi i q u}."""
    q = np.asarray(q)
    sign = np.where(q % 2 == 0, 1.0, -1.0)
    return (
        sign
        * math.gamma(beta + 1)
        * _rgamma(1 + beta / 2 + q).real
        * _rgamma(1 + beta / 2 - q).real
    )


def _is_zero(x):
    return isinstance(x, (int, float)) and x == 0


def _even_beta(beta):
    b = float(beta)
    return b == int(b) and int(b) % 2 == 0


_MOMENT_CACHE = {}
_MOMENT_LOCK = threading.Lock()


class _Engine:
    """Unnormalized moments T(m) = int prod z^{m_l} w(theta_l) |Delta|^beta."""

    def __init__(self, N, beta, c, d, Q):
        self.N = N
        self.beta = float(beta)
        self.c = complex(c)
        self.d = complex(d)
        if _even_beta(beta):
            self.Q = int(beta) // 2
        else:
            self.Q = Q
        qs = np.arange(-self.Q, self.Q + 1)
        self.qs = qs
        self.g = pair_coeff(self.beta, qs)
        self._w_cache = {}
        self._h_cache = {}

    def W(self, k):
        hit = self._w_cache.get(k)
        if hit is None:
            hit = complex(weight_coeff(self.c, self.d, k))
            self._w_cache[k] = hit
        return hit

    def _Wvec(self, ks):
        return np.array([self.W(int(k)) for k in ks])

    def _h(self, r, s):
        """h(r, s) = sum_q g(q) W(r+q) W(s-q)."""
        key = (r, s)
        hit = self._h_cache.get(key)
        if hit is None:
            hit = complex(
                np.sum(self.g * self._Wvec(r + self.qs) * self._Wvec(s - self.qs))
            )
            self._h_cache[key] = hit
        return hit

    def moment(self, m):
        N = self.N
        if N == 1:
            return self.W(int(m[0]))
        if N == 2:
            return self._h(int(m[0]), int(m[1]))
        if N == 3:
            m1, m2, m3 = (int(v) for v in m)
            total = 0.0 + 0.0j
            g = self.g
            qs = self.qs
            for i1, q1 in enumerate(qs):
                if g[i1] == 0.0:
                    continue
                w1 = self._Wvec(m1 + q1 + qs)
                row = 0.0 + 0.0j
                for i2, q2 in enumerate(qs):
                    if g[i2] == 0.0 or w1[i2] == 0.0:
                        continue
                    row += g[i2] * w1[i2] * self._h(m2 - q1, m3 - q2)
                total += g[i1] * row
            return total
        raise ValueError("circular Fourier backend supports N <= 3")


def _key(beta, c, d):
    def canon(x):
        if isinstance(x, Fraction):
            return x
        xc = complex(x)
        return (xc.real, xc.imag)

    return (float(beta), canon(c), canon(d))


def torus_moment(N, beta, m, c=0, d=0, Q=64):
    key = (N, _key(beta, c, d), Q)
    with _MOMENT_LOCK:
        eng = _MOMENT_CACHE.get(key)
        if eng is None:
            eng = _Engine(N, beta, c, d, Q)
            _MOMENT_CACHE[key] = eng
    return eng.moment(m)


def torus_average(N, beta, obs, c=0, d=0, rtol=1e-10, Q0=48):
    """<obs> over CE_{beta,N}[exp(pi i c theta)|1+z|^d].

    ``obs`` maps exponent tuples (length N) to coefficients.  For even beta
    the result is exact; otherwise the pair-coefficient cutoff is doubled
    until the value is stable to ``rtol``.
    """
    if N > 3:
        raise ValueError("circular Fourier backend supports N <= 3")

    def run(Q):
        key = (N, _key(beta, c, d), Q)
        with _MOMENT_LOCK:
            eng = _MOMENT_CACHE.get(key)
            if eng is None:
                eng = _Engine(N, beta, c, d, Q)
                _MOMENT_CACHE[key] = eng
        norm = eng.moment((0,) * N)
        tot = 0.0 + 0.0j
        for m, coeff in obs.items():
            if coeff == 0.0:
                continue
            tot += coeff * eng.moment(m)
        return tot / norm

    if _even_beta(beta):
        return run(0)
    prev = run(Q0)
    for Q in (2 * Q0, 4 * Q0, 8 * Q0):
        cur = run(Q)
        if abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureNotConverged(
        f"circular moments did not stabilize (beta={beta}, d={d})"
    )


# ----------------------------------------------------------------------
# observable builders: symmetric products of one-variable Laurent factors
# ----------------------------------------------------------------------


def _sorted_key(m):
    return tuple(sorted(m, reverse=True))


def factor_product_observable(factor, N, total_cap=None):
    """prod_{l=1}^N f(z_l) for a one-variable Laurent series ``factor``.

    ``factor`` maps integer exponents to coefficients.  Keys in the result
    are sorted (the ensemble is permutation symmetric).  ``total_cap``
    truncates by total |degree| when the factor is an infinite series.
    """
    items = sorted(factor.items())
    obs = {(): 1.0}
    for _ in range(N):
        new = {}
        for m, cf in obs.items():
            for e, a in items:
                key = m + (e,)
                val = cf * a
                if val == 0.0:
                    continue
                if total_cap is not None and sum(abs(v) for v in key) > total_cap:
                    continue
                new[key] = new.get(key, 0.0) + val
        obs = new
    out = {}
    for m, cf in obs.items():
        k = _sorted_key(m)
        out[k] = out.get(k, 0.0) + cf
    return out


def laurent_product(a, b):
    """Pointwise product of two observables on the same variable set.

    Inputs must carry full (unsymmetrized) exponent keys: products of
    sorted-collapsed observables conflate cross terms.
    """
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            key = _sorted_key(tuple(x + y for x, y in zip(m1, m2)))
            out[key] = out.get(key, 0.0) + c1 * c2
    return out


def charpoly_factor(z, power):
    """(z + w)^power as a polynomial in w, integer power >= 0."""
    return {k: math.comb(power, k) * z ** (power - k) for k in range(power + 1)}


def modulus_power_factor(z, q):
    """|z + w|^{2q} on |w| = 1: equals (z+w)^q (conj(z) + 1/w)^q, q integer."""
    f1 = charpoly_factor(z, q)
    f2 = {-k: math.comb(q, k) * np.conj(z) ** (q - k) for k in range(q + 1)}
    out = {}
    for e1, c1 in f1.items():
        for e2, c2 in f2.items():
            out[e1 + e2] = out.get(e1 + e2, 0.0) + c1 * c2
    return out


def exp_factor(t, cap=None, tol=1e-16):
    """exp(t*w) truncated once terms fall below ``tol`` relative."""
    if cap is None:
        cap = max(24, int(6 * abs(t)) + 24)
    out = {}
    term = 1.0 + 0.0j
    for k in range(cap + 1):
        out[k] = term
        term = term * t / (k + 1)
        if abs(term) < tol and k > abs(t):
            break
    return out


def binomial_factor(t, expo, cap=None, tol=1e-16):
    """(1 + t*w)^expo; finite when expo is a nonnegative integer."""
    if float(expo) == int(expo) and int(expo) >= 0:
        e = int(expo)
        return {k: math.comb(e, k) * t**k for k in range(e + 1)}
    if abs(t) >= 1:
        raise ValueError("binomial series needs |t| < 1")
    if cap is None:
        cap = max(40, int(math.log(tol) / math.log(abs(t))) + 10 if t else 1)
    out = {}
    coeff = 1.0
    for k in range(cap + 1):
        out[k] = coeff * t**k
        if k > 4 and abs(out[k]) < tol:
            break
        coeff = coeff * (expo - k) / (k + 1)
    return out


def jack_pair_observable(expansion_a, expansion_b, N):
    """P(z) * Q(1/z) from two monomial expansions (dicts partition -> coeff)."""
    from .jack import monomial_sym  # noqa: F401  (documentation pointer)

    def mono_obs(mu, sign):
        from itertools import permutations

        padded = tuple(mu) + (0,) * (N - len(mu))
        seen = set()
        out = {}
        for perm in permutations(padded):
            if perm in seen:
                continue
            seen.add(perm)
            out[tuple(sign * e for e in perm)] = 1.0
        return out

    def expand(expansion, sign):
        obs = {}
        for mu, cf in expansion.items():
            if len(mu) > N:
                continue
            for m, v in mono_obs(mu, sign).items():
                obs[m] = obs.get(m, 0.0) + float(cf) * v
        return obs

    a = expand(expansion_a, +1)
    b = expand(expansion_b, -1)
    return laurent_product(a, b)
