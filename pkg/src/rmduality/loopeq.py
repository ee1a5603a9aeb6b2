"""Connected resolvent correlators, scaled moments, loop-equation residual
checks, and the exact coupling-flip maps on the moment tables.

``MomentSeries`` is a Laurent polynomial in 1/N whose coefficients are
polynomials in 1/tau (tau = beta/2) and gamma, all exact rationals.  The
substitution (beta -> 4/beta, N -> -beta N / 2) acts on it coefficientwise
as c[j, i, g] -> (-1)^j c[j, j-i, g], an involution.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .charpoly import Estimate
from .exact import moment_poly
from .quadrature import me_average

__all__ = [
    "MomentSeries",
    "gaussian_scaled_moment",
    "laguerre_scaled_moment",
    "beta_flip",
    "duality_map_check",
    "temperature_duality_check",
    "high_temperature_moment",
    "low_temperature_moment",
    "connected_correlator",
    "scaled_w",
    "loop_residual_n1",
]


@dataclass(frozen=True)
class MomentSeries:
    """coeffs maps (j, i, g) -> Fraction for N^{-j} tau^{-i} gamma^{g}."""

    coeffs: dict

    @staticmethod
    def from_table(table):
        out = {}
        for key, c in table.items():
            j, i, g = key if len(key) == 3 else (key[0], key[1], 0)
            out[(j, i, g)] = Fraction(c)
        return MomentSeries(out)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return MomentSeries({k: c for k, c in out.items() if c != 0})

    def __neg__(self):
        return MomentSeries({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for (j1, i1, g1), c1 in self.coeffs.items():
            for (j2, i2, g2), c2 in other.coeffs.items():
                k = (j1 + j2, i1 + i2, g1 + g2)
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return MomentSeries({k: c for k, c in out.items() if c != 0})

    def is_zero(self):
        return not self.coeffs

    def eval(self, N, tau, gamma=0):
        tot = Fraction(0)
        for (j, i, g), c in self.coeffs.items():
            term = c * Fraction(N) ** -j * Fraction(tau) ** -i
            if g:
                term *= Fraction(gamma) ** g
            tot += term
        return tot


def gaussian_scaled_moment(k):
    return MomentSeries.from_table(moment_poly("GaussianBetaScaled", k).coeffs)


def laguerre_scaled_moment(k):
    return MomentSeries.from_table(moment_poly("LaguerreBetaScaled", k).coeffs)


def beta_flip(series: MomentSeries):
    """Apply (beta -> 4/beta, N -> -beta N/2), i.e. (tau -> 1/tau, N -> -tau N)."""
    out = {}
    for (j, i, g), c in series.coeffs.items():
        key = (j, j - i, g)
        out[key] = out.get(key, Fraction(0)) + (-1) ** j * c
    return MomentSeries({k: c for k, c in out.items() if c != 0})


def duality_map_check(tag, k):
    """Exact residual of the scaled-moment coupling flip; zero iff it holds."""
    series = {"gaussian": gaussian_scaled_moment, "laguerre": laguerre_scaled_moment}[
        tag
    ](k)
    return series - beta_flip(series)


def low_temperature_moment(k):
    """beta -> infinity limit of m_{2k}(beta, N) = N^{k+1} mt_{2k}: keep tau^0."""
    series = gaussian_scaled_moment(k)
    out = {}
    for (j, i, g), c in series.coeffs.items():
        if i == 0:
            out[k + 1 - j] = out.get(k + 1 - j, Fraction(0)) + c
    return out  # dict: power of N -> coefficient


def high_temperature_moment(k):
    """Scaled high-temperature moments: keep the tau^{-j} N^{-j} diagonal."""
    series = gaussian_scaled_moment(k)
    out = {}
    for (j, i, g), c in series.coeffs.items():
        if i == j:
            out[k - j] = out.get(k - j, Fraction(0)) + c
    return out  # dict: power of alpha -> coefficient


def temperature_duality_check(k):
    """Residual of lim_{beta->inf} m_{2k}(N) = (-1)^k N m*_{2k}(alpha)|_{alpha=-N}."""
    low = low_temperature_moment(k)
    high = high_temperature_moment(k)
    res = dict(low)
    for d, c in high.items():
        # (-1)^k N * c alpha^d |_{alpha=-N} = (-1)^{k+d} c N^{d+1}
        res[d + 1] = res.get(d + 1, Fraction(0)) - Fraction((-1) ** (k + d)) * c
    return {d: c for d, c in res.items() if c != 0}


# ----------------------------------------------------------------------
# sampled connected correlators and the n = 1 loop equation
# ----------------------------------------------------------------------


def _resolvent_sums(eigs, points):
    """A_i = sum_j 1/(y_i - x_j) for each row of eigenvalues."""
    out = []
    for y in points:
        out.append(np.sum(1.0 / (y - eigs), axis=-1))
    return out


def connected_correlator(eig_rows, points, batches=32):
    """Jackknife-centered estimate of <prod_l (A_l - <A_l>)>.

    For n = 1 this is the plain resolvent average.  Centering uses
    leave-one-batch-out means so the plug-in bias is O(1/batches).
    """
    eigs = np.asarray(eig_rows)
    A = np.stack(_resolvent_sums(eigs, points), axis=0)  # (n_pts, M)
    n_pts, M = A.shape
    if n_pts == 1:
        return Estimate(complex(A[0].mean()), float(np.abs(np.std(A[0])) / np.sqrt(M)), M, "matrixMC")
    m = M // batches
    A = A[:, : m * batches].reshape(n_pts, batches, m)
    batch_vals = []
    for b in range(batches):
        others = np.concatenate([A[:, :b, :], A[:, b + 1 :, :]], axis=1)
        mu = others.reshape(n_pts, -1).mean(axis=1)
        centered = A[:, b, :] - mu[:, None]
        batch_vals.append(np.prod(centered, axis=0).mean())
    batch_vals = np.asarray(batch_vals)
    mean = batch_vals.mean()
    se = np.sqrt(np.mean(np.abs(batch_vals - mean) ** 2) / (batches - 1))
    return Estimate(complex(mean), float(se), M, "matrixMC")


def scaled_w(value, n, N, beta):
    """(1/N) (N beta / 2)^{n-1} W_n."""
    return value * (N * beta / 2.0) ** (n - 1) / N


def _gauss_scaled_weight(N, beta):
    # ME_{beta,N}[exp(-N beta V / 2)], V = x^2
    return ("hermite", N * beta / 2.0)


def loop_residual_n1(N, beta, y, eig_rows=None, batches=32):
    """Residual of the first loop equation for V = x^2.

    (beta/2) W1^2 + (beta/2) W2(y, y) + (beta/2 - 1) W1'
        - (beta N / 2)(V'(y) W1 - P1) with P1 = 2N.

    With ``eig_rows`` given the terms are estimated from the samples
    (returns an Estimate); otherwise N <= 3 uses the quadrature backend
    and returns the deterministic residual.
    """
    if eig_rows is None:
        w = _gauss_scaled_weight(N, beta)

        def make(obs):
            return me_average(w, N, beta, obs)

        A = lambda lam: np.sum(1.0 / (y - lam), axis=1)
        w1 = make(A)
        w1sq = make(lambda lam: A(lam) ** 2)
        w2 = w1sq - w1**2
        dw1 = make(lambda lam: -np.sum(1.0 / (y - lam) ** 2, axis=1))
        p1 = 2 * N
        return (
            (beta / 2) * w1**2
            + (beta / 2) * w2
            + (beta / 2 - 1) * dw1
            - (beta * N / 2) * (2 * y * w1 - p1)
        )
    eigs = np.asarray(eig_rows)
    M = len(eigs)
    A = np.sum(1.0 / (y - eigs), axis=1)
    dA = -np.sum(1.0 / (y - eigs) ** 2, axis=1)
    m = M // batches
    Ab = A[: m * batches].reshape(batches, m)
    dAb = dA[: m * batches].reshape(batches, m)
    vals = []
    for b in range(batches):
        mask = np.arange(batches) != b
        mu = Ab[mask].mean()
        w1 = Ab[b].mean()
        w2 = ((Ab[b] - mu) ** 2).mean()
        dw1 = dAb[b].mean()
        vals.append(
            (beta / 2) * mu * w1
            + (beta / 2) * w2
            + (beta / 2 - 1) * dw1
            - (beta * N / 2) * (2 * y * w1 - 2 * N)
        )
    vals = np.asarray(vals)
    mean = vals.mean()
    se = np.sqrt(np.mean(np.abs(vals - mean) ** 2) / (batches - 1))
    return Estimate(complex(mean), float(se), M, "matrixMC")
