"""Characteristic-polynomial observables and overflow-safe statistics.

Products of ``det(x I - M)^p`` factors are accumulated in log-magnitude
plus phase and re-exponentiated, so degree-400 products at N = 200 stay
finite.  Fractional powers apply the principal logarithm factor by factor
to ``(x - lam_j)``; shifts sitting exactly on the cut raise
``BranchAmbiguity``.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BranchAmbiguity",
    "CharPolySpec",
    "eval_charpoly_product",
    "charpoly_from_eigs",
    "block_det",
    "Estimate",
    "StreamAccumulator",
    "mc_estimate",
]


class BranchAmbiguity(ValueError):
    pass


@dataclass(frozen=True)
class CharPolySpec:
    """Factors prod_l det(x_l I - M)^{p_l}, optionally conjugated / |.|^{2q}."""

    points: tuple
    powers: tuple
    conj: tuple = None
    absolute: tuple = None

    def __post_init__(self):
        n = len(self.points)
        object.__setattr__(self, "conj", self.conj or (False,) * n)
        object.__setattr__(self, "absolute", self.absolute or (False,) * n)


def charpoly_from_eigs(eigs, x, power=1.0, absolute=False):
    """det(x I - M)^power from eigenvalues, log-domain, principal branch."""
    lam = np.asarray(eigs)
    fac = x - lam
    if absolute:
        mag = np.abs(fac)
        if np.any(mag == 0.0):
            return 0.0
        return np.exp(power * np.sum(np.log(mag), axis=-1))
    if float(power) == int(power) and power >= 0:
        logmag = np.sum(np.log(np.abs(fac)), axis=-1)
        ang = np.sum(np.angle(fac), axis=-1)
        return np.exp(power * logmag) * np.exp(1j * power * ang)
    bad = (np.real(fac) <= 0) & (np.imag(fac) == 0)
    if np.any(bad):
        raise BranchAmbiguity(
            "fractional/negative power with a factor on the principal cut"
        )
    return np.exp(power * np.sum(np.log(fac.astype(complex)), axis=-1))


def eval_charpoly_product(sample, spec: CharPolySpec):
    """Evaluate the factor product on a matrix or an eigenvalue vector.

    Matrices use slogdet per integer-power factor (pivoted factorization),
    eigenvalue vectors the direct product.  Fractional or absolute powers
    always go through eigenvalues.
    """
    sample = np.asarray(sample)
    is_matrix = sample.ndim >= 2
    needs_eigs = any(
        float(p) != int(p) or p < 0 or a
        for p, a in zip(spec.powers, spec.absolute)
    )
    if is_matrix and needs_eigs:
        sample = np.linalg.eigvals(sample)
        is_matrix = False
    out = 1.0 + 0.0j
    for x, p, cj, ab in zip(spec.points, spec.powers, spec.conj, spec.absolute):
        if is_matrix:
            n = sample.shape[-1]
            M = np.conj(sample) if cj else sample
            sign, logabs = np.linalg.slogdet(x * np.eye(n) - M)
            out = out * sign**int(p) * np.exp(p * logabs)
        else:
            lam = np.conj(sample) if cj else sample
            out = out * charpoly_from_eigs(lam, x, p, ab)
    return out


def block_det(D1, D2, Y, dense=False):
    """det [[D1, -Y], [Y^dag, D2]] via the Schur factorization.

    ``det(D1 D2) det(I + D1^{-1} Y D2^{-1} Y^dag)`` when the diagonal
    blocks are invertible; assembled dense determinant otherwise.
    """
    D1 = np.asarray(D1, dtype=complex)
    D2 = np.asarray(D2, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    k = Y.shape[0]
    if D1.ndim == 1:
        D1 = np.diag(D1)
    if D2.ndim == 1:
        D2 = np.diag(D2)
    if not dense:
        try:
            inner = np.eye(k) + np.linalg.solve(D1, Y) @ np.linalg.solve(
                D2, np.conj(Y.T)
            )
            return np.linalg.det(D1) * np.linalg.det(D2) * np.linalg.det(inner)
        except np.linalg.LinAlgError:
            pass
    top = np.concatenate([D1, -Y], axis=1)
    bot = np.concatenate([np.conj(Y.T), D2], axis=1)
    return np.linalg.det(np.concatenate([top, bot], axis=0))


@dataclass
class Estimate:
    """Mean with standard error; merging is associative and count-weighted."""

    mean: complex
    stderr: float
    count: int
    backend: str = ""

    def merge(self, other):
        n1, n2 = self.count, other.count
        n = n1 + n2
        mean = (n1 * self.mean + n2 * other.mean) / n
        # combine M2 = (n-1) n se^2 contributions plus the mean shift
        m2a = self.stderr**2 * n1 * (n1 - 1)
        m2b = other.stderr**2 * n2 * (n2 - 1)
        delta = other.mean - self.mean
        m2 = m2a + m2b + abs(delta) ** 2 * n1 * n2 / n
        se = np.sqrt(m2 / (n - 1) / n) if n > 1 else 0.0
        return Estimate(mean, float(se), n, self.backend or other.backend)

    @property
    def z_denominator(self):
        return self.stderr


class StreamAccumulator:
    """Complex-aware running mean/variance with dynamic rescaling.

    Values of magnitude up to ~1e300 are staged against a running scale
    so sums never overflow; ``estimate()`` restores the physical scale.
    """

    def __init__(self, backend=""):
        self.n = 0
        self.scale = 1.0
        self.mean = 0.0 + 0.0j  # in units of scale
        self.m2 = 0.0  # sum |x - mean|^2 in units of scale^2
        self.backend = backend

    def add(self, value):
        mag = abs(value)
        if mag > 1e250 * self.scale:
            f = self.scale / (mag / 1e150)
            self.mean *= f
            self.m2 *= f * f
            self.scale = mag / 1e150
        v = value / self.scale
        self.n += 1
        delta = v - self.mean
        self.mean += delta / self.n
        self.m2 += (np.conj(delta) * (v - self.mean)).real

    def extend(self, values):
        for v in values:
            self.add(v)

    def estimate(self):
        if self.n < 2:
            return Estimate(self.mean * self.scale, 0.0, self.n, self.backend)
        var = self.m2 / (self.n - 1)
        se = self.scale * np.sqrt(var / self.n)
        return Estimate(self.mean * self.scale, float(se), self.n, self.backend)


def mc_estimate(values, backend="matrixMC"):
    """Estimate from a batch of complex sample values."""
    values = np.asarray(values)
    n = len(values)
    mean = values.mean()
    var = np.sum(np.abs(values - mean) ** 2) / max(n - 1, 1)
    return Estimate(complex(mean), float(np.sqrt(var / n)), n, backend)
