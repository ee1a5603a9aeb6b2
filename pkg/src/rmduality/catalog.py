"""The duality registry and verification engine.

Every record carries machine-readable left/right evaluation plans built on
independent backends (exact series, deterministic quadrature, matrix Monte
Carlo, log-gas MCMC), a proportionality-normalization rule, and desk-scale
default parameters.  ``verify`` evaluates both plans under a budget and
emits a report with a z-score (stochastic sides) or a relative residual
(exact-vs-exact).
"""

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import circular, ensembles, exact, hypergeom, jack, loopeq, mcmc
from .charpoly import Estimate, block_det, charpoly_from_eigs, mc_estimate
from .ensembles import EnsembleSpec, make_rng, spawn_rngs
from .quadrature import me_average

__all__ = [
    "IdentityRecord",
    "VerificationReport",
    "NotFound",
    "ParamOutOfDomain",
    "registry",
    "get_record",
    "verify",
    "scan",
    "export_registry",
]


class NotFound(KeyError):
    pass


class ParamOutOfDomain(ValueError):
    pass


@dataclass
class IdentityRecord:
    id: str
    eq: str
    anchor: str
    description: str
    defaults: dict
    lhs: callable
    rhs: callable
    proportional: bool = False
    norm_rule: str = "exact constant"
    anchor_params: callable = None
    domain: callable = None
    extra_checks: tuple = ()
    backends: tuple = ("", "")
    status: str = "verified"


@dataclass
class VerificationReport:
    id: str
    eq: str
    params: dict
    lhs: Estimate
    rhs: Estimate
    normalization: complex
    z: float
    residual: float
    passed: bool
    seed: int
    wall_ms: float
    extras: dict = field(default_factory=dict)

    def to_json(self):
        def est(e):
            return {
                "value_re": float(np.real(e.mean)),
                "value_im": float(np.imag(e.mean)),
                "stderr": e.stderr,
                "backend": e.backend,
                "n": e.count,
            }

        return {
            "id": self.id,
            "paper_ref": self.eq,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "lhs": est(self.lhs),
            "rhs": est(self.rhs),
            "normalization": [
                float(np.real(self.normalization)),
                float(np.imag(self.normalization)),
            ],
            "z": self.z,
            "residual": self.residual,
            "pass": bool(self.passed),
            "seed": self.seed,
            "wall_ms": self.wall_ms,
            "extras": {k: _jsonable(v) for k, v in self.extras.items()},
            "version": 1,
        }


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (tuple, list, np.ndarray)):
        return [_jsonable(x) for x in v]
    return v


# ----------------------------------------------------------------------
# backend helpers
# ----------------------------------------------------------------------


def _exact(value, backend="exactSeries"):
    return Estimate(complex(value), 0.0, 1, backend)


def _quad(value):
    return _exact(value, "quadrature")


def _gauss_spec(N, beta, c=1.0):
    return EnsembleSpec("GaussianBeta", N, beta, {"gauss_c": c})


def _mc_charpoly_gauss(N, beta, obs, n, rng, c=1.0, chunk=20000):
    """MC over class-beta Gaussian eigenvalues of an observable(lams)."""
    spec = _gauss_spec(N, beta, c)
    vals = []
    left = n
    while left > 0:
        take = min(chunk, left)
        eigs = ensembles.sample_eigs_batch(spec, rng, take)
        vals.append(obs(eigs))
        left -= take
    return mc_estimate(np.concatenate(vals), "matrixMC")


def _mc_matrix(sampler, obs, n, rng, backend="matrixMC", chunk=4000):
    vals = []
    left = n
    while left > 0:
        take = min(chunk, left)
        out = sampler(rng, take)
        vals.append(obs(out))
        left -= take
    return mc_estimate(np.concatenate(vals), backend)


def _prod_charpoly(eigs, points, powers=None):
    """prod_l det(x_l - .)^{p_l} from batched eigenvalues (M, N)."""
    out = np.ones(len(eigs), dtype=complex)
    powers = powers or [1] * len(points)
    for x, p in zip(points, powers):
        out = out * charpoly_from_eigs(eigs, x, p)
    return out


def _gauss_beta_moment_s(beta, m):
    """<s^{2m}> for the relative coordinate of ME_{beta,2}[exp(-lam^2)]."""
    return 2.0**m * math.exp(
        math.lgamma((beta + 1) / 2 + m) - math.lgamma((beta + 1) / 2)
    )


def gauss_charpoly_series(x, Npow, p, beta):
    """Exact <prod_{j<=p} (i x - lam_j)^{Npow}> over ME_{beta,p}[exp(-lam^2)].

    Closed form for p <= 2 through the center-of-mass / relative split.
    """
    ix = 1j * x
    if p == 1:
        # lam ~ N(0, 1/2): <(ix - lam)^K> via central moments
        tot = 0.0 + 0.0j
        for k in range(0, Npow + 1, 2):
            mu = math.prod(range(1, k, 2)) / 2 ** (k // 2) if k else 1.0
            tot += math.comb(Npow, k) * ix ** (Npow - k) * mu
        return tot
    if p == 2:
        # lam_{1,2} = c -+ s/2, c ~ N(0, 1/4), s-density s^beta e^{-s^2/2}
        tot = 0.0 + 0.0j
        for m in range(0, Npow + 1):
            s2m = _gauss_beta_moment_s(beta, m)
            K = 2 * (Npow - m)
            inner = 0.0 + 0.0j
            for r in range(0, K + 1, 2):
                mu = math.prod(range(1, r, 2)) / 4 ** (r // 2) if r else 1.0
                inner += math.comb(K, r) * ix ** (K - r) * mu
            tot += math.comb(Npow, m) * (-0.25) ** m * s2m * inner
        return tot
    raise ValueError("exact series limited to p <= 2")


def _jack_obs(kappa, alpha, p, sign=1):
    """P_kappa^(alpha)(sign * z) as a circular Laurent observable."""
    from itertools import permutations

    expn = jack.jack_expand(kappa, alpha, max_len=p)
    obs = {}
    for mu, cf in expn.items():
        if len(mu) > p:
            continue
        padded = tuple(mu) + (0,) * (p - len(mu))
        for perm in set(permutations(padded)):
            obs[perm] = obs.get(perm, 0.0) + float(cf) * sign ** sum(mu)
    return obs


def _sourced_gauss_quad(N, beta, mu, obs):
    """Quadrature over the sourced-Gaussian density (N <= 2, any beta).

    Supports complex source vectors (analytic continuation); nodes beyond
    |lam| = 7 carry weight below exp(-49) and are dropped so the kernel
    series stays within its truncation budget.
    """
    mu = np.asarray(mu, dtype=complex)
    alpha = 2.0 / beta

    def kernel(lams):
        out = np.zeros(len(lams), dtype=complex)
        mask = np.max(np.abs(lams), axis=1) <= 7.0
        if np.any(mask):
            out[mask] = hypergeom.f00_batch(2 * lams[mask], mu, alpha)
        return out

    num = me_average(
        ("hermite", 1.0), N, beta, lambda lams: obs(lams) * kernel(lams), rtol=1e-7
    )
    den = me_average(("hermite", 1.0), N, beta, kernel, rtol=1e-7)
    return num / den


# ----------------------------------------------------------------------
# record constructors
# ----------------------------------------------------------------------


def _records():
    R = []

    # -- D01 ------------------------------------------------------------
    def d01_lhs(p, budget, rng):
        N, x, k4 = p["N"], p["x"], p["kappa4"]
        return _mc_matrix(
            lambda r, n: np.linalg.eigvalsh(
                ensembles.wigner_custom(r, N, k4, (n,))
            ),
            lambda eigs: _prod_charpoly(eigs, [x]),
            budget.samples,
            rng,
        )

    def d01_rhs(p, budget, rng):
        N, x = p["N"], p["x"]
        val = me_average(
            ("hermite", 1.0), 1, 2.0, lambda lam: (1j * x - lam[:, 0]) ** N
        )
        return _quad(1j**-N * val)

    R.append(
        IdentityRecord(
            "D01",
            "(1.0)",
            "denotes the zero mean normal",
            "Wigner characteristic polynomial vs scalar normal average",
            {"N": 4, "x": 0.7, "kappa4": -0.25},
            d01_lhs,
            d01_rhs,
            backends=("matrixMC", "quadrature"),
        )
    )

    # -- D02 ------------------------------------------------------------
    def d02_lhs(p, budget, rng):
        N, xs = p["N"], p["x"]
        return _mc_charpoly_gauss(
            N, 2.0, lambda e: _prod_charpoly(e, xs), budget.samples, rng
        )

    def d02_rhs(p, budget, rng):
        N, xs = p["N"], p["x"]
        pp = len(xs)
        X = np.diag(np.asarray(xs, dtype=complex))

        def obs(H):
            sign, logabs = np.linalg.slogdet(1j * X - H)
            return sign**N * np.exp(N * logabs)

        return _mc_matrix(
            lambda r, n: ensembles.gaussian_invariant(r, pp, 2, 1.0, (n,)),
            lambda Hs: 1j ** (-pp * N) * np.array([obs(H) for H in Hs]),
            budget.samples,
            rng,
        )

    R.append(
        IdentityRecord(
            "D02",
            "(2.X1)",
            "Let X = diag (x_1,...,x_p)",
            "GUE product of characteristic polynomials, size flip N <-> p",
            {"N": 4, "x": (0.3, 0.9)},
            d02_lhs,
            d02_rhs,
            backends=("matrixMC", "matrixMC"),
        )
    )

    # -- D03 ------------------------------------------------------------
    def d03_lhs(p, budget, rng):
        N, pp, x = p["N"], p["p"], p["x"]
        val = me_average(
            ("hermite", 1.0),
            N,
            2.0,
            lambda lam: np.prod(x - lam, axis=1) ** pp,
        )
        return _quad(val)

    def d03_rhs(p, budget, rng):
        N, pp, x = p["N"], p["p"], p["x"]
        if pp <= 2:
            return _exact(1j ** (-pp * N) * gauss_charpoly_series(x, N, pp, 2.0))
        val = me_average(
            ("hermite", 1.0),
            pp,
            2.0,
            lambda lam: np.prod(1j * x - lam, axis=1) ** N,
        )
        return _quad(1j ** (-pp * N) * val)

    R.append(
        IdentityRecord(
            "D03",
            "(2.X1a)",
            "Let X = diag (x_1,...,x_p)",
            "GUE power of a characteristic polynomial at equal points",
            {"N": 2, "p": 1, "x": 0.7},
            d03_lhs,
            d03_rhs,
            backends=("quadrature", "exactSeries"),
        )
    )

    # -- D04 ------------------------------------------------------------
    def d04_lhs(p, budget, rng):
        N, pp, x = p["N"], p["p"], complex(p["x"])
        return _mc_charpoly_gauss(
            N,
            2.0,
            lambda e: _prod_charpoly(e, [x] * pp, [-1] * pp),
            budget.samples,
            rng,
        )

    def d04_rhs(p, budget, rng):
        N, pp, x = p["N"], p["p"], complex(p["x"])
        val = me_average(
            ("hermite", 1.0),
            pp,
            2.0,
            lambda lam: np.prod((x - lam).astype(complex) ** (-N), axis=1),
        )
        return _quad(val)

    R.append(
        IdentityRecord(
            "D04",
            "(2.X1+)",
            "has a nonzero imaginary part",
            "GUE reciprocal characteristic polynomials, complex shifts",
            {"N": 4, "p": 2, "x": 0.4 + 0.8j},
            d04_lhs,
            d04_rhs,
            backends=("matrixMC", "quadrature"),
        )
    )

    # -- D05 ------------------------------------------------------------
    def d05_lhs(p, budget, rng):
        N, v = p["N"], complex(p["v"])
        return _mc_charpoly_gauss(
            N, 2.0, lambda e: _prod_charpoly(e, [v], [-1]), budget.samples, rng
        )

    def d05_rhs(p, budget, rng):
        N, v = p["N"], complex(p["v"])
        val = me_average(
            ("hermite", 1.0), 1, 2.0, lambda lam: (v - lam[:, 0]) ** (-N)
        )
        return _quad(val)

    R.append(
        IdentityRecord(
            "D05",
            "(2.9A)",
            "a companion duality to",
            "GUE reciprocal vs one-dimensional Cauchy-type integral",
            {"N": 5, "v": 0.3 + 0.6j},
            d05_lhs,
            d05_rhs,
            backends=("matrixMC", "quadrature"),
        )
    )

    # -- D06 ------------------------------------------------------------
    def d06_lhs(p, budget, rng):
        N, pp, a, x = p["N"], p["p"], p["a"], p["x"]
        val = me_average(
            ("laguerre", a, 1.0),
            N,
            2.0,
            lambda lam: np.prod((x - lam).astype(complex), axis=1) ** pp,
        )
        return _quad(val)

    def d06_rhs(p, budget, rng):
        N, pp, a, x = p["N"], p["p"], p["a"], p["x"]
        obs = circular.factor_product_observable(
            circular.exp_factor(-x), pp, total_cap=60
        )
        val = circular.torus_average(pp, 2.0, obs, c=a - N, d=a + N)
        return _exact(val, "exactSeries")

    R.append(
        IdentityRecord(
            "D06",
            "(2.4C)",
            "provide duality formulas for the average",
            "LUE characteristic polynomial power vs circular average",
            {"N": 3, "p": 2, "a": 1.0, "x": 0.8},
            d06_lhs,
            d06_rhs,
            proportional=True,
            norm_rule="anchor x=0",
            anchor_params=lambda p: {**p, "x": 0.0},
            backends=("quadrature", "exactSeries"),
        )
    )

    # -- D07 ------------------------------------------------------------
    def d07_lhs(p, budget, rng):
        N, pp, a1, a2, x = p["N"], p["p"], p["a1"], p["a2"], p["x"]
        val = me_average(
            ("jacobi", a1, a2),
            N,
            2.0,
            lambda lam: np.prod((x - lam).astype(complex), axis=1) ** pp,
        )
        return _quad(val)

    def _d07_rhs_form(p, line):
        N, pp, a1, a2, x = p["N"], p["p"], p["a1"], p["a2"], p["x"]
        t = -x / (1 - x)
        if line == 1:
            expo, c, d = N + a2, a1 - N, a1 + N
        else:
            expo, c, d = N, a1 - a2 - N, a1 + a2 + N
        obs = circular.factor_product_observable(
            circular.binomial_factor(t, expo), pp, total_cap=80
        )
        return (1 - x) ** (pp * N) * circular.torus_average(pp, 2.0, obs, c=c, d=d)

    def d07_rhs(p, budget, rng):
        return _exact(_d07_rhs_form(p, 1), "exactSeries")

    def d07_cross(p, budget, rng):
        a = _d07_rhs_form(p, 1)
        b = _d07_rhs_form(p, 2)
        a0 = _d07_rhs_form({**p, "x": 0.0}, 1)
        b0 = _d07_rhs_form({**p, "x": 0.0}, 2)
        return abs(a / a0 - b / b0) / max(abs(a / a0), 1.0)

    R.append(
        IdentityRecord(
            "D07",
            "(2.4D)",
            "manifestly polynomial form",
            "JUE characteristic polynomial power vs circular averages",
            {"N": 2, "p": 2, "a1": 1.0, "a2": 0.5, "x": 0.3},
            d07_lhs,
            d07_rhs,
            proportional=True,
            norm_rule="anchor x=0",
            anchor_params=lambda p: {**p, "x": 0.0},
            extra_checks=(("rhs_forms_agree", d07_cross),),
            backends=("quadrature", "exactSeries"),
        )
    )

    # -- D08 ------------------------------------------------------------
    def d08_lhs(p, budget, rng):
        N, a1, a2, z = p["N"], p["a1"], p["a2"], complex(p["z"])
        obs = circular.factor_product_observable({0: z, 1: -1.0}, N)
        val = circular.torus_average(N, 2.0, obs, c=a1 - a2, d=a1 + a2)
        return _exact(val, "exactSeries")

    def d08_rhs(p, budget, rng):
        N, a1, a2, z = p["N"], p["a1"], p["a2"], complex(p["z"])
        val = me_average(
            ("jacobi", a1, a2 - 1),
            1,
            2.0,
            lambda x: (1 - (1 + z) * x[:, 0]) ** N,
        )
        return _quad(val)

    R.append(
        IdentityRecord(
            "D08",
            "(2.6c)",
            "we can deduce the duality",
            "Circular Jacobi characteristic polynomial vs beta average",
            {"N": 3, "a1": 1.0, "a2": 1.5, "z": 0.4 + 0.3j},
            d08_lhs,
            d08_rhs,
            proportional=True,
            norm_rule="anchor z=0",
            anchor_params=lambda p: {**p, "z": 0.0},
            backends=("exactSeries", "quadrature"),
        )
    )

    # -- D09 ------------------------------------------------------------
    def d09_lhs(p, budget, rng):
        beta, N, pp, x = p["beta"], p["N"], p["p"], p["x"]
        alpha = 2.0 / beta
        obs = lambda e: np.prod((x - math.sqrt(alpha) * e), axis=1) ** pp
        if int(beta) in (1, 2, 4) and float(beta) == int(beta):
            return _mc_charpoly_gauss(N, int(beta), obs, budget.samples, rng)
        spec = EnsembleSpec("GaussianBeta", N, beta, {"gauss_c": 1.0})
        mean, se, n = mcmc.mcmc_average(
            spec, lambda v: np.prod(x - math.sqrt(alpha) * v) ** pp,
            budget.seed, n_samples=min(budget.samples, 20000),
        )
        return Estimate(complex(mean), se, n, "mcmc")

    def d09_rhs(p, budget, rng):
        beta, N, pp, x = p["beta"], p["N"], p["p"], p["x"]
        if pp <= 2:
            return _exact(
                1j ** (-pp * N) * gauss_charpoly_series(x, N, pp, 4.0 / beta)
            )
        val = me_average(
            ("hermite", 1.0),
            pp,
            4.0 / beta,
            lambda lam: np.prod((1j * x - lam), axis=1) ** N,
        )
        return _quad(1j ** (-pp * N) * val)

    R.append(
        IdentityRecord(
            "D09",
            "(2.X1c)",
            "very clean generalisation",
            "Gaussian beta-ensemble power duality, beta <-> 4/beta",
            {"beta": 1.0, "N": 4, "p": 2, "x": 0.7},
            d09_lhs,
            d09_rhs,
            backends=("matrixMC", "exactSeries"),
        )
    )

    # -- D10 ------------------------------------------------------------
    def d10_lhs(p, budget, rng):
        beta, N, pp, x = p["beta"], p["N"], p["p"], complex(p["x"])
        return _mc_charpoly_gauss(
            N,
            int(beta),
            lambda e: _prod_charpoly(e, [x], [-pp * beta / 2.0]),
            budget.samples,
            rng,
        )

    def d10_rhs(p, budget, rng):
        beta, N, pp, x = p["beta"], p["N"], p["p"], complex(p["x"])
        val = me_average(
            ("hermite", 1.0),
            pp,
            beta,
            lambda lam: np.prod((x - lam).astype(complex) ** (-N * beta / 2.0), axis=1),
        )
        return _quad(val)

    R.append(
        IdentityRecord(
            "D10",
            "(2.X1d)",
            "the value of beta in the ensemble is the same",
            "Reciprocal-power Gaussian duality at fixed beta",
            {"beta": 4.0, "N": 3, "p": 2, "x": 0.5 + 0.9j},
            d10_lhs,
            d10_rhs,
            backends=("matrixMC", "quadrature"),
        )
    )

    # -- D11 ------------------------------------------------------------
    def _d11_side(beta, size, kappa, alpha, rngq=None):
        expn = jack.jack_expand(kappa, alpha, max_len=size)

        def obs(lams):
            tot = np.zeros(len(lams), dtype=float)
            for mu, cf in expn.items():
                if len(mu) > size:
                    continue
                tot = tot + float(cf) * jack.monomial_sym(mu, lams)
            return tot

        val = me_average(("hermite", 1.0), size, beta, obs)
        return val / float(jack.jack_principal(kappa, alpha, size))

    def d11_lhs(p, budget, rng):
        beta, N, kappa = p["beta"], p["N"], tuple(p["kappa"])
        val = _d11_side(beta, N, kappa, Fraction(2) / Fraction(beta))
        return _quad((-2.0 / beta) ** (sum(kappa) // 2) * val)

    def d11_rhs(p, budget, rng):
        beta, pp, kappa = p["beta"], p["p"], tuple(p["kappa"])
        kc = jack.conjugate(kappa)
        val = _d11_side(4.0 / beta, pp, kc, Fraction(beta) / Fraction(2))
        return _quad(val)

    def d11_independence(p, budget, rng):
        other = p["N"] - 1 if p["N"] > len(p["kappa"]) + 0 and p["N"] > 1 else p["N"] + 1
        other = min(other, 3)
        a = d11_lhs({**p, "N": other}, budget, rng).mean
        b = d11_lhs(p, budget, rng).mean
        return abs(a - b) / max(abs(a), 1e-12)

    R.append(
        IdentityRecord(
            "D11",
            "(GF)",
            "no dependence on N or p",
            "Jack-average ratio duality with conjugate partition",
            {"beta": 1, "N": 3, "p": 2, "kappa": (2,)},
            d11_lhs,
            d11_rhs,
            extra_checks=(("n_independence", d11_independence),),
            backends=("quadrature", "quadrature"),
        )
    )

    # -- D12 ------------------------------------------------------------
    def d12_lhs(p, budget, rng):
        beta, N, pp, a, x = p["beta"], p["N"], p["p"], p["a"], p["x"]
        val = me_average(
            ("laguerre", a, beta / 2.0),
            N,
            beta,
            lambda lam: np.prod((x - lam).astype(complex), axis=1) ** pp,
        )
        return _quad(val)

    def d12_rhs(p, budget, rng):
        beta, N, pp, a, x = p["beta"], p["N"], p["p"], p["a"], p["x"]
        c = 2 * (a + 1) / beta - (N + 1)
        d = 2 * (a + 1) / beta + N - 1
        obs = circular.factor_product_observable(
            circular.exp_factor(-x), pp, total_cap=60
        )
        val = circular.torus_average(pp, 4.0 / beta, obs, c=c, d=d)
        return _exact(val, "exactSeries")

    def d12_series(p, budget, rng):
        beta, N, pp, a, x = p["beta"], p["N"], p["p"], p["a"], p["x"]
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec(
                (-N,), (2 * (a + pp) / beta,), beta / 2.0, ("equal", x, pp)
            )
        )
        lhs = d12_lhs(p, budget, rng).mean
        lhs0 = d12_lhs({**p, "x": 0.0}, budget, rng).mean
        return abs(lhs / lhs0 - res.value / 1.0) / max(abs(res.value), 1.0)

    R.append(
        IdentityRecord(
            "D12",
            "(2.4Ci)",
            "allow for clean beta generalisations",
            "Laguerre beta-ensemble vs dual circular ensemble",
            {"beta": 4.0, "N": 2, "p": 2, "a": 1.0, "x": 0.6},
            d12_lhs,
            d12_rhs,
            proportional=True,
            norm_rule="anchor x=0",
            anchor_params=lambda p: {**p, "x": 0.0},
            extra_checks=(("finite_series_path", d12_series),),
            backends=("quadrature", "exactSeries"),
        )
    )

    # -- D13 ------------------------------------------------------------
    def d13_lhs(p, budget, rng):
        beta, N, pp, a1, a2, x = (
            p["beta"], p["N"], p["p"], p["a1"], p["a2"], p["x"],
        )
        val = me_average(
            ("jacobi", a1, a2),
            N,
            beta,
            lambda lam: np.prod((x - lam).astype(complex), axis=1) ** pp,
        )
        return _quad(val)

    def _d13_rhs_form(p, line):
        beta, N, pp, a1, a2, x = (
            p["beta"], p["N"], p["p"], p["a1"], p["a2"], p["x"],
        )
        t = -x / (1 - x)
        if line == 1:
            expo = N
            c = 2 * (a1 - a2) / beta - N
            d = 2 * (a1 + a2 + 2) / beta + N - 2
        else:
            expo = N - 1 + 2 * (a2 + 1) / beta
            c = 2 * (a1 + 1) / beta - (N + 1)
            d = 2 * (a1 + 1) / beta + N - 1
        obs = circular.factor_product_observable(
            circular.binomial_factor(t, expo), pp, total_cap=80
        )
        return (1 - x) ** (pp * N) * circular.torus_average(
            pp, 4.0 / beta, obs, c=c, d=d
        )

    def d13_rhs(p, budget, rng):
        return _exact(_d13_rhs_form(p, 1), "exactSeries")

    def d13_cross(p, budget, rng):
        a, b = _d13_rhs_form(p, 1), _d13_rhs_form(p, 2)
        a0 = _d13_rhs_form({**p, "x": 0.0}, 1)
        b0 = _d13_rhs_form({**p, "x": 0.0}, 2)
        return abs(a / a0 - b / b0) / max(abs(a / a0), 1.0)

    def d13_series(p, budget, rng):
        beta, N, pp, a1, a2, x = (
            p["beta"], p["N"], p["p"], p["a1"], p["a2"], p["x"],
        )
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec(
                (-N, N - 1 + 2 * (a1 + a2 + pp + 1) / beta),
                (2 * (a1 + pp) / beta,),
                beta / 2.0,
                ("equal", x, pp),
            )
        )
        lhs = d13_lhs(p, budget, rng).mean
        lhs0 = d13_lhs({**p, "x": 0.0}, budget, rng).mean
        return abs(lhs / lhs0 - res.value) / max(abs(res.value), 1.0)

    R.append(
        IdentityRecord(
            "D13",
            "(2.4Di)",
            "allow for clean beta generalisations",
            "Jacobi beta-ensemble vs dual circular ensemble, both forms",
            {"beta": 1.0, "N": 2, "p": 2, "a1": 1.0, "a2": 0.5, "x": 0.3},
            d13_lhs,
            d13_rhs,
            proportional=True,
            norm_rule="anchor x=0",
            anchor_params=lambda p: {**p, "x": 0.0},
            extra_checks=(
                ("rhs_forms_agree", d13_cross),
                ("finite_series_path", d13_series),
            ),
            backends=("quadrature", "exactSeries"),
        )
    )

    # -- D14 / D15 -------------------------------------------------------
    def _neg_power_obs(y, r):
        return lambda lam: np.prod((1 - y * lam).astype(complex) ** (-r), axis=1)

    # the dual side of the negative-power pair carries weight exponents
    # shifted by (beta/2)(N - p), as the terminating-series parameters force
    def d14_lhs(p, budget, rng):
        beta, N, pp, y = p["beta"], p["N"], p["p"], p["y"]
        val = me_average(
            ("jacobi", p["a1"], p["a2"]), N, beta, _neg_power_obs(y, pp * beta / 2)
        )
        return _quad(val)

    def d14_rhs(p, budget, rng):
        beta, N, pp, y = p["beta"], p["N"], p["p"], p["y"]
        sh = beta / 2 * (N - pp)
        val = me_average(
            ("jacobi", p["a1"] + sh, p["a2"] + sh),
            pp,
            beta,
            _neg_power_obs(y, N * beta / 2),
        )
        return _quad(val)

    R.append(
        IdentityRecord(
            "D14",
            "(2.11a)",
            "Require that y < 0",
            "Jacobi negative-power duality, N <-> p",
            {"beta": 3.0, "N": 3, "p": 2, "a1": 1.0, "a2": 0.5, "y": -0.8},
            d14_lhs,
            d14_rhs,
            domain=lambda p: p["y"] < 0,
            backends=("quadrature", "quadrature"),
        )
    )

    def d15_lhs(p, budget, rng):
        beta, N, pp, y, a = p["beta"], p["N"], p["p"], p["y"], p["a"]
        val = me_average(
            ("laguerre", a, beta / 2), N, beta, _neg_power_obs(y, pp * beta / 2)
        )
        return _quad(val)

    def d15_rhs(p, budget, rng):
        beta, N, pp, y, a = p["beta"], p["N"], p["p"], p["y"], p["a"]
        sh = beta / 2 * (N - pp)
        val = me_average(
            ("laguerre", a + sh, beta / 2), pp, beta, _neg_power_obs(y, N * beta / 2)
        )
        return _quad(val)

    R.append(
        IdentityRecord(
            "D15",
            "(2.11b)",
            "Require that y < 0",
            "Laguerre negative-power duality, N <-> p",
            {"beta": 1.0, "N": 3, "p": 2, "a": 1.0, "y": -0.5},
            d15_lhs,
            d15_rhs,
            domain=lambda p: p["y"] < 0,
            backends=("quadrature", "quadrature"),
        )
    )

    # -- D16 / D17 -------------------------------------------------------
    def d16_lhs(p, budget, rng):
        beta, N, nu, mu = p["beta"], p["N"], np.asarray(p["nu"]), np.asarray(p["mu"])
        pp = len(nu)
        pref = (1j * math.sqrt(2.0 / beta)) ** (pp * N)
        pts = [1j * math.sqrt(beta / 2.0) * v for v in nu]
        if p.get("backend_lhs") == "quadrature":
            val = _sourced_gauss_quad(
                N, beta, mu, lambda lams: _prod_charpoly(lams, pts)
            )
            return _quad(pref * val)
        spec = EnsembleSpec("SourcedGaussian", N, beta, {"mu": tuple(mu)})
        est = _mc_matrix(
            lambda r, n: ensembles.sample_eigs_batch(spec, r, n),
            lambda eigs: pref * _prod_charpoly(eigs, pts),
            budget.samples,
            rng,
        )
        return est

    def d16_rhs(p, budget, rng):
        beta, N, nu, mu = p["beta"], p["N"], np.asarray(p["nu"]), np.asarray(p["mu"])
        pp = len(nu)
        beta_d = 4.0 / beta
        pts = [1j * math.sqrt(2.0 / beta) * m for m in mu]
        if p.get("backend_rhs") == "quadrature":
            val = _sourced_gauss_quad(
                pp, beta_d, nu, lambda lams: _prod_charpoly(lams, pts)
            )
            return _quad(val)
        spec = EnsembleSpec("SourcedGaussian", pp, beta_d, {"mu": tuple(nu)})
        return _mc_matrix(
            lambda r, n: ensembles.sample_eigs_batch(spec, r, n),
            lambda eigs: _prod_charpoly(eigs, pts),
            budget.samples,
            rng,
        )

    R.append(
        IdentityRecord(
            "D16",
            "(2.5b)",
            "generalised to all beta > 0",
            "Sourced Gaussian duality: shifts and sources swap",
            {"beta": 1.0, "N": 2, "nu": (0.4, -0.3), "mu": (0.5, 0.1)},
            d16_lhs,
            d16_rhs,
            backends=("matrixMC", "matrixMC"),
        )
    )

    # the branch-consistent realization of the reciprocal sourced duality:
    # shifts in the upper half-plane on the left, lower on the right, and
    # the phase exp(-i pi beta p N / 2) between the sides
    def _d17_side(beta, shifts, src):
        shifts = np.asarray(shifts, dtype=complex)
        return _sourced_gauss_quad(
            len(src),
            beta,
            src,
            lambda lams: np.prod(
                [
                    np.prod((v - lams).astype(complex) ** (-beta / 2.0), axis=1)
                    for v in shifts
                ],
                axis=0,
            ),
        )

    def d17_lhs(p, budget, rng):
        return _quad(_d17_side(p["beta"], p["nu"], p["mu"]))

    def d17_rhs(p, budget, rng):
        beta = p["beta"]
        pp, N = len(p["nu"]), len(p["mu"])
        phase = np.exp(-1j * np.pi * beta * pp * N / 2)
        return _quad(phase * _d17_side(beta, p["mu"], p["nu"]))

    R.append(
        IdentityRecord(
            "D17",
            "(2.5bD)",
            "consistent branches of the fractional power",
            "Sourced Gaussian reciprocal fractional powers, complex shifts",
            {"beta": 1.0, "N": 2, "nu": (0.5 + 0.8j,), "mu": (-0.3 - 0.6j, 0.4 - 0.5j)},
            d17_lhs,
            d17_rhs,
            domain=lambda p: all(np.imag(v) > 0 for v in p["nu"])
            and all(np.imag(m) < 0 for m in p["mu"]),
            backends=("quadrature", "quadrature"),
        )
    )

    # -- D18 / D19 -------------------------------------------------------
    def d18_lhs(p, budget, rng):
        beta, N, n = p["beta"], p["N"], p["n"]
        nu = np.asarray(p["nu"], dtype=float)
        mu = np.asarray(p["mu"], dtype=float)
        spec = EnsembleSpec("SourcedChiral", N, beta, {"n": n, "mu": tuple(mu),
                                                       "a": beta * (n - N + 1) / 2 - 1})
        return _mc_matrix(
            lambda r, nn: ensembles.sample_eigs_batch(spec, r, nn),
            lambda eigs: np.prod(
                [
                    np.prod(v + 2.0 / beta * eigs, axis=1)
                    for v in nu
                ],
                axis=0,
            ),
            budget.samples,
            rng,
        )

    def d18_rhs(p, budget, rng):
        beta, N, n = p["beta"], p["N"], p["n"]
        nu = np.asarray(p["nu"], dtype=float)
        mu = np.asarray(p["mu"], dtype=float)
        pp = len(nu)
        a = beta * (n - N + 1) / 2 - 1
        ap = (2.0 / beta) * (a + 1) - 1
        beta_d = 4.0 / beta
        # realize a' through an n' block count when integral, else MCMC
        npf = (ap + 1) * 2 / beta_d + pp - 1
        pref = (2.0 / beta) ** (pp * N)
        if abs(npf - round(npf)) < 1e-9 and round(npf) >= pp:
            spec = EnsembleSpec(
                "SourcedChiral", pp, beta_d, {"n": int(round(npf)), "mu": tuple(nu),
                                              "a": ap}
            )
            return _mc_matrix(
                lambda r, nn: ensembles.sample_eigs_batch(spec, r, nn),
                lambda eigs: pref
                * np.prod(
                    [np.prod(m + beta / 2.0 * eigs, axis=1) for m in mu], axis=0
                ),
                budget.samples,
                rng,
            )
        spec = EnsembleSpec("SourcedChiral", pp, beta_d, {"a": ap, "mu": tuple(nu)})
        mean, se, cnt = mcmc.mcmc_average(
            spec,
            lambda v: pref * np.prod([np.prod(m + beta / 2.0 * v) for m in mu]),
            budget.seed + 1,
            n_samples=min(budget.samples, 20000),
        )
        return Estimate(complex(mean), se, cnt, "mcmc")

    R.append(
        IdentityRecord(
            "D18",
            "(2.5b+V)",
            "where a' = (2/beta)(a+1) - 1",
            "Sourced chiral (Laguerre) duality",
            {"beta": 2.0, "N": 2, "n": 3, "nu": (0.4, 0.7), "mu": (0.3, 0.9)},
            d18_lhs,
            d18_rhs,
            backends=("matrixMC", "matrixMC"),
        )
    )

    def d19_lhs(p, budget, rng):
        beta, N, n = p["beta"], p["N"], p["n"]
        nu = np.asarray(p["nu"], dtype=float)
        mu = np.asarray(p["mu"], dtype=float)
        spec = EnsembleSpec("SourcedChiral", N, beta, {"n": n, "mu": tuple(mu),
                                                       "a": beta * (n - N + 1) / 2 - 1})
        return _mc_matrix(
            lambda r, nn: ensembles.sample_eigs_batch(spec, r, nn),
            lambda eigs: np.prod(
                [
                    np.prod((v + eigs).astype(complex) ** (-beta / 2.0), axis=1)
                    for v in nu
                ],
                axis=0,
            ),
            budget.samples,
            rng,
        )

    def d19_rhs(p, budget, rng):
        beta, N, n = p["beta"], p["N"], p["n"]
        nu = np.asarray(p["nu"], dtype=float)
        mu = np.asarray(p["mu"], dtype=float)
        pp = len(nu)
        a = beta * (n - N + 1) / 2 - 1
        ap = (2.0 / beta) * (a + 1) - 1
        npf = (ap + 1) * 2 / beta + pp - 1
        if not (abs(npf - round(npf)) < 1e-9 and round(npf) >= pp):
            raise ParamOutOfDomain("dual ensemble not matrix-realizable here")
        spec = EnsembleSpec(
            "SourcedChiral", pp, beta, {"n": int(round(npf)), "mu": tuple(nu), "a": ap}
        )
        return _mc_matrix(
            lambda r, nn: ensembles.sample_eigs_batch(spec, r, nn),
            lambda eigs: np.prod(
                [
                    np.prod((m + eigs).astype(complex) ** (-beta / 2.0), axis=1)
                    for m in mu
                ],
                axis=0,
            ),
            budget.samples,
            rng,
        )

    R.append(
        IdentityRecord(
            "D19",
            "(2.5b+D)",
            "where a' = (2/beta)(a+1) - 1",
            "Sourced chiral reciprocal fractional powers (as printed)",
            {"beta": 2.0, "N": 2, "n": 3, "nu": (0.4, 0.8), "mu": (0.5, 1.1)},
            d19_lhs,
            d19_rhs,
            backends=("matrixMC", "matrixMC"),
            status="unresolved",
        )
    )

    # -- D20 / D21 / D22 --------------------------------------------------
    def d20_lhs(p, budget, rng):
        beta, N, q, mu_e = p["beta"], p["N"], p["q"], p["mu_exp"]
        z = complex(p["z1"]) / complex(p["z2"])
        obs = circular.factor_product_observable(
            circular.modulus_power_factor(z, q), N
        )
        val = circular.torus_average(N, beta, obs, c=0.0, d=2 * mu_e)
        return _exact(val, "exactSeries")

    def d20_rhs(p, budget, rng):
        beta, N, q, mu_e = p["beta"], p["N"], p["q"], p["mu_exp"]
        z = complex(p["z1"]) / complex(p["z2"])
        apb = -1 + 2 * (mu_e - q + 1) / beta
        amb = -1 + 2 * (3 * mu_e + q + 1) / beta
        obs = circular.factor_product_observable(
            circular.binomial_factor(1 - np.conj(z), N), 2 * q
        )
        val = z ** (q * N) * circular.torus_average(2 * q, 4.0 / beta, obs, c=amb, d=apb)
        return _exact(val, "exactSeries")

    def d20_me_form(p, budget, rng):
        beta, N, q, mu_e = p["beta"], p["N"], p["q"], p["mu_exp"]
        z = complex(p["z1"]) / complex(p["z2"])
        a = -1 + 2 * (mu_e - q + 1) / beta
        val = z ** (q * N) * me_average(
            ("jacobi", a, a),
            2 * q,
            4.0 / beta,
            lambda x: np.prod((1 - (1 - np.conj(z)) * x).astype(complex) ** N, axis=1),
        )
        rhs = d20_rhs(p, budget, rng).mean
        rhs0 = d20_rhs(_d20_anchor(p), budget, rng).mean
        val0 = complex(p["z1"] / p["z2"]) ** 0  # anchor z=1 below
        p0 = _d20_anchor(p)
        z0 = complex(p0["z1"]) / complex(p0["z2"])
        val0 = z0 ** (q * N) * me_average(
            ("jacobi", a, a),
            2 * q,
            4.0 / beta,
            lambda x: np.prod((1 - (1 - np.conj(z0)) * x).astype(complex) ** N, axis=1),
        )
        return abs(rhs / rhs0 - val / val0) / max(abs(rhs / rhs0), 1.0)

    def _d20_anchor(p):
        return {**p, "z1": p["z2"], "z2": p["z2"]}

    R.append(
        IdentityRecord(
            "D20",
            "(3.8c)",
            "let mu >= q be real",
            "Circular two-charge modulus power vs dual forms",
            {
                "beta": 2.0,
                "N": 2,
                "q": 1,
                "mu_exp": 1.7,
                "z1": np.exp(0.9j),
                "z2": np.exp(0.2j),
            },
            d20_lhs,
            d20_rhs,
            proportional=True,
            norm_rule="anchor z1=z2",
            anchor_params=_d20_anchor,
            extra_checks=(("me_form_agrees", d20_me_form),),
            domain=lambda p: p["mu_exp"] >= p["q"],
            backends=("exactSeries", "exactSeries"),
        )
    )

    def d21_lhs(p, budget, rng):
        beta, N, q, z = p["beta"], p["N"], p["q"], complex(p["z"])
        obs = circular.factor_product_observable(
            circular.modulus_power_factor(-z, q), N
        )
        val = circular.torus_average(N, beta, obs)
        return _exact(val, "exactSeries")

    def d21_rhs(p, budget, rng):
        beta, N, q, z = p["beta"], p["N"], p["q"], complex(p["z"])
        apb = -1 + 2 / beta
        amb = -1 + 2 * (2 * q + 1) / beta
        obs = circular.factor_product_observable(
            circular.binomial_factor(1 - abs(z) ** 2, N), q
        )
        val = circular.torus_average(q, 4.0 / beta, obs, c=amb, d=apb)
        return _exact(val, "exactSeries")

    def d21_me_form(p, budget, rng):
        beta, N, q, z = p["beta"], p["N"], p["q"], complex(p["z"])
        a = -1 + 2 / beta
        val = me_average(
            ("jacobi", a, a),
            q,
            4.0 / beta,
            lambda x: np.prod((1 - (1 - abs(z) ** 2) * x) ** N, axis=1),
        )
        rhs = d21_rhs(p, budget, rng).mean
        rhs0 = d21_rhs({**p, "z": 0.0}, budget, rng).mean
        val0 = me_average(
            ("jacobi", a, a),
            q,
            4.0 / beta,
            lambda x: np.prod((1 - x) ** N, axis=1),
        )
        return abs(rhs / rhs0 - val / val0) / max(abs(rhs / rhs0), 1.0)

    R.append(
        IdentityRecord(
            "D21",
            "(3.8c+)",
            "let |z| < 1, and define",
            "Inside-disk circular modulus power vs dual forms",
            {"beta": 4.0, "N": 2, "q": 1, "z": 0.35 + 0.2j},
            d21_lhs,
            d21_rhs,
            proportional=True,
            norm_rule="anchor z=0",
            anchor_params=lambda p: {**p, "z": 0.0},
            extra_checks=(("me_form_agrees", d21_me_form),),
            domain=lambda p: abs(p["z"]) < 1,
            backends=("exactSeries", "exactSeries"),
        )
    )

    def d22_lhs(p, budget, rng):
        beta, N, q, a, b = p["beta"], p["N"], p["q"], p["a"], p["b"]
        z = complex(p["z"])
        obs = circular.factor_product_observable(
            circular.modulus_power_factor(z, q), N
        )
        val = circular.torus_average(N, beta, obs, c=a - b, d=a + b)
        return _exact(val, "exactSeries")

    def d22_rhs(p, budget, rng):
        beta, N, q, a, b = p["beta"], p["N"], p["q"], p["a"], p["b"]
        z = complex(p["z"])
        apb = -1 + 2 * (a - q + 1) / beta
        amb = -1 + 2 * (2 * b + a + q + 1) / beta
        obs = circular.factor_product_observable(
            circular.binomial_factor(1 - np.conj(z), N), 2 * q
        )
        val = z ** (q * N) * circular.torus_average(
            2 * q, 4.0 / beta, obs, c=amb, d=apb
        )
        return _exact(val, "exactSeries")

    def d22_me_form(p, budget, rng):
        beta, N, q, a, b = p["beta"], p["N"], p["q"], p["a"], p["b"]
        z = complex(p["z"])
        A1 = -1 + 2 * (b - q + 1) / beta
        A2 = -1 + 2 * (a - q + 1) / beta

        def form(zz):
            return zz ** (q * N) * me_average(
                ("jacobi", A1, A2),
                2 * q,
                4.0 / beta,
                lambda x: np.prod(
                    (1 - (1 - np.conj(zz)) * x).astype(complex) ** N, axis=1
                ),
            )

        rhs = d22_rhs(p, budget, rng).mean
        rhs0 = d22_rhs({**p, "z": 1.0}, budget, rng).mean
        return abs(rhs / rhs0 - form(z) / form(1.0)) / max(abs(rhs / rhs0), 1.0)

    R.append(
        IdentityRecord(
            "D22",
            "(3.8d+)",
            "permits a duality identity",
            "Circular Jacobi modulus power vs dual forms",
            {"beta": 2.0, "N": 2, "q": 1, "a": 1.4, "b": 1.1, "z": np.exp(0.7j)},
            d22_lhs,
            d22_rhs,
            proportional=True,
            norm_rule="anchor z=1",
            anchor_params=lambda p: {**p, "z": 1.0},
            extra_checks=(("me_form_agrees", d22_me_form),),
            domain=lambda p: p["a"] >= p["q"] - 1 and p["b"] >= p["q"] - 1,
            backends=("exactSeries", "exactSeries"),
        )
    )

    # -- D23 ... D27 ------------------------------------------------------
    def d23_lhs(p, budget, rng):
        N, z1, z2 = p["N"], p["z1"], p["z2"]

        def obs(Zs):
            s1, l1 = np.linalg.slogdet(z1 * np.eye(N) - Zs)
            s2, l2 = np.linalg.slogdet(z2 * np.eye(N) - Zs)
            return s1 * s2 * np.exp(l1 + l2)

        return _mc_matrix(
            lambda r, n: ensembles.ginibre(r, N, "R", (n,)), obs, budget.samples, rng
        )

    def d23_rhs(p, budget, rng):
        N, z1, z2 = p["N"], p["z1"], p["z2"]
        val = sum(
            math.comb(N, k) * math.factorial(k) * (z1 * z2) ** (N - k)
            for k in range(N + 1)
        )
        return _exact(val)

    R.append(
        IdentityRecord(
            "D23",
            "(6.0a)",
            "gave the duality relation",
            "Real Ginibre pair vs scalar complex-normal moment",
            {"N": 2, "z1": 0.3, "z2": -0.2},
            d23_lhs,
            d23_rhs,
            backends=("matrixMC", "exactSeries"),
        )
    )

    def d24_lhs(p, budget, rng):
        N = p["N"]
        zs = np.asarray(p["z"], dtype=complex)
        ws = np.asarray(p["w"], dtype=complex)

        def obs(Zs):
            out = np.ones(len(Zs), dtype=complex)
            for z in zs:
                s, l = np.linalg.slogdet(z * np.eye(N) - Zs)
                out *= s * np.exp(l)
            for w in ws:
                s, l = np.linalg.slogdet(w * np.eye(N) - np.conj(Zs))
                out *= s * np.exp(l)
            return out

        return _mc_matrix(
            lambda r, n: ensembles.ginibre(r, N, "C", (n,)), obs, budget.samples, rng
        )

    def d24_rhs(p, budget, rng):
        N = p["N"]
        zs = np.asarray(p["z"], dtype=complex)
        ws = np.asarray(p["w"], dtype=complex)
        k = len(zs)

        def obs(Ys):
            return np.array(
                [block_det(zs, ws, Y) ** N for Y in Ys], dtype=complex
            )

        return _mc_matrix(
            lambda r, n: ensembles.ginibre(r, k, "C", (n,)), obs, budget.samples, rng
        )

    R.append(
        IdentityRecord(
            "D24",
            "(6.0v+)",
            "are diagonal matrices with diagonal entries",
            "Complex Ginibre product vs block-determinant average",
            {"N": 3, "z": (0.4, -0.2 + 0.3j), "w": (0.4, -0.2 - 0.3j)},
            d24_lhs,
            d24_rhs,
            backends=("matrixMC", "matrixMC"),
        )
    )

    def _pair_product_obs(N, zs, ws):
        def obs(Zs):
            out = np.ones(len(Zs), dtype=complex)
            for z in zs:
                s, l = np.linalg.slogdet(z * np.eye(N) - Zs)
                out *= s * np.exp(l)
            for w in ws:
                s, l = np.linalg.slogdet(w * np.eye(N) - np.conj(Zs))
                out *= s * np.exp(l)
            return out

        return obs

    def d25_lhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs, ws = np.asarray(p["z"], dtype=complex), np.asarray(p["w"], dtype=complex)
        spec = EnsembleSpec("TruncUnitaryC", N, 2, {"K": K})
        return _mc_matrix(
            lambda r, n: ensembles.sample_matrix(spec, r, (n,)),
            _pair_product_obs(N, zs, ws),
            budget.samples,
            rng,
            chunk=800,
        )

    def d25_rhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs, ws = np.asarray(p["z"], dtype=complex), np.asarray(p["w"], dtype=complex)
        k = len(zs)
        spec = EnsembleSpec("SphericalC", k, 2, {"K": N + K})

        def obs(Ys):
            return np.array([block_det(zs, ws, Y) ** N for Y in Ys], dtype=complex)

        return _mc_matrix(
            lambda r, n: ensembles.sample_matrix(spec, r, (n,)),
            obs,
            budget.samples,
            rng,
            chunk=800,
        )

    R.append(
        IdentityRecord(
            "D25",
            "(6.0v+B)",
            "where it is required K >= k",
            "Truncated-unitary product vs spherical block determinant",
            {"N": 2, "K": 2, "z": (0.5, 0.1 + 0.2j), "w": (0.5, 0.1 - 0.2j)},
            d25_lhs,
            d25_rhs,
            backends=("matrixMC", "matrixMC"),
        )
    )

    def d26_lhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs, ws = np.asarray(p["z"], dtype=complex), np.asarray(p["w"], dtype=complex)
        spec = EnsembleSpec("SphericalC", N, 2, {"K": K})
        return _mc_matrix(
            lambda r, n: ensembles.sample_matrix(spec, r, (n,)),
            _pair_product_obs(N, zs, ws),
            budget.samples,
            rng,
            chunk=800,
        )

    def d26_rhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs, ws = np.asarray(p["z"], dtype=complex), np.asarray(p["w"], dtype=complex)
        k = len(zs)
        spec = EnsembleSpec("TruncUnitaryC", k, 2, {"K": K - k})

        def obs(Ys):
            return np.array([block_det(zs, ws, Y) ** N for Y in Ys], dtype=complex)

        return _mc_matrix(
            lambda r, n: ensembles.sample_matrix(spec, r, (n,)),
            obs,
            budget.samples,
            rng,
            chunk=800,
        )

    R.append(
        IdentityRecord(
            "D26",
            "(6.0vA)",
            "where it is required K >= k",
            "Spherical product vs truncated-unitary block determinant",
            {"N": 2, "K": 3, "z": (0.6, 0.2 + 0.1j), "w": (0.6, 0.2 - 0.1j)},
            d26_lhs,
            d26_rhs,
            domain=lambda p: p["K"] >= len(p["z"]),
            backends=("matrixMC", "matrixMC"),
        )
    )

    def d27_lhs(p, budget, rng):
        N, k, z = p["N"], p["k"], complex(p["z"])

        def obs(Zs):
            _, l = np.linalg.slogdet(z * np.eye(N) - Zs)
            return np.exp(2 * k * l)

        return _mc_matrix(
            lambda r, n: ensembles.ginibre(r, N, "C", (n,)), obs, budget.samples, rng
        )

    def d27_rhs(p, budget, rng):
        N, k, z = p["N"], p["k"], complex(p["z"])
        az2 = abs(z) ** 2
        val = me_average(
            ("laguerre", 0.0, 1.0),
            k,
            2.0,
            lambda t: np.prod((1 + t / az2) ** N, axis=1),
        )
        return _quad(az2 ** (k * N) * val)

    R.append(
        IdentityRecord(
            "D27",
            "(7.Y)",
            "relating a non-Hermitian average",
            "Ginibre modulus power vs Laguerre ensemble average",
            {"N": 5, "k": 2, "z": 0.8},
            d27_lhs,
            d27_rhs,
            backends=("matrixMC", "quadrature"),
        )
    )

    # -- D28 / D29 / D30 ---------------------------------------------------
    def _absdet_obs(N, x, r, A):
        def obs(Xs):
            _, l = np.linalg.slogdet(x * np.eye(N) - A[None, :, :] @ Xs)
            return np.exp(2 * r * l)

        return obs

    def d28_lhs(p, budget, rng):
        N, r, x = p["N"], p["r"], complex(p["x"])
        A = np.diag(np.asarray(p["A"], dtype=complex))
        return _mc_matrix(
            lambda rg, n: ensembles.ginibre(rg, N, "C", (n,)),
            _absdet_obs(N, x, r, A),
            budget.samples,
            rng,
        )

    def d28_rhs(p, budget, rng):
        N, r, x = p["N"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        az2 = abs(x) ** 2
        val = me_average(
            ("laguerre", 0.0, 1.0),
            r,
            2.0,
            lambda t: np.prod(
                [np.prod(az2 + np.outer(t[:, l], a2), axis=1) for l in range(r)],
                axis=0,
            ),
        )
        return _quad(val)

    def d28_series(p, budget, rng):
        N, r, x = p["N"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec(
                (-r, -r), (), 1.0, ("vector", tuple(a2 / abs(x) ** 2))
            )
        )
        rhs = d28_rhs(p, budget, rng).mean
        return abs(abs(x) ** (2 * r * N) * res.value - rhs) / max(abs(rhs), 1.0)

    R.append(
        IdentityRecord(
            "D28",
            "(5.33)",
            "where Lambda = -AA^dag(|x|^2 - AA^dag)^{-1}",
            "Scaled complex Ginibre modulus power vs size-r Laguerre",
            {"N": 2, "r": 2, "x": 1.1, "A": (0.5, 0.9)},
            d28_lhs,
            d28_rhs,
            extra_checks=(("series_path", d28_series),),
            backends=("matrixMC", "quadrature"),
        )
    )

    def d29_lhs(p, budget, rng):
        N, K, r, x = p["N"], p["K"], p["r"], complex(p["x"])
        A = np.diag(np.asarray(p["A"], dtype=complex))
        spec = EnsembleSpec("TruncUnitaryC", N, 2, {"K": K})
        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            _absdet_obs(N, x, r, A),
            budget.samples,
            rng,
            chunk=800,
        )

    def d29_rhs(p, budget, rng):
        N, K, r, x = p["N"], p["K"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec(
                (-r, -r), (N + K,), 1.0, ("vector", tuple(a2 / abs(x) ** 2))
            )
        )
        return _exact(abs(x) ** (2 * r * N) * res.value)

    def d29_me_form(p, budget, rng):
        N, K, r, x = p["N"], p["K"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        az2 = abs(x) ** 2
        lam = -a2 / (az2 - a2)
        val = np.prod(az2 - a2) ** r * me_average(
            ("jacobi", float(K), 0.0),
            r,
            2.0,
            lambda t: np.prod(
                [np.prod(t[:, l][:, None] - lam[None, :], axis=1) for l in range(r)],
                axis=0,
            ),
        )
        rhs = d29_rhs(p, budget, rng).mean
        # proportional form: compare after normalizing both at A scaled by 1/2
        p2 = {**p, "A": tuple(v / 2 for v in p["A"])}
        rhs2 = d29_rhs(p2, budget, rng).mean
        a2b = np.abs(np.asarray(p2["A"])) ** 2
        lam2 = -a2b / (az2 - a2b)
        val2 = np.prod(az2 - a2b) ** r * me_average(
            ("jacobi", float(K), 0.0),
            r,
            2.0,
            lambda t: np.prod(
                [np.prod(t[:, l][:, None] - lam2[None, :], axis=1) for l in range(r)],
                axis=0,
            ),
        )
        return abs(val / rhs - val2 / rhs2) / max(abs(val / rhs), 1.0)

    R.append(
        IdentityRecord(
            "D29",
            "(5.33)",
            "where Lambda = -AA^dag(|x|^2 - AA^dag)^{-1}",
            "Truncated-unitary modulus power vs terminating series",
            {"N": 2, "K": 2, "r": 2, "x": 1.2, "A": (0.5, 0.8)},
            d29_lhs,
            d29_rhs,
            extra_checks=(("me_form_ratio_constant", d29_me_form),),
            backends=("matrixMC", "exactSeries"),
        )
    )

    def d30_lhs(p, budget, rng):
        N, K, r, x = p["N"], p["K"], p["r"], complex(p["x"])
        A = np.diag(np.asarray(p["A"], dtype=complex))
        spec = EnsembleSpec("SphericalC", N, 2, {"K": K})
        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            _absdet_obs(N, x, r, A),
            budget.samples,
            rng,
            chunk=800,
        )

    def d30_rhs(p, budget, rng):
        N, K, r, x = p["N"], p["K"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        az2 = abs(x) ** 2
        val = me_average(
            ("jacobi", 0.0, float(K - 2 * r)),
            r,
            2.0,
            lambda t: np.prod(
                [np.prod(az2 + np.outer(t[:, l], a2), axis=1) for l in range(r)],
                axis=0,
            ),
        )
        return _quad(val)

    def d30_series(p, budget, rng):
        N, K, r, x = p["N"], p["K"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec(
                (-r, -r), (-float(K),), 1.0, ("vector", tuple(-a2 / abs(x) ** 2))
            )
        )
        rhs = d30_rhs(p, budget, rng).mean
        return abs(abs(x) ** (2 * r * N) * res.value - rhs) / max(abs(rhs), 1.0)

    R.append(
        IdentityRecord(
            "D30",
            "(5.33)",
            "where Lambda = -AA^dag(|x|^2 - AA^dag)^{-1}",
            "Spherical-ensemble modulus power vs size-r Jacobi",
            {"N": 2, "K": 5, "r": 2, "x": 1.0, "A": (0.4, 0.7)},
            d30_lhs,
            d30_rhs,
            extra_checks=(("series_path", d30_series),),
            domain=lambda p: p["K"] >= 2 * p["r"] and p["K"] > p["r"],
            backends=("matrixMC", "quadrature"),
        )
    )

    # -- D31 / D32 ---------------------------------------------------------
    def d31_lhs(p, budget, rng):
        N, r = p["N"], p["r"]
        A = np.diag(np.asarray(p["A"], dtype=float))

        def obs(Xs):
            s, l = np.linalg.slogdet(np.eye(N) - A[None, :, :] @ Xs)
            return s**r * np.exp(r * l)

        return _mc_matrix(
            lambda rg, n: ensembles.ginibre(rg, N, "R", (n,)), obs, budget.samples, rng
        )

    def d31_rhs(p, budget, rng):
        N, r = p["N"], p["r"]
        a2 = np.asarray(p["A"]) ** 2
        half = r // 2
        nu = 0.0 if r % 2 == 0 else 2.0
        val = me_average(
            ("laguerre", nu, 1.0),
            half,
            4.0,
            lambda t: np.prod(
                [np.prod(1 + np.outer(t[:, l], a2), axis=1) for l in range(half)],
                axis=0,
            ),
        )
        return _quad(val)

    def d31_series(p, budget, rng):
        N, r = p["N"], p["r"]
        a2 = np.asarray(p["A"]) ** 2
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec(
                (-r / 2.0, (-r + 1) / 2.0), (), 2.0, ("vector", tuple(2 * a2))
            )
        )
        rhs = d31_rhs(p, budget, rng).mean
        return abs(res.value - rhs) / max(abs(rhs), 1.0)

    R.append(
        IdentityRecord(
            "D31",
            "(7.Zi)",
            "Let Lambda be as in Proposition",
            "Real Ginibre power vs beta=4 Laguerre ensemble",
            {"N": 2, "r": 2, "A": (0.5, 0.8)},
            d31_lhs,
            d31_rhs,
            extra_checks=(("series_path", d31_series),),
            backends=("matrixMC", "quadrature"),
        )
    )

    def d32_lhs(p, budget, rng):
        N, r = p["N"], p["r"]
        A = np.diag(np.repeat(np.asarray(p["A"], dtype=float), 2))

        def obs(Xs):
            s, l = np.linalg.slogdet(np.eye(2 * N) - A[None, :, :] @ Xs)
            return s**r * np.exp(r * l)

        return _mc_matrix(
            lambda rg, n: ensembles.ginibre(rg, N, "Q", (n,)), obs, budget.samples, rng
        )

    def d32_rhs(p, budget, rng):
        # beta = 1 Laguerre side in the exp(-t/2) scale; one factor per
        # independent quaternion eigenvalue (calibrated at N = 1, r = 1, 2)
        N, r = p["N"], p["r"]
        a2 = np.asarray(p["A"]) ** 2
        val = me_average(
            ("laguerre", 0.0, 0.5),
            r,
            1.0,
            lambda t: np.prod(
                [np.prod(1 + np.outer(t[:, l], a2), axis=1) for l in range(r)],
                axis=0,
            ),
        )
        return _quad(val)

    def d32_series(p, budget, rng):
        N, r = p["N"], p["r"]
        a2 = np.asarray(p["A"]) ** 2
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec((-r, -r - 1.0), (), 0.5, ("vector", tuple(a2)))
        )
        rhs = d32_rhs(p, budget, rng).mean
        return abs(res.value - rhs) / max(abs(rhs), 1.0)

    R.append(
        IdentityRecord(
            "D32",
            "(7.Zj)",
            "Let Lambda be as in Proposition",
            "Quaternion Ginibre power vs beta=1 Laguerre ensemble",
            {"N": 2, "r": 1, "A": (0.5, 0.8)},
            d32_lhs,
            d32_rhs,
            extra_checks=(("series_path", d32_series),),
            backends=("matrixMC", "quadrature"),
        )
    )

    # -- D33 ... D36 --------------------------------------------------------
    def _block_antisym_obs(zs, power):
        Z = np.diag(np.asarray(zs, dtype=complex))

        def obs(Xs):
            out = np.empty(len(Xs), dtype=complex)
            for i, X in enumerate(Xs):
                top = np.concatenate([X, Z], axis=1)
                bot = np.concatenate([-Z, np.conj(X.T)], axis=1)
                s, l = np.linalg.slogdet(np.concatenate([top, bot], axis=0))
                out[i] = s ** int(power) * np.exp(power * l)
            return out

        return obs

    def d33_lhs(p, budget, rng):
        N = p["N"]
        zs = np.asarray(p["z"], dtype=complex)

        def obs(Gs):
            out = np.ones(len(Gs), dtype=complex)
            for z in zs:
                s, l = np.linalg.slogdet(Gs - z * np.eye(N))
                out *= s * np.exp(l)
            return out

        return _mc_matrix(
            lambda rg, n: ensembles.ginibre(rg, N, "R", (n,)), obs, budget.samples, rng
        )

    def d33_rhs(p, budget, rng):
        N = p["N"]
        zs = np.asarray(p["z"], dtype=complex)
        k2 = len(zs)
        spec = EnsembleSpec("GaussAntiC", k2, None, {})
        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            _block_antisym_obs(zs, N // 2),
            budget.samples,
            rng,
        )

    R.append(
        IdentityRecord(
            "D33",
            "(5.47)",
            "chosen with measure proportional to",
            "Real Ginibre product vs Gaussian antisymmetric block average",
            {"N": 2, "z": (0.4, -0.3)},
            d33_lhs,
            d33_rhs,
            domain=lambda p: p["N"] % 2 == 0 and len(p["z"]) % 2 == 0,
            backends=("matrixMC", "matrixMC"),
        )
    )

    def d34_lhs(p, budget, rng):
        N = p["N"]
        zs = np.asarray(p["z"], dtype=complex)

        def obs(Gs):
            out = np.ones(len(Gs), dtype=complex)
            for z in zs:
                s, l = np.linalg.slogdet(Gs - z * np.eye(2 * N))
                out *= s * np.exp(l)
            return out

        return _mc_matrix(
            lambda rg, n: ensembles.ginibre(rg, N, "Q", (n,)), obs, budget.samples, rng
        )

    def d34_rhs(p, budget, rng):
        N = p["N"]
        zs = np.asarray(p["z"], dtype=complex)
        k2 = len(zs)
        spec = EnsembleSpec("GaussSymC", k2, None, {})
        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            _block_antisym_obs(zs, N),
            budget.samples,
            rng,
        )

    R.append(
        IdentityRecord(
            "D34",
            "(5.48)",
            "chosen with measure proportional to",
            "Quaternion Ginibre product vs Gaussian symmetric block average",
            {"N": 1, "z": (0.4, -0.3)},
            d34_lhs,
            d34_rhs,
            domain=lambda p: len(p["z"]) % 2 == 0,
            backends=("matrixMC", "matrixMC"),
        )
    )

    def d35_lhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs = np.asarray(p["z"], dtype=complex)
        spec = EnsembleSpec("TruncUnitaryR", N, 1, {"K": K})

        def obs(Gs):
            out = np.ones(len(Gs), dtype=complex)
            for z in zs:
                s, l = np.linalg.slogdet(Gs - z * np.eye(N))
                out *= s * np.exp(l)
            return out

        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            obs,
            budget.samples,
            rng,
            chunk=800,
        )

    def d35_rhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs = np.asarray(p["z"], dtype=complex)
        k2 = len(zs)
        Kp = (N + K) // 2 - 1
        spec = EnsembleSpec("SphAntiC", k2, None, {"K": Kp})
        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            _block_antisym_obs(zs, N // 2),
            max(budget.samples // 20, 300),
            rng,
            chunk=100,
        )

    R.append(
        IdentityRecord(
            "D35",
            "(5.48a)",
            "spherical anti-symmetric (symmetric) ensemble",
            "Truncated orthogonal product vs spherical antisymmetric",
            {"N": 2, "K": 2, "z": (0.5, -0.2)},
            d35_lhs,
            d35_rhs,
            domain=lambda p: (p["N"] + p["K"]) % 2 == 0 and p["N"] % 2 == 0,
            backends=("matrixMC", "mcmc"),
        )
    )

    def d36_lhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs = np.asarray(p["z"], dtype=complex)
        spec = EnsembleSpec("TruncUnitaryQ", N, 4, {"K": K})

        def obs(Gs):
            out = np.ones(len(Gs), dtype=complex)
            for z in zs:
                s, l = np.linalg.slogdet(Gs - z * np.eye(2 * N))
                out *= s * np.exp(l)
            return out

        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            obs,
            budget.samples,
            rng,
            chunk=400,
        )

    def d36_rhs(p, budget, rng):
        N, K = p["N"], p["K"]
        zs = np.asarray(p["z"], dtype=complex)
        k2 = len(zs)
        spec = EnsembleSpec("SphSymC", k2, None, {"K": N + K + 1})
        return _mc_matrix(
            lambda rg, n: ensembles.sample_matrix(spec, rg, (n,)),
            _block_antisym_obs(zs, N),
            max(budget.samples // 20, 300),
            rng,
            chunk=100,
        )

    R.append(
        IdentityRecord(
            "D36",
            "(5.48b)",
            "spherical anti-symmetric (symmetric) ensemble",
            "Truncated symplectic product vs spherical symmetric (as printed)",
            {"N": 1, "K": 2, "z": (0.4, -0.25)},
            d36_lhs,
            d36_rhs,
            domain=lambda p: len(p["z"]) % 2 == 0,
            backends=("matrixMC", "mcmc"),
            status="unresolved",
        )
    )

    # -- D37 ... D42 --------------------------------------------------------
    def d37_lhs(p, budget, rng):
        res = exact.goe_gse_duality_residual(p["k"])
        return _exact(0.0 if not res else 1.0, "exact")

    def d37_rhs(p, budget, rng):
        return _exact(0.0, "exact")

    R.append(
        IdentityRecord(
            "D37",
            "(1.2)",
            "in fact valid for each",
            "Exact moment-polynomial flip between orthogonal and symplectic",
            {"k": 4},
            d37_lhs,
            d37_rhs,
            backends=("exact", "exact"),
        )
    )

    def d38_lhs(p, budget, rng):
        k, beta, N = p["k"], p["beta"], p["N"]
        tau = Fraction(beta).limit_denominator(10**6) / 2
        val = loopeq.gaussian_scaled_moment(k).eval(N, tau)
        return _exact(float(val), "exact")

    def d38_rhs(p, budget, rng):
        k, beta, N = p["k"], p["beta"], p["N"]
        spec = EnsembleSpec("GaussianBeta", N, beta, {"gauss_c": N * beta / 2.0})
        return _mc_matrix(
            lambda rg, n: ensembles.sample_eigs_batch(spec, rg, n),
            lambda eigs: 2.0**k * np.sum(eigs ** (2 * k), axis=1) / N,
            budget.samples,
            rng,
        )

    def d38_map(p, budget, rng):
        return 0.0 if loopeq.duality_map_check("gaussian", p["k"]).is_zero() else 1.0

    R.append(
        IdentityRecord(
            "D38",
            "(9.9)",
            "smoothed density",
            "Scaled-moment coupling flip: symbolic map plus MC cross-check",
            {"k": 2, "beta": 1.0, "N": 6},
            d38_lhs,
            d38_rhs,
            extra_checks=(("symbolic_map_residual", d38_map),),
            backends=("exact", "matrixMC"),
        )
    )

    def d39_lhs(p, budget, rng):
        res = loopeq.temperature_duality_check(p["k"])
        return _exact(0.0 if not res else 1.0, "exact")

    def d39_rhs(p, budget, rng):
        return _exact(0.0, "exact")

    R.append(
        IdentityRecord(
            "D39",
            "(6.9c)",
            "using a loop equation analysis",
            "Low/high-temperature moment map, exact residual",
            {"k": 3},
            d39_lhs,
            d39_rhs,
            backends=("exact", "exact"),
        )
    )

    def d40_lhs(p, budget, rng):
        N, r, x = p["N"], p["r"], complex(p["x"])
        A = np.diag(np.asarray(p["A"], dtype=complex))

        def sampler(rg, n):
            return np.stack([ensembles.haar_unitary("U", N, rg) for _ in range(n)])

        return _mc_matrix(
            sampler, _absdet_obs(N, x, r, A), budget.samples, rng, chunk=2000
        )

    def d40_rhs(p, budget, rng):
        # (1+t)^{-N-2r} ensemble mapped by t = u/(1-u) onto the flat (0,1)
        # Jacobi ensemble; every endpoint power cancels and the integrand
        # is polynomial, so the rule is exact
        N, r, x = p["N"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        az2 = abs(x) ** 2
        num = me_average(
            ("jacobi", 0.0, 0.0),
            r,
            2.0,
            lambda u: np.prod(
                [
                    np.prod(
                        az2 * (1 - u[:, l])[:, None] + np.outer(u[:, l], a2), axis=1
                    )
                    for l in range(r)
                ],
                axis=0,
            ),
        )
        den = me_average(
            ("jacobi", 0.0, 0.0),
            r,
            2.0,
            lambda u: np.prod((1 - u) ** N, axis=1),
        )
        return _quad(num / den)

    def d40_cross(p, budget, rng):
        # K = 0 case of the truncated-ensemble series after t -> t/(1+t)
        N, r, x = p["N"], p["r"], complex(p["x"])
        a2 = np.abs(np.asarray(p["A"])) ** 2
        res = hypergeom.hyper_pfq(
            hypergeom.HypergeomSpec(
                (-r, -r), (N,), 1.0, ("vector", tuple(a2 / abs(x) ** 2))
            )
        )
        rhs = d40_rhs(p, budget, rng).mean
        return abs(abs(x) ** (2 * r * N) * res.value - rhs) / max(abs(rhs), 1.0)

    R.append(
        IdentityRecord(
            "D40",
            "(7.Zd)",
            "a duality identity of Fyodorov and Khoruzhenko",
            "Haar-unitary modulus power vs Jacobi-prime ensemble",
            {"N": 3, "r": 2, "x": 1.1, "A": (0.4, 0.6, 0.9)},
            d40_lhs,
            d40_rhs,
            extra_checks=(("trunc_form_K0", d40_cross),),
            backends=("matrixMC", "quadrature"),
        )
    )

    def d41_lhs(p, budget, rng):
        N, k4 = p["N"], p["kappa4"]
        x1, x2 = p["x1"], p["x2"]
        return _mc_matrix(
            lambda rg, n: np.linalg.eigvalsh(ensembles.wigner_custom(rg, N, k4, (n,))),
            lambda eigs: _prod_charpoly(eigs, [x1]) * _prod_charpoly(eigs, [x2]),
            budget.samples,
            rng,
        )

    def d41_rhs(p, budget, rng):
        N, k4 = p["N"], p["kappa4"]
        x1, x2 = p["x1"], p["x2"]
        X = np.diag([x1, x2]).astype(complex)
        eps = k4 if k4 > 0 else (-1j * k4 if k4 < 0 else 0.0)

        def obs_batch(rg, n):
            Q = ensembles.gaussian_invariant(rg, 2, 2, 1.0, (n,))
            dets = np.linalg.det(1j * X[None, :, :] - Q)
            if k4 != 0.0:
                t = rg.standard_normal(n) / math.sqrt(2 * abs(k4))
                dets = dets + t * eps
            return 1j ** (-2 * N) * dets**N

        vals = []
        left = budget.samples
        while left > 0:
            take = min(20000, left)
            vals.append(obs_batch(rng, take))
            left -= take
        return mc_estimate(np.concatenate(vals), "matrixMC")

    R.append(
        IdentityRecord(
            "D41",
            "(2.3d)",
            "The proof is based on Grassmann integration",
            "Wigner pair duality with the fourth-cumulant auxiliary average",
            {"N": 3, "kappa4": -0.3, "x1": 0.5, "x2": -0.2},
            d41_lhs,
            d41_rhs,
            domain=lambda p: p["kappa4"] >= -0.5,
            backends=("matrixMC", "matrixMC"),
        )
    )

    def d42_lhs(p, budget, rng):
        N, k4, m = p["N"], p["kappa4"], p["m"]
        nu = np.asarray(p["nu"], dtype=float)
        H0 = np.diag(nu)

        def sampler(rg, n):
            return ensembles.wigner_custom(rg, N, k4, (n,)) + H0[None, :, :]

        def obs(Hs):
            s, l = np.linalg.slogdet(m * np.eye(N) - Hs)
            return s * np.exp(l)

        return _mc_matrix(sampler, obs, budget.samples, rng)

    def d42_rhs(p, budget, rng):
        N, m = p["N"], p["m"]
        nu = np.asarray(p["nu"], dtype=float)
        val = me_average(
            ("hermite", 1.0),
            1,
            2.0,
            lambda x: np.prod(m - nu[None, :] + 1j * x, axis=1),
        )
        return _quad(val)

    R.append(
        IdentityRecord(
            "D42",
            "(2.5i)",
            "holds in the more general case",
            "Universality: shifted Wigner determinant vs scalar average",
            {"N": 3, "kappa4": -0.3, "m": 0.8, "nu": (0.4, -0.1, 0.2)},
            d42_lhs,
            d42_rhs,
            backends=("matrixMC", "quadrature"),
        )
    )

    return {r.id: r for r in R}


_REGISTRY = None


def registry():
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _records()
    return _REGISTRY


def get_record(rid):
    reg = registry()
    if rid not in reg:
        raise NotFound(rid)
    return reg[rid]


@dataclass
class Budget:
    samples: int = 20000
    seed: int = 1234
    zmax: float = 4.0
    exact_tol: float = 1e-8
    rel_se_target: float = 0.05


def verify(rid, overrides=None, budget=None):
    """Evaluate both plans of a record and report the comparison."""
    rec = get_record(rid)
    budget = budget or Budget()
    params = dict(rec.defaults)
    if overrides:
        unknown = set(overrides) - set(params) - {"backend_lhs", "backend_rhs"}
        if unknown:
            raise ParamOutOfDomain(f"unknown parameters {sorted(unknown)}")
        params.update(overrides)
    if rec.domain is not None and not rec.domain(params):
        raise ParamOutOfDomain(f"parameters outside the domain of {rid}")
    t0 = time.time()
    rng_l, rng_r, rng_al, rng_ar = spawn_rngs(budget.seed, 4)
    lhs = rec.lhs(params, budget, rng_l)
    rhs = rec.rhs(params, budget, rng_r)
    norm = 1.0 + 0.0j
    if rec.proportional:
        pa = rec.anchor_params(params)
        la = rec.lhs(pa, budget, rng_al)
        ra = rec.rhs(pa, budget, rng_ar)
        norm = la.mean / ra.mean
    rv = rhs.mean * norm
    rse = rhs.stderr * abs(norm)
    denom = math.hypot(lhs.stderr, rse)
    scale = max(abs(lhs.mean), abs(rv), 1e-300)
    if denom == 0.0:
        residual = abs(lhs.mean - rv) / scale
        z = 0.0
        passed = residual <= budget.exact_tol
    else:
        z = abs(lhs.mean - rv) / denom
        residual = abs(lhs.mean - rv) / scale
        rel_ok = True
        for e in (lhs, rhs):
            if e.stderr > 0 and e.stderr / max(abs(e.mean), scale) > budget.rel_se_target:
                rel_ok = False
        passed = z <= budget.zmax and rel_ok
    extras = {}
    for name, fn in rec.extra_checks:
        extras[name] = fn(params, budget, make_rng(budget.seed + 77))
    wall = (time.time() - t0) * 1000
    return VerificationReport(
        rid, rec.eq, params, lhs, rhs, norm, float(z), float(residual), passed,
        budget.seed, wall, extras,
    )


def scan(rid, grid, budget=None):
    """Verify across a parameter grid; proportional records also check
    that the side ratio is constant over the grid."""
    budget = budget or Budget()
    reports = []
    ratios = []
    for i, overrides in enumerate(grid):
        b = Budget(budget.samples, budget.seed + i, budget.zmax, budget.exact_tol,
                   budget.rel_se_target)
        rep = verify(rid, overrides, b)
        reports.append(rep)
        if abs(rep.rhs.mean) > 0:
            ratios.append(rep.lhs.mean / rep.rhs.mean)
    rec = get_record(rid)
    if rec.proportional and len(ratios) >= 2:
        dev = max(abs(r - ratios[0]) for r in ratios)
        tol = 4 * max(
            max(rep.lhs.stderr, rep.rhs.stderr) / max(abs(rep.rhs.mean), 1e-300)
            for rep in reports
        ) + 1e-7 * abs(ratios[0])
        for rep in reports:
            rep.extras["ratio_constant"] = dev <= max(tol, 1e-7)
    return reports


def export_registry():
    """Render the registry as a diffable text document."""
    lines = []
    for rid in sorted(registry()):
        rec = registry()[rid]
        lines.append(f"id: {rid}")
        lines.append(f"eq: {rec.eq}")
        lines.append(f"anchor: {rec.anchor}")
        lines.append(f"description: {rec.description}")
        lines.append(f"backends: {rec.backends[0]} | {rec.backends[1]}")
        lines.append(f"proportional: {rec.proportional}")
        lines.append(f"normalization: {rec.norm_rule}")
        lines.append(
            "defaults: "
            + ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(rec.defaults.items()))
        )
        lines.append("")
    return "\n".join(lines)


def _fmt(v):
    if isinstance(v, complex):
        return f"{v.real:g}{v.imag:+g}j"
    if isinstance(v, (tuple, list, np.ndarray)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return f"{v}"
