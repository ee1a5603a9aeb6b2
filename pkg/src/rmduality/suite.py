"""Acceptance suite: one callable per criterion.

``fast`` covers the exact and quadrature items; ``full`` adds the Monte
Carlo items.  Each item returns (passed, detail) and takes the root seed;
all randomness descends from it.
"""

import math
from fractions import Fraction

import numpy as np

from . import circular, ensembles, exact, jack, loopeq
from .catalog import Budget, gauss_charpoly_series, verify
from .ensembles import EnsembleSpec, make_rng
from .jack import (
    conjugate,
    dual_cauchy_residual,
    jack_expand,
    monomial_sym,
    zonal_C_principal,
)
from .partitions import gen_pochhammer, partitions_of
from .quadrature import me_average, torus_trapezoid_average

__all__ = ["items"]


def _ok(cond, detail):
    return bool(cond), detail


# ----------------------------------------------------------------------
# fast items: exact and quadrature only
# ----------------------------------------------------------------------


def moment_flip_exact(seed):
    bad = [k for k in range(5) if exact.goe_gse_duality_residual(k)]
    return _ok(not bad, f"residuals zero for k=0..4 (violations: {bad})")


def dual_cauchy(seed):
    rng = make_rng(seed)
    worst = 0.0
    for alpha in (Fraction(1, 2), 1, 2, 3.7):
        for _ in range(20):
            N = int(rng.integers(1, 4))
            p = int(rng.integers(1, 4))
            x = rng.uniform(-1, 1, N)
            y = rng.uniform(-1, 1, p)
            worst = max(worst, abs(dual_cauchy_residual(N, p, alpha, x, y)))
    return _ok(worst <= 1e-10, f"max |residual| = {worst:.2e}")


def jack_orthogonality(seed):
    worst = 0.0
    for N in (2, 3):
        for beta in (2, 4):
            alpha = Fraction(2, beta)
            parts = []
            for w in range(1, 5):
                parts.extend(partitions_of(w, max_len=N))
            diag = {}
            for kappa in parts:
                obs = _jack_mod_obs(kappa, kappa, alpha, N)
                diag[kappa] = torus_trapezoid_average(N, beta, obs).real
            for i, ka in enumerate(parts):
                for kb in parts[i + 1 :]:
                    if sum(ka) != sum(kb):
                        continue  # different weights are orthogonal by phase
                    obs = _jack_mod_obs(ka, kb, alpha, N)
                    off = torus_trapezoid_average(N, beta, obs)
                    rel = abs(off) / math.sqrt(diag[ka] * diag[kb])
                    worst = max(worst, rel)
    return _ok(worst <= 1e-8, f"max off-diagonal Gram ratio = {worst:.2e}")


def _jack_mod_obs(ka, kb, alpha, N):
    def obs(th):
        z = np.exp(2j * np.pi * th)
        pa = _jack_on_grid(ka, alpha, z)
        pb = _jack_on_grid(kb, alpha, np.conj(z))
        return pa * pb

    return obs


def _jack_on_grid(kappa, alpha, z):
    out = np.zeros(z.shape[0], dtype=complex)
    for mu, cf in jack_expand(kappa, alpha, max_len=z.shape[1]).items():
        if len(mu) > z.shape[1]:
            continue
        out += float(cf) * monomial_sym(mu, z)
    return out


def gue_self_duality(seed):
    worst = 0.0
    for N in (1, 2, 3):
        for p in (1, 2, 3):
            pairs = []
            for x in (-1.1, -0.4, 0.0, 0.7, 1.3):
                lhs = me_average(
                    ("hermite", 1.0),
                    N,
                    2.0,
                    lambda lam: np.prod((x - lam).astype(complex), axis=1) ** p,
                )
                rhs = 1j ** (-p * N) * me_average(
                    ("hermite", 1.0),
                    p,
                    2.0,
                    lambda lam: np.prod((1j * x - lam), axis=1) ** N,
                )
                pairs.append((lhs, rhs))
            scale = max(max(abs(l), abs(r)) for l, r in pairs)
            rel = max(abs(l - r) for l, r in pairs) / scale
            worst = max(worst, rel)
    return _ok(worst <= 1e-8, f"max relative residual = {worst:.2e}")


def loop_equation_exact(seed):
    for tag in ("gaussian", "laguerre"):
        for k in (1, 2, 3):
            if not loopeq.duality_map_check(tag, k).is_zero():
                return _ok(False, f"coupling-flip residual nonzero at {tag}, k={k}")
    for k in (1, 2, 3):
        if loopeq.temperature_duality_check(k):
            return _ok(False, f"temperature-map residual nonzero at k={k}")
    res = abs(loopeq.loop_residual_n1(2, 2.0, 2.0 + 0.5j))
    res = max(res, abs(loopeq.loop_residual_n1(2, 1.0, 1.5 + 0.8j)))
    return _ok(res <= 1e-8, f"maps exact; n=1 residual at N=2: {res:.2e}")


def hard_edge_exact(seed):
    from scipy.integrate import quad

    worst = 0.0
    # a = 0 closed form
    for beta, N, s in ((2.0, 3, 0.5), (1.0, 2, 0.8)):
        v = exact.hard_edge_gap("finiteLaguerre", s, beta=beta, N=N, a=0)
        worst = max(worst, abs(v - math.exp(-beta * N * s / 2)))
    # N = 1 against direct integrals
    for a, s in ((1, 0.5), (2, 0.3)):
        v = exact.hard_edge_gap("finiteLaguerre", s, beta=2.0, N=1, a=a)
        num, _ = quad(lambda t: t**a * np.exp(-t), s, 80)
        den, _ = quad(lambda t: t**a * np.exp(-t), 0, 80)
        worst = max(worst, abs(v - num / den))
    return _ok(worst <= 1e-8, f"max deviation = {worst:.2e}")


def morris_exact(seed):
    worst = abs(exact.morris_moment(1, 1, 2.0) - 6.0)
    for N in (2, 3):
        obs = circular.factor_product_observable(
            circular.modulus_power_factor(1.0, 2), N
        )
        v = circular.torus_average(N, 2.0, obs).real
        worst = max(worst, abs(v - exact.morris_moment(N, 1, 2.0)))
    return _ok(worst <= 1e-8, f"max deviation = {worst:.2e} (N=1 value 6 exact)")


# ----------------------------------------------------------------------
# full items: Monte Carlo
# ----------------------------------------------------------------------


def beta_duality_mc(seed, beta, N, p, x=0.7, samples=1_000_000):
    rng = make_rng(seed + 17)
    alpha = 2.0 / beta
    spec = EnsembleSpec("GaussianBeta", N, beta, {"gauss_c": 1.0})
    vals = []
    left = samples
    while left > 0:
        take = min(50_000, left)
        eigs = ensembles.sample_eigs_batch(spec, rng, take)
        vals.append(np.prod(x - math.sqrt(alpha) * eigs, axis=1) ** p)
        left -= take
    vals = np.concatenate(vals)
    mean, se = vals.mean(), vals.std() / math.sqrt(len(vals))
    rhs = (1j ** (-p * N) * gauss_charpoly_series(x, N, p, 4.0 / beta)).real
    z = abs(mean - rhs) / se
    rel = se / abs(mean)
    return _ok(
        z <= 4 and rel <= 0.01,
        f"beta={beta}: z={z:.2f}, rel stderr={rel:.2%}, mc={mean:.5f}, series={rhs:.5f}",
    )


def morris_mc(seed, N=5, q=1, samples=60_000):
    rng = make_rng(seed + 23)
    vals = []
    for _ in range(samples // 100):
        batch = []
        for _ in range(100):
            U = ensembles.haar_unitary("U", N, rng)
            ang = np.linalg.eigvals(U)
            batch.append(np.prod(np.abs(1 + ang) ** (4 * q)))
        vals.extend(batch)
    vals = np.asarray(vals)
    mean, se = vals.mean(), vals.std() / math.sqrt(len(vals))
    pred = exact.morris_moment(N, q, 2.0)
    z = abs(mean - pred) / se
    return _ok(z <= 4, f"z={z:.2f} (mc={mean:.2f}, closed form={pred:.2f})")


def ginibre_dualities(seed, samples=400_000):
    details = []
    ok = True
    for N in (1, 2, 3):
        rep = verify("D23", {"N": N}, Budget(samples=samples, seed=seed + N))
        ok &= rep.z <= 4
        details.append(f"D23[N={N}] z={rep.z:.2f}")
    rep = verify("D24", {"N": 3}, Budget(samples=samples // 2, seed=seed + 7))
    ok &= rep.z <= 4
    details.append(f"D24 z={rep.z:.2f}")
    rep = verify("D27", {"N": 5, "k": 2, "z": 0.8}, Budget(samples=samples, seed=seed + 9))
    ok &= rep.z <= 4
    details.append(f"D27 z={rep.z:.2f}")
    return _ok(ok, "; ".join(details))


def _eigs_dedup(M, quaternion):
    ev = np.linalg.eigvals(M)
    if not quaternion:
        return ev
    idx = np.argsort(ev.real + 1e-9 * ev.imag)
    return ev[idx][::2]


def zonal_group_suite(seed, samples=120_000):
    rng = make_rng(seed + 31)
    worst = 0.0
    details = []
    for beta, group in ((1, "O"), (2, "U"), (4, "Sp")):
        alpha = Fraction(2, beta)
        N = 3 if beta != 4 else 2
        avals = np.array([0.4, 0.9, 1.5][:N])
        bvals = np.array([0.3, 1.1, 0.7][:N])
        if beta == 4:
            A = np.diag(np.repeat(avals, 2)).astype(complex)
            B = np.diag(np.repeat(bvals, 2)).astype(complex)
        else:
            A = np.diag(avals).astype(complex)
            B = np.diag(bvals).astype(complex)
        for kappa in ((1,), (2,), (1, 1)):
            vals = []
            for _ in range(samples // 40000):
                for _ in range(2000):
                    U = ensembles.haar_unitary(group, N, rng)
                    M = A @ np.conj(U.T) @ B @ U
                    ev = _eigs_dedup(M, beta == 4)
                    vals.append(jack.zonal_C(kappa, float(alpha), tuple(ev)))
            vals = np.asarray(vals)
            mean, se = vals.mean(), np.abs(vals).std() / math.sqrt(len(vals))
            pred = (
                jack.zonal_C(kappa, float(alpha), tuple(avals))
                * jack.zonal_C(kappa, float(alpha), tuple(bvals))
                / zonal_C_principal(kappa, float(alpha), N)
            )
            z = abs(mean - pred) / se
            worst = max(worst, z)
        details.append(f"(16.jl) beta={beta} max z={worst:.2f}")
    okj, dj = _bi_unitary_suite(seed, samples)
    return _ok(worst <= 4 and okj, "; ".join(details) + "; " + dj)


def _bi_unitary_suite(seed, samples):
    """Schur averages over the three Ginibre classes against closed forms.

    The squared-singular-value laws give closed index factors:
    real 2^{|k|}[N/2]^{(2)}, complex [N]^{(1)}, quaternion [2N]^{(1/2)}.
    """
    rng = make_rng(seed + 37)
    worst = 0.0
    vanish_worst = 0.0
    N = 2
    avals = np.array([0.7, 1.3])
    n_draws = max(samples // 8, 20000)
    for kind, alpha_c in (("R", 2.0), ("C", 1.0), ("Q", 0.5)):
        A = np.diag(np.repeat(avals, 2) if kind == "Q" else avals).astype(complex)
        Xs = ensembles.ginibre(rng, N, kind, (n_draws,))
        evs = np.linalg.eigvals(A[None, :, :] @ Xs)
        for kappa in ((1,), (2,), (1, 1)):
            if kind == "R":
                lam = tuple(2 * k for k in kappa)
                idx = 2.0 ** sum(kappa) * float(gen_pochhammer(N / 2, kappa, 2.0))
            elif kind == "Q":
                lam = tuple(v for k in kappa for v in (k, k))
                idx = float(gen_pochhammer(2 * N, kappa, 0.5))
            else:
                lam = kappa
                idx = float(gen_pochhammer(N, kappa, 1.0))
            pred = jack.zonal_C(kappa, alpha_c, tuple(avals**2)) * idx
            if kind == "C":
                vals = np.array(
                    [
                        jack.jack_eval(lam, 1, tuple(ev))
                        * np.conj(jack.jack_eval(lam, 1, tuple(ev)))
                        for ev in evs
                    ]
                )
            else:
                vals = np.array([jack.jack_eval(lam, 1, tuple(ev)) for ev in evs])
            mean = vals.mean()
            se = np.abs(vals - mean).std() / math.sqrt(len(vals))
            worst = max(worst, abs(mean - pred) / se)
        # vanishing case: a partition not of the 2*kappa / kappa^2 form
        if kind in ("R", "Q"):
            vals = np.array([jack.jack_eval((3, 1), 1, tuple(ev)) for ev in evs])
            z0 = abs(vals.mean()) / (np.abs(vals).std() / math.sqrt(len(vals)))
            vanish_worst = max(vanish_worst, z0)
    return (
        worst <= 4 and vanish_worst <= 4,
        f"bi-invariance max z={worst:.2f}, vanishing max z={vanish_worst:.2f}",
    )


def semicircle_histogram(seed, N=200, matrices=200):
    rng = make_rng(seed + 41)
    H = ensembles.gaussian_invariant(rng, N, 2, gauss_c=1.0, batch=(matrices,))
    eigs = np.linalg.eigvalsh(H / math.sqrt(2 * N)).ravel()
    edges = np.linspace(-0.9, 0.9, 37)
    counts, _ = np.histogram(eigs, bins=edges)
    width = edges[1] - edges[0]
    dens = counts / (len(eigs) * width)

    def cdf(x):
        return (x * np.sqrt(1 - x**2) + np.arcsin(x)) / np.pi + 0.5

    pred = (cdf(edges[1:]) - cdf(edges[:-1])) / width
    sup = np.max(np.abs(dens - pred))
    return _ok(sup <= 2e-2, f"sup deviation on [-0.9, 0.9] = {sup:.3f}")


def hard_edge_mc(seed, beta=2.0, N=3, a=1, samples=400_000):
    rng = make_rng(seed + 43)
    spec = EnsembleSpec("LaguerreBeta", N, beta, {"a": float(a), "s": beta / 2})
    eigs = ensembles.sample_eigs_batch(spec, rng, samples)
    mins = eigs.min(axis=1)
    oks = []
    details = []
    for s in (0.2, 0.5, 1.0):
        freq = np.mean(mins > s)
        se = math.sqrt(freq * (1 - freq) / samples)
        pred = exact.hard_edge_gap("finiteLaguerre", s, beta=beta, N=N, a=a)
        z = abs(freq - pred) / se
        oks.append(z <= 4)
        details.append(f"s={s}: z={z:.2f}")
    exact_ok = abs(
        exact.hard_edge_gap("finiteLaguerre", 0.5, beta=2.0, N=2, a=0)
        - math.exp(-1.0)
    ) < 1e-12
    return _ok(all(oks) and exact_ok, "; ".join(details) + "; a=0 closed form exact")


def loop_mc_moments(seed, samples=300_000):
    rng = make_rng(seed + 47)
    worst = 0.0
    for beta, N in ((1, 8), (4, 6)):
        spec = EnsembleSpec("GaussianBeta", N, beta, {"gauss_c": N * beta / 2.0})
        eigs = ensembles.sample_eigs_batch(spec, rng, samples)
        for k in (1, 2, 3):
            vals = 2.0**k * np.sum(eigs ** (2 * k), axis=1) / N
            mean, se = vals.mean(), vals.std() / math.sqrt(len(vals))
            pred = float(
                loopeq.gaussian_scaled_moment(k).eval(N, Fraction(beta, 2))
            )
            worst = max(worst, abs(mean - pred) / se)
    return _ok(worst <= 4, f"max z over (beta,N,k) grid = {worst:.2f}")


def charpoly_moment_leading(seed, N=60, lam=0.2, samples=4000):
    rng = make_rng(seed + 53)
    c = 2.0 * N  # weight exp(-beta N x^2), beta = 2
    H = ensembles.gaussian_invariant(rng, N, 2, gauss_c=c, batch=(samples,))
    eigs = np.linalg.eigvalsh(H)
    logs = 2 * np.sum(np.log(np.abs(lam - eigs)), axis=1)
    shift = logs.max()
    mean = np.exp(shift) * np.mean(np.exp(logs - shift))
    pred = exact.charpoly_moment_prediction(2.0, 1, N, lam)
    ratio = mean / pred
    return _ok(abs(ratio - 1) <= 0.10, f"mc/prediction = {ratio:.3f}")


def items(name):
    fast = [
        ("moment flip (exact, k<=4)", moment_flip_exact),
        ("dual Cauchy identity", dual_cauchy),
        ("Jack orthogonality on the torus", jack_orthogonality),
        ("GUE self-duality by quadrature", gue_self_duality),
        ("loop-equation exact suite", loop_equation_exact),
        ("hard-edge gap closed forms", hard_edge_exact),
        ("Morris moment closed form", morris_exact),
    ]
    if name == "fast":
        return fast
    full = fast + [
        ("beta-duality MC (beta=1, N=4, p=2)",
         lambda s: beta_duality_mc(s, 1.0, 4, 2)),
        ("beta-duality MC (beta=4, N=3, p=2)",
         lambda s: beta_duality_mc(s, 4.0, 3, 2)),
        ("Morris moment MC (CUE, N=5)", morris_mc),
        ("Ginibre dualities (D23, D24, D27)", ginibre_dualities),
        ("zonal group-integral suite", zonal_group_suite),
        ("semicircle histogram (N=200)", semicircle_histogram),
        ("hard-edge gap MC", hard_edge_mc),
        ("loop-equation MC moments", loop_mc_moments),
        ("characteristic-polynomial moment, leading order", charpoly_moment_leading),
    ]
    return full
