"""Deterministic quadrature backends for small-N ensemble averages.

Real-line / half-line / (0,1) beta-ensemble averages at N <= 3 by tensor
Gauss rules.  For even beta the |Delta|^beta factor is polynomial and the
rules are exact; for general beta > 0 an ordered-region substitution at
N = 2 absorbs the |Delta|^beta kink into a Gauss-Jacobi weight.  Torus
averages use the trapezoid rule (exact for trigonometric polynomials).
"""

import numpy as np
from scipy.special import roots_genlaguerre, roots_hermite, roots_jacobi

__all__ = [
    "QuadratureNotConverged",
    "gauss_hermite_weight",
    "gauss_laguerre_weight",
    "gauss_jacobi01",
    "me_average",
    "torus_trapezoid_average",
]


class QuadratureNotConverged(RuntimeError):
    pass


def gauss_hermite_weight(n, c):
    """Nodes/weights for integrals against exp(-c x^2) on R."""
    x, w = roots_hermite(n)
    s = np.sqrt(c)
    return x / s, w / s


def gauss_laguerre_weight(n, a, s):
    """Nodes/weights for integrals against x^a exp(-s x) on (0, inf)."""
    x, w = roots_genlaguerre(n, a)
    return x / s, w / s ** (a + 1)


def gauss_jacobi01(n, a1, a2):
    """Nodes/weights for integrals against x^{a1} (1-x)^{a2} on (0, 1)."""
    t, w = roots_jacobi(n, a2, a1)
    return (1 + t) / 2, w / 2 ** (a1 + a2 + 1)


def _rule(weight, n):
    kind = weight[0]
    if kind == "hermite":
        return gauss_hermite_weight(n, weight[1])
    if kind == "laguerre":
        return gauss_laguerre_weight(n, weight[1], weight[2])
    if kind == "jacobi":
        return gauss_jacobi01(n, weight[1], weight[2])
    if kind == "jacobi_prime":
        # x^{b1} (1+x)^{-c} on (0, inf); x = u/(1-u)
        b1, cc = weight[1], weight[2]
        u, w = gauss_jacobi01(n, b1, cc - b1 - 2)
        return u / (1 - u), w
    raise ValueError(f"unknown weight family {kind}")


def _even(beta):
    b = float(beta)
    return b == int(b) and int(b) % 2 == 0


def _tensor_average(weight, N, beta, observable, n):
    x1, w1 = _rule(weight, n)
    grids = np.meshgrid(*([x1] * N), indexing="ij")
    lam = np.stack([g.ravel() for g in grids], axis=-1)
    wt = np.ones(len(lam))
    for g in np.meshgrid(*([w1] * N), indexing="ij"):
        wt = wt * g.ravel()
    if N > 1:
        van = np.ones(len(lam))
        for i in range(N):
            for j in range(i + 1, N):
                van = van * np.abs(lam[:, j] - lam[:, i]) ** beta
        wt = wt * van
    num = np.sum(wt * observable(lam))
    den = np.sum(wt)
    return num / den


def _ordered_pair_average(weight, beta, observable, n):
    """N = 2, general beta: lam = (x, x+y) with the y^beta factor exact."""
    kind = weight[0]
    if kind == "hermite":
        c = weight[1]
        # exp(-c(x^2 + (x+y)^2)) = exp(-2c v^2) exp(-c y^2 / 2), v = x + y/2
        v, wv = gauss_hermite_weight(n, 2 * c)
        r, wr = roots_genlaguerre(n, (beta - 1) / 2)
        y = np.sqrt(2 * r / c)
        wy = wr * (2 / c) ** ((beta + 1) / 2) / 2
        V, Y = np.meshgrid(v, y, indexing="ij")
        lam = np.stack([(V - Y / 2).ravel(), (V + Y / 2).ravel()], axis=-1)
        wt = np.outer(wv, wy).ravel()
    elif kind == "laguerre":
        a, s = weight[1], weight[2]
        x, wx = gauss_laguerre_weight(n, a, 2 * s)
        y, wy = gauss_laguerre_weight(n, beta, s)
        X, Y = np.meshgrid(x, y, indexing="ij")
        lam = np.stack([X.ravel(), (X + Y).ravel()], axis=-1)
        wt = np.outer(wx, wy).ravel() * (X + Y).ravel() ** a
    elif kind == "jacobi":
        a1, a2 = weight[1], weight[2]
        x, wx = gauss_jacobi01(n, a1, 2 * a2 + beta + 1)
        u, wu = gauss_jacobi01(n, beta, a2)
        X, U = np.meshgrid(x, u, indexing="ij")
        lam2 = X + (1 - X) * U
        lam = np.stack([X.ravel(), lam2.ravel()], axis=-1)
        wt = np.outer(wx, wu).ravel() * lam2.ravel() ** a1
    elif kind == "jacobi_prime":
        # map x = u/(1-u); per-variable weight becomes u^{b1}(1-u)^{cc-b1-2}
        # and |x2-x1|^beta = |u2-u1|^beta / ((1-u1)(1-u2))^beta
        b1, cc = weight[1], weight[2]

        def obs2(uu):
            xx = uu / (1 - uu)
            jac = ((1 - uu[:, 0]) * (1 - uu[:, 1])) ** (-float(beta))
            return observable(xx) * jac

        return _ordered_pair_average(("jacobi", b1, cc - b1 - 2), beta, obs2, n)
    else:
        raise ValueError(f"unsupported weight for ordered rule: {kind}")
    num = np.sum(wt * observable(lam))
    den = np.sum(wt)
    return num / den


def _ordered_triple_average(weight, beta, observable, n):
    """N = 3, general beta, for hermite/laguerre weights.

    Ordered region lam = (x, x + rho*a, x + rho) with a in (0,1); the
    Vandermonde becomes rho^{3 beta} (a(1-a))^beta, absorbed exactly into
    Gauss-Jacobi / generalized-Laguerre weights.
    """
    kind = weight[0]
    a_nodes, a_w = gauss_jacobi01(n, beta, beta)
    if kind == "hermite":
        c = weight[1]
        m_nodes, m_w = gauss_hermite_weight(n, 3 * c)
        # sum of squared deviations = (2/3) rho^2 (a^2 - a + 1)
        u_nodes, u_w = roots_genlaguerre(n, (3 * beta) / 2)
        num = 0.0
        den = 0.0
        for ai, awi in zip(a_nodes, a_w):
            k = (2 * c / 3) * (ai * ai - ai + 1)
            rho = np.sqrt(u_nodes / k)
            rw = u_w / (2 * k ** ((3 * beta) / 2 + 1))
            M, R = np.meshgrid(m_nodes, rho, indexing="ij")
            lam1 = M - R * (1 + ai) / 3
            lam = np.stack(
                [lam1.ravel(), (lam1 + R * ai).ravel(), (lam1 + R).ravel()], axis=-1
            )
            wt = np.outer(m_w, rw).ravel() * awi
            num = num + np.sum(wt * observable(lam))
            den = den + np.sum(wt)
        return num / den
    if kind == "laguerre":
        a_exp, s = weight[1], weight[2]
        x_nodes, x_w = gauss_laguerre_weight(n, a_exp, 3 * s)
        num = 0.0
        den = 0.0
        for ai, awi in zip(a_nodes, a_w):
            r_nodes, r_w = gauss_laguerre_weight(n, 3 * beta + 1, s * (1 + ai))
            X, R = np.meshgrid(x_nodes, r_nodes, indexing="ij")
            lam = np.stack(
                [X.ravel(), (X + R * ai).ravel(), (X + R).ravel()], axis=-1
            )
            wt = (
                np.outer(x_w, r_w).ravel()
                * awi
                * (lam[:, 1] * lam[:, 2]) ** a_exp
            )
            num = num + np.sum(wt * observable(lam))
            den = den + np.sum(wt)
        return num / den
    if kind == "jacobi":
        # lam = (x, x+(1-x)*rho*a, x+(1-x)*rho); all endpoint powers exact
        a1, a2 = weight[1], weight[2]
        x_nodes, x_w = gauss_jacobi01(n, a1, 3 * a2 + 3 * beta + 2)
        num = 0.0
        den = 0.0
        for ai, awi in zip(a_nodes, a_w):
            r_nodes, r_w = gauss_jacobi01(n, 3 * beta + 1, a2)
            X, R = np.meshgrid(x_nodes, r_nodes, indexing="ij")
            lam2 = X + (1 - X) * R * ai
            lam3 = X + (1 - X) * R
            lam = np.stack([X.ravel(), lam2.ravel(), lam3.ravel()], axis=-1)
            wt = (
                np.outer(x_w, r_w).ravel()
                * awi
                * (lam2.ravel() * lam3.ravel()) ** a1
                * (1 - R.ravel() * ai) ** a2
            )
            num = num + np.sum(wt * observable(lam))
            den = den + np.sum(wt)
        return num / den
    raise ValueError(f"ordered triple rule not available for weight {kind}")


def me_average(weight, N, beta, observable, rtol=1e-9, n0=None, nmax=None):
    """Self-normalized <observable> for the eigenvalue density
    prod w(lam_l) |Delta(lam)|^beta with N <= 3.

    ``observable`` takes an (M, N) array of eigenvalue vectors and returns
    an (M,) array (complex allowed).  The grid is enlarged until the value
    is stable to ``rtol``.  Even beta is exact once the polynomial degree
    is resolved; general beta at N = 2 goes through the ordered-region
    rule, which absorbs the |Delta|^beta factor into a Gauss-Jacobi weight.
    """
    if N > 3:
        raise ValueError("quadrature backend supports N <= 3")
    if n0 is None:
        n0 = {1: 48, 2: 32, 3: 24}[N]
    if nmax is None:
        nmax = {1: 3200, 2: 520, 3: 130}[N]
    if N == 2 and not _even(beta):
        runner = lambda n: _ordered_pair_average(weight, beta, observable, n)
    elif N == 3 and not _even(beta) and weight[0] in ("hermite", "laguerre", "jacobi"):
        runner = lambda n: _ordered_triple_average(weight, beta, observable, n)
        n0, nmax = 24, 100
    else:
        runner = lambda n: _tensor_average(weight, N, beta, observable, n)
    prev = runner(n0)
    n = n0
    while n < nmax:
        n = min(2 * n, nmax)
        cur = runner(n)
        if abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureNotConverged(
        f"me_average did not stabilize (weight={weight}, N={N}, beta={beta})"
    )


def torus_trapezoid_average(N, beta, observable, weight_theta=None, m0=None, rtol=1e-9):
    """<observable> over CE_{beta,N}[w] by tensor trapezoid on theta grids.

    Exact (once the grid resolves the bandwidth) for even beta and
    trigonometric-polynomial integrands; otherwise doubled until stable.
    ``observable`` maps an (M, N) array of theta values in (-1/2, 1/2] to
    values; ``weight_theta`` likewise maps theta (M,) arrays to weights.
    """
    if m0 is None:
        m0 = 32

    def run(m):
        th1 = (np.arange(m) + 0.5) / m - 0.5
        grids = np.meshgrid(*([th1] * N), indexing="ij")
        th = np.stack([g.ravel() for g in grids], axis=-1)
        z = np.exp(2j * np.pi * th)
        wt = np.ones(len(th), dtype=complex)
        if weight_theta is not None:
            for i in range(N):
                wt = wt * weight_theta(th[:, i])
        for i in range(N):
            for j in range(i + 1, N):
                wt = wt * np.abs(z[:, j] - z[:, i]) ** beta
        num = np.sum(wt * observable(th))
        den = np.sum(wt)
        return num / den

    prev = run(m0)
    m = m0
    while m <= 1024:
        m = 2 * m
        cur = run(m)
        if abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureNotConverged("torus average did not stabilize")
