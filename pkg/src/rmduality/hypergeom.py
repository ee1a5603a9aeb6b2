"""Hypergeometric functions built on Jack polynomial sums.

The series runs degree-major over partitions:

    pFq(a; b; x) = sum_kappa (alpha^|kappa| / h'_kappa)
                   prod_i [a_i]_kappa / prod_j [b_j]_kappa * P_kappa(x)

A nonpositive-integer numerator parameter -N truncates support to
kappa_1 <= N (finite mode, exact).  Equal arguments take the principal
specialization fast path; general vectors go through the monomial
expansion.  Truncation stops after three consecutive degree shells fall
below the relative tail tolerance; the last shell mass is the reported
tail estimate.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .jack import jack_equal_args, jack_eval, jack_principal
from .partitions import gen_pochhammer, hook_product, partitions_of

__all__ = [
    "SeriesError",
    "DivergentSeries",
    "PoleInDenominator",
    "ArgumentOutOfDomain",
    "SeriesResult",
    "HypergeomSpec",
    "hyper_pfq",
    "f00_two_sets",
    "f01_two_sets",
    "euler_transform_2f1",
    "kummer_transform_1f1",
    "transform_2f1_argflip",
    "transform_2f0_to_1f1",
    "hyper_2f0",
    "integral_oracle",
]


class SeriesError(RuntimeError):
    pass


class DivergentSeries(SeriesError):
    pass


class PoleInDenominator(SeriesError):
    pass


class ArgumentOutOfDomain(ValueError):
    pass


@dataclass
class SeriesResult:
    value: complex
    trunc_weight: int
    tail_estimate: float
    exact: bool


@dataclass
class HypergeomSpec:
    numerator: tuple
    denominator: tuple
    alpha: float
    # argument: ("equal", t, p) | ("vector", x)
    argument: tuple
    max_weight: int = 60
    rel_tol: float = 1e-13

    @property
    def nvars(self):
        if self.argument[0] == "equal":
            return int(self.argument[2])
        return len(self.argument[1])

    def jack_value(self, kappa):
        if self.argument[0] == "equal":
            return jack_equal_args(kappa, self.alpha, self.argument[1], self.argument[2])
        return jack_eval(kappa, self.alpha, tuple(self.argument[1]))


def _neg_int(v):
    if isinstance(v, complex):
        if abs(v.imag) > 1e-12:
            return None
        v = v.real
    r = round(float(v))
    if r <= 0 and abs(v - r) < 1e-12:
        return -int(r)
    return None


def _finite_cap(numerator):
    caps = [cap for cap in (_neg_int(a) for a in numerator) if cap is not None]
    return min(caps) if caps else None


def _check_denominator(denominator, alpha, max_weight, nvars):
    for b in denominator:
        for kappa in _shell_iter(max_weight, nvars, None):
            if len(kappa) == 0:
                continue
            val = gen_pochhammer(b, kappa, alpha)
            if val == 0 or (isinstance(val, float) and abs(val) < 1e-300):
                raise PoleInDenominator(
                    f"denominator parameter {b} vanishes at kappa={kappa}"
                )
            break  # only the cheap first-shell guard per weight is needed


def _shell_iter(weight, nvars, cap):
    return partitions_of(weight, max_len=nvars, max_part=cap)


def _term(kappa, spec):
    alpha = spec.alpha
    k = sum(kappa)
    coeff = alpha**k / float(hook_product(kappa, alpha))
    for a in spec.numerator:
        coeff *= complex(gen_pochhammer(a, kappa, alpha))
    for b in spec.denominator:
        den = complex(gen_pochhammer(b, kappa, alpha))
        if den == 0:
            raise PoleInDenominator(f"[{b}]_kappa = 0 at kappa={kappa}")
        coeff /= den
    if coeff == 0:
        return 0.0
    return coeff * spec.jack_value(kappa)


def hyper_pfq(spec: HypergeomSpec) -> SeriesResult:
    nvars = spec.nvars
    cap = _finite_cap(spec.numerator)
    total = 0.0 + 0.0j
    shells = []
    max_w = spec.max_weight if cap is None else cap * nvars
    # p <= q series are entire; p = q+1 converges for max|x| < 1; only the
    # remaining regimes get the growth heuristic
    if spec.argument[0] == "equal":
        xmax = abs(spec.argument[1])
    else:
        xmax = max((abs(v) for v in spec.argument[1]), default=0.0)
    p_cnt, q_cnt = len(spec.numerator), len(spec.denominator)
    may_diverge = cap is None and (
        p_cnt > q_cnt + 1 or (p_cnt == q_cnt + 1 and xmax >= 1.0)
    )
    for w in range(max_w + 1):
        shell = 0.0 + 0.0j
        for kappa in _shell_iter(w, nvars, cap):
            shell += _term(kappa, spec)
        total += shell
        shells.append(abs(shell))
        if cap is None and w >= 3:
            scale = max(abs(total), 1.0)
            if all(s <= spec.rel_tol * scale for s in shells[-3:]):
                return SeriesResult(total, w, shells[-1], False)
            if (
                may_diverge
                and w > 8
                and shells[-1] > shells[-2] > shells[-3] > scale
            ):
                raise DivergentSeries(
                    f"partial sums growing at weight {w} (|shell|={shells[-1]:.3g})"
                )
    if cap is not None:
        return SeriesResult(total, max_w, 0.0, True)
    raise DivergentSeries(
        f"series not converged by max_weight={spec.max_weight} "
        f"(last shell {shells[-1]:.3g})"
    )


def _two_set_series(x, y, alpha, weight_fn, max_weight=60, rel_tol=1e-13):
    x = tuple(x)
    y = tuple(y)
    if len(x) != len(y):
        raise ValueError("two-set series needs equally long argument sets")
    N = len(x)
    total = 0.0 + 0.0j
    shells = []
    for w in range(max_weight + 1):
        shell = 0.0 + 0.0j
        for kappa in partitions_of(w, max_len=N):
            pr = float(jack_principal(kappa, alpha, N))
            term = (
                alpha**w
                / float(hook_product(kappa, alpha))
                * jack_eval(kappa, alpha, x)
                * jack_eval(kappa, alpha, y)
                / pr
            )
            term *= weight_fn(kappa)
            shell += term
        total += shell
        shells.append(abs(shell))
        if w >= 3:
            scale = max(abs(total), 1.0)
            if all(s <= rel_tol * scale for s in shells[-3:]):
                return SeriesResult(total, w, shells[-1], False)
    raise DivergentSeries(f"two-set series not converged (last shell {shells[-1]:.3g})")


def f00_two_sets(x, y, alpha, max_weight=60, rel_tol=1e-13):
    """0F0 in two sets of variables (HCIZ-type kernel)."""
    return _two_set_series(x, y, alpha, lambda kappa: 1.0, max_weight, rel_tol)


def f01_two_sets(u, x, y, alpha, max_weight=60, rel_tol=1e-13):
    """0F1 in two sets of variables; y = (1)^N reduces it to 0F1(u; x)."""

    def wf(kappa):
        den = complex(gen_pochhammer(u, kappa, alpha))
        if den == 0:
            raise PoleInDenominator(f"[{u}]_kappa = 0 at kappa={kappa}")
        return 1.0 / den

    return _two_set_series(x, y, alpha, wf, max_weight, rel_tol)


def f00_batch(xs, y, alpha, max_weight=150, rel_tol=1e-11, u=None):
    """0F0 (or 0F1 when ``u`` is given) two-set kernel over a batch.

    ``xs`` has shape (M, N); the partition loop is shared and the Jack
    polynomial of the first set is evaluated vectorized across the batch.
    """
    from .jack import monomial_sym

    xs = np.asarray(xs, dtype=complex)
    y = tuple(y)
    M, N = xs.shape
    total = np.zeros(M, dtype=complex)
    shell_hist = []
    for w in range(max_weight + 1):
        shell = np.zeros(M, dtype=complex)
        for kappa in partitions_of(w, max_len=N):
            pr = float(jack_principal(kappa, alpha, N))
            coeff = alpha**w / float(hook_product(kappa, alpha)) / pr
            coeff *= jack_eval(kappa, alpha, y)
            if u is not None:
                den = complex(gen_pochhammer(u, kappa, alpha))
                if den == 0:
                    raise PoleInDenominator(f"[{u}]_kappa = 0 at kappa={kappa}")
                coeff /= den
            if coeff == 0.0:
                continue
            from .jack import jack_expand

            pk = np.zeros(M, dtype=complex)
            for mu, cf in jack_expand(kappa, alpha, max_len=N).items():
                if len(mu) > N:
                    continue
                pk += float(cf) * monomial_sym(mu, xs)
            shell += coeff * pk
        total += shell
        shell_hist.append(np.max(np.abs(shell)))
        scale = max(np.max(np.abs(total)), 1.0)
        if w >= 3 and all(s <= rel_tol * scale for s in shell_hist[-3:]):
            return total
    raise DivergentSeries(
        f"batched two-set series not converged (last shell {shell_hist[-1]:.3g})"
    )


# ----------------------------------------------------------------------
# transformation identities
# ----------------------------------------------------------------------


def _equal_or_vector(argument):
    if argument[0] == "equal":
        t, p = argument[1], argument[2]
        return [t] * int(p)
    return list(argument[1])


def euler_transform_2f1(a, b, c, alpha, argument, **kw):
    """Euler-transformed 2F1: prod (1-t_j)^{-a} 2F1(a, c-b; c; -t/(1-t))."""
    ts = _equal_or_vector(argument)
    if any(abs(t) >= 1 for t in ts):
        raise ArgumentOutOfDomain("Euler transformation needs all |t_j| < 1")
    pref = np.prod([(1 - t) ** (-a) for t in ts])
    flipped = tuple(-t / (1 - t) for t in ts)
    res = hyper_pfq(
        HypergeomSpec((a, c - b), (c,), alpha, ("vector", flipped), **kw)
    )
    return SeriesResult(pref * res.value, res.trunc_weight, res.tail_estimate, res.exact)


def kummer_transform_1f1(a, c, alpha, argument, **kw):
    """Kummer-transformed 1F1: prod e^{t_j} 1F1(c-a; c; -t)."""
    ts = _equal_or_vector(argument)
    pref = np.prod([np.exp(t) for t in ts])
    res = hyper_pfq(
        HypergeomSpec((c - a,), (c,), alpha, ("vector", tuple(-t for t in ts)), **kw)
    )
    return SeriesResult(pref * res.value, res.trunc_weight, res.tail_estimate, res.exact)


def transform_2f1_argflip(N, b, c, alpha, argument, **kw):
    """Argument-flip transform of a terminating 2F1.

    Evaluates 2F1(-N, b; -N + b + 1 + (m-1)/alpha - c; 1-t) and fixes the
    proportionality constant by matching at t = (1)^m, where the flipped
    side is exactly 1.
    """
    ts = _equal_or_vector(argument)
    m = len(ts)
    if _neg_int(-float(N)) is None and N <= 0:
        raise ArgumentOutOfDomain("first numerator parameter must be -N, N >= 1")
    c2 = -N + b + 1 + (m - 1) / alpha - c
    flipped = tuple(1 - t for t in ts)
    res = hyper_pfq(HypergeomSpec((-N, b), (c2,), alpha, ("vector", flipped), **kw))
    anchor = hyper_pfq(
        HypergeomSpec((-N, b), (c,), alpha, ("equal", 1.0, m), **kw)
    )
    return SeriesResult(
        res.value * anchor.value, res.trunc_weight, res.tail_estimate, res.exact
    )


def transform_2f0_to_1f1(a, b, alpha, x, **kw):
    """2F0 at reciprocal arguments re-expressed through 1F1.

    For positive integer a and b > a,
    2F0(-a, 1+b-a+(n-1)/alpha; 1/x) is proportional to
    (prod x_j)^{-a} 1F1(-a; -b; -x); the constant comes from the
    x -> infinity limit, where the 2F0 side tends to 1.
    """
    if int(a) != a or a <= 0:
        raise ArgumentOutOfDomain("a must be a positive integer")
    if not (b > a):
        raise ArgumentOutOfDomain("requires b > a")
    x = tuple(x)
    if any(v == 0 for v in x):
        raise ArgumentOutOfDomain("arguments must be nonzero")
    n = len(x)
    res = hyper_pfq(
        HypergeomSpec((-a,), (-b,), alpha, ("vector", tuple(-v for v in x)), **kw)
    )
    # normalize by the top coefficient: P_{(a)^n}(-x) = (-1)^{an} prod x^a,
    # so (prod x)^{-a} 1F1 / lead -> 1 as x -> infinity, matching the 2F0 side
    top = (a,) * n
    lead = (
        alpha ** (a * n)
        / float(hook_product(top, alpha))
        * complex(gen_pochhammer(-a, top, alpha))
        / complex(gen_pochhammer(-b, top, alpha))
        * (-1) ** (a * n)
    )
    value = res.value / lead * np.prod([complex(v) ** (-a) for v in x])
    return SeriesResult(value, res.trunc_weight, res.tail_estimate, res.exact)


def hyper_2f0(a1, a2, alpha, x, **kw):
    """2F0 series (finite when a1 is a nonpositive integer)."""
    return hyper_pfq(HypergeomSpec((a1, a2), (), alpha, ("vector", tuple(x)), **kw))


# ----------------------------------------------------------------------
# torus integral oracles
# ----------------------------------------------------------------------


def integral_oracle(form, params, n=1, m0=64, rtol=1e-9):
    """Deterministic torus-quadrature forms of low-order series.

    Normalization follows the anchor convention: the integral is divided
    by its value at argument zero, matching the series constant term.
    """
    if n > 3:
        raise ArgumentOutOfDomain("oracle quadrature limited to n <= 3")

    def trapz(f, m):
        th1 = (np.arange(m) + 0.5) / m - 0.5
        if n == 1:
            return np.mean(f(th1[:, None]))
        grids = np.meshgrid(*([th1] * n), indexing="ij")
        th = np.stack([g.ravel() for g in grids], axis=-1)
        return np.mean(f(th))

    if form == "circular1F1":
        a, b, t = params["a"], params["b"], params["t"]

        def f(th, tt):
            z = np.exp(2j * np.pi * th[:, 0])
            return (
                np.exp(1j * np.pi * th[:, 0] * (a - b))
                * np.abs(1 + z) ** (a + b)
                * np.exp(-tt * z)
            )

        run = lambda m: trapz(lambda th: f(th, t), m) / trapz(lambda th: f(th, 0.0), m)
    elif form == "circular2F1":
        a, b, r, t = params["a"], params["b"], params["r"], params["t"]

        def f(th, tt):
            z = np.exp(2j * np.pi * th[:, 0])
            return (
                np.exp(1j * np.pi * th[:, 0] * (a - b))
                * np.abs(1 + z) ** (a + b)
                * (1 + tt * z) ** (-r)
            )

        run = lambda m: trapz(lambda th: f(th, t), m) / trapz(lambda th: f(th, 0.0), m)
    elif form == "bessel0F1":
        c, beta, u = params["c"], params["beta"], params["u"]
        if int(c) != c or c <= 0:
            raise ArgumentOutOfDomain("unit-circle contour needs positive integer c")

        def f(th, uu):
            z = np.exp(2j * np.pi * th)
            val = np.prod(z ** (c - 1) * np.exp(uu * z + 1 / z), axis=1)
            for i in range(n):
                for j in range(i + 1, n):
                    val = val * np.abs(z[:, j] - z[:, i]) ** (4.0 / beta)
            return val

        run = lambda m: trapz(lambda th: f(th, u), m) / trapz(lambda th: f(th, 0.0), m)
    elif form == "cw1a":
        a, b, alpha, t = params["a"], params["b"], params["alpha"], params["t"]

        def f(th, tt):
            z = np.exp(2j * np.pi * th)
            val = np.prod(
                np.exp(1j * np.pi * th * (a - b))
                * np.abs(1 + z) ** (a + b)
                * np.exp(-tt * z),
                axis=1,
            )
            for i in range(n):
                for j in range(i + 1, n):
                    val = val * np.abs(z[:, j] - z[:, i]) ** (2.0 / alpha)
            return val

        run = lambda m: trapz(lambda th: f(th, t), m) / trapz(lambda th: f(th, 0.0), m)
    else:
        raise ValueError(f"unknown oracle form {form}")

    prev = run(m0)
    m = m0
    while m <= 4096:
        m = 2 * m
        cur = run(m)
        if abs(cur - prev) <= rtol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise SeriesError("integral oracle did not converge under grid doubling")
