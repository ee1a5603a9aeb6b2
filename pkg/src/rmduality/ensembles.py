"""Random-matrix samplers for every ensemble family the dualities reference.

All sampling goes through ``numpy.random.Generator`` seeded with the
counter-based Philox bit generator; seeds are split with
``SeedSequence.spawn`` so parallel shards are reproducible.

Scale conventions are explicit.  Gaussian families carry ``gauss_c``, the
coefficient in the eigenvalue weight ``exp(-c lam^2)``; Laguerre families
carry ``(a, s)`` for ``x^a exp(-s x)``; Jacobi ``(a1, a2)`` on (0, 1).
Each dense constructor below is calibrated so the stated weight is exact
(checked by the second-moment oracles in the tests).
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EnsembleSpec",
    "UnsupportedBeta",
    "make_rng",
    "spawn_rngs",
    "haar_unitary",
    "sample_matrix",
    "sample_eigs_batch",
    "write_samples",
]


class UnsupportedBeta(ValueError):
    pass


@dataclass(frozen=True)
class EnsembleSpec:
    """Family tag + (beta, N, parameters, scale convention)."""

    family: str
    N: int
    beta: float | None = None
    params: dict = field(default_factory=dict)

    def with_params(self, **kw):
        p = dict(self.params)
        p.update(kw)
        return EnsembleSpec(self.family, self.N, self.beta, p)


def make_rng(seed):
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def spawn_rngs(seed, n):
    seqs = np.random.SeedSequence(seed).spawn(n)
    return [np.random.Generator(np.random.Philox(seq)) for seq in seqs]


# ----------------------------------------------------------------------
# building blocks
# ----------------------------------------------------------------------


def _cgauss(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _quat_embed(z, w):
    """Embed quaternion blocks: entries z, w of shape (..., N, M)."""
    top = np.concatenate([z, w], axis=-1)
    bot = np.concatenate([-np.conj(w), np.conj(z)], axis=-1)
    out = np.concatenate([top, bot], axis=-2)
    # reorder to interleaved 2x2 blocks
    n, m = z.shape[-2], z.shape[-1]
    idx_r = np.arange(2 * n).reshape(2, n).T.ravel()
    idx_c = np.arange(2 * m).reshape(2, m).T.ravel()
    return out[..., idx_r, :][..., :, idx_c]


def ginibre(rng, N, kind, batch=()):
    """Standard Ginibre matrix: real, complex, or quaternion (2N x 2N)."""
    if kind == "R":
        return rng.standard_normal(batch + (N, N))
    if kind == "C":
        return _cgauss(rng, batch + (N, N))
    if kind == "Q":
        z = _cgauss(rng, batch + (N, N))
        w = _cgauss(rng, batch + (N, N))
        return _quat_embed(z, w)
    raise ValueError(kind)


def rect_gaussian(rng, n, N, kind, batch=()):
    """n x N standard Gaussian block (quaternion embeds to 2n x 2N)."""
    if kind == "R":
        return rng.standard_normal(batch + (n, N))
    if kind == "C":
        return _cgauss(rng, batch + (n, N))
    if kind == "Q":
        z = _cgauss(rng, batch + (n, N))
        w = _cgauss(rng, batch + (n, N))
        return _quat_embed(z, w)
    raise ValueError(kind)


def hermitize(X):
    return (X + np.conj(np.swapaxes(X, -1, -2))) / 2


_KIND = {1: "R", 2: "C", 4: "Q"}


_GAUSS_C0 = {1: 0.5, 2: 1.0, 4: 1.0}


def gaussian_invariant(rng, N, beta, gauss_c=1.0, batch=()):
    """Hermitian class-beta matrix with eigenvalue weight exp(-c lam^2).

    The raw symmetrized-Ginibre constructions carry c0 = 1/2 (beta = 1)
    and c0 = 1 (beta = 2, 4); scaling to the target c multiplies the
    matrix by sqrt(c0/c).
    """
    beta = int(beta)
    if beta not in _KIND:
        raise UnsupportedBeta(f"dense Gaussian sampling needs beta in 1,2,4, got {beta}")
    H = hermitize(ginibre(rng, N, _KIND[beta], batch))
    c0 = _GAUSS_C0[beta]
    if gauss_c != c0:
        H = H * np.sqrt(c0 / gauss_c)
    return H


def dedup_quaternion_eigs(vals):
    """Keep one copy of each doubly degenerate eigenvalue (sorted input)."""
    return vals[..., ::2]


def haar_unitary(group, N, rng):
    """Haar element of O(N), U(N), or Sp(N) (quaternion, embedded 2N x 2N).

    O and U use QR of a Ginibre matrix with the R-diagonal phase (sign)
    correction; Sp uses quaternion Gram-Schmidt in the complex embedding,
    which produces a positive-real R-diagonal directly.
    """
    if group == "U":
        Z = _cgauss(rng, (N, N))
        Q, R = np.linalg.qr(Z)
        d = np.diagonal(R)
        return Q * (d / np.abs(d))
    if group == "O":
        Z = rng.standard_normal((N, N))
        Q, R = np.linalg.qr(Z)
        return Q * np.sign(np.diagonal(R))
    if group == "Sp":
        M = ginibre(rng, N, "Q")
        J = np.kron(np.eye(N), np.array([[0.0, 1.0], [-1.0, 0.0]]))
        cols = []
        for j in range(N):
            v = M[:, 2 * j].astype(complex)
            for u in cols:
                v = v - u * (np.conj(u) @ v)
            v = v / np.linalg.norm(v)
            vd = J @ np.conj(v)
            cols.extend([v, vd])
        return np.stack(cols, axis=1)
    raise ValueError(group)


# ----------------------------------------------------------------------
# family dispatch
# ----------------------------------------------------------------------


def _laguerre_wishart(rng, spec, batch):
    """Eigenvalues with weight x^a e^{-s x} via Wishart construction."""
    beta = int(spec.beta)
    N = spec.N
    a = spec.params.get("a", 0.0)
    s = spec.params.get("s", 1.0)
    n_float = (a + 1) * 2 / beta + N - 1
    n = int(round(n_float))
    if abs(n - n_float) > 1e-9 or n < N:
        raise ValueError(
            f"Laguerre a={a} not matrix-realizable at beta={beta}; use MCMC"
        )
    kind = _KIND[beta]
    Z = rect_gaussian(rng, n, N, kind, batch)
    W = np.conj(np.swapaxes(Z, -1, -2)) @ Z
    vals = np.linalg.eigvalsh(W)
    if beta == 4:
        vals = dedup_quaternion_eigs(vals)
    r = {1: 0.5, 2: 1.0, 4: 1.0}[beta]
    return r * vals / s


def _jacobi_double_wishart(rng, spec, batch):
    beta = int(spec.beta)
    N = spec.N
    a1 = spec.params.get("a1", 0.0)
    a2 = spec.params.get("a2", 0.0)
    kind = _KIND[beta]

    def block_size(a):
        nf = (a + 1) * 2 / beta + N - 1
        n = int(round(nf))
        if abs(n - nf) > 1e-9 or n < N:
            raise ValueError(
                f"Jacobi (a1,a2)=({a1},{a2}) not matrix-realizable at beta={beta}"
            )
        return n

    n1, n2 = block_size(a1), block_size(a2)
    Z1 = rect_gaussian(rng, n1, N, kind, batch)
    Z2 = rect_gaussian(rng, n2, N, kind, batch)
    A = np.conj(np.swapaxes(Z1, -1, -2)) @ Z1
    B = np.conj(np.swapaxes(Z2, -1, -2)) @ Z2
    vals = np.real(
        np.array(
            [
                np.sort(np.linalg.eigvals(np.linalg.solve(Ai + Bi, Ai)))
                for Ai, Bi in zip(
                    A.reshape((-1,) + A.shape[-2:]), B.reshape((-1,) + B.shape[-2:])
                )
            ]
        )
    ).reshape(batch + (A.shape[-1],))
    if beta == 4:
        vals = dedup_quaternion_eigs(vals)
    return vals


def _circular_eigs(rng, spec, batch):
    beta = int(spec.beta)
    N = spec.N
    out = []
    total = int(np.prod(batch)) if batch else 1
    for _ in range(total):
        if beta == 2:
            U = haar_unitary("U", N, rng)
        elif beta == 1:
            V = haar_unitary("U", N, rng)
            U = V.T @ V
        elif beta == 4:
            V = haar_unitary("U", 2 * N, rng)
            J = np.kron(np.eye(N), np.array([[0.0, 1.0], [-1.0, 0.0]]))
            VR = J @ V.T @ J.T
            U = VR @ V
        else:
            raise UnsupportedBeta("dense circular sampling needs beta in 1,2,4")
        ang = np.angle(np.linalg.eigvals(U)) / (2 * np.pi)
        ang = np.sort(ang)
        if beta == 4:
            ang = ang[::2]
        out.append(ang)
    arr = np.array(out)
    return arr.reshape(batch + (N,)) if batch else arr[0]


def _wigner_entry_draws(rng, kappa4, shape):
    """Symmetric entry law with m2 = 1/2 and fourth cumulant kappa4."""
    if kappa4 == 0.0:
        return rng.standard_normal(shape) / np.sqrt(2)
    if kappa4 < -0.5:
        raise ValueError("two-point mixture needs kappa4 >= -1/2")
    c2 = 2 * kappa4 + 1.5
    c = np.sqrt(c2)
    q = 0.5 / c2
    u = rng.random(shape)
    sgn = np.where(rng.random(shape) < 0.5, 1.0, -1.0)
    return np.where(u < q, c * sgn, 0.0)


def wigner_custom(rng, N, kappa4, batch=()):
    """Hermitian Wigner matrix H = Htilde / sqrt(2), two-point entry law."""
    re = _wigner_entry_draws(rng, kappa4, batch + (N, N))
    im = _wigner_entry_draws(rng, kappa4, batch + (N, N))
    X = re + 1j * im
    H = np.zeros(batch + (N, N), dtype=complex)
    iu = np.triu_indices(N, 1)
    H[..., iu[0], iu[1]] = X[..., iu[0], iu[1]]
    H = H + np.conj(np.swapaxes(H, -1, -2))
    d = np.sqrt(2) * _wigner_entry_draws(rng, kappa4, batch + (N,))
    H[..., np.arange(N), np.arange(N)] = d
    return H / np.sqrt(2)


def _sourced_gaussian_eigs(rng, spec, batch):
    """ME_{beta,N}[exp(-lam^2); mu]: weight exp(-lam^2) times 0F0(2 lam; mu)."""
    beta = int(spec.beta)
    N = spec.N
    mu = np.asarray(spec.params.get("mu", np.zeros(N)), dtype=float)
    H = gaussian_invariant(rng, N, beta, gauss_c=beta / 2.0, batch=batch)
    shift = np.sqrt(2.0 / beta) * mu
    if beta == 4:
        H0 = np.diag(np.repeat(shift, 2))
    else:
        H0 = np.diag(shift)
    G = (H + H0) / np.sqrt(2)
    vals = np.linalg.eigvalsh(G) * np.sqrt(beta)
    if beta == 4:
        vals = dedup_quaternion_eigs(vals)
    return vals


def _sourced_chiral_eigs(rng, spec, batch):
    """ME_{beta,N}[lam^a exp(-lam); mu] with a = beta*(n-N+1)/2 - 1."""
    beta = int(spec.beta)
    N = spec.N
    n = spec.params["n"]
    mu = np.asarray(spec.params.get("mu", np.zeros(N)), dtype=float)
    kind = _KIND[beta]
    r = {1: 0.5, 2: 1.0, 4: 1.0}[beta]
    sv = np.sqrt(mu / r)
    Z = rect_gaussian(rng, n, N, kind, batch)
    if kind == "Q":
        Z0 = np.zeros((2 * n, 2 * N))
        for i in range(N):
            Z0[2 * i, 2 * i] = sv[i]
            Z0[2 * i + 1, 2 * i + 1] = sv[i]
    else:
        Z0 = np.zeros((n, N))
        for i in range(N):
            Z0[i, i] = sv[i]
    Y = Z + Z0
    W = np.conj(np.swapaxes(Y, -1, -2)) @ Y
    vals = np.linalg.eigvalsh(W)
    if beta == 4:
        vals = dedup_quaternion_eigs(vals)
    return r * vals


def sample_matrix(spec, rng, batch=()):
    """One matrix sample (or a batch) for a dense-matrix family."""
    fam = spec.family
    N = spec.N
    p = spec.params
    if fam == "GaussianBeta":
        return gaussian_invariant(rng, N, spec.beta, p.get("gauss_c", 1.0), batch)
    if fam == "WignerCustom":
        return wigner_custom(rng, N, p.get("kappa4", 0.0), batch)
    if fam == "GinibreR":
        return ginibre(rng, N, "R", batch)
    if fam == "GinibreC":
        return ginibre(rng, N, "C", batch)
    if fam == "GinibreQ":
        return ginibre(rng, N, "Q", batch)
    if fam == "ChiralGinibre":
        return rect_gaussian(rng, p["n"], N, _KIND[int(spec.beta)], batch)
    if fam.startswith("TruncUnitary"):
        kind = fam[-1]
        K = p["K"]
        group = {"R": "O", "C": "U", "Q": "Sp"}[kind]
        mult = 2 if kind == "Q" else 1
        if batch:
            return np.stack(
                [
                    haar_unitary(group, N + K, rng)[: mult * N, : mult * N]
                    for _ in range(int(np.prod(batch)))
                ]
            ).reshape(batch + (mult * N, mult * N))
        return haar_unitary(group, N + K, rng)[: mult * N, : mult * N]
    if fam.startswith("Spherical"):
        kind = fam[-1]
        K = p.get("K", 0)
        total = int(np.prod(batch)) if batch else 1
        out = []
        for _ in range(total):
            G = rect_gaussian(rng, N + K, N, kind)
            X = ginibre(rng, N, kind)
            GG = np.conj(G.T) @ G
            w, V = np.linalg.eigh(GG)
            inv_sqrt = (V * (1 / np.sqrt(w))) @ np.conj(V.T)
            out.append(inv_sqrt @ X)
        arr = np.stack(out)
        return arr.reshape(batch + arr.shape[-2:]) if batch else arr[0]
    if fam == "HaarGroupO":
        return haar_unitary("O", N, rng)
    if fam == "HaarGroupU":
        return haar_unitary("U", N, rng)
    if fam == "HaarGroupSp":
        return haar_unitary("Sp", N, rng)
    if fam == "GaussSymC":
        # exp(-Tr XX^dag / 2) in this package's Ginibre normalization:
        # offdiag CN(0,1), diag CN(0,2); calibrated against the quaternion
        # Ginibre pair product at N = 1
        Z = _cgauss(rng, batch + (N, N))
        return (Z + np.swapaxes(Z, -1, -2)) / np.sqrt(2)
    if fam == "GaussAntiC":
        # exp(-Tr XX^dag / 2): offdiag CN(0,1)
        Z = _cgauss(rng, batch + (N, N))
        return (Z - np.swapaxes(Z, -1, -2)) / np.sqrt(2)
    if fam in ("SphSymC", "SphAntiC"):
        return _spherical_sym_metropolis(rng, spec, batch)
    raise ValueError(f"no dense sampler for family {fam}")


def _spherical_sym_metropolis(
    rng, spec, batch, burn_in=300, thin=6, step=0.35
):
    """Entrywise Metropolis for density det(1 + X X^dag)^{-(N+K)}.

    One chain, burn-in then thinned draws; the chain state is symmetric
    (antisymmetric) complex throughout.
    """
    N = spec.N
    K = spec.params["K"]
    sym = spec.family == "SphSymC"
    expo = N + K
    eye = np.eye(N)

    def logdens(X):
        _, ld = np.linalg.slogdet(eye + X @ np.conj(X.T))
        return -expo * ld

    X = _cgauss(rng, (N, N)) * 0.3
    X = (X + X.T) / 2 if sym else (X - X.T) / 2
    ld = logdens(X)
    pairs = [(i, j) for i in range(N) for j in (range(i, N) if sym else range(i + 1, N))]

    def sweep():
        nonlocal X, ld
        for i, j in pairs:
            prop = X.copy()
            dz = step * (rng.standard_normal() + 1j * rng.standard_normal())
            prop[i, j] += dz
            if sym:
                if i != j:
                    prop[j, i] = prop[i, j]
            else:
                prop[j, i] = -prop[i, j]
            lp = logdens(prop)
            if np.log(rng.random()) < lp - ld:
                X, ld = prop, lp

    for _ in range(burn_in):
        sweep()
    total = int(np.prod(batch)) if batch else 1
    out = []
    for _ in range(total):
        for _ in range(thin):
            sweep()
        out.append(X.copy())
    arr = np.stack(out)
    return arr.reshape(batch + arr.shape[-2:]) if batch else arr[0]


def sample_eigs_batch(spec, rng, count):
    """(count, N) eigenvalue samples for families with direct constructions."""
    fam = spec.family
    batch = (count,)
    if fam == "GaussianBeta":
        H = sample_matrix(spec, rng, batch)
        vals = np.linalg.eigvalsh(H)
        return dedup_quaternion_eigs(vals) if int(spec.beta) == 4 else vals
    if fam == "LaguerreBeta":
        return _laguerre_wishart(rng, spec, batch)
    if fam == "JacobiBeta":
        return _jacobi_double_wishart(rng, spec, batch)
    if fam == "CircularBeta":
        return _circular_eigs(rng, spec, batch)
    if fam == "SourcedGaussian":
        return _sourced_gaussian_eigs(rng, spec, batch)
    if fam == "SourcedChiral":
        return _sourced_chiral_eigs(rng, spec, batch)
    if fam == "ChiralGinibre":
        Z = sample_matrix(spec, rng, batch)
        W = np.conj(np.swapaxes(Z, -1, -2)) @ Z
        vals = np.linalg.eigvalsh(W)
        if int(spec.beta) == 4:
            vals = dedup_quaternion_eigs(vals)
        return {1: 0.5, 2: 1.0, 4: 1.0}[int(spec.beta)] * vals
    if fam == "WignerCustom":
        return np.linalg.eigvalsh(sample_matrix(spec, rng, batch))
    raise ValueError(f"no direct eigenvalue sampler for {fam}")


def write_samples(path, spec, seed, samples):
    """Dump samples one line per draw, comma-separated eigenvalues."""
    header = f"# family={spec.family} N={spec.N} beta={spec.beta} params={spec.params} seed={seed}"
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in samples:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
