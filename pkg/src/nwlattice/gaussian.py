"""Second moments of the vacuum restricted to a family of field quadratures.

For quadrature vectors ``v_a`` the field operators ``Φ(v_a)`` have
symmetrized vacuum covariance ``M_ab = Re⟨v_a, v_b⟩ / 2`` and commutators
``[Φ(v_a), Φ(v_b)] = i Im⟨v_a, v_b⟩``.  With ``Sigma_ab = Im⟨v_a, v_b⟩`` the
symplectic (Williamson) eigenvalues are the moduli of the eigenvalues of
``Sigma^{-1} M``; every one is ``>= 1/2`` and all equal ``1/2`` exactly when
the restricted state is pure.  Logarithms are natural (nats).
"""

from dataclasses import dataclass

import numpy as np

from ._validation import LatticeMismatchError, check_nonempty

__all__ = [
    "CovarianceData", "quadratures", "symplectic_gram_schmidt", "build_covariance",
    "symplectic_eigenvalues", "entanglement_entropy", "log_negativity",
]

NU_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CovarianceData:
    """Covariance ``M``, commutator matrix ``Sigma`` and Williamson spectrum ``nu``."""

    M: np.ndarray
    Sigma: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        M, S = np.asarray(self.M, dtype=float), np.asarray(self.Sigma, dtype=float)
        if M.shape != S.shape or M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
            raise ValueError(f"M and Sigma must be matching 2n x 2n, got {M.shape}, {S.shape}")
        scale = max(1.0, np.abs(M).max(), np.abs(S).max())
        if np.abs(M - M.T).max() > 1e-12 * scale:
            raise ValueError("M is not symmetric")
        if np.abs(S + S.T).max() > 1e-12 * scale:
            raise ValueError("Sigma is not antisymmetric")
        nu = np.sort(np.asarray(self.nu, dtype=float))
        if nu.shape != (M.shape[0] // 2,):
            raise ValueError(f"expected {M.shape[0] // 2} symplectic eigenvalues")
        if np.any(nu < 0.5 - NU_TOL):
            raise ValueError(f"uncertainty relation violated: min nu = {nu.min()!r}")
        for arr in (M, S, nu):
            arr.setflags(write=False)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "Sigma", S)
        object.__setattr__(self, "nu", nu)

    @property
    def basis_size(self):
        return self.M.shape[0]

    @property
    def is_pure(self):
        return bool(np.all(self.nu <= 0.5 + NU_TOL))


def quadratures(modes, real_span=False):
    """Quadrature directions of ``modes``.

    Complex modes ``e`` contribute the pair ``(e, i·e)``; with
    ``real_span=True`` the vectors already are real directions (e.g. the
    ``S(G)`` spanning set) and are returned unchanged.
    """
    modes = check_nonempty(modes, "modes")
    lat = modes[0].lattice
    for v in modes[1:]:
        if v.lattice != lat:
            raise LatticeMismatchError("modes live on different lattices")
    if real_span:
        return list(modes)
    out = []
    for e in modes:
        out.extend([e, 1j * e])
    return out


def _gram(vectors):
    lat = vectors[0].lattice
    V = np.sqrt(lat.spacing) * np.column_stack([v.amplitudes for v in vectors])
    return V.conj().T @ V


def covariance_matrices(vectors):
    """``(M, Sigma)`` for quadrature vectors, without any change of basis."""
    G = _gram(list(vectors))
    M = 0.5 * G.real
    S = G.imag
    return 0.5 * (M + M.T), 0.5 * (S - S.T)


def symplectic_gram_schmidt(Sigma, tol=1e-10):
    """Real ``T`` with ``T.T @ Sigma @ T`` canonical (blocks ``[[0, 1], [-1, 0]]``).

    Pairs are chosen greedily by largest remaining pairing. Raises
    ``ValueError`` when ``Sigma`` is singular, i.e. the directions do not form
    a nondegenerate set of canonical pairs.
    """
    Sigma = np.asarray(Sigma, dtype=float)
    n2 = Sigma.shape[0]
    if n2 % 2:
        raise ValueError("an odd number of quadratures cannot be symplectically nondegenerate")
    scale = max(np.abs(Sigma).max(), 1e-300)
    remaining = [np.eye(n2)[:, i] for i in range(n2)]
    cols = []
    while remaining:
        X = np.column_stack(remaining)
        W = X.T @ Sigma @ X
        i, j = np.unravel_index(np.argmax(np.abs(np.triu(W, 1))), W.shape)
        if abs(W[i, j]) <= tol * scale:
            raise ValueError("singular Sigma: quadratures are symplectically degenerate")
        q = remaining[i]
        p = remaining[j] / W[i, j]
        cols.extend([q, p])
        rest = []
        for k, x in enumerate(remaining):
            if k in (i, j):
                continue
            x = x + (x @ Sigma @ q) * p - (x @ Sigma @ p) * q
            rest.append(x)
        remaining = rest
    return np.column_stack(cols)


def symplectic_eigenvalues(M, Sigma):
    ev = np.linalg.eigvals(np.linalg.solve(Sigma, M))
    mags = np.sort(np.abs(ev))
    return mags[::2]


def _check_independent(modes, real_span):
    lat = modes[0].lattice
    cols = np.column_stack([v.amplitudes for v in modes])
    if real_span:
        cols = np.vstack([cols.real, cols.imag])
    sv = np.linalg.svd(cols, compute_uv=False)
    tol = max(cols.shape) * np.finfo(float).eps * (sv[0] if sv.size else 0.0)
    if sv.size < len(modes) or np.count_nonzero(sv > tol) < len(modes):
        kind = "real" if real_span else "complex"
        raise ValueError(f"modes are not {kind}-linearly independent")
    return lat


def _canonical(modes, real_span):
    _check_independent(modes, real_span)
    quads = quadratures(modes, real_span)
    M, S = covariance_matrices(quads)
    T = symplectic_gram_schmidt(S)
    return T.T @ M @ T, T.T @ S @ T, quads, T


def build_covariance(modes, real_span=False):
    """Vacuum covariance data of the quadratures of ``modes`` in a canonical basis.

    Complex modes must be complex-linearly independent; with
    ``real_span=True`` the given vectors are real quadrature directions and
    must be real-linearly independent with nondegenerate pairings.
    """
    modes = check_nonempty(modes, "modes")
    M, S, _, _ = _canonical(modes, real_span)
    M, S = 0.5 * (M + M.T), 0.5 * (S - S.T)
    return CovarianceData(M, S, symplectic_eigenvalues(M, S))


def _clamp(nu):
    nu = np.asarray(nu, dtype=float).copy()
    nu[(nu >= 0.5 - NU_TOL) & (nu < 0.5)] = 0.5
    return nu


def entanglement_entropy(cov):
    """Von Neumann entropy (nats) of the Gaussian state with spectrum ``cov.nu``."""
    nu = cov.nu if isinstance(cov, CovarianceData) else np.asarray(cov, dtype=float)
    if np.any(nu < 0.5 - NU_TOL):
        raise ValueError(f"symplectic eigenvalue below 1/2: {nu.min()!r}")
    nu = _clamp(nu)
    plus = (nu + 0.5) * np.log(nu + 0.5)
    excess = nu - 0.5
    minus = np.zeros_like(nu)
    pos = excess > 0
    minus[pos] = excess[pos] * np.log(excess[pos])
    return float(max(0.0, np.sum(plus - minus)))


def log_negativity(modes_A, modes_B, real_span=False, return_spectrum=False):
    """Logarithmic negativity of the vacuum across the two mode families.

    Each side is put in a canonical basis, the momentum-like quadrature of
    every ``B`` pair is sign-flipped (partial transposition), and
    ``Σ max(0, -ln 2ν̃)`` is returned.  The two families must commute.
    """
    modes_A = check_nonempty(modes_A, "modes_A")
    modes_B = check_nonempty(modes_B, "modes_B")
    _check_independent(list(modes_A) + list(modes_B), real_span)
    quads = []
    for side in (modes_A, modes_B):
        _, _, q, T = _canonical(side, real_span)
        Q = np.column_stack([v.amplitudes for v in q]) @ T
        quads.append(Q)
    na = quads[0].shape[1]
    lat = modes_A[0].lattice
    V = np.sqrt(lat.spacing) * np.hstack(quads)
    G = V.conj().T @ V
    M, S = 0.5 * G.real, G.imag
    M, S = 0.5 * (M + M.T), 0.5 * (S - S.T)
    cross = np.abs(S[:na, na:]).max()
    if cross > 1e-10 * max(1.0, np.abs(S).max()):
        raise ValueError(f"mode families do not commute (max cross pairing {cross:.3g})")
    flip = np.ones(S.shape[0])
    flip[na + 1::2] = -1.0
    Mt = flip[:, None] * M * flip[None, :]
    nu_t = _clamp(symplectic_eigenvalues(Mt, S))
    ln = float(np.sum(np.maximum(0.0, -np.log(2.0 * nu_t))))
    return (ln, nu_t) if return_spectrum else ln
