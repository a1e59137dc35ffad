"""scikit-learn style wrappers so the lattice maps compose with pipelines.

``NewtonWignerTransformer`` maps rows of stacked Cauchy data ``[u0 | u1]``
to complex Newton-Wigner amplitudes and back. ``RegionDiagnostics`` maps
rows of site masks to per-region features (entropy, largest symplectic
eigenvalue, complex rank) under a chosen localization scheme.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .gaussian import build_covariance, entanglement_entropy
from .lattice import LatticeSpec, Region, dispersion
from .localization import complex_rank, nw_subspace_basis, standard_subspace_basis

__all__ = ["NewtonWignerTransformer", "RegionDiagnostics"]


def _rowwise_spectral(lattice, exponent, X):
    w = dispersion(lattice) ** exponent
    return np.fft.ifft(w[None, :] * np.fft.fft(X, axis=1), axis=1).real


class NewtonWignerTransformer(TransformerMixin, BaseEstimator):
    """Apply ``K`` row by row: ``(n_samples, 2N)`` real to ``(n_samples, N)`` complex.

    Parameters
    ----------
    n_sites : int or None
        Lattice size. ``None`` infers it from the number of input columns.
    spacing, mass : float
        Lattice spacing ``a`` and field mass ``m``.
    """

    def __init__(self, n_sites=None, spacing=1.0, mass=1.0):
        self.n_sites = n_sites
        self.spacing = spacing
        self.mass = mass

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if X.shape[1] % 2:
            raise ValueError(f"expected an even number of columns [u0 | u1], got {X.shape[1]}")
        n = X.shape[1] // 2 if self.n_sites is None else self.n_sites
        if X.shape[1] != 2 * n:
            raise ValueError(f"expected {2 * n} columns for n_sites={n}, got {X.shape[1]}")
        self.lattice_ = LatticeSpec(n, self.spacing, self.mass)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "lattice_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        n = self.lattice_.n_sites
        u0, u1 = X[:, :n], X[:, n:]
        return (_rowwise_spectral(self.lattice_, 0.5, u0)
                + 1j * _rowwise_spectral(self.lattice_, -0.5, u1)) / np.sqrt(2.0)

    def inverse_transform(self, Z):
        check_is_fitted(self, "lattice_")
        Z = np.asarray(Z, dtype=complex)
        if Z.ndim != 2 or Z.shape[1] != self.lattice_.n_sites:
            raise ValueError(f"expected shape (n_samples, {self.lattice_.n_sites}), "
                             f"got {Z.shape}")
        u0 = np.sqrt(2.0) * _rowwise_spectral(self.lattice_, -0.5, Z.real)
        u1 = np.sqrt(2.0) * _rowwise_spectral(self.lattice_, 0.5, Z.imag)
        return np.hstack([u0, u1])


class RegionDiagnostics(TransformerMixin, BaseEstimator):
    """Features of vacuum restrictions to regions given as rows of 0/1 site masks.

    Output columns: entanglement entropy (nats), largest symplectic
    eigenvalue, complex rank of the region's spanning set.
    """

    def __init__(self, spacing=1.0, mass=1.0, scheme="standard", rtol=None):
        self.spacing = spacing
        self.mass = mass
        self.scheme = scheme
        self.rtol = rtol

    def fit(self, X, y=None):
        X = check_array(X)
        if self.scheme not in ("standard", "nw"):
            raise ValueError(f"scheme must be 'standard' or 'nw', got {self.scheme!r}")
        self.lattice_ = LatticeSpec(X.shape[1], self.spacing, self.mass)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "lattice_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        basis = standard_subspace_basis if self.scheme == "standard" else nw_subspace_basis
        out = np.empty((X.shape[0], 3))
        for i, row in enumerate(X):
            region = Region.from_mask(row != 0)
            vecs = basis(self.lattice_, region)
            cov = build_covariance(vecs, real_span=self.scheme == "standard")
            out[i] = (entanglement_entropy(cov), cov.nu.max(), complex_rank(vecs, self.rtol))
        return out
