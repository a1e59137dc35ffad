"""Periodic 1-D lattice regularization of the classical Klein-Gordon system.

The phase space is pairs ``u0 ⊕ u1`` of real site values (field and conjugate
momentum). ``H = (m^2 - Δ)^{1/2}`` with the nearest-neighbour periodic
Laplacian ``Δ`` is diagonal in the discrete Fourier basis, so every function
of ``H`` is applied exactly by FFT.  All L²-type sums carry the lattice
measure ``a`` so that they approach continuum integrals as ``a → 0``.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import (LatticeMismatchError, RegionError, as_real_vector,
                          check_same_lattice)

__all__ = [
    "LatticeSpec", "CauchyData", "Region",
    "dispersion", "apply_spectral", "symplectic_form", "free_evolution",
]


@dataclass(frozen=True)
class LatticeSpec:
    """Periodic chain of ``n_sites`` sites with spacing ``spacing`` and field mass ``mass``."""

    n_sites: int
    spacing: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if isinstance(self.n_sites, bool) or int(self.n_sites) != self.n_sites:
            raise ValueError(f"n_sites must be an integer, got {self.n_sites!r}")
        object.__setattr__(self, "n_sites", int(self.n_sites))
        object.__setattr__(self, "spacing", float(self.spacing))
        object.__setattr__(self, "mass", float(self.mass))
        if self.n_sites < 2:
            raise ValueError(f"n_sites must be >= 2, got {self.n_sites}")
        if not (np.isfinite(self.spacing) and self.spacing > 0):
            raise ValueError(f"spacing must be > 0, got {self.spacing}")
        # H^{-1} must exist: the massless case is rejected outright.
        if not (np.isfinite(self.mass) and self.mass > 0):
            raise ValueError(f"mass must be > 0, got {self.mass}")

    @property
    def boundary(self):
        return "periodic"

    @property
    def max_frequency(self):
        return float(np.sqrt(self.mass ** 2 + 4.0 / self.spacing ** 2))


def dispersion(spec):
    """Return ``ω_k = sqrt(m² + (4/a²) sin²(πk/N))`` for ``k = 0..N-1``."""
    k = np.arange(spec.n_sites)
    return np.sqrt(spec.mass ** 2
                   + (4.0 / spec.spacing ** 2) * np.sin(np.pi * k / spec.n_sites) ** 2)


def apply_spectral(spec, exponent, v):
    """Apply ``H**exponent`` to a (real or complex) site vector by FFT diagonalization.

    The result is complex; callers that know the input is real take ``.real``
    (``ω_k`` is even in ``k``, so real inputs map to real outputs).
    """
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != spec.n_sites:
        raise LatticeMismatchError(
            f"vector has shape {v.shape}, expected ({spec.n_sites},)")
    if exponent == 0:
        return v.astype(complex)
    return np.fft.ifft(dispersion(spec) ** exponent * np.fft.fft(v))


def spectral_matrix(spec, exponent):
    """Dense real symmetric matrix of ``H**exponent``."""
    eye = np.eye(spec.n_sites)
    w = dispersion(spec) ** exponent
    return np.fft.ifft(w[:, None] * np.fft.fft(eye, axis=0), axis=0).real


def _real_spectral(spec, exponent, v):
    return apply_spectral(spec, exponent, v).real


@dataclass(frozen=True, eq=False)
class CauchyData:
    """A point ``u0 ⊕ u1`` of the classical phase space on ``lattice``."""

    lattice: LatticeSpec
    u0: np.ndarray
    u1: np.ndarray

    def __post_init__(self):
        n = self.lattice.n_sites
        object.__setattr__(self, "u0", as_real_vector(self.u0, n, "u0"))
        object.__setattr__(self, "u1", as_real_vector(self.u1, n, "u1"))

    @classmethod
    def zeros(cls, lattice):
        return cls(lattice, np.zeros(lattice.n_sites), np.zeros(lattice.n_sites))

    @classmethod
    def delta(cls, lattice, site, component=0):
        """Unit value at ``site`` in the field (component 0) or momentum (1) slot."""
        if component not in (0, 1):
            raise ValueError("component must be 0 (field) or 1 (momentum)")
        e = np.zeros(lattice.n_sites)
        e[site] = 1.0
        z = np.zeros(lattice.n_sites)
        return cls(lattice, e, z) if component == 0 else cls(lattice, z, e)

    @property
    def support(self):
        return frozenset(np.flatnonzero((self.u0 != 0) | (self.u1 != 0)).tolist())

    def as_array(self):
        return np.concatenate([self.u0, self.u1])

    def __add__(self, other):
        check_same_lattice(self, other)
        return CauchyData(self.lattice, self.u0 + other.u0, self.u1 + other.u1)

    def __sub__(self, other):
        check_same_lattice(self, other)
        return CauchyData(self.lattice, self.u0 - other.u0, self.u1 - other.u1)

    def __neg__(self):
        return CauchyData(self.lattice, -self.u0, -self.u1)

    def __mul__(self, scalar):
        scalar = float(scalar)
        return CauchyData(self.lattice, scalar * self.u0, scalar * self.u1)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CauchyData):
            return NotImplemented
        return (self.lattice == other.lattice and np.array_equal(self.u0, other.u0)
                and np.array_equal(self.u1, other.u1))

    __hash__ = None

    def allclose(self, other, atol=1e-10):
        check_same_lattice(self, other)
        return (np.allclose(self.u0, other.u0, rtol=0, atol=atol)
                and np.allclose(self.u1, other.u1, rtol=0, atol=atol))


@dataclass(frozen=True)
class Region:
    """A subset of lattice sites ``{0, ..., n_sites-1}``."""

    n_sites: int
    sites: tuple

    def __post_init__(self):
        sites = tuple(sorted({int(s) for s in self.sites}))
        if sites and (sites[0] < 0 or sites[-1] >= self.n_sites):
            raise RegionError(f"sites {sites} out of range for {self.n_sites} sites")
        object.__setattr__(self, "sites", sites)

    @classmethod
    def interval(cls, n_sites, start, length):
        """Contiguous block of ``length`` sites from ``start``, wrapping periodically."""
        if not 0 <= length <= n_sites:
            raise RegionError(f"length {length} outside [0, {n_sites}]")
        return cls(n_sites, [(start + i) % n_sites for i in range(length)])

    @classmethod
    def from_mask(cls, mask):
        mask = np.asarray(mask, dtype=bool)
        return cls(mask.shape[0], np.flatnonzero(mask).tolist())

    @property
    def mask(self):
        m = np.zeros(self.n_sites, dtype=bool)
        m[list(self.sites)] = True
        return m

    def complement(self):
        return Region(self.n_sites, sorted(set(range(self.n_sites)) - set(self.sites)))

    def isdisjoint(self, other):
        return set(self.sites).isdisjoint(other.sites)

    def issubset(self, other):
        return set(self.sites) <= set(other.sites)

    def __len__(self):
        return len(self.sites)

    def __iter__(self):
        return iter(self.sites)

    def __contains__(self, site):
        return site in self.sites

    def describe(self):
        """Compact text form used in CSV rows, e.g. ``0-7`` or ``0-3;10``."""
        if not self.sites:
            return ""
        runs, start, prev = [], self.sites[0], self.sites[0]
        for s in self.sites[1:]:
            if s != prev + 1:
                runs.append((start, prev))
                start = s
            prev = s
        runs.append((start, prev))
        return ";".join(f"{a}" if a == b else f"{a}-{b}" for a, b in runs)


def symplectic_form(f, g):
    """``σ(f, g) = a Σ_j (u0_j v1_j - u1_j v0_j)``."""
    lat = check_same_lattice(f, g)
    return float(lat.spacing * (np.dot(f.u0, g.u1) - np.dot(f.u1, g.u0)))


def free_evolution(spec, f, t):
    """Map time-zero Cauchy data to time-``t`` data under the lattice Klein-Gordon flow."""
    if f.lattice != spec:
        raise LatticeMismatchError(f"data lives on {f.lattice}, not {spec}")
    if t == 0:
        return f
    w = dispersion(spec)
    c, s = np.cos(w * t), np.sin(w * t)
    f0, f1 = np.fft.fft(f.u0), np.fft.fft(f.u1)
    g0 = np.fft.ifft(c * f0 + (s / w) * f1).real
    g1 = np.fft.ifft(-w * s * f0 + c * f1).real
    return CauchyData(spec, g0, g1)
