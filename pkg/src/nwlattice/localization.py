"""Standard vs. Newton-Wigner subspaces of regions, and the diagnostics that separate them.

``S(G)`` (standard) is the real-linear image under ``K`` of Cauchy data
supported in ``G``; ``L²(G)`` (Newton-Wigner) is the complex subspace of
wavefunctions vanishing outside ``G``.  Vacuum cyclicity for the algebra
generated by ``{W(f) : f ∈ E}`` is equivalent to density of the complex span
of ``E``; at finite ``N`` that becomes "complex rank equals ``N``".
"""

import math

import numpy as np

from ._validation import LatticeMismatchError, RegionError, check_nonempty
from .lattice import CauchyData, Region, spectral_matrix
from .oneparticle import OneParticleVector, evolve, mu_inner, nw_map

__all__ = [
    "standard_subspace_basis", "nw_subspace_basis", "complex_rank",
    "antilocality_defect", "smeared_nw_rank", "default_times",
    "vacuum_re_correlation", "correlation_decay_rate",
    "complex_linearity_residuals", "default_rtol",
]


def _check_region(lattice, region, allow_full=True):
    if region.n_sites != lattice.n_sites:
        raise LatticeMismatchError(
            f"region defined on {region.n_sites} sites, lattice has {lattice.n_sites}")
    if len(region) == 0:
        raise RegionError("region must be nonempty")
    if not allow_full and len(region) == lattice.n_sites:
        raise RegionError("region must have a nonempty complement")


def default_rtol(n_sites):
    return 1e-8 * math.sqrt(n_sites)


def standard_subspace_basis(lattice, region):
    """``[K(δ_j ⊕ 0) for j in G] + [K(0 ⊕ δ_j) for j in G]``: a real spanning set of ``S(G)``."""
    _check_region(lattice, region)
    field_part = [nw_map(CauchyData.delta(lattice, j, 0)) for j in region]
    momentum_part = [nw_map(CauchyData.delta(lattice, j, 1)) for j in region]
    return field_part + momentum_part


def nw_subspace_basis(lattice, region):
    """Orthonormal basis ``a^{-1/2} δ_j`` of ``L²(G)``."""
    _check_region(lattice, region)
    return [OneParticleVector.site(lattice, j) for j in region]


def _columns(vectors):
    vectors = check_nonempty(vectors, "vectors")
    lat = vectors[0].lattice
    for v in vectors[1:]:
        if v.lattice != lat:
            raise LatticeMismatchError("vectors live on different lattices")
    return lat, np.column_stack([v.amplitudes for v in vectors])


def complex_rank_matrix(columns, spacing=1.0, rtol=None):
    n = columns.shape[0]
    if rtol is None:
        rtol = default_rtol(n)
    sv = np.linalg.svd(np.sqrt(spacing) * columns, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.count_nonzero(sv > rtol * sv[0]))


def complex_rank(vectors, rtol=None):
    """Number of singular values of the column matrix above ``rtol * σ_max``.

    ``rtol`` defaults to ``1e-8 * sqrt(N)``.
    """
    lat, cols = _columns(vectors)
    return complex_rank_matrix(cols, lat.spacing, rtol)


def singular_values(vectors):
    """Singular values (descending) of the weighted column matrix of ``vectors``."""
    lat, cols = _columns(vectors)
    return np.linalg.svd(np.sqrt(lat.spacing) * cols, compute_uv=False)


def antilocality_defect(spec, p, region):
    """Smallest singular value of the block of ``H**p`` mapping ``G`` into ``G'``.

    For ``|G| <= N/2`` this is ``min ‖(1 - χ_G) H^p f‖`` over unit ``f``
    supported in ``G``.  For larger ``G`` the block is wide and has a kernel by
    dimension count alone; its nonzero spectrum is that of the transposed
    block (``H^p`` is symmetric), so the value then witnesses the same
    property for the smaller side ``G'``.  Zero means some localized vector
    stays localized under ``H^p``.
    """
    _check_region(spec, region, allow_full=False)
    hp = spectral_matrix(spec, p)
    outside = region.complement().sites
    block = hp[np.ix_(outside, region.sites)]
    return float(np.linalg.svd(block, compute_uv=False).min())


def default_times(n_sites, region_size, half_width):
    """``ceil(N/|G|) + 1`` uniform times strictly inside ``(-half_width, half_width)``."""
    count = math.ceil(n_sites / region_size) + 1
    return [-half_width + 2.0 * half_width * (i + 1) / (count + 1) for i in range(count)]


def smeared_vectors(lattice, region, times):
    times = check_nonempty(times, "times")
    basis = nw_subspace_basis(lattice, region)
    return [evolve(e, t) for t in times for e in basis]


def smeared_nw_rank(lattice, region, times, rtol=None):
    """Complex rank of ``{U_t e_j : j ∈ G, t ∈ times}``."""
    return complex_rank(smeared_vectors(lattice, region, times), rtol)


def vacuum_re_correlation(f, g):
    """``Re⟨Kf, Kg⟩ = µ(f, g)`` for Cauchy data with disjoint supports."""
    if not f.support.isdisjoint(g.support):
        raise RegionError("f and g must have disjoint supports")
    return mu_inner(f, g)


def correlation_decay_rate(spec, separations, site=0):
    """Fit ``|µ(δ_site ⊕ 0, δ_{site+d} ⊕ 0)| ≈ C e^{-κ a d}``; return ``(κ, values)``.

    Separations beyond ``N/2`` are rejected since they wrap around the ring.
    """
    seps = np.asarray(list(separations), dtype=int)
    if seps.size < 2:
        raise ValueError("need at least two separations to fit a rate")
    if np.any(seps <= 0) or np.any(seps > spec.n_sites // 2):
        raise ValueError(f"separations must lie in [1, {spec.n_sites // 2}]")
    f = CauchyData.delta(spec, site, 0)
    values = np.array([
        vacuum_re_correlation(f, CauchyData.delta(spec, (site + int(d)) % spec.n_sites, 0))
        for d in seps])
    if np.any(values == 0):
        raise ValueError("correlation vanished exactly; cannot fit a log-linear rate")
    slope, _ = np.polyfit(spec.spacing * seps, np.log(np.abs(values)), 1)
    return float(-slope), values


def complex_linearity_residuals(lattice, region):
    """Relative residual of projecting ``i·f`` onto the real span of the ``S(G)`` basis.

    One value per basis vector. Zero would mean ``S(G)`` is closed under
    multiplication by ``i`` (equivalently under ``J``).
    """
    basis = standard_subspace_basis(lattice, region)
    cols = np.column_stack([v.amplitudes for v in basis])
    real_cols = np.vstack([cols.real, cols.imag])
    out = []
    for v in basis:
        target = 1j * v.amplitudes
        rhs = np.concatenate([target.real, target.imag])
        coef, *_ = np.linalg.lstsq(real_cols, rhs, rcond=None)
        out.append(np.linalg.norm(real_cols @ coef - rhs) / np.linalg.norm(rhs))
    return np.array(out)


def as_region(lattice, sites):
    """Coerce ``Region`` / iterable of sites into a :class:`Region` on ``lattice``."""
    if isinstance(sites, Region):
        return sites
    return Region(lattice.n_sites, list(sites))
