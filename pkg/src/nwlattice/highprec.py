"""Multiprecision rank certification for exponentially ill-conditioned spans.

Anti-locality makes the tails of ``H^{±1/2} δ_j`` and ``e^{-itH} δ_j`` decay
exponentially, so the smallest singular values of the standard and smeared
spanning sets fall far below double-precision roundoff even when the exact
rank is full.  Here the same vectors are rebuilt with ``mpmath`` at ``dps``
decimal digits and a singular value counts only if it clears
``10**(-dps/2)`` relative to the largest, leaving half the working digits as
guard against accumulated roundoff.
"""

import mpmath

from .localization import _check_region

__all__ = ["spectral_matrix_mp", "singular_values_mp", "certified_rank",
           "certified_standard_rank", "certified_smeared_nw_rank"]


def _frequencies(spec):
    n, a, m = spec.n_sites, mpmath.mpf(spec.spacing), mpmath.mpf(spec.mass)
    return [mpmath.sqrt(m ** 2 + (4 / a ** 2) * mpmath.sin(mpmath.pi * k / n) ** 2)
            for k in range(n)]


def _circulant(spec, multiplier):
    """Dense matrix of the Fourier multiplier ``multiplier[k]`` (a circulant)."""
    n = spec.n_sites
    kernel = []
    for d in range(n):
        kernel.append(mpmath.fsum(multiplier[k] * mpmath.expjpi(mpmath.mpf(2 * k * d) / n)
                                  for k in range(n)) / n)
    out = mpmath.matrix(n, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = kernel[(i - j) % n]
    return out


def spectral_matrix_mp(spec, exponent, dps=60):
    with mpmath.workdps(dps):
        p = mpmath.mpf(exponent)
        return _circulant(spec, [w ** p for w in _frequencies(spec)])


def singular_values_mp(columns, dps):
    with mpmath.workdps(dps):
        sv = mpmath.svd_c(columns, compute_uv=False)
        return sorted((sv[i] for i in range(len(sv))), reverse=True)


def certified_rank(columns, dps, rtol=None):
    """Rank of an ``mpmath`` matrix counted against ``rtol`` (default ``10**(-dps/2)``)."""
    with mpmath.workdps(dps):
        if rtol is None:
            rtol = mpmath.mpf(10) ** (-(dps // 2))
        sv = singular_values_mp(columns, dps)
        if not sv or sv[0] == 0:
            return 0
        return sum(1 for s in sv if s > rtol * sv[0])


def certified_standard_rank(spec, region, dps=60, rtol=None):
    """Exact-arithmetic complex rank of the ``S(G)`` spanning set, certified at ``dps`` digits."""
    _check_region(spec, region)
    with mpmath.workdps(dps):
        half = spectral_matrix_mp(spec, mpmath.mpf(1) / 2, dps)
        minus_half = spectral_matrix_mp(spec, -mpmath.mpf(1) / 2, dps)
        n, g = spec.n_sites, len(region)
        cols = mpmath.matrix(n, 2 * g)
        for c, j in enumerate(region):
            for i in range(n):
                cols[i, c] = half[i, j]
                cols[i, g + c] = 1j * minus_half[i, j]
        return certified_rank(cols, dps, rtol)


def certified_smeared_nw_rank(spec, region, times, dps=120, rtol=None):
    """Exact-arithmetic complex rank of ``{U_t e_j}``, certified at ``dps`` digits."""
    _check_region(spec, region)
    times = list(times)
    if not times:
        raise ValueError("times must be nonempty")
    with mpmath.workdps(dps):
        omega = _frequencies(spec)
        n = spec.n_sites
        cols = mpmath.matrix(n, len(times) * len(region))
        c = 0
        for t in times:
            # Times are taken as exact decimals of their text form.
            tt = mpmath.mpf(repr(float(t)))
            prop = _circulant(spec, [mpmath.expj(-w * tt) for w in omega])
            for j in region:
                for i in range(n):
                    cols[i, c] = prop[i, j]
                c += 1
        return certified_rank(cols, dps, rtol)
