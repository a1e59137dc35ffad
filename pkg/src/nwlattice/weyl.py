"""Weyl (CCR) words over the one-particle space and the quasi-free vacuum.

A word ``phase · W(f)`` is kept in reduced form; products use
``W(f) W(g) = e^{-i Im⟨f,g⟩/2} W(f+g)`` and the vacuum functional is
``⟨Ω, W(f) Ω⟩ = exp(-‖f‖²/4)``.  No Fock-space matrices are built: every
vacuum quantity reduces to one-particle inner products.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import LatticeMismatchError, check_nonempty, check_same_lattice
from .oneparticle import OneParticleVector, inner

__all__ = [
    "WeylWord", "weyl", "weyl_multiply", "weyl_adjoint", "vacuum_expectation",
    "product_state_defect", "commutator_phase", "number_expectation",
    "schmidt_cyclicity",
]


@dataclass(frozen=True, eq=False)
class WeylWord:
    """``phase · W(displacement)`` with ``|phase| = 1``."""

    phase: complex
    displacement: OneParticleVector

    def __post_init__(self):
        phase = complex(self.phase)
        if abs(abs(phase) - 1.0) > 1e-12:
            raise ValueError(f"phase must have unit modulus, got |phase| = {abs(phase)}")
        object.__setattr__(self, "phase", phase)

    @property
    def lattice(self):
        return self.displacement.lattice

    @classmethod
    def identity(cls, lattice):
        return cls(1.0, OneParticleVector.zeros(lattice))

    def __matmul__(self, other):
        return weyl_multiply(self, other)

    def allclose(self, other, atol=1e-12):
        check_same_lattice(self, other)
        return (abs(self.phase - other.phase) <= atol
                and np.allclose(self.displacement.amplitudes,
                                other.displacement.amplitudes, rtol=0, atol=atol))


def weyl(f):
    """The word ``W(f)`` with unit phase."""
    return WeylWord(1.0, f)


def weyl_multiply(w1, w2):
    check_same_lattice(w1, w2)
    f1, f2 = w1.displacement, w2.displacement
    phase = w1.phase * w2.phase * np.exp(-0.5j * inner(f1, f2).imag)
    # Renormalize so repeated products cannot drift off the unit circle.
    return WeylWord(phase / abs(phase), f1 + f2)


def weyl_adjoint(w):
    return WeylWord(w.phase.conjugate(), -w.displacement)


def vacuum_expectation(w):
    return complex(w.phase * np.exp(-0.25 * inner(w.displacement, w.displacement).real))


def product_state_defect(f, g):
    """``|⟨W(f)W(g)⟩ - ⟨W(f)⟩⟨W(g)⟩|`` in the vacuum."""
    wf, wg = weyl(f), weyl(g)
    joint = vacuum_expectation(weyl_multiply(wf, wg))
    return float(abs(joint - vacuum_expectation(wf) * vacuum_expectation(wg)))


def commutator_phase(f, g):
    """``Im⟨f, g⟩``, so that ``W(f)W(g) = e^{-i Im⟨f,g⟩} W(g)W(f)``."""
    return float(inner(f, g).imag)


def _orthonormal_span(vectors, rtol=None):
    """Orthonormal columns (unweighted) spanning the closed complex span of ``vectors``."""
    lat = vectors[0].lattice
    for v in vectors[1:]:
        if v.lattice != lat:
            raise LatticeMismatchError("vectors live on different lattices")
    cols = np.sqrt(lat.spacing) * np.column_stack([v.amplitudes for v in vectors])
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    if rtol is None:
        rtol = max(cols.shape) * np.finfo(float).eps
    if s.size == 0 or s[0] == 0:
        return u[:, :0]
    return u[:, s > rtol * s[0]]


def number_expectation(subspace, g, rtol=None):
    """Mean of ``N_E = Σ_i a⁺(f_i) a(f_i)`` in the coherent state ``W(g)Ω``.

    ``f_i`` runs over an orthonormal basis of the closed complex span of
    ``subspace``; the result is ``‖P_E g‖² / 2``.  Directions whose singular
    value falls below ``rtol * σ_max`` (default ``max(shape) * eps``) are
    treated as roundoff and dropped.
    """
    subspace = check_nonempty(subspace, "subspace")
    check_same_lattice(subspace[0], g)
    q = _orthonormal_span(subspace, rtol)
    coeffs = q.conj().T @ (np.sqrt(g.lattice.spacing) * g.amplitudes)
    return float(0.5 * np.vdot(coeffs, coeffs).real)


def schmidt_cyclicity(state, rtol=None):
    """Schmidt rank of a bipartite vector and whether it is cyclic for ``B(C^{d1}) ⊗ I``.

    ``state`` is the ``d1 × d2`` coefficient matrix. The orbit
    ``{(A ⊗ I)ψ}`` spans ``d1 · rank`` dimensions, so the vector is cyclic
    exactly when the Schmidt rank equals ``d2``.
    """
    psi = np.asarray(state, dtype=complex)
    if psi.ndim != 2 or min(psi.shape) < 1:
        raise ValueError(f"state must be a d1 x d2 matrix, got shape {psi.shape}")
    sv = np.linalg.svd(psi, compute_uv=False)
    if sv[0] == 0:
        raise ValueError("zero vector has no Schmidt decomposition")
    if rtol is None:
        rtol = max(psi.shape) * np.finfo(float).eps
    rank = int(np.count_nonzero(sv > rtol * sv[0]))
    return rank, rank == psi.shape[1]
