"""Standard vs. Newton-Wigner localization for the free lattice Klein-Gordon field."""

from ._validation import LatticeMismatchError, RegionError
from .gaussian import (CovarianceData, build_covariance, entanglement_entropy,
                       log_negativity, symplectic_eigenvalues)
from .lattice import (CauchyData, LatticeSpec, Region, apply_spectral, dispersion,
                      free_evolution, symplectic_form)
from .localization import (antilocality_defect, complex_rank, correlation_decay_rate,
                           nw_subspace_basis, smeared_nw_rank, standard_subspace_basis,
                           vacuum_re_correlation)
from .oneparticle import (OneParticleVector, complex_structure_J, evolve, inner, mu_inner,
                          nw_inverse, nw_map, verify_one_particle_structure)
from .weyl import (WeylWord, commutator_phase, number_expectation, product_state_defect,
                   schmidt_cyclicity, vacuum_expectation, weyl, weyl_adjoint, weyl_multiply)

__version__ = "0.1.0"

__all__ = [
    "LatticeMismatchError", "RegionError",
    "LatticeSpec", "CauchyData", "Region", "dispersion", "apply_spectral",
    "symplectic_form", "free_evolution",
    "OneParticleVector", "mu_inner", "complex_structure_J", "nw_map", "nw_inverse",
    "inner", "evolve", "verify_one_particle_structure",
    "standard_subspace_basis", "nw_subspace_basis", "complex_rank", "antilocality_defect",
    "smeared_nw_rank", "vacuum_re_correlation", "correlation_decay_rate",
    "WeylWord", "weyl", "weyl_multiply", "weyl_adjoint", "vacuum_expectation",
    "product_state_defect", "commutator_phase", "number_expectation", "schmidt_cyclicity",
    "CovarianceData", "build_covariance", "symplectic_eigenvalues", "entanglement_entropy",
    "log_negativity",
]
