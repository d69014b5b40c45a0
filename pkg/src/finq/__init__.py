"""Finite quantum mechanics on angular-momentum representations and Lie-algebra tooling."""
from .canonical import CanonicalOscillator, canonical_levels, compare_spectra, truncated_canonical_ops
from .clifford import (
    CliffordRep,
    build_clifford,
    clifford_from_signature,
    dynamical_rep,
    generator_digest,
    stationary_rep,
)
from .dynamics import (
    ConstantLedger,
    commutator_table,
    defining_rep_so31,
    dynamical_constraint,
    jacobi_constraint_chain,
    make_ledger,
    physical_generators,
    singular_ledger,
    singular_limit_deviation,
    time_spectrum_profile,
)
from .errors import FinqError, NumericalError, ResourceError, ShapeError, ValidationError
from .lie import (
    StructureTensor,
    a_line_rep,
    d_line_rep,
    flexed_oscillator_algebra,
    jacobi_residual,
    killing_report,
)
from .operators import Spectrum, commutator, expectation_and_variance, hermitian_eigensystem
from .oscillator import (
    OscillatorModel,
    QuantumConstants,
    classify_regime,
    compare_perturbative,
    medium_spectrum,
    uncertainty_report,
    variational_ground_bound,
)
from .su2 import AngularMomentumRep, build_angular_momentum

__version__ = "0.1.0"

__all__ = [
    "AngularMomentumRep",
    "CanonicalOscillator",
    "CliffordRep",
    "ConstantLedger",
    "FinqError",
    "NumericalError",
    "OscillatorModel",
    "QuantumConstants",
    "ResourceError",
    "ShapeError",
    "Spectrum",
    "StructureTensor",
    "ValidationError",
    "a_line_rep",
    "build_angular_momentum",
    "build_clifford",
    "canonical_levels",
    "classify_regime",
    "clifford_from_signature",
    "commutator",
    "commutator_table",
    "compare_perturbative",
    "compare_spectra",
    "d_line_rep",
    "defining_rep_so31",
    "dynamical_constraint",
    "dynamical_rep",
    "expectation_and_variance",
    "flexed_oscillator_algebra",
    "generator_digest",
    "hermitian_eigensystem",
    "jacobi_constraint_chain",
    "jacobi_residual",
    "killing_report",
    "make_ledger",
    "medium_spectrum",
    "physical_generators",
    "singular_ledger",
    "singular_limit_deviation",
    "stationary_rep",
    "time_spectrum_profile",
    "truncated_canonical_ops",
    "uncertainty_report",
    "variational_ground_bound",
]
