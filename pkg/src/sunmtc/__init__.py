"""Exact genus-1 modular data and simple-current invariants for su(N) level k.

The package computes the (theta, S, T, C, zeta) modular datum of the su(N)
level-k categories, builds the cyclic-support Frobenius algebras admitted by
the effective center, evaluates their torus partition functions exactly, and
decides genus-1 reducibility; a masked exhaustive search enumerates all small
non-negative-integer modular invariants for cross-checking.
"""

from .invariants import (
    BudgetExceeded,
    CommutantReport,
    InvariantMatrix,
    NonSymmetricError,
    commutant,
    decompose,
    enumerate_integer_invariants,
)
from .liealg import (
    Weight,
    alcove_size,
    conformal_weight,
    conjugate,
    enumerate_alcove,
    inner_product,
    inverse_cartan,
)
from .modular import (
    InternalCheckError,
    ModularDatum,
    RationalPhase,
    RelationReport,
    datum_from_json,
    datum_to_json,
    modular_datum,
    s_matrix,
    theta_phases,
    twist,
    verify_relations,
    zeta,
)
from .schellekens import (
    ReducibilityReport,
    SchellekensAlgebra,
    SupportNotInEffectiveCenter,
    TorusPartitionFunction,
    build_algebra,
    character,
    is_trivial,
    reducibility_verdict,
    torus_partition_function,
)
from .simple_currents import (
    EffectiveCenter,
    SimpleCurrent,
    act,
    current_weight,
    effective_center,
    order,
    simple_current,
)

__version__ = "0.1.0"

__all__ = [
    "Weight",
    "alcove_size",
    "enumerate_alcove",
    "inverse_cartan",
    "inner_product",
    "conformal_weight",
    "conjugate",
    "RationalPhase",
    "ModularDatum",
    "RelationReport",
    "InternalCheckError",
    "twist",
    "theta_phases",
    "s_matrix",
    "zeta",
    "modular_datum",
    "verify_relations",
    "datum_to_json",
    "datum_from_json",
    "SimpleCurrent",
    "EffectiveCenter",
    "simple_current",
    "current_weight",
    "act",
    "order",
    "effective_center",
    "SchellekensAlgebra",
    "TorusPartitionFunction",
    "ReducibilityReport",
    "SupportNotInEffectiveCenter",
    "character",
    "build_algebra",
    "torus_partition_function",
    "is_trivial",
    "reducibility_verdict",
    "CommutantReport",
    "InvariantMatrix",
    "BudgetExceeded",
    "NonSymmetricError",
    "commutant",
    "decompose",
    "enumerate_integer_invariants",
    "__version__",
]
