"""Conductor submonoids, zero-sum monoids and their factorization invariants."""
from .budget import Budget, default_budget
from .conductor import IdealExtensionMonoid, VectorSubmonoid, diagonal_monoid
from .errors import (
    BadParameters,
    BoundAttained,
    BudgetExceeded,
    CondmonError,
    GroupTooSmall,
    SpecError,
    VerificationFailed,
)
from .factor import (
    FactorizationEngine,
    InvariantReport,
    analyze,
    catenary,
    factorizations,
    invariant_report,
    length_set,
)
from .group import FiniteAbelianGroup, GroupElement
from .kernels import BACKEND
from .zerosum import FIotaMonoid, FPhiMonoid, GSequence, LabeledPrimes, ZeroSumContext, davenport

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BadParameters",
    "BoundAttained",
    "Budget",
    "BudgetExceeded",
    "CondmonError",
    "FIotaMonoid",
    "FPhiMonoid",
    "FactorizationEngine",
    "FiniteAbelianGroup",
    "GSequence",
    "GroupElement",
    "GroupTooSmall",
    "IdealExtensionMonoid",
    "InvariantReport",
    "LabeledPrimes",
    "SpecError",
    "VectorSubmonoid",
    "VerificationFailed",
    "ZeroSumContext",
    "analyze",
    "catenary",
    "davenport",
    "default_budget",
    "diagonal_monoid",
    "factorizations",
    "invariant_report",
    "length_set",
    "__version__",
]
