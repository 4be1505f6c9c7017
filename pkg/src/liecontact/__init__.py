"""Exact rational workbench for contact, symplectic and metric Lie algebras."""

from .contact import (EXISTS, NONE, DecisionOutcome, SearchConfig, contact_scalar,
                      decide_contact_exists, decide_exact_symplectic_exists, differential,
                      is_contact, is_contact_by_rank, reeb)
from .curvature import (Metric, curvature_tensor, flat_decomposition, heintze_negative_possible,
                        is_einstein, is_flat, is_K_contact, levi_civita, ricci, sectional)
from .liealg import InvalidAlgebra, LieAlgebra, Subspace, validate
from .orthogonal import find_biinvariant_metric, is_orthogonal

__version__ = "0.1.0"

__all__ = [
    "EXISTS", "NONE", "DecisionOutcome", "SearchConfig", "contact_scalar",
    "decide_contact_exists", "decide_exact_symplectic_exists", "differential", "is_contact",
    "is_contact_by_rank", "reeb", "Metric", "curvature_tensor", "flat_decomposition",
    "heintze_negative_possible", "is_einstein", "is_flat", "is_K_contact", "levi_civita",
    "ricci", "sectional", "InvalidAlgebra", "LieAlgebra", "Subspace", "validate",
    "find_biinvariant_metric", "is_orthogonal",
]
