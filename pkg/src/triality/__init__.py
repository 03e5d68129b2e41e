"""Exact workbench for unital involutive nonassociative algebras.

Algebras are presented by structure constants over exact scalars (rationals
or a prime field), certified through the triality identity suites, and fed
into the graded Lie algebra construction.
"""

from .algebra import Algebra, SHSplit, restricted_algebra, tensor_product, zorn
from .catalog import CATALOG_NAMES, CatalogEntry, catalog
from .fields import DEFAULT_PRIME, FieldError, PrimeField, QQ, RationalField
from .identities import (
    TrialityOps,
    a0_subalgebra,
    identity_suite,
    is_generalized_structurable,
    is_pre_structurable,
    is_structurable,
)
from .linalg import Mat, kernel, random_vector, rref, solve_in_span, span_basis
from .verdicts import IdentityReport, Verdict, Witness

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "CatalogEntry",
    "CATALOG_NAMES",
    "DEFAULT_PRIME",
    "FieldError",
    "IdentityReport",
    "Mat",
    "PrimeField",
    "QQ",
    "RationalField",
    "SHSplit",
    "TrialityOps",
    "Verdict",
    "Witness",
    "a0_subalgebra",
    "catalog",
    "identity_suite",
    "is_generalized_structurable",
    "is_pre_structurable",
    "is_structurable",
    "kernel",
    "random_vector",
    "restricted_algebra",
    "rref",
    "solve_in_span",
    "span_basis",
    "tensor_product",
    "zorn",
]
