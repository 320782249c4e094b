"""Exact computation in free products of groups.

Core objects:

- factor groups (finite tables, cyclic groups, infinite cyclic, free) and
  the two-factor free product with alternating normal forms;
- conjugacy decision and canonical class keys via cyclic reduction;
- growth tables (ball sizes and conjugacy-class counts), necklace-indexed
  word families, and growth-rate estimates;
- Laurent polynomial arithmetic with non-unit certificates;
- exact rational lower bounds and growth classification for closed
  geodesics on connected sums.

The :mod:`freeprod.service` module exposes everything over HTTP and
:mod:`freeprod.cli` is a thin command-line client for it.
"""

__version__ = "0.1.0"

from .bounds import (
    Classification,
    GrowthClass,
    ManifoldDescriptor,
    MetricParams,
    Summand,
    classify_connected_sum,
    classify_three_manifold,
    exponential_lower_bound,
    polynomial_lower_bound,
)
from .factors import (
    FactorGroup,
    FactorGroupError,
    FiniteCyclicGroup,
    FiniteTableGroup,
    FreeFactorGroup,
    InfiniteCyclicGroup,
)
from .growth import (
    GrowthTable,
    count_conjugacy_classes,
    enumerate_elements,
    gm_family,
    growth_rate_estimate,
    necklace_count,
    verify_dihedral_relation,
    verify_free_subgroup,
)
from .laurent import LaurentPoly, check_u_minus_one_times_q, laurent_multiply
from .normal_forms import IDENTITY, Conjugation, FreeProduct, Letter

__all__ = [
    "Classification",
    "Conjugation",
    "FactorGroup",
    "FactorGroupError",
    "FiniteCyclicGroup",
    "FiniteTableGroup",
    "FreeFactorGroup",
    "FreeProduct",
    "GrowthClass",
    "GrowthTable",
    "IDENTITY",
    "InfiniteCyclicGroup",
    "LaurentPoly",
    "Letter",
    "ManifoldDescriptor",
    "MetricParams",
    "Summand",
    "check_u_minus_one_times_q",
    "classify_connected_sum",
    "classify_three_manifold",
    "count_conjugacy_classes",
    "enumerate_elements",
    "exponential_lower_bound",
    "gm_family",
    "growth_rate_estimate",
    "laurent_multiply",
    "necklace_count",
    "polynomial_lower_bound",
    "verify_dihedral_relation",
    "verify_free_subgroup",
    "__version__",
]
