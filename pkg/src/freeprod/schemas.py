"""Pydantic models for the JSON surfaces: group specs, manifold descriptors,
and the service request bodies.

A group spec file looks like::

    {
      "schema": "freeprod-group/1",
      "label": "Z2 * Z3",
      "factors": [
        {"kind": "finite_cyclic", "n": 2, "letter": "a"},
        {"kind": "finite_cyclic", "n": 3, "letter": "b"}
      ]
    }

Factor kinds: ``finite_cyclic`` (order n, optional generator exponents,
default [1]), ``finite_table`` (element names, n x n id table, generators
by name or id), ``infinite_cyclic`` (one fixed generator) and ``free``
(rank, optional generator names).  Positional defaults: factor 1 uses
letter ``a`` / ``t`` / names ``x1..``, factor 2 uses ``b`` / ``u`` /
``y1..``.

A manifold descriptor is either a prime decomposition (summand list with
fundamental-group classes) or a two-sided connected-sum description; the
``type`` field discriminates.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Annotated

from .bounds import ManifoldDescriptor, Summand
from .factors import (
    FactorGroup,
    FactorGroupError,
    FiniteCyclicGroup,
    FiniteTableGroup,
    FreeFactorGroup,
    InfiniteCyclicGroup,
)
from .laurent import LaurentPoly
from .normal_forms import FreeProduct

GROUP_SCHEMA = "freeprod-group/1"
MANIFOLD_SCHEMA = "freeprod-manifold/1"

RationalInput = Union[int, str, float]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# -- group specs -----------------------------------------------------------


class FiniteCyclicSpec(StrictModel):
    kind: Literal["finite_cyclic"]
    n: int = Field(ge=2, le=100_000)
    letter: Optional[str] = None
    generators: Optional[list[int]] = Field(None, min_length=1)


class FiniteTableSpec(StrictModel):
    kind: Literal["finite_table"]
    elements: list[str] = Field(min_length=1, max_length=512)
    table: list[list[int]]
    generators: list[Union[int, str]] = Field(min_length=1)


class InfiniteCyclicSpec(StrictModel):
    kind: Literal["infinite_cyclic"]
    letter: Optional[str] = None


class FreeSpec(StrictModel):
    kind: Literal["free"]
    rank: int = Field(ge=1, le=26)
    names: Optional[list[str]] = None


FactorSpec = Annotated[
    Union[FiniteCyclicSpec, FiniteTableSpec, InfiniteCyclicSpec, FreeSpec],
    Field(discriminator="kind"),
]

_CYCLIC_LETTERS = ("a", "b")
_INFINITE_LETTERS = ("t", "u")
_FREE_PREFIXES = ("x", "y")


def _build_factor(spec: FactorSpec, position: int) -> FactorGroup:
    if isinstance(spec, FiniteCyclicSpec):
        letter = spec.letter or _CYCLIC_LETTERS[position]
        generators = tuple(spec.generators) if spec.generators else (1,)
        return FiniteCyclicGroup(spec.n, generators, letter=letter)
    if isinstance(spec, FiniteTableSpec):
        name_to_id = {name: i for i, name in enumerate(spec.elements)}
        ids = []
        for g in spec.generators:
            if isinstance(g, str):
                if g not in name_to_id:
                    raise FactorGroupError(f"generator {g!r} is not an element name")
                ids.append(name_to_id[g])
            else:
                ids.append(g)
        return FiniteTableGroup(spec.table, ids, element_names=spec.elements)
    if isinstance(spec, InfiniteCyclicSpec):
        return InfiniteCyclicGroup(spec.letter or _INFINITE_LETTERS[position])
    prefix = _FREE_PREFIXES[position]
    names = spec.names or [f"{prefix}{i}" for i in range(1, spec.rank + 1)]
    return FreeFactorGroup(spec.rank, names)


class GroupSpec(StrictModel):
    schema_version: Literal["freeprod-group/1"] = Field(GROUP_SCHEMA, alias="schema")
    label: Optional[str] = None
    factors: list[FactorSpec] = Field(min_length=2, max_length=2)

    def build(self) -> FreeProduct:
        f1 = _build_factor(self.factors[0], 0)
        f2 = _build_factor(self.factors[1], 1)
        shared = set(f1.name_map()) & set(f2.name_map())
        if shared:
            raise FactorGroupError(
                f"generator names used by both factors: {sorted(shared)}"
            )
        return FreeProduct(f1, f2)


# -- manifold descriptors ------------------------------------------------------


Pi1Class = Literal["trivial", "z2", "finite_other", "solvable_infinite", "infinite_other"]


class SummandSpec(StrictModel):
    pi1: Pi1Class
    order: Optional[int] = None
    b1: int = Field(0, ge=0)


class PrimeDecompositionSpec(StrictModel):
    schema_version: Literal["freeprod-manifold/1"] = Field(MANIFOLD_SCHEMA, alias="schema")
    type: Literal["prime_decomposition"]
    orientable: bool = True
    dimension: Literal[3] = 3
    summands: list[SummandSpec] = Field(min_length=1)

    def to_descriptor(self) -> ManifoldDescriptor:
        return ManifoldDescriptor(
            summands=tuple(
                Summand(pi1=s.pi1, order=s.order, b1=s.b1) for s in self.summands
            ),
            orientable=self.orientable,
            dimension=self.dimension,
        )


class ConnectedSumSpec(StrictModel):
    schema_version: Literal["freeprod-manifold/1"] = Field(MANIFOLD_SCHEMA, alias="schema")
    type: Literal["connected_sum"]
    pi1_m1: Pi1Class
    b1_m1: int = Field(0, ge=0)
    pi1_m2: Pi1Class = "trivial"
    m2_is_sphere: bool = False


ManifoldSpec = Annotated[
    Union[PrimeDecompositionSpec, ConnectedSumSpec], Field(discriminator="type")
]


# -- request bodies ---------------------------------------------------------------


class ReportRequest(StrictModel):
    timing: bool = False  # opt-in: timing breaks byte-identical output


class ReduceRequest(ReportRequest):
    group: GroupSpec
    word: str


class ConjugateTestRequest(ReportRequest):
    group: GroupSpec
    word1: str
    word2: str


class GrowthRequest(ReportRequest):
    group: GroupSpec
    max_k: int = Field(ge=0)
    threads: int = Field(1, ge=1, le=16)
    format: Literal["json", "csv"] = "json"
    memory_budget_mb: Optional[float] = Field(None, gt=0)
    estimate_rate: bool = False


class GmFamilyRequest(ReportRequest):
    group: GroupSpec
    r: int = Field(ge=1, le=14)
    b2: Optional[str] = None  # word over factor-2 names, e.g. "b^2"


class FreeSubgroupRequest(ReportRequest):
    group: GroupSpec
    depth: int = Field(5, ge=1, le=8)
    b2: Optional[str] = None


class DihedralRequest(ReportRequest):
    max_power: int = Field(5, ge=1, le=64)


class LaurentSpec(StrictModel):
    coefficients: dict[str, int]
    modulus: Optional[int] = Field(None, ge=2)

    def to_poly(self) -> LaurentPoly:
        coeffs = {}
        for key, value in self.coefficients.items():
            try:
                exponent = int(key)
            except ValueError as err:
                raise ValueError(f"exponent key {key!r} is not an integer") from err
            coeffs[exponent] = value
        return LaurentPoly(coeffs, self.modulus)


class LaurentCheckRequest(ReportRequest):
    polynomial: Optional[LaurentSpec] = None
    samples: Optional[int] = Field(None, ge=1, le=200_000)
    seed: int = 0

    @model_validator(mode="after")
    def _one_mode(self) -> "LaurentCheckRequest":
        if (self.polynomial is None) == (self.samples is None):
            raise ValueError("provide exactly one of 'polynomial' or 'samples'")
        return self


class ClassifyRequest(ReportRequest):
    manifold: ManifoldSpec


class ExponentialBoundRequest(ReportRequest):
    L: RationalInput
    L1: RationalInput
    t: Optional[RationalInput] = None
    t_from: Optional[RationalInput] = None
    t_to: Optional[RationalInput] = None
    t_step: Optional[RationalInput] = None
    format: Literal["json", "csv"] = "json"

    @model_validator(mode="after")
    def _one_mode(self) -> "ExponentialBoundRequest":
        range_given = self.t_from is not None or self.t_to is not None
        if (self.t is None) == (not range_given):
            raise ValueError("provide either 't' or a 't_from'/'t_to' range")
        if range_given and (self.t_from is None or self.t_to is None or self.t_step is None):
            raise ValueError("a range needs 't_from', 't_to' and 't_step'")
        return self


class PolynomialBoundRequest(ReportRequest):
    k: int = Field(ge=1)
    cover_order: int = Field(ge=1)
    lambda_k: RationalInput
    t: Optional[RationalInput] = None
    t_from: Optional[RationalInput] = None
    t_to: Optional[RationalInput] = None
    t_step: Optional[RationalInput] = None
    format: Literal["json", "csv"] = "json"

    @model_validator(mode="after")
    def _one_mode(self) -> "PolynomialBoundRequest":
        range_given = self.t_from is not None or self.t_to is not None
        if (self.t is None) == (not range_given):
            raise ValueError("provide either 't' or a 't_from'/'t_to' range")
        if range_given and (self.t_from is None or self.t_to is None or self.t_step is None):
            raise ValueError("a range needs 't_from', 't_to' and 't_step'")
        return self
