"""Closed-geodesic counting bounds and growth-class decision tables.

All bound arithmetic is exact (``fractions.Fraction``); floats only appear
when a caller formats results.  The classifiers are pure decision tables
over fundamental-group data: they do no topology, and every result carries
the id of the rule that fired plus a one-sentence statement.

Growth classes, by their defining liminf statement:

- ``exponential``         liminf log N(t) / t > 0
- ``prime_like``          liminf N(t) * log t / t > 0
- ``polynomial_at_least`` liminf N(t) / t^k > 0 for the given k
- ``all_polynomial``      liminf N(t) / t^r > 0 for every r >= 1
- ``generic_only``        no unconditional estimate; generic metrics have
                          infinitely many closed geodesics
- ``infinitely_many``     infinitely many closed geodesics for every
                          metric, with no growth rate claimed
- ``unknown``             no estimate known for this configuration
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, float, Fraction]


def as_fraction(value: RationalLike, name: str = "value", *, positive: bool = False) -> Fraction:
    """Coerce to an exact Fraction; str accepts '3/4' and decimal forms."""
    if isinstance(value, bool):
        raise ValueError(f"{name} must be a number, got a boolean")
    try:
        frac = Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise ValueError(f"{name} is not a rational number: {value!r}") from err
    if positive and frac <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")
    return frac


@dataclass(frozen=True)
class MetricParams:
    """Length data of a metric: L >= L1 > 0.

    L is the larger of the shortest-loop lengths realizing the chosen
    generator homotopy classes; L1 is the length of the shortest
    homotopically nontrivial closed geodesic.
    """

    L: Fraction
    L1: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "L", as_fraction(self.L, "L", positive=True))
        object.__setattr__(self, "L1", as_fraction(self.L1, "L1", positive=True))
        if self.L < self.L1:
            raise ValueError(f"L must be >= L1, got L={self.L} < L1={self.L1}")


@dataclass(frozen=True)
class ExponentialBound:
    """N(t) >= 2^r * L1 / (3 r^2 L) with r = floor(t / (3L)).

    Below t = 3L no r is admissible; the bound is then 0 and
    ``applicable`` is False (not an error).
    """

    t: Fraction
    r: int
    value: Fraction
    applicable: bool


def exponential_lower_bound(params: MetricParams, t: RationalLike) -> ExponentialBound:
    t_frac = as_fraction(t, "t", positive=True)
    r = math.floor(t_frac / (3 * params.L))
    if r < 1:
        return ExponentialBound(t=t_frac, r=0, value=Fraction(0), applicable=False)
    value = Fraction(2**r) * params.L1 / (3 * r * r * params.L)
    return ExponentialBound(t=t_frac, r=r, value=value, applicable=True)


def polynomial_lower_bound(
    k: int, cover_order: int, lambda_k: RationalLike, t: RationalLike
) -> Fraction:
    """N(t) >= (lambda_k / cover_order) * t^k, exactly."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if not isinstance(cover_order, int) or isinstance(cover_order, bool) or cover_order < 1:
        raise ValueError(f"cover_order must be a positive integer, got {cover_order!r}")
    lam = as_fraction(lambda_k, "lambda_k", positive=True)
    t_frac = as_fraction(t, "t", positive=True)
    return (lam / cover_order) * t_frac**k


# -- growth classes and classifiers ------------------------------------------


GROWTH_KINDS = (
    "exponential",
    "prime_like",
    "polynomial_at_least",
    "all_polynomial",
    "generic_only",
    "infinitely_many",
    "unknown",
)

_DESCRIPTIONS = {
    "exponential": "liminf log N(t) / t > 0",
    "prime_like": "liminf N(t) * log t / t > 0",
    "all_polynomial": "liminf N(t) / t^r > 0 for every r >= 1",
    "generic_only": (
        "no unconditional estimate; a generic metric has infinitely many closed geodesics"
    ),
    "infinitely_many": (
        "infinitely many geometrically distinct closed geodesics for every metric; "
        "no growth rate claimed"
    ),
    "unknown": "no estimate known for this configuration",
}


@dataclass(frozen=True)
class GrowthClass:
    kind: str
    degree: int | None = None  # only for polynomial_at_least

    def __post_init__(self) -> None:
        if self.kind not in GROWTH_KINDS:
            raise ValueError(f"unknown growth class {self.kind!r}")
        if self.kind == "polynomial_at_least":
            if not isinstance(self.degree, int) or self.degree < 1:
                raise ValueError("polynomial_at_least requires a positive integer degree")
        elif self.degree is not None:
            raise ValueError(f"growth class {self.kind!r} takes no degree")

    @property
    def description(self) -> str:
        if self.kind == "polynomial_at_least":
            return f"liminf N(t) / t^{self.degree} > 0"
        return _DESCRIPTIONS[self.kind]


@dataclass(frozen=True)
class Classification:
    growth: GrowthClass
    rule: str
    statement: str


PI1_CLASSES = ("trivial", "z2", "finite_other", "solvable_infinite", "infinite_other")
_FINITE_CLASSES = frozenset({"trivial", "z2", "finite_other"})
_INFINITE_CLASSES = frozenset({"solvable_infinite", "infinite_other"})


def _check_pi1_class(pi1: str, name: str) -> str:
    if pi1 not in PI1_CLASSES:
        raise ValueError(f"{name} must be one of {PI1_CLASSES}, got {pi1!r}")
    return pi1


@dataclass(frozen=True)
class Summand:
    """One prime summand, described by its fundamental-group class."""

    pi1: str
    order: int | None = None  # required (>= 3) for finite_other only
    b1: int = 0

    def __post_init__(self) -> None:
        _check_pi1_class(self.pi1, "pi1")
        if self.pi1 == "finite_other":
            if not isinstance(self.order, int) or self.order < 3:
                raise ValueError("finite_other requires an integer order >= 3")
        elif self.pi1 == "trivial" and self.order not in (None, 1):
            raise ValueError("trivial summand has order 1")
        elif self.pi1 == "z2" and self.order not in (None, 2):
            raise ValueError("z2 summand has order 2")
        elif self.pi1 in _INFINITE_CLASSES and self.order is not None:
            raise ValueError(f"{self.pi1} summand takes no finite order")
        if not isinstance(self.b1, int) or isinstance(self.b1, bool) or self.b1 < 0:
            raise ValueError(f"b1 must be a nonnegative integer, got {self.b1!r}")
        if self.b1 > 0 and self.pi1 in _FINITE_CLASSES:
            raise ValueError("a summand with finite fundamental group has b1 = 0")


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Prime decomposition of a compact 3-manifold, by group classes."""

    summands: tuple[Summand, ...]
    orientable: bool = True
    dimension: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(self.summands))
        if not self.summands:
            raise ValueError("summand list must be nonempty")
        if self.dimension != 3:
            raise ValueError("only dimension 3 is supported")


def classify_three_manifold(descriptor: ManifoldDescriptor) -> Classification:
    """Growth trichotomy for a compact 3-manifold from its prime summands.

    Orientable: two or more nontrivial summands give exponential conjugacy
    growth of the free product, except exactly two order-2 summands (the
    infinite dihedral case), which give the prime-like estimate; a single
    prime summand splits by its group being infinite non-solvable
    (polynomial of every degree), infinite solvable (prime-like) or finite
    (generic metrics only).  Non-orientable manifolds with infinite
    fundamental group are handled through the orientation double cover.
    """
    nontrivial = [s for s in descriptor.summands if s.pi1 != "trivial"]

    if not descriptor.orientable:
        infinite = len(nontrivial) >= 2 or any(
            s.pi1 in _INFINITE_CLASSES for s in nontrivial
        )
        if infinite:
            return Classification(
                growth=GrowthClass("prime_like"),
                rule="nonorientable-double-cover-prime-like",
                statement=(
                    "non-orientable with infinite fundamental group: the bound "
                    "passes to the orientation double cover, giving "
                    "liminf N(t) log t / t > 0"
                ),
            )
        return Classification(
            growth=GrowthClass("generic_only"),
            rule="finite-fundamental-group-generic-only",
            statement=(
                "finite fundamental group: no unconditional estimate; "
                "a generic metric carries infinitely many closed geodesics"
            ),
        )

    if len(nontrivial) >= 2:
        if len(nontrivial) == 2 and all(s.pi1 == "z2" for s in nontrivial):
            return Classification(
                growth=GrowthClass("prime_like"),
                rule="two-z2-summands-prime-like",
                statement=(
                    "exactly two order-2 summands: the fundamental group is the "
                    "infinite dihedral group, whose conjugacy growth is linear; "
                    "liminf N(t) log t / t > 0"
                ),
            )
        return Classification(
            growth=GrowthClass("exponential"),
            rule="multiple-summands-exponential",
            statement=(
                "at least two nontrivial summands, not two order-2 groups: the "
                "fundamental group is a free product with exponential conjugacy "
                "growth; liminf log N(t) / t > 0"
            ),
        )

    if len(nontrivial) == 1:
        s = nontrivial[0]
        if s.pi1 == "infinite_other":
            return Classification(
                growth=GrowthClass("all_polynomial"),
                rule="prime-infinite-nonsolvable-polynomial",
                statement=(
                    "prime with infinite non-solvable fundamental group: the "
                    "virtual first Betti number is infinite, so "
                    "liminf N(t) / t^r > 0 for every r >= 1"
                ),
            )
        if s.pi1 == "solvable_infinite":
            return Classification(
                growth=GrowthClass("prime_like"),
                rule="prime-infinite-solvable-prime-like",
                statement=(
                    "prime with infinite solvable fundamental group: "
                    "liminf N(t) log t / t > 0"
                ),
            )

    return Classification(
        growth=GrowthClass("generic_only"),
        rule="finite-fundamental-group-generic-only",
        statement=(
            "finite fundamental group: no unconditional estimate; "
            "a generic metric carries infinitely many closed geodesics"
        ),
    )


def classify_connected_sum(
    pi1_m1: str,
    b1_m1: int = 0,
    pi1_m2: str = "trivial",
    *,
    m2_is_sphere: bool = False,
) -> Classification:
    """Growth class of M1 # M2 (dimension >= 3) from fundamental-group data.

    The descriptor is asymmetric on purpose: only the M1 side carries a
    first Betti number.  A sphere can only be declared on the M2 side;
    a non-sphere simply-connected side is modeled by the trivial class.
    M1 is assumed not to be a sphere (a sphere side belongs on M2).
    """
    _check_pi1_class(pi1_m1, "pi1_m1")
    _check_pi1_class(pi1_m2, "pi1_m2")
    if not isinstance(b1_m1, int) or isinstance(b1_m1, bool) or b1_m1 < 0:
        raise ValueError(f"b1_m1 must be a nonnegative integer, got {b1_m1!r}")
    if b1_m1 > 0 and pi1_m1 in _FINITE_CLASSES:
        raise ValueError("b1_m1 >= 1 requires an infinite fundamental group on M1")
    if m2_is_sphere and pi1_m2 != "trivial":
        raise ValueError("a sphere summand is simply connected; pi1_m2 must be 'trivial'")
    if m2_is_sphere and pi1_m1 == "trivial":
        raise ValueError(
            "both sides simply connected with M2 a sphere: not a genuine connected sum"
        )

    if m2_is_sphere:
        # The sum is M1 itself; only the Betti-number route applies.
        if b1_m1 >= 2:
            return Classification(
                growth=GrowthClass("polynomial_at_least", degree=b1_m1),
                rule="sphere-summand-betti-polynomial",
                statement=(
                    f"M2 is a sphere, so M = M1; first Betti number {b1_m1} >= 2 "
                    f"gives liminf N(t) / t^{b1_m1} > 0"
                ),
            )
        return Classification(
            growth=GrowthClass("unknown"),
            rule="sphere-summand-unresolved",
            statement=(
                "M2 is a sphere, so M = M1 and no connected-sum estimate applies; "
                "with b1(M1) <= 1 the Betti-number route gives nothing"
            ),
        )

    m1_nontrivial = pi1_m1 != "trivial"
    m2_nontrivial = pi1_m2 != "trivial"

    if m1_nontrivial and m2_nontrivial:
        if pi1_m1 == "z2" and pi1_m2 == "z2":
            return Classification(
                growth=GrowthClass("prime_like"),
                rule="two-z2-sides-prime-like",
                statement=(
                    "both sides have order-2 fundamental group: the free product "
                    "is infinite dihedral with linear conjugacy growth; "
                    "liminf N(t) log t / t > 0"
                ),
            )
        return Classification(
            growth=GrowthClass("exponential"),
            rule="nontrivial-sides-exponential",
            statement=(
                "both fundamental groups are nontrivial and not both of order 2: "
                "conjugacy growth of the free product is exponential; "
                "liminf log N(t) / t > 0"
            ),
        )

    if m1_nontrivial:  # M2 simply connected, not a sphere
        if b1_m1 >= 1:
            return Classification(
                growth=GrowthClass("prime_like"),
                rule="positive-first-betti-prime-like",
                statement=(
                    "M2 simply connected and b1(M1) >= 1: "
                    "liminf N(t) log t / t > 0"
                ),
            )
        if pi1_m1 in _FINITE_CLASSES:
            return Classification(
                growth=GrowthClass("infinitely_many"),
                rule="finite-pi1-simply-connected-side",
                statement=(
                    "M2 simply connected (not a sphere) and pi1(M1) finite: the "
                    "loop-space homology is unbounded, so every metric has "
                    "infinitely many closed geodesics"
                ),
            )
        return Classification(
            growth=GrowthClass("unknown"),
            rule="infinite-zero-betti-unresolved",
            statement=(
                "M2 simply connected, pi1(M1) infinite with b1(M1) = 0: "
                "the remaining open configuration; no estimate known"
            ),
        )

    if m2_nontrivial:  # M1 simply connected, M2 not
        if pi1_m2 in _FINITE_CLASSES:
            return Classification(
                growth=GrowthClass("infinitely_many"),
                rule="finite-pi1-simply-connected-side",
                statement=(
                    "one side simply connected (not a sphere) and the other with "
                    "finite fundamental group: every metric has infinitely many "
                    "closed geodesics"
                ),
            )
        return Classification(
            growth=GrowthClass("unknown"),
            rule="missing-betti-unresolved",
            statement=(
                "M1 simply connected and pi1(M2) infinite: the decision needs "
                "b1(M2), which this input does not carry; swap the sides to "
                "supply it"
            ),
        )

    return Classification(
        growth=GrowthClass("infinitely_many"),
        rule="simply-connected-sides-infinitely-many",
        statement=(
            "both sides simply connected and neither a sphere: the cohomology "
            "ring of the sum has two generators over some field, so every "
            "metric has infinitely many closed geodesics"
        ),
    )
