"""Exact Laurent-polynomial arithmetic over Z or Z/N, plus the (u-1) check.

A polynomial is a map exponent -> coefficient with no stored zeros; the
empty map is zero.  ``modulus=None`` means integer coefficients (arbitrary
precision); ``modulus=N`` (N >= 2) reduces coefficients into 0..N-1.

``check_u_minus_one_times_q`` realizes the non-unit argument: for nonzero
q with lowest term a_r u^r and highest term a_s u^s, the product (u-1)*q
has the two terms -a_r u^r and a_s u^(s+1) with s+1 > r, both nonzero in
the ring, so it is never the monomial 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

CoeffMap = Mapping[int, int]


class LaurentRingError(ValueError):
    """Operands live in different coefficient rings."""


class LaurentPoly:
    """Immutable Laurent polynomial: {exponent: coefficient}, zeros pruned."""

    __slots__ = ("_coeffs", "_modulus")

    def __init__(
        self,
        coeffs: Union[CoeffMap, Iterable[tuple[int, int]]] = (),
        modulus: int | None = None,
    ) -> None:
        if modulus is not None and (
            not isinstance(modulus, int) or isinstance(modulus, bool) or modulus < 2
        ):
            raise ValueError(f"modulus must be None or an integer >= 2, got {modulus!r}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or isinstance(e, bool):
                raise ValueError(f"exponent {e!r} is not an integer")
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValueError(f"coefficient {c!r} is not an integer")
            acc[e] = acc.get(e, 0) + c
        if modulus is not None:
            acc = {e: c % modulus for e, c in acc.items()}
        self._coeffs = {e: c for e, c in acc.items() if c != 0}
        self._modulus = modulus

    @property
    def modulus(self) -> int | None:
        return self._modulus

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no terms")
        return min(self._coeffs)

    def max_exponent(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no terms")
        return max(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._modulus == other._modulus and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._modulus, tuple(sorted(self._coeffs.items()))))

    def __repr__(self) -> str:
        if not self._coeffs:
            body = "0"
        else:
            parts = []
            for e in sorted(self._coeffs):
                c = self._coeffs[e]
                if e == 0:
                    parts.append(f"{c}")
                elif e == 1:
                    parts.append(f"{c}*u")
                else:
                    parts.append(f"{c}*u^{e}")
            body = " + ".join(parts)
        ring = "Z" if self._modulus is None else f"Z/{self._modulus}"
        return f"LaurentPoly({body}; {ring})"

    @classmethod
    def zero(cls, modulus: int | None = None) -> "LaurentPoly":
        return cls((), modulus)

    @classmethod
    def one(cls, modulus: int | None = None) -> "LaurentPoly":
        return cls({0: 1}, modulus)

    @classmethod
    def u_minus_one(cls, modulus: int | None = None) -> "LaurentPoly":
        return cls({1: 1, 0: -1}, modulus)


def laurent_multiply(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact convolution product; operands must share a ring."""
    if p.modulus != q.modulus:
        raise LaurentRingError(f"ring mismatch: {p.modulus!r} vs {q.modulus!r}")
    acc: dict[int, int] = {}
    for e1, c1 in p.coefficients.items():
        for e2, c2 in q.coefficients.items():
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return LaurentPoly(acc, p.modulus)


@dataclass(frozen=True)
class NonUnitCertificate:
    """Witness that (u-1)*q is not the monomial 1.

    ``low_term`` is (r, -a_r) and ``high_term`` is (s+1, a_s), where a_r/a_s
    are the extreme coefficients of q; both are nonzero in the ring and the
    exponents differ, so the product has at least two terms.
    """

    q: LaurentPoly
    product: LaurentPoly
    low_term: tuple[int, int]
    high_term: tuple[int, int]


def check_u_minus_one_times_q(q: LaurentPoly) -> NonUnitCertificate:
    """Compute (u-1)*q, assert it differs from 1, return the witness terms."""
    if q.is_zero():
        raise ValueError("q must be nonzero")
    product = laurent_multiply(LaurentPoly.u_minus_one(q.modulus), q)
    r = q.min_exponent()
    s = q.max_exponent()
    low = (r, _negate(q.coefficient(r), q.modulus))
    high = (s + 1, q.coefficient(s))
    # The witness must appear verbatim in the computed product, and the
    # product must not collapse to 1; both are theorems, so treat any
    # violation as an internal error rather than a result.
    if product.coefficient(low[0]) != low[1] or product.coefficient(high[0]) != high[1]:
        raise AssertionError(f"witness terms missing from product {product!r}")
    if product == LaurentPoly.one(q.modulus):
        raise AssertionError(f"(u-1)*q unexpectedly equals 1 for q={q!r}")
    return NonUnitCertificate(q=q, product=product, low_term=low, high_term=high)


def _negate(c: int, modulus: int | None) -> int:
    return -c if modulus is None else (-c) % modulus


@dataclass(frozen=True)
class SuiteResult:
    checked: int
    failures: tuple[str, ...]
    seed: int


def random_nonunit_suite(
    samples: int,
    *,
    seed: int = 0,
    moduli: tuple[int | None, ...] = (None, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12),
    degree_span: int = 8,
    coefficient_bound: int = 9,
) -> SuiteResult:
    """Run ``check_u_minus_one_times_q`` on random nonzero polynomials.

    Draws exponent windows of width <= degree_span with coefficients in
    [-coefficient_bound, coefficient_bound]; polynomials that reduce to zero
    in their ring are redrawn.  Returns the failure list (expected empty).
    """
    import random

    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    failures: list[str] = []
    for i in range(samples):
        modulus = moduli[rng.randrange(len(moduli))]
        while True:
            lo = rng.randint(-degree_span // 2 - 1, degree_span // 2 + 1)
            span = rng.randint(0, degree_span)
            coeffs = {
                e: rng.randint(-coefficient_bound, coefficient_bound)
                for e in range(lo, lo + span + 1)
            }
            q = LaurentPoly(coeffs, modulus)
            if not q.is_zero():
                break
        try:
            check_u_minus_one_times_q(q)
        except AssertionError as err:  # pragma: no cover - theorem violation
            failures.append(f"sample {i}: {err}")
    return SuiteResult(checked=samples, failures=tuple(failures), seed=seed)
