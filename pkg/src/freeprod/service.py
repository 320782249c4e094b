"""HTTP surface: one endpoint per library capability.

Every endpoint wraps a pure library call and renders a canonical JSON
report (or CSV for tabular output), so identical requests produce
byte-identical responses.  Domain validation failures map to HTTP 422
with an error report; a growth enumeration that hits the memory budget is
not an error — it returns 200 with ``outputs.partial = true`` and the
``X-Freeprod-Partial: true`` response header.

The in-process CLI client and ``uvicorn freeprod.service:app`` both serve
this module's ``app``.
"""

from __future__ import annotations

import os
import time
from fractions import Fraction

from fastapi import FastAPI, Request, Response

from . import __version__
from .bounds import (
    Classification,
    MetricParams,
    as_fraction,
    classify_connected_sum,
    classify_three_manifold,
    exponential_lower_bound,
    polynomial_lower_bound,
)
from .growth import (
    binary_necklaces,
    count_conjugacy_classes,
    gm_family,
    growth_rate_estimate,
    necklace_count,
    verify_dihedral_relation,
    verify_free_subgroup,
)
from .laurent import check_u_minus_one_times_q, random_nonunit_suite
from .normal_forms import FreeProduct, NormalForm
from .reports import canonical_json, csv_text, fraction_fields, report
from .schemas import (
    ClassifyRequest,
    ConjugateTestRequest,
    ConnectedSumSpec,
    DihedralRequest,
    ExponentialBoundRequest,
    FreeSubgroupRequest,
    GmFamilyRequest,
    GrowthRequest,
    LaurentCheckRequest,
    PolynomialBoundRequest,
    ReduceRequest,
)
from .wordparse import parse_factor_element, parse_word

MEMORY_BUDGET_ENV = "FREEPROD_MAX_MEMORY_MB"
_MAX_CURVE_POINTS = 4096

app = FastAPI(title="freeprod", version=__version__)


@app.exception_handler(ValueError)
async def _domain_error(request: Request, exc: ValueError) -> Response:
    # All library validation errors derive from ValueError.
    body = {
        "schema": "freeprod-report/1",
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }
    position = getattr(exc, "position", None)
    if position is not None:
        body["error"]["position"] = position
    return Response(
        content=canonical_json(body), media_type="application/json", status_code=422
    )


def _respond(payload: dict, headers: dict | None = None) -> Response:
    return Response(
        content=canonical_json(payload), media_type="application/json", headers=headers
    )


class _Stopwatch:
    def __init__(self, enabled: bool) -> None:
        self.enabled = enabled
        self._start = time.perf_counter()

    def timing_ms(self) -> float | None:
        if not self.enabled:
            return None
        return (time.perf_counter() - self._start) * 1000.0


def _group_echo(req) -> dict:
    return req.group.model_dump(by_alias=True, exclude_none=True)


def _nf_fields(product: FreeProduct, g: NormalForm) -> dict:
    return {
        "word": product.format(g),
        "letters": len(g),
        "word_length": product.word_length(g),
    }


@app.get("/health")
async def health() -> Response:
    return _respond({"status": "ok", "version": __version__})


@app.post("/reduce")
async def reduce_word(req: ReduceRequest) -> Response:
    watch = _Stopwatch(req.timing)
    product = req.group.build()
    g = parse_word(product, req.word)
    reduction = product.cyclically_reduce(g)
    outputs = {
        "normal_form": _nf_fields(product, g),
        "cyclically_reduced": _nf_fields(product, reduction.result),
        "conjugator": product.format(reduction.conjugator),
        "is_cyclically_reduced": product.is_cyclically_reduced(g),
        "is_weakly_reduced": product.is_weakly_reduced(g),
    }
    return _respond(
        report(
            "reduce",
            {"group": _group_echo(req), "word": req.word},
            outputs,
            timing_ms=watch.timing_ms(),
        )
    )


@app.post("/conjugate-test")
async def conjugate_test(req: ConjugateTestRequest) -> Response:
    watch = _Stopwatch(req.timing)
    product = req.group.build()
    g = parse_word(product, req.word1)
    h = parse_word(product, req.word2)
    outputs = {
        "are_conjugate": product.are_conjugate(g, h),
        "reduced1": product.format(product.cyclically_reduce(g).result),
        "reduced2": product.format(product.cyclically_reduce(h).result),
        "class_key1": product.format(product.canonical_class_key(g)),
        "class_key2": product.format(product.canonical_class_key(h)),
    }
    return _respond(
        report(
            "conjugate-test",
            {"group": _group_echo(req), "word1": req.word1, "word2": req.word2},
            outputs,
            timing_ms=watch.timing_ms(),
        )
    )


def _memory_budget(req: GrowthRequest) -> float | None:
    if req.memory_budget_mb is not None:
        return req.memory_budget_mb
    raw = os.environ.get(MEMORY_BUDGET_ENV)
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError as err:
        raise ValueError(f"{MEMORY_BUDGET_ENV} is not a number: {raw!r}") from err
    if value <= 0:
        raise ValueError(f"{MEMORY_BUDGET_ENV} must be positive, got {raw!r}")
    return value


@app.post("/growth")
async def growth_table(req: GrowthRequest) -> Response:
    watch = _Stopwatch(req.timing)
    product = req.group.build()
    table = count_conjugacy_classes(
        product,
        req.max_k,
        memory_budget_mb=_memory_budget(req),
        threads=req.threads,
    )
    headers = {"X-Freeprod-Partial": "true"} if table.partial else None
    if req.format == "csv":
        text = csv_text(
            ("k", "elements", "classes"),
            [(row.k, row.elements, row.classes) for row in table.rows],
        )
        return Response(content=text, media_type="text/csv", headers=headers)
    outputs: dict = {
        "max_k": req.max_k,
        "rows": [
            {"k": row.k, "elements": row.elements, "classes": row.classes}
            for row in table.rows
        ],
        "partial": table.partial,
    }
    if table.abort is not None:
        outputs["abort"] = table.abort
    if req.estimate_rate:
        rate = growth_rate_estimate(table)
        outputs["rate"] = {
            "lambda_elements": rate.lambda_elements,
            "lambda_classes": rate.lambda_classes,
            "residual_elements": rate.residual_elements,
            "residual_classes": rate.residual_classes,
            "depth_range": list(rate.depth_range),
        }
    return _respond(
        report(
            "growth",
            {"group": _group_echo(req), "max_k": req.max_k},
            outputs,
            timing_ms=watch.timing_ms(),
        ),
        headers=headers,
    )


@app.get("/necklaces/{r}")
async def necklaces(
    r: int, include_representatives: bool = False, timing: bool = False
) -> Response:
    watch = _Stopwatch(timing)
    if r < 1 or r > 10**6:
        raise ValueError(f"r must be in 1..10^6, got {r}")
    outputs: dict = {"r": r, "count": necklace_count(r)}
    if include_representatives:
        if r > 14:
            raise ValueError("representatives are only enumerated for r <= 14")
        outputs["representatives"] = [list(t) for t in binary_necklaces(r)]
    return _respond(
        report("necklaces", {"r": r}, outputs, timing_ms=watch.timing_ms())
    )


@app.post("/gm-family")
async def gm_family_endpoint(req: GmFamilyRequest) -> Response:
    watch = _Stopwatch(req.timing)
    product = req.group.build()
    b2 = parse_factor_element(product, 2, req.b2) if req.b2 is not None else None
    family = gm_family(product, req.r, b2=b2)
    sel = family.letters
    rows = [
        {
            "m": list(tup),
            "word": product.format(nf),
            "letters": len(nf),
            "word_length": product.word_length(nf),
        }
        for tup, nf in family.representatives
    ]
    outputs = {
        "r": family.r,
        "count": len(rows),
        "necklace_count": necklace_count(req.r),
        "letters": {
            "a_factor": sel.a_factor,
            "a": product.factor(sel.a_factor).format_element(sel.a),
            "b_factor": sel.b_factor,
            "b1": product.factor(sel.b_factor).format_element(sel.b1),
            "b2": product.factor(sel.b_factor).format_element(sel.b2),
            "b2_source": sel.b2_source,
        },
        "representatives": rows,
        "class_count_lower_bound": fraction_fields(Fraction(2**req.r, req.r)),
        "word_length_bound": 3 * req.r,
    }
    return _respond(
        report(
            "gm-family",
            {"group": _group_echo(req), "r": req.r, "b2": req.b2},
            outputs,
            timing_ms=watch.timing_ms(),
        )
    )


_FREE_TOKENS = {1: "x", -1: "x^-1", 2: "y", -2: "y^-1"}


@app.post("/free-subgroup-check")
async def free_subgroup_check(req: FreeSubgroupRequest) -> Response:
    watch = _Stopwatch(req.timing)
    product = req.group.build()
    b2 = parse_factor_element(product, 2, req.b2) if req.b2 is not None else None
    check = verify_free_subgroup(product, req.depth, b2=b2)
    outputs: dict = {
        "ok": check.ok,
        "depth": check.depth,
        "words_checked": check.words_checked,
        "x": product.format(check.x),
        "y": product.format(check.y),
    }
    if check.witness is not None:
        outputs["witness"] = " ".join(_FREE_TOKENS[s] for s in check.witness)
        outputs["collides_with"] = " ".join(
            _FREE_TOKENS[s] for s in check.collides_with
        ) or "1"
    return _respond(
        report(
            "free-subgroup-check",
            {"group": _group_echo(req), "depth": req.depth, "b2": req.b2},
            outputs,
            timing_ms=watch.timing_ms(),
        )
    )


@app.post("/dihedral-check")
async def dihedral_check(req: DihedralRequest) -> Response:
    watch = _Stopwatch(req.timing)
    check = verify_dihedral_relation(max_power=req.max_power)
    outputs = {
        "ok": check.ok,
        "powers_checked": check.powers_checked,
        "relation": "a t^n a^-1 = t^-n for t = a b",
    }
    return _respond(
        report(
            "dihedral-check",
            {"max_power": req.max_power},
            outputs,
            timing_ms=watch.timing_ms(),
        )
    )


def _poly_terms(poly) -> list[list[int]]:
    return [[e, c] for e, c in sorted(poly.coefficients.items())]


@app.post("/laurent-check")
async def laurent_check(req: LaurentCheckRequest) -> Response:
    watch = _Stopwatch(req.timing)
    if req.polynomial is not None:
        q = req.polynomial.to_poly()
        cert = check_u_minus_one_times_q(q)
        outputs = {
            "ring": "Z" if q.modulus is None else f"Z/{q.modulus}",
            "q_terms": _poly_terms(q),
            "product_terms": _poly_terms(cert.product),
            "low_term": {"exponent": cert.low_term[0], "coefficient": cert.low_term[1]},
            "high_term": {
                "exponent": cert.high_term[0],
                "coefficient": cert.high_term[1],
            },
            "is_one": False,
        }
        inputs = {
            "coefficients": dict(req.polynomial.coefficients),
            "modulus": req.polynomial.modulus,
        }
    else:
        result = random_nonunit_suite(req.samples, seed=req.seed)
        outputs = {
            "checked": result.checked,
            "failures": list(result.failures),
            "ok": not result.failures,
        }
        inputs = {"samples": req.samples, "seed": req.seed}
    return _respond(
        report("laurent-check", inputs, outputs, timing_ms=watch.timing_ms())
    )


def _classification_outputs(result: Classification) -> dict:
    growth: dict = {"kind": result.growth.kind, "description": result.growth.description}
    if result.growth.degree is not None:
        growth["degree"] = result.growth.degree
    return {"growth": growth, "rule": result.rule, "statement": result.statement}


@app.post("/classify")
async def classify(req: ClassifyRequest) -> Response:
    watch = _Stopwatch(req.timing)
    spec = req.manifold
    if isinstance(spec, ConnectedSumSpec):
        result = classify_connected_sum(
            spec.pi1_m1,
            spec.b1_m1,
            spec.pi1_m2,
            m2_is_sphere=spec.m2_is_sphere,
        )
    else:
        result = classify_three_manifold(spec.to_descriptor())
    return _respond(
        report(
            "classify",
            {"manifold": spec.model_dump(by_alias=True, exclude_none=True)},
            _classification_outputs(result),
            timing_ms=watch.timing_ms(),
        )
    )


def _t_grid(t_from, t_to, t_step) -> list[Fraction]:
    start = as_fraction(t_from, "t_from", positive=True)
    stop = as_fraction(t_to, "t_to", positive=True)
    step = as_fraction(t_step, "t_step", positive=True)
    if stop < start:
        raise ValueError("t_to must be >= t_from")
    count = int((stop - start) / step) + 1
    if count > _MAX_CURVE_POINTS:
        raise ValueError(f"curve would have {count} points; limit is {_MAX_CURVE_POINTS}")
    return [start + i * step for i in range(count)]


@app.post("/bound/exponential")
async def bound_exponential(req: ExponentialBoundRequest) -> Response:
    watch = _Stopwatch(req.timing)
    params = MetricParams(L=req.L, L1=req.L1)
    inputs = {
        "L": fraction_fields(params.L),
        "L1": fraction_fields(params.L1),
    }
    if req.t is not None:
        bound = exponential_lower_bound(params, req.t)
        outputs = {
            "t": fraction_fields(bound.t),
            "r": bound.r,
            "applicable": bound.applicable,
            "bound": fraction_fields(bound.value),
        }
        return _respond(
            report(
                "bound-exponential", inputs, outputs, timing_ms=watch.timing_ms()
            )
        )
    grid = _t_grid(req.t_from, req.t_to, req.t_step)
    bounds = [exponential_lower_bound(params, t) for t in grid]
    if req.format == "csv":
        text = csv_text(
            ("t", "bound"),
            [(float(b.t), float(b.value)) for b in bounds],
        )
        return Response(content=text, media_type="text/csv")
    outputs = {
        "points": [
            {
                "t": fraction_fields(b.t),
                "r": b.r,
                "applicable": b.applicable,
                "bound": fraction_fields(b.value),
            }
            for b in bounds
        ]
    }
    return _respond(
        report("bound-exponential", inputs, outputs, timing_ms=watch.timing_ms())
    )


@app.post("/bound/polynomial")
async def bound_polynomial(req: PolynomialBoundRequest) -> Response:
    watch = _Stopwatch(req.timing)
    lam = as_fraction(req.lambda_k, "lambda_k", positive=True)
    inputs = {
        "k": req.k,
        "cover_order": req.cover_order,
        "lambda_k": fraction_fields(lam),
    }
    if req.t is not None:
        t = as_fraction(req.t, "t", positive=True)
        value = polynomial_lower_bound(req.k, req.cover_order, lam, t)
        outputs = {"t": fraction_fields(t), "bound": fraction_fields(value)}
        return _respond(
            report("bound-polynomial", inputs, outputs, timing_ms=watch.timing_ms())
        )
    grid = _t_grid(req.t_from, req.t_to, req.t_step)
    values = [(t, polynomial_lower_bound(req.k, req.cover_order, lam, t)) for t in grid]
    if req.format == "csv":
        text = csv_text(
            ("t", "bound"), [(float(t), float(v)) for t, v in values]
        )
        return Response(content=text, media_type="text/csv")
    outputs = {
        "points": [
            {"t": fraction_fields(t), "bound": fraction_fields(v)} for t, v in values
        ]
    }
    return _respond(
        report("bound-polynomial", inputs, outputs, timing_ms=watch.timing_ms())
    )
