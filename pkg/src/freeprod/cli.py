"""Command-line client for the freeprod service.

Every subcommand builds one HTTP request.  By default it is served
in-process (no network); ``--server URL`` points the same request at a
running instance instead.  Responses are written verbatim — canonical
JSON or CSV — so two runs with the same inputs produce byte-identical
output.

Exit codes: 0 success, 1 internal service error, 2 invalid input,
3 partial result (growth table truncated by the memory budget).
"""

from __future__ import annotations

import json
import warnings

import click
import httpx

from . import __version__

PARTIAL_HEADER = "x-freeprod-partial"


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # Deferred import: pulls in the FastAPI app only for in-process use.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _emit(ctx: click.Context, resp: httpx.Response) -> None:
    if resp.status_code == 200:
        click.echo(resp.text, nl=False)
        ctx.exit(3 if resp.headers.get(PARTIAL_HEADER) == "true" else 0)
    click.echo(resp.text, nl=False, err=True)
    if not resp.text.endswith("\n"):
        click.echo("", err=True)
    ctx.exit(2 if 400 <= resp.status_code < 500 else 1)


def _post(ctx: click.Context, path: str, body: dict) -> None:
    if ctx.obj["timing"]:
        body["timing"] = True
    with _client(ctx.obj["server"]) as client:
        resp = client.post(path, json=body)
    _emit(ctx, resp)


def _get(ctx: click.Context, path: str, params: dict) -> None:
    if ctx.obj["timing"]:
        params["timing"] = "true"
    with _client(ctx.obj["server"]) as client:
        resp = client.get(path, params=params)
    _emit(ctx, resp)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise click.UsageError(f"cannot read {path}: {err}")
    except json.JSONDecodeError as err:
        raise click.UsageError(f"{path} is not valid JSON: {err}")


@click.group()
@click.version_option(__version__)
@click.option(
    "--server",
    envvar="FREEPROD_SERVER",
    default=None,
    metavar="URL",
    help="Send requests to a running service instead of in-process.",
)
@click.option("--timing", is_flag=True, help="Include wall-clock timing in reports.")
@click.pass_context
def main(ctx: click.Context, server: str | None, timing: bool) -> None:
    """Exact computations in free products of groups."""
    ctx.obj = {"server": server, "timing": timing}


@main.command("reduce")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("word")
@click.pass_context
def reduce_cmd(ctx: click.Context, spec_file: str, word: str) -> None:
    """Normalize WORD and report its cyclic reduction and conjugator."""
    _post(ctx, "/reduce", {"group": _load_json(spec_file), "word": word})


@main.command("conjugate-test")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("word1")
@click.argument("word2")
@click.pass_context
def conjugate_test_cmd(ctx: click.Context, spec_file: str, word1: str, word2: str) -> None:
    """Decide whether WORD1 and WORD2 are conjugate."""
    _post(
        ctx,
        "/conjugate-test",
        {"group": _load_json(spec_file), "word1": word1, "word2": word2},
    )


@main.command("growth")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-k", type=int, default=12, show_default=True)
@click.option(
    "--emit",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
    help="Output format for the table.",
)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option(
    "--memory-budget-mb",
    type=float,
    default=None,
    help="Abort enumeration beyond this estimated memory use.",
)
@click.option("--estimate-rate", is_flag=True, help="Fit exponential growth rates.")
@click.pass_context
def growth_cmd(
    ctx: click.Context,
    spec_file: str,
    max_k: int,
    emit: str,
    threads: int,
    memory_budget_mb: float | None,
    estimate_rate: bool,
) -> None:
    """Tabulate ball sizes and conjugacy-class counts up to radius MAX-K."""
    body: dict = {
        "group": _load_json(spec_file),
        "max_k": max_k,
        "format": emit,
        "threads": threads,
    }
    if memory_budget_mb is not None:
        body["memory_budget_mb"] = memory_budget_mb
    if estimate_rate:
        body["estimate_rate"] = True
    _post(ctx, "/growth", body)


@main.command("necklaces")
@click.argument("r", type=int)
@click.option("--list", "list_reps", is_flag=True, help="Enumerate representatives.")
@click.pass_context
def necklaces_cmd(ctx: click.Context, r: int, list_reps: bool) -> None:
    """Count binary necklaces of length R."""
    params: dict = {}
    if list_reps:
        params["include_representatives"] = "true"
    _get(ctx, f"/necklaces/{r}", params)


@main.command("gm-family")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--r", "r", type=int, required=True, help="Necklace length.")
@click.option("--b2", default=None, help="Override the second b-side letter.")
@click.pass_context
def gm_family_cmd(ctx: click.Context, spec_file: str, r: int, b2: str | None) -> None:
    """Build pairwise non-conjugate words indexed by binary necklaces."""
    body: dict = {"group": _load_json(spec_file), "r": r}
    if b2 is not None:
        body["b2"] = b2
    _post(ctx, "/gm-family", body)


@main.command("free-subgroup-check")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--depth", type=int, default=5, show_default=True)
@click.option("--b2", default=None, help="Override the second b-side letter.")
@click.pass_context
def free_subgroup_cmd(ctx: click.Context, spec_file: str, depth: int, b2: str | None) -> None:
    """Verify that two alternating products generate a free subgroup."""
    body: dict = {"group": _load_json(spec_file), "depth": depth}
    if b2 is not None:
        body["b2"] = b2
    _post(ctx, "/free-subgroup-check", body)


@main.command("dihedral-check")
@click.option("--max-power", type=int, default=5, show_default=True)
@click.pass_context
def dihedral_cmd(ctx: click.Context, max_power: int) -> None:
    """Verify a t^n a^-1 = t^-n in the order-2 * order-2 product."""
    _post(ctx, "/dihedral-check", {"max_power": max_power})


@main.command("laurent-check")
@click.option("--coeffs", default=None, help='JSON exponent map, e.g. \'{"0": 1, "2": -3}\'.')
@click.option("--modulus", type=int, default=None, help="Coefficient modulus (omit for Z).")
@click.option("--samples", type=int, default=None, help="Run a randomized suite instead.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def laurent_cmd(
    ctx: click.Context,
    coeffs: str | None,
    modulus: int | None,
    samples: int | None,
    seed: int,
) -> None:
    """Certify that (u - 1) * q is never 1 in a Laurent polynomial ring."""
    if (coeffs is None) == (samples is None):
        raise click.UsageError("pass exactly one of --coeffs or --samples")
    if coeffs is not None:
        try:
            parsed = json.loads(coeffs)
        except json.JSONDecodeError as err:
            raise click.UsageError(f"--coeffs is not valid JSON: {err}")
        if not isinstance(parsed, dict):
            raise click.UsageError("--coeffs must be a JSON object")
        poly: dict = {"coefficients": parsed}
        if modulus is not None:
            poly["modulus"] = modulus
        _post(ctx, "/laurent-check", {"polynomial": poly})
    else:
        _post(ctx, "/laurent-check", {"samples": samples, "seed": seed})


@main.command("classify")
@click.argument("descriptor_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def classify_cmd(ctx: click.Context, descriptor_file: str) -> None:
    """Classify closed-geodesic growth from a manifold descriptor."""
    _post(ctx, "/classify", {"manifold": _load_json(descriptor_file)})


@main.group("bound")
def bound_group() -> None:
    """Exact lower bounds on geodesic counting functions."""


def _range_body(t, t_from, t_to, t_step) -> dict:
    single = t is not None
    ranged = t_from is not None or t_to is not None or t_step is not None
    if single == ranged:
        raise click.UsageError("pass either --t or all of --t-from/--t-to/--t-step")
    if single:
        return {"t": t}
    if t_from is None or t_to is None or t_step is None:
        raise click.UsageError("a range needs --t-from, --t-to, and --t-step")
    return {"t_from": t_from, "t_to": t_to, "t_step": t_step}


@bound_group.command("exponential")
@click.option("--L", "length_bound", required=True, help="Upper bound L on generator lengths.")
@click.option("--L1", "length_min", required=True, help="Shortest geodesic length L1.")
@click.option("--t", default=None, help="Single length threshold.")
@click.option("--t-from", default=None)
@click.option("--t-to", default=None)
@click.option("--t-step", default=None)
@click.option("--emit", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.pass_context
def bound_exponential_cmd(
    ctx: click.Context,
    length_bound: str,
    length_min: str,
    t: str | None,
    t_from: str | None,
    t_to: str | None,
    t_step: str | None,
    emit: str,
) -> None:
    """Exponential bound 2^r L1 / (3 r^2 L) with r = floor(t / 3L)."""
    body = {"L": length_bound, "L1": length_min, "format": emit}
    body.update(_range_body(t, t_from, t_to, t_step))
    _post(ctx, "/bound/exponential", body)


@bound_group.command("polynomial")
@click.option("--k", type=int, required=True, help="Polynomial degree.")
@click.option("--cover-order", type=int, required=True, help="Covering degree divisor.")
@click.option("--lambda-k", required=True, help="Leading coefficient of the cover's count.")
@click.option("--t", default=None, help="Single length threshold.")
@click.option("--t-from", default=None)
@click.option("--t-to", default=None)
@click.option("--t-step", default=None)
@click.option("--emit", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.pass_context
def bound_polynomial_cmd(
    ctx: click.Context,
    k: int,
    cover_order: int,
    lambda_k: str,
    t: str | None,
    t_from: str | None,
    t_to: str | None,
    t_step: str | None,
    emit: str,
) -> None:
    """Polynomial bound (lambda_k / cover_order) * t^k."""
    body = {"k": k, "cover_order": cover_order, "lambda_k": lambda_k, "format": emit}
    body.update(_range_body(t, t_from, t_to, t_step))
    _post(ctx, "/bound/polynomial", body)


if __name__ == "__main__":
    main()
