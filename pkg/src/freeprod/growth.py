"""Growth of a free product: ball enumeration and conjugacy-class counting.

``enumerate_elements`` runs a breadth-first search of the Cayley graph over
the symmetrized generators of both factors, so depth k holds exactly the
elements of word length k.  ``count_conjugacy_classes`` folds the levels
into a cumulative table of G(k) (elements) and F(k) (conjugacy classes,
counted via canonical class keys).

``gm_family`` builds the alternating word family a b_{m_1} a b_{m_2} ...
a b_{m_r} over tuples (m_1..m_r) in {1,2}^r, deduplicated up to cyclic
rotation (one representative per necklace); distinct necklaces give
pairwise non-conjugate, cyclically reduced words of length 2r.  The second
letter b_2 defaults to b_1^2 when that is nontrivial, otherwise to another
declared generator; the construction fails exactly when both factors are
two-element groups.

``verify_free_subgroup`` checks injectivity of the substitution
x -> a b_1, y -> a b_2 on all freely reduced words up to a given length;
``verify_dihedral_relation`` checks a t a^-1 = t^-1 for t = a b in the
order-2 * order-2 product.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .factors import FactorElement, FactorGroup
from .normal_forms import IDENTITY, FreeProduct, Letter, NormalForm

DEFAULT_DEPTH_CAP = 12

# Rough per-object accounting for the memory budget: a stored element costs a
# dict slot, a set slot and a tuple header; each letter a 2-tuple plus boxed
# value.  Heuristic, deliberately conservative.
_BYTES_PER_ELEMENT = 220
_BYTES_PER_LETTER = 130


class EnumerationCapError(ValueError):
    """Requested depth exceeds the configured cap."""


class EnumerationBudgetError(RuntimeError):
    """Memory budget exceeded; carries the levels completed so far."""

    def __init__(self, levels, reached_depth, requested_depth, estimated_mb, budget_mb):
        super().__init__(
            f"memory budget exceeded at depth {reached_depth} of {requested_depth}: "
            f"estimated {estimated_mb:.2f} MB > budget {budget_mb:.2f} MB"
        )
        self.levels = levels
        self.reached_depth = reached_depth
        self.requested_depth = requested_depth
        self.estimated_mb = estimated_mb
        self.budget_mb = budget_mb


def enumerate_elements(
    product: FreeProduct,
    max_k: int,
    *,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    memory_budget_mb: float | None = None,
    threads: int = 1,
) -> dict[int, set]:
    """BFS ball of the free product: depth k -> {g : word_length(g) == k}."""
    if not isinstance(max_k, int) or isinstance(max_k, bool) or max_k < 0:
        raise ValueError(f"max_k must be a nonnegative integer, got {max_k!r}")
    if max_k > depth_cap:
        raise EnumerationCapError(f"max_k {max_k} exceeds the depth cap {depth_cap}")
    if threads < 1:
        raise ValueError("threads must be >= 1")

    steps = [
        (Letter(idx, g),)
        for idx in (1, 2)
        for g in product.factor(idx).symmetric_generators()
    ]
    levels: dict[int, set] = {0: {IDENTITY}}
    seen: dict[NormalForm, int] = {IDENTITY: 0}
    frontier: list[NormalForm] = [IDENTITY]
    elements = 1
    letters = 0

    def expand(chunk):
        return [product.multiply(g, s) for g in chunk for s in steps]

    for depth in range(1, max_k + 1):
        if threads > 1 and len(frontier) > threads:
            size = (len(frontier) + threads - 1) // threads
            chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                batches = list(pool.map(expand, chunks))
        else:
            batches = [expand(frontier)]

        level: set = set()
        for batch in batches:
            for h in batch:
                if h not in seen:
                    seen[h] = depth
                    level.add(h)
                    elements += 1
                    letters += len(h)
        levels[depth] = level
        frontier = list(level)

        if memory_budget_mb is not None:
            estimated_mb = (elements * _BYTES_PER_ELEMENT + letters * _BYTES_PER_LETTER) / 1e6
            if estimated_mb > memory_budget_mb:
                raise EnumerationBudgetError(
                    levels, depth, max_k, estimated_mb, float(memory_budget_mb)
                )
        if not level:
            # ball exhausted (finite group); remaining depths are empty
            for k in range(depth + 1, max_k + 1):
                levels[k] = set()
            break
    return levels


class GrowthRow(NamedTuple):
    k: int
    elements: int  # G(k), cumulative
    classes: int  # F(k), cumulative


@dataclass(frozen=True)
class GrowthTable:
    rows: tuple[GrowthRow, ...]
    partial: bool = False  # True when a budget abort truncated the depths
    abort: str | None = None


def count_conjugacy_classes(
    product: FreeProduct,
    max_k: int,
    *,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    memory_budget_mb: float | None = None,
    threads: int = 1,
) -> GrowthTable:
    """Cumulative G(k)/F(k) table; budget aborts yield a flagged partial table."""
    partial = False
    abort = None
    try:
        levels = enumerate_elements(
            product,
            max_k,
            depth_cap=depth_cap,
            memory_budget_mb=memory_budget_mb,
            threads=threads,
        )
    except EnumerationBudgetError as err:
        levels = err.levels
        partial = True
        abort = str(err)

    rows = []
    total = 0
    keys: set = set()
    for k in sorted(levels):
        level = levels[k]
        total += len(level)
        for g in level:
            keys.add(product.canonical_class_key(g))
        rows.append(GrowthRow(k, total, len(keys)))
    return GrowthTable(tuple(rows), partial=partial, abort=abort)


# -- necklaces ---------------------------------------------------------------


def _totient(d: int) -> int:
    result = d
    m = d
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def necklace_count(r: int) -> int:
    """Binary necklaces of length r: (1/r) * sum_{d|r} phi(d) * 2^(r/d)."""
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    return sum(_totient(d) * 2 ** (r // d) for d in range(1, r + 1) if r % d == 0) // r


def binary_necklaces(r: int) -> tuple[tuple[int, ...], ...]:
    """One canonical (rotation-minimal) representative per necklace, sorted.

    Brute force over all 2^r tuples; meant for the moderate r used by the
    word family, not for bulk counting (use ``necklace_count`` for counts).
    """
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    canonical = {
        min(bits[s:] + bits[:s] for s in range(r))
        for bits in itertools.product((1, 2), repeat=r)
    }
    return tuple(sorted(canonical))


# -- the alternating word family ----------------------------------------------


class GmFamilyError(ValueError):
    """The word-family construction does not apply to this product."""


@dataclass(frozen=True)
class FamilyLetters:
    """The chosen letters: a from one factor, b1/b2 from the other."""

    a_factor: int
    a: FactorElement
    b_factor: int
    b1: FactorElement
    b2: FactorElement
    b2_source: str  # "square-of-b1" | "alternative-generator" | "override"


def _pick_b2(grp: FactorGroup, b1: FactorElement, override: FactorElement | None):
    if override is not None:
        grp.validate_element(override)
        if grp.is_identity(override):
            raise GmFamilyError("b2 override is the identity")
        if override == b1:
            raise GmFamilyError("b2 override equals b1")
        return "override", override
    square = grp.multiply(b1, b1)
    if not grp.is_identity(square):
        return "square-of-b1", square
    for g in grp.generators():
        if g != b1 and not grp.is_identity(g):
            return "alternative-generator", g
    raise GmFamilyError(
        "b1 is an involution and no other generator is declared "
        "(two-element factor: rule 'b2 = b1^2' and rule 'b2 from E - {b1}' both fail)"
    )


def select_family_letters(
    product: FreeProduct, *, b2: FactorElement | None = None
) -> FamilyLetters:
    """Choose a, b1, b2 for the word family.

    Factor 2 is preferred as the b-side; if it cannot supply b2 the roles
    swap.  An explicit ``b2`` override pins the b-side to factor 2.
    """
    reasons = []
    b_sides = (2,) if b2 is not None else (2, 1)
    for b_idx in b_sides:
        a_idx = 3 - b_idx
        a_grp = product.factor(a_idx)
        b_grp = product.factor(b_idx)
        b1 = b_grp.generators()[0]
        try:
            source, b2_val = _pick_b2(b_grp, b1, b2)
        except GmFamilyError as err:
            reasons.append(f"factor {b_idx} as b-side: {err}")
            continue
        return FamilyLetters(
            a_factor=a_idx,
            a=a_grp.generators()[0],
            b_factor=b_idx,
            b1=b1,
            b2=b2_val,
            b2_source=source,
        )
    raise GmFamilyError("; ".join(reasons))


@dataclass(frozen=True)
class WordFamily:
    r: int
    letters: FamilyLetters
    representatives: tuple[tuple[tuple[int, ...], NormalForm], ...]


def gm_family(product: FreeProduct, r: int, *, b2: FactorElement | None = None) -> WordFamily:
    """Necklace-deduplicated family of alternating words of length 2r."""
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    sel = select_family_letters(product, b2=b2)
    b_for = {1: sel.b1, 2: sel.b2}
    reps = []
    for tup in binary_necklaces(r):
        letters = []
        for m in tup:
            letters.append(Letter(sel.a_factor, sel.a))
            letters.append(Letter(sel.b_factor, b_for[m]))
        reps.append((tup, tuple(letters)))
    keys = {product.canonical_class_key(nf) for _, nf in reps}
    if len(keys) != len(reps):
        # cannot happen for valid selections; guards a silent miscount
        raise GmFamilyError("internal error: family members are not pairwise non-conjugate")
    return WordFamily(r=r, letters=sel, representatives=tuple(reps))


# -- growth-rate estimation ----------------------------------------------------


@dataclass(frozen=True)
class GrowthRateEstimate:
    lambda_elements: float
    lambda_classes: float
    residual_elements: float  # rms of log-count residuals
    residual_classes: float
    depth_range: tuple[int, int]  # [k_lo, k_hi] used for the fit


def growth_rate_estimate(table: GrowthTable) -> GrowthRateEstimate:
    """exp(slope) of a least-squares line through log(count) vs k.

    Uses the upper half of the available depths, where the exponential tail
    dominates transient small-ball effects.
    """
    rows = table.rows
    if len(rows) < 4:
        raise ValueError(f"need at least 4 table rows, got {len(rows)}")
    tail = rows[len(rows) // 2 :]
    ks = np.array([row.k for row in tail], dtype=float)

    def fit(values):
        logs = np.log(np.array(values, dtype=float))
        slope, intercept = np.polyfit(ks, logs, 1)
        residual = float(np.sqrt(np.mean((slope * ks + intercept - logs) ** 2)))
        return math.exp(slope), residual

    lam_g, res_g = fit([row.elements for row in tail])
    lam_f, res_f = fit([row.classes for row in tail])
    return GrowthRateEstimate(
        lambda_elements=lam_g,
        lambda_classes=lam_f,
        residual_elements=res_g,
        residual_classes=res_f,
        depth_range=(tail[0].k, tail[-1].k),
    )


# -- structural self-checks ------------------------------------------------------


@dataclass(frozen=True)
class FreeSubgroupCheck:
    ok: bool
    depth: int
    words_checked: int
    x: NormalForm  # image of the first free generator (a b1)
    y: NormalForm  # image of the second (a b2)
    witness: tuple[int, ...] | None = None  # failing word over {1,-1,2,-2}
    collides_with: tuple[int, ...] | None = None


def verify_free_subgroup(
    product: FreeProduct, depth: int, *, b2: FactorElement | None = None
) -> FreeSubgroupCheck:
    """Injectivity of x -> a b1, y -> a b2 on reduced words of length <= depth.

    Walks all freely reduced words over {x, y, x^-1, y^-1}, multiplying out
    their images; any repeated image or nonempty word landing on the
    identity is returned as a witness.
    """
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 1:
        raise ValueError(f"depth must be a positive integer, got {depth!r}")
    sel = select_family_letters(product, b2=b2)
    x = (Letter(sel.a_factor, sel.a), Letter(sel.b_factor, sel.b1))
    y = (Letter(sel.a_factor, sel.a), Letter(sel.b_factor, sel.b2))
    images = {1: x, 2: y, -1: product.invert(x), -2: product.invert(y)}

    seen: dict[NormalForm, tuple[int, ...]] = {IDENTITY: ()}
    frontier: list[tuple[tuple[int, ...], NormalForm]] = [((), IDENTITY)]
    checked = 0
    for _ in range(depth):
        nxt = []
        for word, nf in frontier:
            for s in (1, -1, 2, -2):
                if word and s == -word[-1]:
                    continue  # not freely reduced
                w2 = word + (s,)
                nf2 = product.multiply(nf, images[s])
                checked += 1
                if nf2 in seen:
                    return FreeSubgroupCheck(
                        ok=False,
                        depth=depth,
                        words_checked=checked,
                        x=x,
                        y=y,
                        witness=w2,
                        collides_with=seen[nf2],
                    )
                seen[nf2] = w2
                nxt.append((w2, nf2))
        frontier = nxt
    return FreeSubgroupCheck(ok=True, depth=depth, words_checked=checked, x=x, y=y)


@dataclass(frozen=True)
class DihedralCheck:
    ok: bool
    powers_checked: int
    t: NormalForm


def verify_dihedral_relation(
    product: FreeProduct | None = None, *, max_power: int = 5
) -> DihedralCheck:
    """In an order-2 * order-2 product: a t^n a^-1 == t^-n for t = a b."""
    from .factors import FiniteCyclicGroup  # default construction only

    if product is None:
        product = FreeProduct(
            FiniteCyclicGroup(2, letter="a"), FiniteCyclicGroup(2, letter="b")
        )
    if product.factor(1).order() != 2 or product.factor(2).order() != 2:
        raise ValueError("dihedral relation check needs two order-2 factors")
    a = (Letter(1, product.factor(1).generators()[0]),)
    b = (Letter(2, product.factor(2).generators()[0]),)
    t = product.multiply(a, b)
    ok = all(
        product.conjugate(product.power(t, n), by=a) == product.invert(product.power(t, n))
        for n in range(0, max_power + 1)
    )
    return DihedralCheck(ok=ok, powers_checked=max_power, t=t)
