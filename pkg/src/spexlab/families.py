"""Desk-scale checks of the walk-family lemmas and the spectral bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .constructions import (
    ConstructionError,
    matching,
    nearly_regular_minimal_parts,
    q_double_star_parts,
    q_star_parts,
    regular_spread,
)
from .forbid import check_observation1, has_fan, has_path
from .graph import Graph, canonical_form, disjoint_union, join
from .polynomial import IntPolynomial, RootInterval, compare_largest_roots, largest_real_root
from .search import enumerate_regular_components
from .spectral import QuotientMatrix, equitable_quotient, equitable_refinement, spectral_radius
from .walks import ex_infinity_trace


class FamilyError(ValueError):
    """Parameters outside the lemma's hypotheses or an infeasible construction."""


def _require_odd_k(k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise FamilyError("k must be odd and >= 3")


# -- bounded-order lemma -------------------------------------------------------


@dataclass
class BoundedOrderReport:
    k: int
    n: int
    classes: int
    labelled: int
    all_contain_path: bool
    path_free: list[str]


def verify_bounded_order(k: int, n: int) -> BoundedOrderReport:
    """Every connected nearly k-regular graph of order n > 2k+1 whose
    degree-(k-1) vertex has a clique neighbourhood contains P_{2k+3}."""
    _require_odd_k(k)
    if (k * n) % 2 == 0:
        raise FamilyError(f"no nearly {k}-regular graph of order {n}: k*n is even")
    if n <= 2 * k + 1:
        raise FamilyError(f"the lemma needs n > 2k+1 = {2 * k + 1}")
    if n > 12:
        raise FamilyError("exhaustive mode is limited to n <= 12")
    census = enumerate_regular_components(k, nearly=True, order=n, clique_root=True)
    free = [canonical_form(g) for g in census.graphs if not has_path(g, 2 * k + 3)]
    return BoundedOrderReport(k, n, len(census.graphs), census.labelled_leaves, not free, free)


# -- the walk lemma ---------------------------------------------------------------


@dataclass
class WalkLemmaReport:
    k: int
    n: int
    special_components: list[str]
    regular_components: list[str]
    family_size: int
    survivors: list[tuple[str, ...]]
    expected: list[tuple[str, ...]]
    holds: bool
    first_strict_level: int
    last_shrink_level: int
    sizes: list[int]
    exhaustive: bool


def _multisets_summing(total: int, parts: list[tuple[int, str]]) -> list[tuple[str, ...]]:
    """Multisets of components (order, form) with orders summing to ``total``."""
    out: list[tuple[str, ...]] = []
    orders = sorted(parts)

    def go(start: int, rest: int, acc: list[str]) -> None:
        if rest == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(orders)):
            q, f = orders[i]
            if q > rest:
                break
            acc.append(f)
            go(i, rest - q, acc)
            acc.pop()

    go(0, total, [])
    return out


def walk_lemma_family(k: int, n: int) -> tuple[list[tuple[str, ...]], dict[str, Graph], bool]:
    """All members of G_{n,k} as (special form, sorted regular forms...)."""
    forbid = 2 * k + 3
    special = enumerate_regular_components(k, nearly=True, forbid_path=forbid)
    regular = enumerate_regular_components(k, nearly=False, forbid_path=forbid)
    lookup = {canonical_form(g): g for g in special.graphs + regular.graphs}
    reg_parts = [(g.n, canonical_form(g)) for g in regular.graphs]
    members = []
    for s in special.graphs:
        for rest in _multisets_summing(n - s.n, reg_parts):
            members.append((canonical_form(s),) + rest)
    return sorted(members), lookup, special.exhaustive and regular.exhaustive


def verify_walk_lemma(k: int, n: int) -> WalkLemmaReport:
    """EX^infinity of G_{n,k} against the subfamily with a Q*_k component."""
    _require_odd_k(k)
    if k == 7:
        raise FamilyError("k = 7 is covered by the direct Q** comparison")
    if n % 2 == 0 or n < 4 * k + 3:
        raise FamilyError(f"n must be odd and >= 4k+3 = {4 * k + 3}")
    if k != 3 or n > 19:
        raise FamilyError("desk-scale walk lemma supports k = 3 and n <= 19")
    members, lookup, exhaustive = walk_lemma_family(k, n)
    if not members:
        raise FamilyError(f"G_({n},{k}) is empty")
    graphs = [disjoint_union(*(lookup[f] for f in m)) for m in members]
    index = {id(g): m for g, m in zip(graphs, members)}
    trace = ex_infinity_trace(graphs)
    survivors = sorted(index[id(g)] for g in trace.survivors)
    qform = canonical_form(q_star_parts(k).graph)
    expected = [m for m in members if m[0] == qform]
    first = next((i + 1 for i, s in enumerate(trace.sizes) if s < len(members)), 0)
    specials = sorted({m[0] for m in members})
    regulars = sorted({f for m in members for f in m[1:]})
    return WalkLemmaReport(k, n, specials, regulars, len(members), survivors, expected,
                           survivors == expected, first, trace.last_shrink_level, list(trace.sizes), exhaustive)


# -- spectral comparison theorem -------------------------------------------------


def _with_rest(left: Graph, parts: list[tuple[int, ...]], names: list[str], right_size: int):
    g = join(left, Graph.empty(right_size))
    used = {v for p in parts for v in p}
    rest = tuple(v for v in range(left.n) if v not in used)
    out_parts = list(parts)
    out_names = list(names)
    if rest:
        out_parts.append(rest)
        out_names.append("L-rest")
    out_parts.append(tuple(range(left.n, left.n + right_size)))
    out_names.append("R")
    return g, out_parts, out_names


def _spread_or_empty(m: int, k: int) -> Graph:
    if m < 0:
        raise ConstructionError("special component larger than L")
    return regular_spread(m, k) if m else Graph.empty(0)


def spec_compare_construction(k: int, n: int):
    """T(n,2) with a nearly k-regular P_{2k+3}-free graph in L, plus its quotient partition.

    Uses a V_{n/2,k} member when one exists, otherwise the minimal nearly
    regular component plus a k-regular spread (a G_{n/2,k} member).
    """
    _require_odd_k(k)
    if n % 4 != 2:
        raise FamilyError("n must be 2 mod 4")
    half = n // 2
    lp = q_double_star_parts() if k == 7 else q_star_parts(k)
    kind = "Q**" if k == 7 else "Q*_k"
    try:
        spread = _spread_or_empty(half - lp.graph.n, k)
    except ConstructionError:
        lp = nearly_regular_minimal_parts(k)
        kind = "minimal nearly-regular component"
        try:
            spread = _spread_or_empty(half - lp.graph.n, k)
        except ConstructionError as exc:
            raise FamilyError(f"no nearly {k}-regular P_{2 * k + 3}-free graph of order {half}") from exc
    left = disjoint_union(lp.graph, spread)
    g, parts, names = _with_rest(left, [tuple(p) for p in lp.parts], list(lp.names), n - half)
    return g, parts, names, kind, left


@dataclass
class SpecCompareReport:
    k: int
    n: int
    special: str
    rho: float
    quotient_root: RootInterval
    bound: float
    margin: float
    exact_below_bound: bool
    quotient_dim: int
    agreement: float
    holds: bool
    quotient: QuotientMatrix = field(repr=False)


def g_polynomial(k: int, n: int) -> IntPolynomial:
    """4 g(x) = 4x^2 - 4kx - (n^2 - 4), whose largest root is (k + sqrt(k^2+n^2-4))/2."""
    return IntPolynomial((-(n * n - 4), -4 * k, 4))


def verify_spec_compare(k: int, n: int) -> SpecCompareReport:
    if n > 60:
        raise FamilyError("n <= 60 for direct eigencomputation")
    g, parts, names, kind, left = spec_compare_construction(k, n)
    if has_path(left, 2 * k + 3):
        raise FamilyError("embedded graph contains P_{2k+3}")
    res = spectral_radius(g)
    q = equitable_quotient(g, parts)
    root = q.largest_root()
    bound = (k + math.sqrt(k * k + n * n - 4)) / 2
    exact = compare_largest_roots(q.char_poly(), g_polynomial(k, n)) < 0
    agree = abs(res.rho - float(root))
    return SpecCompareReport(k, n, kind, res.rho, root, bound, bound - res.rho, exact, q.dim, agree,
                             exact and bound - res.rho > 0 and agree <= 1e-8, q)


# -- lower-bound rows ---------------------------------------------------------------


LOWER_BOUND_ROWS = {
    "odd k, n = 0 mod 4": "(k+sqrt(k^2+n^2))/2",
    "odd k, n = 2 mod 4": "(k+sqrt(k^2+n^2-4))/2",
    "odd k, n = 1 mod 4": "(k+sqrt(k^2+n^2-1))/2",
    "odd k, n = 3 mod 4": "(k+sqrt(k^2+n^2-1))/2",
    "even k, n even": "(k+sqrt(k^2+n^2))/2",
    "even k, n odd": "(k+sqrt(k^2+n^2-1))/2",
}


def lower_bound_row(k: int, n: int) -> tuple[str, int, int]:
    """(row label, |H|, c) where the bound is (k + sqrt(k^2 + c))/2."""
    if k % 2:
        r = n % 4
        size = {0: n // 2, 2: n // 2 + 1, 1: (n - 1) // 2, 3: (n + 1) // 2}[r]
        c = {0: n * n, 2: n * n - 4, 1: n * n - 1, 3: n * n - 1}[r]
        return f"odd k, n = {r} mod 4", size, c
    if n % 2 == 0:
        return "even k, n even", n // 2, n * n
    return "even k, n odd", (n + 1) // 2, n * n - 1


@dataclass
class LowerBoundReport:
    k: int
    n: int
    row: str
    formula: str
    left_size: int
    fan_free: bool
    observation_holds: bool
    rho: float
    closed_form: float
    error: float
    exact_equal: bool
    holds: bool


def verify_lower_bounds(k: int, n: int) -> LowerBoundReport:
    """Build the row's H v K̄ and check freeness and the closed-form radius."""
    if k < 1:
        raise FamilyError("k must be >= 1")
    if n > 60:
        raise FamilyError("n <= 60")
    row, size, c = lower_bound_row(k, n)
    try:
        h = regular_spread(size, k)
    except ConstructionError as exc:
        raise FamilyError(f"no {k}-regular graph of order {size} with components <= 2k") from exc
    g = join(h, Graph.empty(n - size))
    ell = 2 * k + 3
    fan_free = not has_fan(g, ell)
    obs = check_observation1(h, k, ell)
    q = equitable_quotient(g, [tuple(range(size)), tuple(range(size, n))])
    closed = (k + math.sqrt(k * k + c)) / 2
    target = IntPolynomial((-c, -4 * k, 4))
    exact = compare_largest_roots(q.char_poly(), target) == 0
    rho = spectral_radius(g).rho
    err = abs(rho - closed)
    return LowerBoundReport(k, n, row, LOWER_BOUND_ROWS[row], size, fan_free, obs, rho, closed, err, exact,
                            fan_free and obs and exact and err <= 1e-9)


# -- the n = 2 mod 4 subcases -------------------------------------------------------


def k1_half_construction(n: int):
    """(K_1 ∪ M_{n/2-1}) v K̄_{n/2} with its three-part partition."""
    if n % 4 != 2:
        raise FamilyError("n must be 2 mod 4")
    half = n // 2
    left = matching(half)          # half is odd: the last vertex is isolated
    g = join(left, Graph.empty(half))
    parts = [(half - 1,), tuple(range(half - 1)), tuple(range(half, n))]
    return g, parts


def k1_offset_construction(n: int, offset: int):
    """M_{n/2+offset} v K̄_{n/2-offset} for offset = ±1, with its two-part partition."""
    size = n // 2 + offset
    g = join(matching(size), Graph.empty(n - size))
    return g, [tuple(range(size)), tuple(range(size, n))]


@dataclass
class Subcase1Report:
    n: int
    h1: IntPolynomial
    g_polys: list[IntPolynomial]
    rho_half: RootInterval
    rho_offset: RootInterval
    half_wins: bool


def verify_subcase_k1(n: int) -> Subcase1Report:
    """Exact comparison: the |L| = n/2 construction beats |L| = n/2 ± 1 for k = 1."""
    g, parts = k1_half_construction(n)
    h1 = equitable_quotient(g, parts).char_poly()
    gps = []
    for off in (-1, 1):
        go, po = k1_offset_construction(n, off)
        gps.append(equitable_quotient(go, po).char_poly())
    wins = all(compare_largest_roots(h1, p) > 0 for p in gps)
    return Subcase1Report(n, h1, gps, largest_real_root(h1), largest_real_root(gps[0]), wins)


@dataclass
class Subcase3Report:
    n: int
    offset_rho: float
    best_half_rho: float
    members: int
    all_below: bool


def verify_subcase_k3(n: int = 30) -> Subcase3Report:
    """For k = 3: the |L| = n/2 ± 1 regular constructions beat every enumerated
    |L| = n/2 nearly regular construction."""
    k = 3
    half = n // 2
    members, lookup, _ = walk_lemma_family(k, half)
    offset = join(regular_spread(half + 1, k), Graph.empty(half - 1))
    offset_rho = spectral_radius(offset).rho
    target = g_polynomial(k, n)
    best = 0.0
    below = True
    for m in members:
        left = disjoint_union(*(lookup[f] for f in m))
        gm = join(left, Graph.empty(n - half))
        best = max(best, spectral_radius(gm).rho)
        cells = equitable_refinement(gm)
        if len(cells) <= 16:
            below &= compare_largest_roots(equitable_quotient(gm, cells).char_poly(), target) < 0
        else:
            below &= spectral_radius(gm).rho < offset_rho - 1e-9
    return Subcase3Report(n, offset_rho, best, len(members), below and best < offset_rho)
