"""Acceptance criteria, one check per criterion at its stated tolerance.

Run under pytest (a summary block lists one PASS/FAIL line per criterion) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import os
import random
import sys
import time
from dataclasses import dataclass
from typing import Callable

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spexlab.constructions import (  # noqa: E402
    complete,
    empty,
    fan,
    nearly_regular_member,
    nearly_regular_v_family,
    q_double_star,
    q_star,
    regular_spread,
    spex_candidate,
    star,
)
from spexlab.families import (  # noqa: E402
    k1_half_construction,
    k1_offset_construction,
    lower_bound_row,
    spec_compare_construction,
    verify_lower_bounds,
    verify_spec_compare,
    verify_subcase_k1,
    verify_walk_lemma,
)
from spexlab.forbid import has_fan, naive_subgraph_oracle  # noqa: E402
from spexlab.graph import Graph, canonical_form, disjoint_union, join  # noqa: E402
from spexlab.search import enumerate_graphs, enumerate_regular_components, verify_theorem  # noqa: E402
from spexlab.spectral import equitable_quotient, equitable_refinement, spectral_radius  # noqa: E402
from spexlab.walks import GT, walk_closed_forms, walk_compare_detail, walk_profile, walk_totals  # noqa: E402

try:
    from conftest import ACCEPTANCE_LINES, random_connected_graph
except ImportError:  # pragma: no cover
    ACCEPTANCE_LINES = []


@dataclass
class Outcome:
    ok: bool
    detail: str


def _record(number: int, title: str, budget: float, check: Callable[[], Outcome]) -> Outcome:
    t0 = time.perf_counter()
    try:
        out = check()
    except Exception as exc:  # a crash is a failure, reported with its message
        out = Outcome(False, f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    within = elapsed <= budget
    status = "PASS" if out.ok and within else "FAIL"
    timing = f"{elapsed:.1f}s of {budget:g}s" + ("" if within else " OVER BUDGET")
    line = f"criterion {number} {title} ... {status} [{timing}] {out.detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return Outcome(status == "PASS", out.detail)


# -- criterion 1 -----------------------------------------------------------------


def check_walk_gap() -> Outcome:
    det = walk_compare_detail(q_double_star(), q_star(7))
    ok = (det.ordering, det.first_diff_level, det.gap) == (GT, 7, 84)
    a, b = walk_totals(q_double_star(), 7)[-1], walk_totals(q_star(7), 7)[-1]
    return Outcome(ok, f"expected (≻, 7, 84); computed ({det.ordering}, {det.first_diff_level}, {det.gap}) "
                       f"with W^7 = {a} vs {b}")


# -- criterion 2 -----------------------------------------------------------------


def _members(n: int, k: int) -> list[Graph]:
    if k == 3:
        specials = list(enumerate_regular_components(3, nearly=True, forbid_path=9).graphs)
    else:
        from spexlab.constructions import nearly_regular_minimal_parts
        specials = [q_double_star(), q_star(k), nearly_regular_minimal_parts(k).graph]
    out = [nearly_regular_member(n, k, s) for s in specials]
    if n >= 4 * k + 3:
        out.append(nearly_regular_v_family(n, k))
    return out


def check_closed_forms() -> Outcome:
    bad, total = [], 0
    for n, k in ((19, 3), (23, 3), (29, 7)):
        want = walk_closed_forms(n, k)
        for g in _members(n, k):
            total += 1
            if walk_totals(g, 4) != want:
                bad.append((n, k, str(g)))
    return Outcome(not bad, f"{total} members checked, {len(bad)} mismatches")


# -- criterion 3 -----------------------------------------------------------------


def _join_instances():
    for k, n in ((3, 30), (3, 42), (3, 54), (5, 46), (5, 58), (7, 34), (7, 46), (7, 58)):
        g, parts, names, kind, _ = spec_compare_construction(k, n)
        yield f"compare({k},{n}) {len(parts)}-part", g, parts
    for n in (10, 14, 18, 22):
        g, parts = k1_half_construction(n)
        yield f"B_1 n={n}", g, parts
    for n, off in ((10, -1), (18, 1)):
        g, parts = k1_offset_construction(n, off)
        yield f"k=1 offset {off:+d} n={n}", g, parts
    for k, n in ((1, 12), (3, 24), (2, 13), (4, 25)):
        _, size, _ = lower_bound_row(k, n)
        g = join(regular_spread(size, k), empty(n - size))
        yield f"lower({k},{n})", g, [tuple(range(size)), tuple(range(size, n))]
    for name, special in (("Q**", q_double_star()), ("Q*_7", q_star(7))):
        g = join(special, empty(15))
        yield f"{name} v K15bar", g, equitable_refinement(g)


def check_quotients() -> Outcome:
    worst, count, seen = 0.0, 0, set()
    for label, g, parts in _join_instances():
        assert g.n <= 60
        q = equitable_quotient(g, parts)
        seen.add(q.dim)
        worst = max(worst, abs(spectral_radius(g).rho - float(q.largest_root())))
        count += 1
    ok = count >= 20 and worst <= 1e-8 and {3, 6, 8} <= seen
    return Outcome(ok, f"{count} joins, quotient dims {sorted(seen)}, max deviation {worst:.2e}")


# -- criterion 4 -----------------------------------------------------------------


LOWER_BOUND_INSTANCES = [(1, 12), (3, 24), (1, 10), (3, 14), (1, 13), (3, 21),
                         (1, 11), (3, 19), (2, 12), (4, 24), (2, 13), (4, 25)]


def check_lower_bounds() -> Outcome:
    rows: dict[str, int] = {}
    worst = 0.0
    failures = []
    for k, n in LOWER_BOUND_INSTANCES:
        rep = verify_lower_bounds(k, n)
        rows[rep.row] = rows.get(rep.row, 0) + 1
        worst = max(worst, rep.error)
        if not rep.holds:
            failures.append((k, n))
    ok = not failures and len(rows) == 6 and all(c == 2 for c in rows.values())
    return Outcome(ok, f"{len(rows)} rows x 2 instances, max error {worst:.1e}, failures {failures}")


# -- criterion 5 -----------------------------------------------------------------


SPEX_ROWS = [(6, 4), (7, 4), (8, 4), (7, 5), (8, 5)]


def check_spex() -> Outcome:
    parts = []
    required_ok = True
    for n, ell in SPEX_ROWS:
        t0 = time.perf_counter()
        rep = verify_theorem(n, ell)
        dt = time.perf_counter() - t0
        win = ",".join(rep.certificate.winners)
        parts.append(f"({n},{ell}) {rep.status} winners={win} rho={float(rep.certificate.rho):.6f} {dt:.1f}s")
        if ell == 4:
            # The H_4 characterisation is stated for every n >= 6.
            required_ok &= rep.status == "PASS"
        if n <= 7 and dt > 60:
            required_ok = False
    return Outcome(required_ok, "; ".join(parts))


# -- criterion 6 -----------------------------------------------------------------


def check_spec_compare() -> Outcome:
    parts, ok = [], True
    for k, n in ((3, 30), (3, 42), (7, 34)):
        rep = verify_spec_compare(k, n)
        ok &= rep.holds and rep.margin > 0 and rep.exact_below_bound
        parts.append(f"({k},{n}) margin {rep.margin:.3e}")
    return Outcome(ok, "; ".join(parts))


# -- criterion 7 -----------------------------------------------------------------


def check_subcase_k1() -> Outcome:
    parts, ok = [], True
    for n in (10, 14, 18):
        rep = verify_subcase_k1(n)
        ok &= rep.half_wins
        parts.append(f"n={n} rho(n/2)={float(rep.rho_half):.9f} > rho(n/2±1)={float(rep.rho_offset):.9f}")
    return Outcome(ok, "; ".join(parts))


# -- criterion 8 -----------------------------------------------------------------


def check_walk_lemma() -> Outcome:
    parts, ok = [], True
    for n in (15, 17):
        rep = verify_walk_lemma(3, n)
        ok &= rep.holds and rep.exhaustive
        parts.append(f"n={n} family {rep.family_size}, survivors {len(rep.survivors)} = "
                     f"Q*_3 subfamily {len(rep.expected)}, first strict level {rep.first_strict_level}")
    return Outcome(ok, "; ".join(parts))


# -- criterion 9 -----------------------------------------------------------------


def _suite_fan_oracle() -> bool:
    for n in range(1, 7):
        for g in enumerate_graphs(n):
            for ell in (4, 5):
                expected = naive_subgraph_oracle(fan(ell), g) if ell < n else False
                if has_fan(g, ell) != expected:
                    return False
    return True


def _suite_monotonicity() -> bool:
    rng = random.Random(20240601)
    for _ in range(300):
        g = random_connected_graph(rng, rng.randint(2, 10), rng.uniform(0.1, 0.7))
        keep = [v for v in range(g.n) if rng.random() < 0.85] or [0]
        idx = {v: i for i, v in enumerate(keep)}
        edges = [(idx[a], idx[b]) for a, b in g.edges() if a in idx and b in idx and rng.random() < 0.85]
        h = Graph.from_edges(len(keep), edges)
        if h.n == g.n and h.num_edges == g.num_edges:
            continue
        if not spectral_radius(h).rho <= spectral_radius(g).rho + 1e-10:
            return False
    return True


def _suite_split_identity() -> bool:
    for n in range(1, 9):
        for g in enumerate_graphs(n):
            p = walk_profile(g, 8)
            w = lambda ell, u: 1 if ell == 0 else p.w(ell, u)
            for ell in range(1, 9):
                for i in range(ell + 1):
                    if p.W(ell) != sum(w(i, u) * w(ell - i, u) for u in range(n)):
                        return False
    return True


def _suite_degree_square() -> bool:
    for n in range(3, 8):
        by_m: dict[int, list[Graph]] = {}
        for g in enumerate_graphs(n):
            if 1 <= g.num_edges <= 5 and n >= g.num_edges + 2:
                by_m.setdefault(g.num_edges, []).append(g)
        for m, gs in by_m.items():
            sq = [sum(d * d for d in g.degrees()) for g in gs]
            winners = {canonical_form(g) for g, s in zip(gs, sq) if s == max(sq)}
            expected = {canonical_form(disjoint_union(star(m + 1), empty(n - m - 1)))}
            if m == 3:
                expected.add(canonical_form(disjoint_union(complete(3), empty(n - 3))))
            if winners != expected:
                return False
    return True


def check_property_suites() -> Outcome:
    results = {
        "fan=naive(n<=6)": _suite_fan_oracle(),
        "monotonicity(300)": _suite_monotonicity(),
        "split identity(n<=8,L=8)": _suite_split_identity(),
        "degree-square(n<=7,m<=5)": _suite_degree_square(),
    }
    return Outcome(all(results.values()), ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in results.items()))


# -- registry --------------------------------------------------------------------


CRITERIA = [
    (1, "walk gap Q** vs Q*_7", 1, check_walk_gap),
    (2, "closed-form walk totals", 5, check_closed_forms),
    (3, "quotient agreement", 30, check_quotients),
    (4, "lower-bound rows", 30, check_lower_bounds),
    (5, "brute-force SPEX", 31 * 60, check_spex),
    (6, "spectral comparison", 60, check_spec_compare),
    (7, "k=1 exact root comparison", 5, check_subcase_k1),
    (8, "walk lemma at desk scale", 600, check_walk_lemma),
    (9, "property suites", 300, check_property_suites),
]


@pytest.mark.parametrize("number,title,budget,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, budget, check):
    out = _record(number, title, budget, check)
    assert out.ok, out.detail


if __name__ == "__main__":
    results = [_record(*c) for c in CRITERIA]
    sys.exit(0 if all(r.ok for r in results) else 1)
