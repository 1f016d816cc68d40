from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from spexlab.constructions import (
    complete,
    empty,
    nearly_regular_member,
    nearly_regular_v_family,
    path,
    q_double_star,
    q_star,
    star,
)
from spexlab.families import walk_lemma_family
from spexlab.graph import Graph, canonical_form, disjoint_union, join
from spexlab.search import enumerate_graphs, enumerate_regular_components
from spexlab.spectral import equitable_quotient, equitable_refinement, rho_compare_exact
from spexlab.polynomial import compare_largest_roots
from spexlab.walks import (
    EQ,
    GT,
    LT,
    ex_filter,
    ex_infinity,
    ex_infinity_trace,
    walk_closed_forms,
    walk_compare,
    walk_compare_detail,
    walk_profile,
    walk_totals,
)

from conftest import random_graph


def oracle_totals(g: Graph, upto: int) -> list[int]:
    """W^1..W^upto from integer matrix powers (object dtype, no overflow)."""
    a = np.array(g.to_numpy(), dtype=object).astype(int).astype(object)
    ones = np.array([1] * g.n, dtype=object)
    out, m = [], np.identity(g.n, dtype=int).astype(object)
    for _ in range(upto):
        m = m.dot(a)
        out.append(int(ones.dot(m).dot(ones)))
    return out


def test_profile_examples():
    p = walk_profile(complete(2), 3)
    assert all(p.w(ell, u) == 1 for ell in (1, 2, 3) for u in (0, 1))
    assert p.totals == (2, 2, 2)
    with pytest.raises(ValueError):
        walk_profile(complete(2), 0)


def test_profile_vs_matrix_powers(rng):
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 12), rng.random())
        assert walk_totals(g, 12) == oracle_totals(g, 12)


def test_big_integers_do_not_overflow():
    # K_16 has W^30 = 16 * 15^30, far beyond 64 bits.
    assert walk_totals(complete(16), 30)[-1] == 16 * 15 ** 30


def _split_identity_holds(g: Graph, L: int) -> bool:
    p = walk_profile(g, L)
    w = lambda ell, u: 1 if ell == 0 else p.w(ell, u)
    return all(p.W(ell) == sum(w(i, u) * w(ell - i, u) for u in range(g.n))
               for ell in range(1, L + 1) for i in range(ell + 1))


def test_split_identity_all_graphs_to_order_8():
    for n in range(1, 9):
        for g in enumerate_graphs(n):
            assert _split_identity_holds(g, 8)


def test_split_identity_random_orders_9_10(rng):
    for _ in range(100):
        assert _split_identity_holds(random_graph(rng, rng.randint(9, 10)), 8)


@pytest.mark.parametrize("g,k", [(q_star(3), 3), (q_star(5), 5), (q_double_star(), 7)])
def test_distance_class_values(g, k):
    u = g.degrees().index(k - 1)
    n1 = set(g.neighbors(u))
    p = walk_profile(g, 3)
    assert p.w(2, u) == k * k - k
    assert p.w(3, u) == (k * k - 1) * (k - 1)
    for v in range(g.n):
        if v in n1:
            assert p.w(2, v) == k * k - 1
        elif v != u:
            assert p.w(2, v) == k * k


@pytest.mark.parametrize("n,k,special", [(19, 3, None), (23, 3, None), (25, 5, None), (31, 7, None),
                                         (29, 7, "qdoublestar"), (29, 7, "qstar")])
def test_closed_forms(n, k, special):
    if special == "qdoublestar":
        g = nearly_regular_member(n, k, q_double_star())
    elif special == "qstar":
        g = nearly_regular_member(n, k, q_star(k))
    elif n >= 4 * k + 3:
        g = nearly_regular_v_family(n, k)
    assert walk_totals(g, 4) == walk_closed_forms(n, k)


def test_closed_forms_on_every_enumerated_special_component():
    census = enumerate_regular_components(3, nearly=True, forbid_path=9)
    for comp in census.graphs:
        g = nearly_regular_member(19, 3, comp)
        assert walk_totals(g, 4) == walk_closed_forms(19, 3)


def test_closed_form_errors():
    with pytest.raises(ValueError):
        walk_closed_forms(19, 4)
    with pytest.raises(ValueError):
        walk_closed_forms(18, 3)


def test_compare_examples():
    assert walk_compare(complete(3), complete(3)) == EQ
    a = disjoint_union(star(4), empty(2))          # K_{1,3} plus two isolated vertices
    b = disjoint_union(complete(3), empty(3))
    det = walk_compare_detail(a, b)
    ta, tb = oracle_totals(a, 3), oracle_totals(b, 3)
    assert ta[:2] == tb[:2] == [6, 12]
    assert det.ordering == (GT if ta[2] > tb[2] else LT) and det.first_diff_level == 3
    assert det.gap == ta[2] - tb[2] == -6
    assert walk_compare(b, a) == GT


def test_compare_cutoff_is_sufficient(rng):
    # Whenever two graphs agree to the cutoff they agree much further.
    for _ in range(200):
        a = random_graph(rng, rng.randint(1, 7))
        b = random_graph(rng, rng.randint(1, 7))
        det = walk_compare_detail(a, b)
        if det.ordering == EQ:
            assert walk_totals(a, 40) == walk_totals(b, 40)


def test_compare_antisymmetric(rng):
    flip = {GT: LT, LT: GT, EQ: EQ}
    for _ in range(200):
        a, b = random_graph(rng, rng.randint(1, 8)), random_graph(rng, rng.randint(1, 8))
        assert walk_compare(b, a) == flip[walk_compare(a, b)]


def test_q_double_star_vs_q_star_7_computed_values():
    # Independent matrix-power oracle for the two order-15 graphs.
    a, b = q_double_star(), q_star(7)
    ta, tb = oracle_totals(a, 8), oracle_totals(b, 8)
    assert ta[:6] == tb[:6]
    assert ta[6] - tb[6] == -6
    det = walk_compare_detail(a, b)
    assert (det.ordering, det.first_diff_level, det.gap) == (LT, 7, -6)
    # W^7 through the split formula sum_v w^3(v) w^4(v) agrees.
    for g, t in ((a, ta), (b, tb)):
        p = walk_profile(g, 4)
        assert sum(p.w(3, v) * p.w(4, v) for v in range(g.n)) == t[6]


def test_q_double_star_beats_q_star_7_as_stated():
    """The stated relation: Q** ≻ Q*_7 first at level 7 with gap 84 (currently contradicted)."""
    det = walk_compare_detail(q_double_star(), q_star(7))
    assert (det.ordering, det.first_diff_level, det.gap) == (GT, 7, 84)


def test_ex_infinity_q_double_star_as_stated():
    """The stated filtration outcome EX^infinity({Q**, Q*_7}) = {Q**} (currently contradicted)."""
    (survivor,) = ex_infinity([q_double_star(), q_star(7)])
    assert canonical_form(survivor) == canonical_form(q_double_star())


def test_ex_infinity_q_double_star_computed():
    (survivor,) = ex_infinity([q_double_star(), q_star(7)])
    assert canonical_form(survivor) == canonical_form(q_star(7))


def test_walk_order_matches_embedded_radius():
    # The walk-larger graph gives the larger radius after embedding in K_{15,15}.
    a, b = q_double_star(), q_star(7)
    ga, gb = join(a, empty(15)), join(b, empty(15))
    qa = equitable_quotient(ga, equitable_refinement(ga)).char_poly()
    qb = equitable_quotient(gb, equitable_refinement(gb)).char_poly()
    sign = compare_largest_roots(qa, qb)
    assert {GT: 1, LT: -1}[walk_compare(a, b)] == sign


def test_walk_order_matches_radius_small_joins(rng):
    # Equal order, equal edge count: the walk order decides the join radius here.
    checked = 0
    for _ in range(400):
        n = rng.randint(4, 6)
        a, b = random_graph(rng, n, 0.4), random_graph(rng, n, 0.4)
        if a.num_edges != b.num_edges:
            continue
        order = walk_compare(a, b)
        if order == EQ:
            continue
        ga, gb = join(a, empty(2 * n)), join(b, empty(2 * n))
        assert rho_compare_exact(ga, gb) == {GT: ">", LT: "<"}[order]
        checked += 1
    assert checked > 20


def test_degree_square_lemma():
    def sq(g):
        return sum(d * d for d in g.degrees())
    for n in range(3, 8):
        by_m: dict[int, list[Graph]] = {}
        for g in enumerate_graphs(n):
            if 1 <= g.num_edges <= 5 and n >= g.num_edges + 2:
                by_m.setdefault(g.num_edges, []).append(g)
        for m, gs in by_m.items():
            best = max(sq(g) for g in gs)
            winners = {canonical_form(g) for g in gs if sq(g) == best}
            expected = {canonical_form(disjoint_union(star(m + 1), empty(n - m - 1)))}
            if m == 3:
                expected.add(canonical_form(disjoint_union(complete(3), empty(n - 3))))
            assert winners == expected, (n, m)


def test_ex_filter_examples():
    assert ex_filter([complete(3), path(3)], 1) == [complete(3)]
    single = [q_star(3)]
    assert all(ex_filter(single, ell) == single for ell in range(1, 10))
    with pytest.raises(ValueError):
        ex_filter([], 1)


def test_v_family_survives_every_level():
    members, lookup, _ = walk_lemma_family(3, 19)
    qform = canonical_form(q_star(3))
    v_members = [disjoint_union(*(lookup[f] for f in m)) for m in members if m[0] == qform]
    assert len(v_members) > 1
    assert len(ex_filter(v_members, 40)) == len(v_members)
    assert len(ex_infinity(v_members)) == len(v_members)


def test_ex_infinity_isomorphic_family():
    g = q_star(5)
    rng = random.Random(3)
    fam = []
    for _ in range(4):
        perm = list(range(g.n))
        rng.shuffle(perm)
        fam.append(g.relabel(perm))
    trace = ex_infinity_trace(fam)
    assert len(trace.survivors) == 4 and trace.last_shrink_level == 0
