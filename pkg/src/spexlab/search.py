"""Isomorph-free enumeration and brute-force spectral extremal search.

Enumeration uses canonical augmentation.  A child is a parent plus one new
vertex; its canonical parent is obtained by deleting the vertex ``c`` of
maximal invariant (degree, sorted neighbour degrees) that comes last in the
canonical order.  A child is kept only when deleting ``c`` gives the parent's
isomorphism class, so every class has exactly one parent class, and siblings
are deduplicated by canonical form.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .constructions import candidate_left_sizes, fan_parameter, spex_candidate
from .forbid import _has_path_within, has_fan, has_path
from .graph import (
    CANONICAL_MAX_ORDER,
    Graph,
    GraphError,
    _bits,
    canonical_form,
    canonical_graph,
    canonical_labeling,
    graph6_decode,
    induced,
    is_connected,
)
from .polynomial import RootInterval, compare_largest_roots, isolate_largest_root, IntPolynomial
from .spectral import char_poly_exact

ENUMERATE_MAX_ORDER = 10
DEGREE_CONSTRAINED_MAX_ORDER = 14
DEGREE_CONSTRAINED_MAX_DEG = 7
SPEX_DEFAULT_CAP = 8
SPEX_LONG_RUN_CAP = 10
SHORTLIST_BAND = 1e-6
ROOT_PRECISION = Fraction(1, 10 ** 30)

Predicate = Callable[[Graph], bool]


class SearchError(GraphError):
    """Enumeration bounds exceeded or an infeasible request."""


# -- canonical augmentation ------------------------------------------------


def _invariant(adj: Sequence[int], v: int) -> tuple:
    deg = [a.bit_count() for a in adj]
    return deg[v], tuple(sorted(deg[w] for w in _bits(adj[v])))


def _cut_vertices(adj: Sequence[int], n: int) -> int:
    """Bitmask of articulation points (iterative Tarjan)."""
    disc = [-1] * n
    low = [0] * n
    cut = 0
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, -1, iter(list(_bits(adj[root]))))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        children += 1
                    stack.append((w, v, iter(list(_bits(adj[w])))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if u != root and low[v] >= disc[u]:
                    cut |= 1 << u
        if children > 1:
            cut |= 1 << root
    return cut


@dataclass
class _Augmenter:
    predicate: Predicate | None = None
    connected: bool = False
    max_deg: int | None = None
    rejected_by_predicate: int = 0

    def children(self, parent: Graph, parent_form: str) -> list[Graph]:
        m = parent.n
        degs = parent.degrees()
        pool = [v for v in range(m) if self.max_deg is None or degs[v] < self.max_deg]
        top = len(pool) if self.max_deg is None else min(len(pool), self.max_deg)
        low = 1 if (self.connected and m > 0) else 0
        seen: dict[str, Graph] = {}
        for size in range(low, top + 1):
            for subset in itertools.combinations(pool, size):
                mask = 0
                for v in subset:
                    mask |= 1 << v
                child = parent.add_vertex(mask)
                kept = self._accept(child, parent_form)
                if kept is not None:
                    form, canon = kept
                    seen.setdefault(form, canon)
        return [seen[f] for f in sorted(seen)]

    def _accept(self, child: Graph, parent_form: str) -> tuple[str, Graph] | None:
        n = child.n
        new = n - 1
        adj = child.adj
        allowed = child.vertex_mask
        if self.connected and n > 2:
            allowed &= ~_cut_vertices(adj, n)
            if not allowed >> new & 1:
                return None
        invs = {v: _invariant(adj, v) for v in _bits(allowed)}
        best = max(invs.values())
        if invs[new] != best:
            return None
        if self.predicate is not None and not self.predicate(child):
            self.rejected_by_predicate += 1
            return None
        order = canonical_labeling(child)
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        c = max((v for v in invs if invs[v] == best), key=lambda v: pos[v])
        canon = child.relabel(pos)
        form = str(canon)
        if c != new and canonical_form(child.remove_vertex(c)) != parent_form:
            return None
        return form, canon


def _levels(n: int, aug: _Augmenter, start: Iterable[Graph] | None = None) -> Iterator[Graph]:
    level = [Graph.empty(0)] if start is None else list(start)
    if n == 0:
        yield from level
        return
    while True:
        nxt: list[Graph] = []
        for g in level:
            nxt.extend(aug.children(g, str(g)))
        if not nxt or nxt[0].n == n:
            yield from nxt
            return
        level = nxt


def enumerate_graphs(n: int, predicate: Predicate | None = None) -> Iterator[Graph]:
    """One graph per isomorphism class on n vertices satisfying a hereditary predicate.

    The predicate must be closed under vertex deletion; it is applied to each
    partial graph, so failing branches are cut.  Yielded graphs are in
    canonical labelling.
    """
    if n < 0 or n > ENUMERATE_MAX_ORDER:
        raise SearchError(f"enumerate_graphs supports 0 <= n <= {ENUMERATE_MAX_ORDER}")
    yield from _levels(n, _Augmenter(predicate))


def enumerate_degree_constrained(n: int, max_deg: int, connected_only: bool = False) -> Iterator[Graph]:
    """One graph per isomorphism class with maximum degree <= max_deg."""
    if n < 0 or n > DEGREE_CONSTRAINED_MAX_ORDER:
        raise SearchError(f"n must be in 0..{DEGREE_CONSTRAINED_MAX_ORDER}")
    if max_deg < 0 or max_deg > DEGREE_CONSTRAINED_MAX_DEG:
        raise SearchError(f"max_deg must be in 0..{DEGREE_CONSTRAINED_MAX_DEG}")
    yield from _levels(n, _Augmenter(connected=connected_only, max_deg=max_deg))


# -- connected (nearly) regular components -----------------------------------


@dataclass(frozen=True)
class ComponentCensus:
    """Connected components found by the breadth-first generator."""

    graphs: tuple[Graph, ...]
    labelled_leaves: int
    tree_nodes: int
    exhaustive: bool        # True when no order cap cut the search


def enumerate_regular_components(
    k: int,
    *,
    nearly: bool = False,
    forbid_path: int | None = None,
    order: int | None = None,
    max_order: int | None = None,
    clique_root: bool = False,
    node_limit: int = 5_000_000,
) -> ComponentCensus:
    """Connected k-regular (or nearly k-regular) graphs, optionally P_m-free.

    Vertices are created in breadth-first order from a root (the degree-(k-1)
    vertex when ``nearly``); each processed vertex fills its remaining degree
    with edges to later open vertices and to new children.  Every connected
    graph with the target degrees has such a labelling, so the search is
    complete.  Partial graphs containing ``P_forbid_path`` are cut, since
    edges are only ever added.  With ``forbid_path`` set and no order cap the
    tree is finite exactly when the class is, and ``exhaustive`` is True.

    ``clique_root`` keeps only graphs in which the root's neighbours are
    pairwise adjacent.
    """
    if k < 1:
        raise SearchError("k must be >= 1")
    if order is not None:
        max_order = order
    if max_order is None and forbid_path is None:
        raise SearchError("an order cap or a forbidden path is needed for termination")
    cap = max_order if max_order is not None else 10 ** 9
    root_target = k - 1 if nearly else k
    adj: list[int] = []
    deg: list[int] = []
    target: list[int] = []
    leaves: dict[str, Graph] = {}
    counters = {"nodes": 0, "leaves": 0, "capped": False}

    def new_vertex(t: int) -> None:
        adj.append(0)
        deg.append(0)
        target.append(t)

    def add_edge(a: int, b: int) -> None:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        deg[a] += 1
        deg[b] += 1

    def del_edge(a: int, b: int) -> None:
        adj[a] &= ~(1 << b)
        adj[b] &= ~(1 << a)
        deg[a] -= 1
        deg[b] -= 1

    def rec(v: int) -> None:
        counters["nodes"] += 1
        if counters["nodes"] > node_limit:
            raise SearchError("component search exceeded its node limit")
        created = len(adj)
        if v == created:
            if order is None or created == order:
                g = Graph(created, tuple(adj))
                counters["leaves"] += 1
                if created > CANONICAL_MAX_ORDER:
                    raise SearchError(f"component of order {created} exceeds the canonical form cap")
                leaves.setdefault(canonical_form(g), g)
            return
        need = target[v] - deg[v]
        opens = [w for w in range(v + 1, created) if deg[w] < target[w]]
        forced: tuple[int, ...] = ()
        if clique_root and 1 <= v <= root_target:
            forced = tuple(range(v + 1, root_target + 1))
            if len(forced) > need or any(deg[w] >= target[w] for w in forced):
                return
        free_opens = [w for w in opens if w not in forced]
        for s in range(min(need - len(forced), len(free_opens)), -1, -1):
            c = need - len(forced) - s
            if created + c > cap:
                counters["capped"] = True
                continue
            for subset in itertools.combinations(free_opens, s):
                chosen = forced + subset
                for w in chosen:
                    add_edge(v, w)
                for _ in range(c):
                    new_vertex(k)
                    add_edge(v, len(adj) - 1)
                ok = True
                if forbid_path is not None:
                    ok = not _has_path_within(adj, (1 << len(adj)) - 1, forbid_path)
                if ok:
                    rec(v + 1)
                for _ in range(c):
                    w = len(adj) - 1
                    del_edge(v, w)
                    adj.pop()
                    deg.pop()
                    target.pop()
                for w in chosen:
                    del_edge(v, w)

    new_vertex(root_target)
    if root_target == 0:
        leaves[canonical_form(Graph.empty(1))] = Graph.empty(1)
        counters["leaves"] = 1
    else:
        rec(0)
    graphs = tuple(canonical_graph(leaves[f]) for f in sorted(leaves, key=lambda s: (graph6_decode(s).n, s)))
    return ComponentCensus(graphs, counters["leaves"], counters["nodes"], not counters["capped"])


# -- brute-force SPEX -----------------------------------------------------------


@dataclass
class SpexStats:
    graphs_enumerated: int = 0
    graphs_pruned: int = 0
    shortlist: int = 0
    wall_time: float = 0.0


@dataclass
class SpexCertificate:
    n: int
    ell: int
    winners: list[str]
    rho: RootInterval
    charpoly: IntPolynomial
    stats: SpexStats = field(default_factory=SpexStats)

    @property
    def winner_graphs(self) -> list[Graph]:
        return [graph6_decode(s) for s in self.winners]


def _fan_free(ell: int) -> Predicate:
    return lambda g: not has_fan(g, ell)


def _seed_rho(n: int, ell: int) -> float:
    """rho of a known H_ell-free graph (the candidate) as an initial bound."""
    best = 0.0
    try:
        cands = spex_candidate(n, ell)
    except GraphError:
        return best
    for g in cands:
        if not has_fan(g, ell):
            best = max(best, float(np.linalg.eigvalsh(g.to_numpy())[-1]))
    return best


def _spex_worker(args: tuple) -> tuple[list[tuple[float, str]], int, int, int]:
    n, ell, parents, seed = args
    aug = _Augmenter(_fan_free(ell))
    enumerated = pruned = 0
    shortlist: list[tuple[float, str]] = []
    best = seed
    level = parents
    while level and level[0].n < n:
        nxt = []
        for g in level:
            m = g.n
            # Any completion has at most e + m + (m+1) + ... + (n-1) edges, and rho <= sqrt(2e).
            e_max = g.num_edges + (n * (n - 1) - m * (m - 1)) // 2
            if math.sqrt(2 * e_max) < best - SHORTLIST_BAND:
                pruned += 1
                continue
            nxt.extend(aug.children(g, str(g)))
        level = nxt
    for g in level:
        enumerated += 1
        rho = float(np.linalg.eigvalsh(g.to_numpy())[-1]) if g.n else 0.0
        if rho >= best - SHORTLIST_BAND:
            best = max(best, rho)
            shortlist.append((rho, str(g)))
    shortlist = [(r, s) for r, s in shortlist if r >= best - SHORTLIST_BAND]
    return shortlist, enumerated, pruned + aug.rejected_by_predicate, 0


def spex_bruteforce(n: int, ell: int, long_run: bool = False, jobs: int | None = None) -> SpexCertificate:
    """All H_ell-free graphs of order n with maximal spectral radius.

    Floating radii select a shortlist within 1e-6 of the best; the final
    winner set is decided by exact comparison of characteristic polynomials.
    Work is split across ``jobs`` processes by the order-(n-2) parents; the
    merge is deterministic, so results do not depend on ``jobs``.
    """
    cap = SPEX_LONG_RUN_CAP if long_run else SPEX_DEFAULT_CAP
    if n > cap:
        raise SearchError(f"n = {n} exceeds the cap {cap}" + ("" if long_run else " (use long_run for 9..10)"))
    if n < 1:
        raise SearchError("n must be >= 1")
    if ell < 4:
        raise SearchError("fans are defined for ell >= 4")
    jobs = jobs or int(os.environ.get("SPEXLAB_JOBS", "1") or 1)
    t0 = time.perf_counter()
    seed = _seed_rho(n, ell)
    split = max(n - 2, 0)
    aug = _Augmenter(_fan_free(ell))
    prefix = list(_levels(split, aug)) if split else [Graph.empty(0)]
    chunks = [prefix[i::jobs] for i in range(jobs)] if jobs > 1 else [prefix]
    tasks = [(n, ell, chunk, seed) for chunk in chunks if chunk]
    if jobs > 1 and len(tasks) > 1:
        import multiprocessing

        with multiprocessing.get_context("spawn").Pool(jobs) as pool:
            results = pool.map(_spex_worker, tasks)
    else:
        results = [_spex_worker(t) for t in tasks]
    stats = SpexStats()
    stats.graphs_pruned = aug.rejected_by_predicate
    shortlist: list[tuple[float, str]] = []
    for sl, enum, pr, _ in results:
        shortlist.extend(sl)
        stats.graphs_enumerated += enum
        stats.graphs_pruned += pr
    top = max(r for r, _ in shortlist)
    shortlist = sorted({s for r, s in shortlist if r >= top - SHORTLIST_BAND})
    stats.shortlist = len(shortlist)
    polys = {s: char_poly_exact(graph6_decode(s)) for s in shortlist}
    best = shortlist[0]
    for s in shortlist[1:]:
        if compare_largest_roots(polys[s], polys[best]) > 0:
            best = s
    winners = [s for s in shortlist if compare_largest_roots(polys[s], polys[best]) == 0]
    stats.wall_time = time.perf_counter() - t0
    rho = isolate_largest_root(polys[best]).refine(ROOT_PRECISION)
    return SpexCertificate(n, ell, winners, rho, polys[best], stats)


# -- structure of winners ---------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    left: tuple[int, ...]
    right: tuple[int, ...]


def find_join_bipartitions(g: Graph) -> list[Bipartition]:
    """All (L, R) with R independent, L nonempty, and every L-R edge present."""
    if g.n > 12:
        raise SearchError("bipartition scan limited to n <= 12")
    out = []
    full = g.vertex_mask
    for rmask in range(1, full):
        lmask = full & ~rmask
        ok = True
        for v in _bits(rmask):
            if g.adj[v] & rmask or (g.adj[v] & lmask) != lmask:
                ok = False
                break
        if ok:
            out.append(Bipartition(tuple(_bits(lmask)), tuple(_bits(rmask))))
    return out


def theorem_row(n: int, ell: int) -> str:
    """Human-readable description of the characterisation row for (n, ell)."""
    k = fan_parameter(ell)
    shape = f"ell={ell} (k={k}, {'2k+3' if ell % 2 else '2k+2'})"
    sizes = candidate_left_sizes(n, ell)
    if k % 2 == 0:
        return f"{shape}, even k: |L| in {{floor(n/2), ceil(n/2)}} = {sizes}"
    r = n % 4
    rule = {0: "n/2", 1: "(n-1)/2", 3: "(n+1)/2"}.get(r)
    if rule is None:
        rule = "n/2" if k == 1 else "n/2-1 or n/2+1"
    return f"{shape}, odd k, n = {n} = {r} mod 4: |L| = {rule} = {sizes}"


@dataclass
class WinnerStructure:
    graph6: str
    left_size: int | None
    left_degrees: list[int]
    left_profile: str             # "regular", "nearly regular", "irregular", "none"
    left_path_free: bool | None
    matches_candidate: bool


@dataclass
class TheoremReport:
    n: int
    ell: int
    row: str
    status: str                   # "PASS" or "FAIL"
    winners: list[WinnerStructure]
    candidates: list[str]
    certificate: SpexCertificate


def _profile(degs: list[int], k: int) -> str:
    if not degs:
        return "none"
    if all(d == k for d in degs):
        return "regular"
    if sorted(degs)[1:] == [k] * (len(degs) - 1) and min(degs) == k - 1:
        return "nearly regular"
    return "irregular"


def verify_theorem(n: int, ell: int, long_run: bool = False, jobs: int | None = None,
                   certificate: SpexCertificate | None = None) -> TheoremReport:
    """Brute-force winners compared with the characterised candidates."""
    cert = certificate or spex_bruteforce(n, ell, long_run=long_run, jobs=jobs)
    k = fan_parameter(ell)
    cand_forms = sorted({canonical_form(g) for g in spex_candidate(n, ell)})
    structures = []
    for s in cert.winners:
        g = graph6_decode(s)
        parts = find_join_bipartitions(g)
        if parts:
            # Prefer the split whose L is closest to the characterised sizes.
            sizes = candidate_left_sizes(n, ell)
            bp = min(parts, key=lambda p: (min(abs(len(p.left) - t) for t in sizes), -len(p.right)))
            h = induced(g, bp.left)
            degs = h.degrees()
            structures.append(WinnerStructure(
                s, len(bp.left), sorted(degs), _profile(degs, k), not has_path(h, ell) if h.n else True,
                canonical_form(g) in cand_forms))
        else:
            structures.append(WinnerStructure(s, None, [], "none", None, canonical_form(g) in cand_forms))
    status = "PASS" if sorted(canonical_form(graph6_decode(s)) for s in cert.winners) == cand_forms else "FAIL"
    return TheoremReport(n, ell, theorem_row(n, ell), status, structures, cand_forms, cert)


@dataclass
class PartitionDiagnostics:
    parts: tuple[tuple[int, ...], tuple[int, ...]]
    internal_edges: int
    max_internal_degree: int
    t: int
    internal_degree_below_t: bool
    degree_condition: list[bool]    # d_G(v) >= n - |V_i| per vertex

    @property
    def all_conditions_hold(self) -> bool:
        return self.internal_degree_below_t and all(self.degree_condition)


def partition_diagnostics(g: Graph, t: int | None = None) -> PartitionDiagnostics:
    """Bipartition minimising internal edges, with the skeleton conditions checked.

    ``t`` is the order of the forbidden graph (default: n, i.e. no constraint).
    Ties are broken by balance, then by lexicographically smallest V_1.
    """
    if g.n > 12:
        raise SearchError("partition diagnostics limited to n <= 12")
    n = g.n
    full = g.vertex_mask
    best = None
    for m1 in range(0, 1 << max(n - 1, 0)):
        # Vertex n-1 always sits in V_2, so each unordered split is seen once.
        m2 = full & ~m1
        inner = sum((g.adj[v] & m1).bit_count() for v in _bits(m1)) // 2
        inner += sum((g.adj[v] & m2).bit_count() for v in _bits(m2)) // 2
        key = (inner, abs(m1.bit_count() - m2.bit_count()), m1)
        if best is None or key < best[0]:
            best = (key, m1, m2)
    _, m1, m2 = best
    t = n if t is None else t
    maxdeg = 0
    cond = []
    for v in range(n):
        side = m1 if m1 >> v & 1 else m2
        maxdeg = max(maxdeg, (g.adj[v] & side).bit_count())
        cond.append(g.adj[v].bit_count() >= n - side.bit_count())
    return PartitionDiagnostics((tuple(_bits(m1)), tuple(_bits(m2))), best[0][0], maxdeg, t, maxdeg < t, cond)
