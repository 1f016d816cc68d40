"""Constructors for the named graphs and extremal families.

All constructors are deterministic: the same parameters always give the same
labelled graph.  Where a family is only defined up to isomorphism the first
choice in construction order is taken.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, GraphError, disjoint_union, join


class ConstructionError(GraphError):
    """The requested graph does not exist for these parameters."""


# -- elementary graphs ---------------------------------------------------


def empty(n: int) -> Graph:
    return Graph.empty(n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._raw(n, [full & ~(1 << u) for u in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ConstructionError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """K_{1,n-1}: vertex 0 is the centre."""
    if n < 1:
        raise ConstructionError("a star needs at least one vertex")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def matching(m: int) -> Graph:
    """floor(m/2) disjoint edges on m vertices; vertex m-1 is isolated when m is odd."""
    return Graph.from_edges(m, [(2 * i, 2 * i + 1) for i in range(m // 2)])


def complete_multipartite(*sizes: int) -> Graph:
    g = empty(sizes[0]) if sizes else empty(0)
    for s in sizes[1:]:
        g = join(g, empty(s))
    return g


def turan(n: int, r: int) -> Graph:
    if r < 1 or n < 0:
        raise ConstructionError("turan needs r >= 1 and n >= 0")
    sizes = [n // r + (1 if i < n % r else 0) for i in range(r)]
    return complete_multipartite(*sizes)


def fan(ell: int) -> Graph:
    """H_ell = K_1 v P_ell with the hub at vertex 0."""
    if ell < 4:
        raise ConstructionError("fans are defined for ell >= 4")
    return join(empty(1), path(ell))


# -- the nearly regular components ---------------------------------------


@dataclass(frozen=True)
class LabelledParts:
    """A graph together with a named vertex partition used for quotients."""

    graph: Graph
    parts: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]


def q_star_parts(k: int) -> LabelledParts:
    """Q*_k with its six-part equitable partition.

    Labels: ``u`` = 0, the clique K_{k-1} split into the half joined to ``w``
    and the half matched into K_{(k-1)/2}, then ``w``, K_{(k-1)/2}, K_{(k+1)/2}.
    """
    if k < 3 or k % 2 == 0:
        raise ConstructionError("Q*_k needs odd k >= 3")
    h = (k - 1) // 2
    u = 0
    ua = list(range(1, 1 + h))
    ub = list(range(1 + h, k))
    w = k
    xs = list(range(k + 1, k + 1 + h))
    ys = list(range(k + 1 + h, 2 * k + 1))
    edges = [(u, a) for a in ua + ub]
    clique = ua + ub
    edges += [(a, b) for i, a in enumerate(clique) for b in clique[i + 1:]]
    edges += [(w, a) for a in ua] + [(w, y) for y in ys]
    edges += list(zip(ub, xs))
    xy = xs + ys
    edges += [(a, b) for i, a in enumerate(xy) for b in xy[i + 1:]]
    g = Graph.from_edges(2 * k + 1, edges)
    parts = ((u,), tuple(ua), tuple(ub), (w,), tuple(xs), tuple(ys))
    return LabelledParts(g, parts, ("u", "N1_w", "N1_match", "w", "K_(k-1)/2", "K_(k+1)/2"))


def q_star(k: int) -> Graph:
    return q_star_parts(k).graph


def q_double_star_parts() -> LabelledParts:
    """Q** with parts K_1, K_6, the independent triple, K_5 (in that label order).

    Independent vertex i is joined to clique vertices 2i+1 and 2i+2, so each
    K_6 vertex receives exactly one cross edge.
    """
    a = 0
    bs = list(range(1, 7))
    cs = list(range(7, 10))
    ds = list(range(10, 15))
    edges = [(a, b) for b in bs]
    edges += [(x, y) for i, x in enumerate(bs) for y in bs[i + 1:]]
    edges += [(x, y) for i, x in enumerate(ds) for y in ds[i + 1:]]
    edges += [(c, d) for c in cs for d in ds]
    for i, c in enumerate(cs):
        edges += [(c, bs[2 * i]), (c, bs[2 * i + 1])]
    g = Graph.from_edges(15, edges)
    return LabelledParts(g, ((a,), tuple(bs), tuple(cs), tuple(ds)), ("K_1", "K_6", "K3bar", "K_5"))


def q_double_star() -> Graph:
    return q_double_star_parts().graph


def nearly_regular_minimal_parts(k: int) -> LabelledParts:
    """Smallest nearly k-regular graph: K_{k+2} minus (P_3 plus a perfect matching).

    Vertex 0 is the degree-(k-1) vertex (the centre of the removed P_3),
    1 and 2 are the ends of the removed P_3, the rest are matched in pairs.
    """
    if k < 1 or k % 2 == 0:
        raise ConstructionError("needs odd k >= 1")
    q = k + 2
    removed = {(0, 1), (0, 2)} | {(i, i + 1) for i in range(3, q, 2)}
    edges = [(i, j) for i in range(q) for j in range(i + 1, q) if (i, j) not in removed]
    g = Graph.from_edges(q, edges)
    return LabelledParts(g, ((0,), (1, 2), tuple(range(3, q))), ("u", "P3_ends", "matched"))


# -- regular graphs --------------------------------------------------------


def regular_graph(m: int, k: int) -> Graph:
    """A k-regular graph on m vertices (circulant, plus antipodal chords for odd k).

    Connected whenever k >= 2.
    """
    if k < 0:
        raise ConstructionError("k must be nonnegative")
    if m < k + 1:
        raise ConstructionError(f"no {k}-regular graph on {m} < {k + 1} vertices")
    if (k * m) % 2:
        raise ConstructionError(f"no {k}-regular graph on {m} vertices: k*m = {k * m} is odd")
    edges = [(i, (i + d) % m) for i in range(m) for d in range(1, k // 2 + 1)]
    if k % 2:
        edges += [(i, i + m // 2) for i in range(m // 2)]
    return Graph.from_edges(m, edges)


@lru_cache(maxsize=None)
def spread_sizes(m: int, k: int, max_size: int | None = None) -> tuple[int, ...]:
    """Greedy largest-first partition of m into sizes s in [k+1, max_size], k*s even.

    ``max_size`` defaults to 2k.  Backtracks when the greedy choice strands a
    remainder; raises :class:`ConstructionError` if no partition exists.
    """
    top = 2 * k if max_size is None else max_size
    sizes = [s for s in range(top, k, -1) if (k * s) % 2 == 0]

    def go(rest: int, bound: int) -> tuple[int, ...] | None:
        if rest == 0:
            return ()
        for s in sizes:
            if s <= bound and s <= rest:
                tail = go(rest - s, s)
                if tail is not None:
                    return (s,) + tail
        return None

    if k < 1:
        raise ConstructionError("regular_spread needs k >= 1")
    found = go(m, top)
    if found is None:
        raise ConstructionError(
            f"{m} cannot be split into {k}-regular components of order {k + 1}..{top}")
    return found


def regular_spread(m: int, k: int, max_size: int | None = None) -> Graph:
    """k-regular graph on m vertices whose components have order at most 2k."""
    return disjoint_union(*(regular_graph(s, k) for s in spread_sizes(m, k, max_size)))


def _check_nearly_regular_order(n: int, k: int) -> None:
    if k < 3 or k % 2 == 0:
        raise ConstructionError("nearly regular families here need odd k >= 3")
    if (k * n) % 2 == 0:
        raise ConstructionError(f"no nearly {k}-regular graph of order {n}: k*n is even")


def nearly_regular_v_family(n: int, k: int) -> Graph:
    """A member of V_{n,k}: Q*_k (Q** when k = 7) plus a k-regular spread."""
    _check_nearly_regular_order(n, k)
    if n < 4 * k + 3:
        raise ConstructionError(f"V_(n,k) needs n >= 4k+3 = {4 * k + 3}, got {n}")
    special = q_double_star() if k == 7 else q_star(k)
    return disjoint_union(special, regular_spread(n - special.n, k))


def nearly_regular_member(n: int, k: int, special: Graph | None = None) -> Graph:
    """A nearly k-regular P_{2k+3}-free graph of order n: ``special`` plus a spread.

    ``special`` defaults to the minimal nearly regular component of order k+2.
    """
    _check_nearly_regular_order(n, k)
    if special is None:
        special = nearly_regular_minimal_parts(k).graph
    rest = n - special.n
    if rest < 0:
        raise ConstructionError("special component larger than n")
    return disjoint_union(special, regular_spread(rest, k))


# -- the spectral extremal candidates ---------------------------------------


def fan_parameter(ell: int) -> int:
    """k with ell = 2k+3 (odd ell) or ell = 2k+2 (even ell)."""
    if ell < 4:
        raise ConstructionError("fans are defined for ell >= 4")
    return (ell - 3) // 2 if ell % 2 else (ell - 2) // 2


def candidate_left_sizes(n: int, ell: int) -> list[int]:
    """Admissible |L| for SPEX(n, H_ell) according to the characterisation tables."""
    k = fan_parameter(ell)
    if k % 2 == 0:
        return sorted({n // 2, (n + 1) // 2})
    r = n % 4
    if r == 0:
        return [n // 2]
    if r == 1:
        return [(n - 1) // 2]
    if r == 3:
        return [(n + 1) // 2]
    if k == 1:
        return [n // 2]
    return [n // 2 - 1, n // 2 + 1]


def _left_graph(size: int, k: int, ell: int) -> Graph:
    if k == 1 and size % 2:
        return matching(size)
    try:
        return regular_spread(size, k)
    except ConstructionError:
        # Components of order < ell are P_ell-free even beyond 2k.
        return regular_spread(size, k, max_size=ell - 1)


def spex_candidate(n: int, ell: int) -> list[Graph]:
    """The conjectured/characterised extremal graphs, one per admissible |L|.

    Each is K_{|L|,n-|L|} with a (nearly) k-regular P_ell-free graph inside L;
    L occupies vertices 0..|L|-1.
    """
    k = fan_parameter(ell)
    out = []
    for size in candidate_left_sizes(n, ell):
        if size < 1 or size >= n:
            raise ConstructionError(f"|L| = {size} infeasible for n = {n}")
        out.append(join(_left_graph(size, k, ell), empty(n - size)))
    return out


def embed_in_turan(left: Graph, right_size: int) -> Graph:
    """Complete bipartite graph with ``left`` embedded in the first part."""
    return join(left, empty(right_size))
