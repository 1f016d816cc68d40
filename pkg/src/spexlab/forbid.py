"""Path and fan containment (ordinary, not induced, subgraphs)."""

from __future__ import annotations

from .graph import Graph, GraphError, _bits, component_masks, join

# Components up to this order memoise dead (endpoint, visited) states.
MEMO_ORDER_CAP = 24


def _independence_bound(adj, comp: int) -> int:
    """Upper bound on the order of any path inside ``comp``.

    A greedy independent set I gives |P| <= 2 |comp \\ I| + 1, since no two
    I-vertices are consecutive on a path.
    """
    rest = comp
    size = 0
    while rest:
        v = min(_bits(rest), key=lambda x: (adj[x] & rest).bit_count())
        size += 1
        rest &= ~(adj[v] | 1 << v)
    return 2 * (comp.bit_count() - size) + 1


def _find_path(adj, comp: int, ell: int) -> list[int] | None:
    """A path on ``ell`` vertices inside vertex set ``comp``, or None."""
    memo = comp.bit_count() <= MEMO_ORDER_CAP
    dead: set[tuple[int, int]] = set()
    trail: list[int] = []

    def extend(v: int, seen: int, length: int) -> bool:
        if length >= ell:
            return True
        if (comp & ~seen).bit_count() + length < ell:
            return False
        if memo and (v, seen) in dead:
            return False
        for w in _bits(adj[v] & comp & ~seen):
            trail.append(w)
            if extend(w, seen | 1 << w, length + 1):
                return True
            trail.pop()
        if memo:
            dead.add((v, seen))
        return False

    starts = sorted(_bits(comp), key=lambda x: (adj[x] & comp).bit_count())
    for s in starts:
        trail[:] = [s]
        if extend(s, 1 << s, 1):
            return list(trail)
    return None


def _has_path_within(adj, within: int, ell: int, comps=None) -> bool:
    if ell <= 0:
        return True
    masks = comps if comps is not None else _restricted_components(adj, within)
    for comp in masks:
        c = comp.bit_count()
        if c < ell:
            continue
        if ell == 1 or (ell == 2 and c >= 2):
            return True
        if _independence_bound(adj, comp) < ell:
            continue
        if _find_path(adj, comp, ell) is not None:
            return True
    return False


def _restricted_components(adj, within: int) -> list[int]:
    rest = within
    out = []
    while rest:
        low = rest & -rest
        comp = frontier = low
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        rest &= ~comp
        out.append(comp)
    return out


def has_path(g: Graph, ell: int) -> bool:
    """True iff ``g`` contains a path on ``ell`` vertices."""
    if ell < 1:
        raise GraphError("path order must be >= 1")
    return _has_path_within(g.adj, g.vertex_mask, ell, component_masks(g))


def find_path(g: Graph, ell: int) -> list[int] | None:
    """A witness path on ``ell`` vertices, or None."""
    for comp in component_masks(g):
        if comp.bit_count() >= ell:
            found = _find_path(g.adj, comp, ell)
            if found is not None:
                return found
    return None


def longest_path_order(g: Graph) -> int:
    best = 0
    for comp in component_masks(g):
        c = comp.bit_count()
        if c <= best:
            continue
        cap = min(c, _independence_bound(g.adj, comp))
        lo = max(best, 1)
        while lo < cap:
            found = _find_path(g.adj, comp, lo + 1)
            if found is None:
                break
            lo = len(found)
        best = max(best, lo)
    return best


def has_fan(g: Graph, ell: int) -> bool:
    """True iff ``g`` contains H_ell = K_1 v P_ell.

    A hub must be adjacent to every path vertex, so this is a path test in
    each neighbourhood; hubs of degree < ell are skipped.
    """
    if ell < 4:
        raise GraphError("fans are defined for ell >= 4")
    adj = g.adj
    hubs = sorted(range(g.n), key=lambda v: adj[v].bit_count())
    for v in hubs:
        if adj[v].bit_count() < ell:
            continue
        if _has_path_within(adj, adj[v], ell):
            return True
    return False


def naive_subgraph_oracle(h: Graph, g: Graph) -> bool:
    """Exhaustive search for an edge-preserving injection V(h) -> V(g)."""
    if h.n > g.n or g.n > 10:
        raise GraphError("oracle restricted to |H| <= |G| <= 10")
    order: list[int] = []
    placed = 0
    degs = h.degrees()
    while len(order) < h.n:
        frontier = [v for v in range(h.n) if not placed >> v & 1 and h.adj[v] & placed]
        pool = frontier or [v for v in range(h.n) if not placed >> v & 1]
        v = max(pool, key=lambda x: (degs[x], -x))
        order.append(v)
        placed |= 1 << v
    image = [-1] * h.n
    gdeg = g.degrees()

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        need = [image[w] for w in h.neighbors(v) if image[w] >= 0]
        for x in range(g.n):
            if used >> x & 1 or gdeg[x] < degs[v]:
                continue
            if all(g.adj[x] >> y & 1 for y in need):
                image[v] = x
                if place(i + 1, used | 1 << x):
                    return True
                image[v] = -1
        return False

    return place(0, 0)


def check_observation1(h: Graph, k: int, ell: int) -> bool:
    """Check on one instance that H v K̄_{2k+3} is H_ell-free iff Δ(H) <= k and H is P_ell-free."""
    if ell not in (2 * k + 2, 2 * k + 3):
        raise GraphError("ell must be 2k+2 or 2k+3")
    if h.n + 2 * k + 3 > 40:
        raise GraphError("instance too large for the observation check")
    big = join(h, Graph.empty(2 * k + 3))
    fan_found = has_fan(big, ell)
    delta = max(h.degrees(), default=0)
    predicted_free = delta <= k and not has_path(h, ell)
    return fan_found == (not predicted_free)
