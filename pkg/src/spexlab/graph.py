"""Immutable simple graphs stored as per-vertex neighbour bitsets.

Every graph in the package is a :class:`Graph`: ``n`` vertices labelled
``0..n-1`` and a tuple ``adj`` where bit ``v`` of ``adj[u]`` is set iff
``uv`` is an edge.  Graphs are serialised only as graph6 strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 64
CANONICAL_MAX_ORDER = 16


class GraphError(ValueError):
    """Raised for invalid graph data or out-of-range arguments."""


class Graph6Error(GraphError):
    """Raised when a graph6 string cannot be parsed."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        n, adj = self.n, self.adj
        if not 0 <= n <= MAX_ORDER:
            raise GraphError(f"order {n} outside 0..{MAX_ORDER}")
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for u, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"row {u} has a neighbour >= n")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
            for v in _bits(row):
                if not adj[v] >> u & 1:
                    raise GraphError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def _raw(cls, n: int, adj: Sequence[int]) -> "Graph":
        # Skips validation: only for rows produced by trusted internal code.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for order {n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    # -- basic queries -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(_bits(self.adj[u]))

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph in which vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of 0..n-1")
        rows = [0] * self.n
        for u, row in enumerate(self.adj):
            new = 0
            for v in _bits(row):
                new |= 1 << perm[v]
            rows[perm[u]] = new
        return Graph._raw(self.n, rows)

    def add_vertex(self, neighbours: int) -> "Graph":
        """Append vertex ``n`` adjacent to the vertices in bitmask ``neighbours``."""
        if neighbours >> self.n:
            raise GraphError("neighbour mask exceeds current order")
        if self.n + 1 > MAX_ORDER:
            raise GraphError("order limit exceeded")
        bit = 1 << self.n
        rows = [row | bit if neighbours >> u & 1 else row for u, row in enumerate(self.adj)]
        rows.append(neighbours)
        return Graph._raw(self.n + 1, rows)

    def remove_vertex(self, v: int) -> "Graph":
        keep = [u for u in range(self.n) if u != v]
        return induced(self, keep)

    def to_numpy(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=np.float64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def __str__(self) -> str:
        return graph6_encode(self)


# -- structural primitives ---------------------------------------------


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} out of range for order {g.n}")


def degree(g: Graph, u: int) -> int:
    _check_vertex(g, u)
    return g.adj[u].bit_count()


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("minimum degree of the null graph is undefined")
    return min(g.degrees())


def max_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("maximum degree of the null graph is undefined")
    return max(g.degrees())


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabelled in ascending order."""
    order = sorted(set(vertices))
    for v in order:
        _check_vertex(g, v)
    index = {v: i for i, v in enumerate(order)}
    mask = 0
    for v in order:
        mask |= 1 << v
    rows = []
    for v in order:
        new = 0
        for w in _bits(g.adj[v] & mask):
            new |= 1 << index[w]
        rows.append(new)
    return Graph._raw(len(order), rows)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph._raw(g.n, [~row & full & ~(1 << u) for u, row in enumerate(g.adj)])


def disjoint_union(*graphs: Graph) -> Graph:
    total = sum(h.n for h in graphs)
    if total > MAX_ORDER:
        raise GraphError(f"union order {total} exceeds {MAX_ORDER}")
    rows: list[int] = []
    offset = 0
    for h in graphs:
        rows.extend(row << offset for row in h.adj)
        offset += h.n
    return Graph._raw(total, rows)


def join(g1: Graph, g2: Graph) -> Graph:
    u = disjoint_union(g1, g2)
    left = (1 << g1.n) - 1
    right = ((1 << g2.n) - 1) << g1.n
    rows = [row | right if i < g1.n else row | left for i, row in enumerate(u.adj)]
    return Graph._raw(u.n, rows)


def components(g: Graph) -> list[list[int]]:
    """Connected components as ascending vertex lists, ordered by least vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Component bitmasks of the subgraph induced by ``within`` (default: all)."""
    rest = g.vertex_mask if within is None else within
    out = []
    while rest:
        low = rest & -rest
        comp = frontier = low
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        rest &= ~comp
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n >= 1 and len(component_masks(g)) == 1


# -- graph6 ------------------------------------------------------------


def graph6_encode(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(63 + n)
    else:
        head = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    bits = []
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = v << 1 | b
        body.append(chr(63 + v))
    return head + "".join(body)


def graph6_decode(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise Graph6Error(f"character outside graph6 range in {s!r}")
    if codes[0] == 63:
        if len(codes) < 4 or codes[1] == 63:
            raise Graph6Error("unsupported or truncated graph6 order field")
        n = codes[1] << 12 | codes[2] << 6 | codes[3]
        body = codes[4:]
    else:
        n = codes[0]
        body = codes[1:]
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds {MAX_ORDER}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = []
    for c in body:
        bits.extend(c >> s & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._raw(n, rows)


# -- canonical labelling -------------------------------------------------


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Cells are split by neighbour counts into each splitter cell; the pieces
    keep ascending-count order, so the result depends only on the isomorphism
    type of the (graph, ordered partition) pair.
    """
    cells = [c for c in cells]
    masks = []
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)
    s = 0
    while s < len(cells):
        smask = masks[s]
        split_any = False
        i = 0
        new_cells: list[list[int]] = []
        new_masks: list[int] = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                new_masks.append(masks[i])
                i += 1
                continue
            counts: dict[int, list[int]] = {}
            for v in c:
                counts.setdefault((adj[v] & smask).bit_count(), []).append(v)
            if len(counts) == 1:
                new_cells.append(c)
                new_masks.append(masks[i])
            else:
                split_any = True
                for key in sorted(counts):
                    piece = counts[key]
                    m = 0
                    for v in piece:
                        m |= 1 << v
                    new_cells.append(piece)
                    new_masks.append(m)
            i += 1
        if split_any:
            cells, masks = new_cells, new_masks
            s = 0
        else:
            s += 1
    return cells


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``order`` such that ``order[i]`` is the vertex placed at position i.

    Individualisation-refinement search over the coarsest equitable partition,
    keeping the lexicographically smallest relabelled adjacency; automorphisms
    found at equal leaves prune sibling branches lying in one orbit of the
    pointwise stabiliser of the current prefix.
    """
    n = g.n
    if n > CANONICAL_MAX_ORDER:
        raise GraphError(f"canonical labelling is capped at {CANONICAL_MAX_ORDER} vertices")
    if n == 0:
        return []
    adj = g.adj
    degs = [row.bit_count() for row in adj]
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(degs[v], []).append(v)
    start = _refine(adj, [by_deg[d] for d in sorted(by_deg)])

    best_cert: tuple[int, ...] | None = None
    best_order: list[int] = []
    autos: list[list[int]] = []

    def certificate(order: list[int]) -> tuple[int, ...]:
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        out = []
        for v in order:
            row = 0
            for w in _bits(adj[v]):
                row |= 1 << pos[w]
            out.append(row)
        return tuple(out)

    def search(cells: list[list[int]], fixed: list[int]) -> None:
        nonlocal best_cert, best_order
        target = -1
        for i, c in enumerate(cells):
            if len(c) > 1 and (target < 0 or len(c) < len(cells[target])):
                target = i
        if target < 0:
            order = [c[0] for c in cells]
            cert = certificate(order)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                sigma = [0] * n
                for a, b in zip(best_order, order):
                    sigma[a] = b
                autos.append(sigma)
            return
        cell = cells[target]
        done: list[int] = []
        parent = list(range(n))
        used = 0
        for v in cell:
            if done:
                for sigma in autos[used:]:
                    if all(sigma[f] == f for f in fixed):
                        for a in range(n):
                            ra, rb = _find(parent, a), _find(parent, sigma[a])
                            if ra != rb:
                                parent[ra] = rb
                used = len(autos)
                rv = _find(parent, v)
                if any(_find(parent, u) == rv for u in done):
                    continue
            rest = [w for w in cell if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(adj, child), fixed + [v])
            done.append(v)

    search(start, [])
    return best_order


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: Graph) -> str:
    """graph6 string of the canonical relabelling; equal iff isomorphic."""
    return graph6_encode(canonical_graph(g))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)
