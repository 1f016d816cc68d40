"""Walk counts, the lexicographic walk ordering and the EX filtration.

All counts are Python integers, so nothing overflows however long the walks.

Cutoff for the ordering.  W^l(G) = 1^T A^l 1 satisfies the linear recurrence
given by the minimal polynomial of A(G), which has degree at most |G|.  The
difference W^l(G1) - W^l(G2) therefore satisfies a recurrence of order at most
|G1| + |G2| (the product of the two minimal polynomials annihilates it), so if
it vanishes on |G1| + |G2| consecutive levels it vanishes on every level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, _bits

GT, EQ, LT = "≻", "≡", "≺"


@dataclass(frozen=True)
class WalkProfile:
    """per_vertex[l-1][u] = w^l(u); totals[l-1] = W^l for l = 1..L."""

    per_vertex: tuple[tuple[int, ...], ...]
    totals: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.totals)

    def w(self, ell: int, u: int) -> int:
        return self.per_vertex[ell - 1][u]

    def W(self, ell: int) -> int:
        return self.totals[ell - 1]


def _step(g: Graph, vec: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(vec[v] for v in _bits(g.adj[u])) for u in range(g.n))


def walk_totals(g: Graph, upto: int) -> list[int]:
    """W^1..W^upto without keeping the per-vertex table."""
    vec = (1,) * g.n
    out = []
    for _ in range(upto):
        vec = _step(g, vec)
        out.append(sum(vec))
    return out


def walk_profile(g: Graph, L: int) -> WalkProfile:
    if L < 1:
        raise ValueError("L must be >= 1")
    vec = (1,) * g.n
    rows = []
    for _ in range(L):
        vec = _step(g, vec)
        rows.append(vec)
    return WalkProfile(tuple(rows), tuple(sum(r) for r in rows))


def walk_closed_forms(n: int, k: int) -> list[int]:
    """Predicted W^1..W^4 for every nearly k-regular P_{2k+3}-free graph of order n."""
    if k < 3 or k % 2 == 0:
        raise ValueError("closed forms need odd k >= 3")
    if (n * k) % 2 == 0:
        raise ValueError("n*k must be odd for a nearly k-regular graph")
    return [
        n * k - 1,
        (n - 1) * k ** 2 + (k - 1) ** 2,
        n * k ** 3 - 3 * k ** 2 + 2 * k,
        n * k ** 4 - 4 * k ** 3 + 3 * k ** 2 + k - 1,
    ]


@dataclass(frozen=True)
class WalkComparison:
    ordering: str
    first_diff_level: int | None
    gap: int
    cutoff: int


def walk_compare_detail(g1: Graph, g2: Graph) -> WalkComparison:
    """Lexicographic comparison of (W^1, W^2, ...) up to the cutoff |G1| + |G2|."""
    cutoff = max(g1.n + g2.n, 1)
    v1, v2 = (1,) * g1.n, (1,) * g2.n
    for ell in range(1, cutoff + 1):
        v1, v2 = _step(g1, v1), _step(g2, v2)
        a, b = sum(v1), sum(v2)
        if a != b:
            return WalkComparison(GT if a > b else LT, ell, a - b, cutoff)
    return WalkComparison(EQ, None, 0, cutoff)


def walk_compare(g1: Graph, g2: Graph) -> str:
    return walk_compare_detail(g1, g2).ordering


def ex_filter(family: Sequence[Graph], ell: int) -> list[Graph]:
    """EX^ell: keep the W^i-maximisers successively for i = 1..ell."""
    if not family:
        raise ValueError("family must be nonempty")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    members = list(family)
    totals = [walk_totals(g, ell) for g in members]
    alive = list(range(len(members)))
    for i in range(ell):
        best = max(totals[j][i] for j in alive)
        alive = [j for j in alive if totals[j][i] == best]
    return [members[j] for j in alive]


@dataclass(frozen=True)
class FiltrationTrace:
    survivors: tuple[Graph, ...]
    sizes: tuple[int, ...]          # survivors after level 1, 2, ...
    last_shrink_level: int          # 0 if the family never shrank
    stable_level: int               # level from which survivors are pairwise ≡


def ex_infinity_trace(family: Sequence[Graph]) -> FiltrationTrace:
    """EX^infinity with the level-by-level survivor counts.

    Levels run to twice the largest order, which is enough for any two members
    to be compared to cutoff.  Survivors at that point have equal W^l for all l
    up to the cutoff, hence are pairwise ≡.
    """
    if not family:
        raise ValueError("family must be nonempty")
    members = list(family)
    depth = max(2 * max(g.n for g in members), 1)
    totals = [walk_totals(g, depth) for g in members]
    alive = list(range(len(members)))
    sizes = []
    last = 0
    for i in range(depth):
        best = max(totals[j][i] for j in alive)
        nxt = [j for j in alive if totals[j][i] == best]
        if len(nxt) < len(alive):
            last = i + 1
        alive = nxt
        sizes.append(len(alive))
    return FiltrationTrace(tuple(members[j] for j in alive), tuple(sizes), last, last + 1 if last else 1)


def ex_infinity(family: Sequence[Graph]) -> list[Graph]:
    return list(ex_infinity_trace(family).survivors)
