"""Spectral radius, exact characteristic polynomials and equitable quotients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph import CANONICAL_MAX_ORDER, Graph, GraphError, _bits, _refine, component_masks
from .polynomial import (
    DEFAULT_PRECISION,
    IntPolynomial,
    RootInterval,
    char_poly_exact as _char_poly_matrix,
    compare_largest_roots,
    largest_real_root,
)

EXACT_MAX_ORDER = CANONICAL_MAX_ORDER
ACCEPT_RESIDUAL = 1e-9


class ConvergenceError(ArithmeticError):
    """Power iteration failed to reach the requested residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class PartitionError(GraphError):
    """A vertex partition is not equitable (or not a partition)."""


class UndecidedComparison(GraphError):
    """No exact polynomial of manageable size is available for a comparison."""


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray = field(repr=False)
    residual: float
    iterations: int


# -- numerical spectral radius ---------------------------------------------


def _component_radius(a: np.ndarray, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    n = a.shape[0]
    if n == 1:
        return 0.0, np.ones(1), 0.0, 0
    shifted = a + np.eye(n)
    x = np.ones(n)
    rho = float(x @ a @ x / (x @ x))
    residual = math.inf
    it = 0
    while it < max_iter:
        it += 1
        y = shifted @ x
        x = y / y.max()
        ax = a @ x
        rho = float(x @ ax / (x @ x))
        residual = float(np.abs(ax - rho * x).max())
        if residual <= tol:
            break
        if it % 20 == 0:
            # Rayleigh-quotient refinement; a positive eigenvector can only be Perron.
            try:
                z = np.linalg.solve(a - (rho + 1e-13 * max(1.0, rho)) * np.eye(n), x)
            except np.linalg.LinAlgError:
                continue
            z = z / z[np.argmax(np.abs(z))]
            if z.min() > 0:
                az = a @ z
                rz = float(z @ az / (z @ z))
                rz_res = float(np.abs(az - rz * z).max())
                if rz_res < residual:
                    x, rho, residual = z, rz, rz_res
                    if residual <= tol:
                        break
    return rho, x, residual, it


def spectral_radius(g: Graph, tol: float = 1e-12, max_iter: int = 100_000) -> SpectralResult:
    """Largest adjacency eigenvalue with a nonnegative Perron vector (max entry 1).

    Each component is iterated separately on A + I from the all-ones vector;
    the vector is supported on a component attaining the maximum.
    """
    if g.n == 0:
        raise GraphError("spectral radius of the empty graph is undefined")
    a = g.to_numpy()
    best = None
    for comp in component_masks(g):
        idx = list(_bits(comp))
        rho, x, res, it = _component_radius(a[np.ix_(idx, idx)], tol, max_iter)
        if best is None or rho > best[0] + 1e-12:
            best = (rho, idx, x, res, it)
    rho, idx, x, res, it = best
    if res > max(tol, ACCEPT_RESIDUAL):
        raise ConvergenceError(f"power iteration stalled at residual {res:.3e}", res)
    vec = np.zeros(g.n)
    vec[idx] = x
    return SpectralResult(rho, vec, res, it)


# -- exact characteristic polynomials --------------------------------------


def char_poly_exact(g_or_matrix) -> IntPolynomial:
    """det(xI - A) for a graph of order <= 16 or an integer matrix of dimension <= 16."""
    if isinstance(g_or_matrix, Graph):
        g = g_or_matrix
        if g.n > EXACT_MAX_ORDER:
            raise GraphError(f"exact characteristic polynomial capped at order {EXACT_MAX_ORDER}")
        rows = [[g.adj[u] >> v & 1 for v in range(g.n)] for u in range(g.n)]
        return _char_poly_matrix(rows, EXACT_MAX_ORDER)
    if isinstance(g_or_matrix, QuotientMatrix):
        return g_or_matrix.char_poly()
    return _char_poly_matrix(g_or_matrix, EXACT_MAX_ORDER)


def rho_polynomial(g: Graph) -> IntPolynomial:
    """An integer polynomial whose largest real root is rho(g).

    The full characteristic polynomial up to order 16; beyond that the
    quotient of the coarsest equitable partition, whose largest eigenvalue is
    also rho(g), provided it has at most 16 cells.
    """
    if g.n <= EXACT_MAX_ORDER:
        return char_poly_exact(g)
    cells = equitable_refinement(g)
    if len(cells) > EXACT_MAX_ORDER:
        raise UndecidedComparison(
            f"order {g.n} exceeds {EXACT_MAX_ORDER} and the equitable quotient has {len(cells)} cells")
    return equitable_quotient(g, cells).char_poly()


def rho_exact(g: Graph, prec=DEFAULT_PRECISION) -> RootInterval:
    return largest_real_root(rho_polynomial(g), prec)


def rho_compare_exact(g1: Graph, g2: Graph) -> str:
    """'<', '=' or '>' comparing rho(g1) with rho(g2), decided exactly.

    Raises ``UndecidedComparison`` when neither route gives a polynomial.
    """
    s = compare_largest_roots(rho_polynomial(g1), rho_polynomial(g2))
    return {-1: "<", 0: "=", 1: ">"}[s]


# -- quotients ------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    """B[i][j] = number of neighbours in part j of any vertex of part i."""

    entries: tuple[tuple[Fraction, ...], ...]
    part_sizes: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.entries)

    def scale(self) -> int:
        den = 1
        for row in self.entries:
            for x in row:
                den = math.lcm(den, Fraction(x).denominator)
        return den

    def char_poly(self) -> IntPolynomial:
        """det(xI - B); rational entries are handled by scaling x -> x/D."""
        d = self.scale()
        p = _char_poly_matrix([[int(Fraction(x) * d) for x in row] for row in self.entries], EXACT_MAX_ORDER)
        if d == 1:
            return p
        # det(yI - dB) at y = d x equals d^m det(xI - B).
        return IntPolynomial(tuple(c * d ** i for i, c in enumerate(p.coeffs)))

    def largest_root(self, prec=DEFAULT_PRECISION) -> RootInterval:
        return largest_real_root(self.char_poly(), prec)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])


def quotient_from_rows(rows: Sequence[Sequence]) -> QuotientMatrix:
    return QuotientMatrix(tuple(tuple(Fraction(x) for x in row) for row in rows))


def equitable_refinement(g: Graph, partition: Sequence[Iterable[int]] | None = None) -> list[tuple[int, ...]]:
    """Coarsest equitable partition refining ``partition`` (default: one cell)."""
    cells = [list(p) for p in partition] if partition is not None else [list(range(g.n))]
    return [tuple(sorted(c)) for c in _refine(g.adj, cells)]


def equitable_quotient(g: Graph, partition: Sequence[Iterable[int]]) -> QuotientMatrix:
    """Quotient matrix of an equitable partition; raises if not equitable."""
    parts = [tuple(p) for p in partition]
    seen = 0
    masks = []
    for i, p in enumerate(parts):
        if not p:
            raise PartitionError(f"part {i} is empty")
        m = 0
        for v in p:
            if not 0 <= v < g.n:
                raise PartitionError(f"vertex {v} is out of range")
            if (seen | m) >> v & 1:
                raise PartitionError(f"vertex {v} appears twice")
            m |= 1 << v
        seen |= m
        masks.append(m)
    if seen != g.vertex_mask:
        missing = next(v for v in range(g.n) if not seen >> v & 1)
        raise PartitionError(f"vertex {missing} is not covered by the partition")
    rows = []
    for i, p in enumerate(parts):
        want = [(g.adj[p[0]] & mj).bit_count() for mj in masks]
        for v in p[1:]:
            got = [(g.adj[v] & mj).bit_count() for mj in masks]
            if got != want:
                j = next(j for j in range(len(masks)) if got[j] != want[j])
                raise PartitionError(
                    f"not equitable: vertex {v} of part {i} has {got[j]} neighbours in part {j}, "
                    f"vertex {p[0]} has {want[j]}")
        rows.append(tuple(Fraction(x) for x in want))
    return QuotientMatrix(tuple(rows), tuple(len(p) for p in parts))


# -- bounds and rewiring ------------------------------------------------------


def join_bound(d1: float, d2: float, n0: int, n: int) -> float:
    """Spectral radius of the join-type bound (d1 + d2 + sqrt((d1-d2)^2 + 4 n0 (n-n0))) / 2."""
    return (d1 + d2 + math.sqrt((d1 - d2) ** 2 + 4 * n0 * (n - n0))) / 2


def _other_endpoints(u: int, items: Iterable) -> frozenset[int]:
    out = set()
    for it in items:
        if isinstance(it, (tuple, list)):
            a, b = it
            if u not in (a, b):
                raise GraphError(f"edge {it} is not incident to {u}")
            out.add(b if a == u else a)
        else:
            out.add(int(it))
    return frozenset(out)


@dataclass(frozen=True)
class RewiringOutcome:
    rho_before: float
    rho_after: float
    margin: float
    held: bool


def rewiring_check(g: Graph, u: int, deleted: Iterable, added: Iterable, tol: float = 1e-12) -> RewiringOutcome:
    """Replace edges u-v (v in ``deleted``) by u-w (w in ``added``) and compare radii.

    The hypothesis is that the Perron entries of the new neighbours weigh at
    least as much as those of the removed ones, and the two sets differ.
    Raises ``ValueError`` when the hypothesis fails.
    """
    s = _other_endpoints(u, deleted)
    t = _other_endpoints(u, added)
    if s == t:
        raise ValueError("deleted and added endpoint sets coincide")
    for v in s:
        if not g.has_edge(u, v):
            raise GraphError(f"{u}-{v} is not an edge")
    for w in t:
        if w == u or (g.has_edge(u, w) and w not in s):
            raise GraphError(f"{u}-{w} cannot be added")
    before = spectral_radius(g, tol)
    x = before.perron
    if sum(x[w] for w in t) < sum(x[v] for v in s) - ACCEPT_RESIDUAL:
        raise ValueError("x-sum hypothesis fails")
    adj = list(g.adj)
    for v in s:
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    for w in t:
        adj[u] |= 1 << w
        adj[w] |= 1 << u
    after = spectral_radius(Graph(g.n, tuple(adj)), tol)
    margin = after.rho - before.rho
    return RewiringOutcome(before.rho, after.rho, margin, margin > 10 * tol)
