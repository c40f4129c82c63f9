"""Exact homomorphism counts and the densities t(F, G) and t_p(F, G).

Two independent counters are provided.  ``hom_count_brute`` enumerates maps
by backtracking over the pattern's vertices.  ``hom_count_dp`` contracts the
host's adjacency matrix along an elimination ordering of the pattern (a tree
decomposition in disguise); its cost is ``sum(|G| ** |bag|)`` over the bags.
Every count is an exact Python integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from string import ascii_letters

import numpy as np

from .config import BudgetExceeded, resolve_budget
from .graph import Graph

PAPER = "paper"
PAIRS = "pairs"
P_CONVENTIONS = (PAPER, PAIRS)

_FLOAT_EXACT = 2**53
_INT64_EXACT = 2**63 - 1


def _check_budget(what: str, cost: int, budget: int | None) -> None:
    limit = resolve_budget(budget)
    if cost > limit:
        raise BudgetExceeded(what, cost, limit)


# ------------------------------------------------------------- enumeration

def _search_order(F: Graph) -> list[int]:
    # BFS per component so each vertex after the first has an earlier neighbor
    order, seen = [], set()
    nbrs = F.neighbor_sets
    for comp in F.components():
        start = max(comp, key=lambda v: (len(nbrs[v]), -v))
        queue = [start]
        seen.add(start)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(nbrs[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def _enumerate(F: Graph, G: Graph, injective: bool) -> int:
    order = _search_order(F)
    fn = F.neighbor_sets
    back = [[order.index(u) for u in fn[v] if order.index(u) < i] for i, v in enumerate(order)]
    gn = G.neighbor_sets
    everyone = frozenset(range(G.vertex_count))
    k = len(order)
    image = [0] * k

    def extend(i: int) -> int:
        if i == k:
            return 1
        if back[i]:
            cand = gn[image[back[i][0]]]
            for j in back[i][1:]:
                cand = cand & gn[image[j]]
        else:
            cand = everyone
        if injective:
            cand = cand.difference(image[:i])
        if i == k - 1:
            return len(cand)
        total = 0
        for x in cand:
            image[i] = x
            total += extend(i + 1)
        return total

    return extend(0)


def hom_count_brute(F: Graph, G: Graph, budget: int | None = None) -> int:
    """Count maps V(F) -> V(G) preserving edges, by exhaustive backtracking."""
    _check_budget("hom_count_brute", G.vertex_count ** F.vertex_count, budget)
    return _enumerate(F, G, injective=False)


def injective_hom_count(F: Graph, G: Graph, budget: int | None = None) -> int:
    _check_budget("injective_hom_count", G.vertex_count ** F.vertex_count, budget)
    if F.vertex_count > G.vertex_count:
        return 0
    return _enumerate(F, G, injective=True)


# ------------------------------------------------------ tree decomposition

@dataclass(frozen=True)
class TreeDecomposition:
    """Bags from a greedy elimination ordering; ``parent[i]`` is -1 for roots."""

    order: tuple[int, ...]
    bags: tuple[frozenset[int], ...]
    parent: tuple[int, ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1


def tree_decomposition(F: Graph) -> TreeDecomposition:
    """Greedy min-fill elimination (ties: min degree, then smallest label)."""
    adj = {v: set(s) for v, s in enumerate(F.neighbor_sets)}
    order, bags = [], []
    while adj:
        def fill(v):
            nb = list(adj[v])
            return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])

        v = min(adj, key=lambda x: (fill(x), len(adj[x]), x))
        nb = adj.pop(v)
        for a in nb:
            adj[a].discard(v)
            adj[a].update(nb - {a})
        order.append(v)
        bags.append(frozenset(nb | {v}))
    pos = {v: i for i, v in enumerate(order)}
    parent = []
    for i, bag in enumerate(bags):
        later = [pos[u] for u in bag if pos[u] > i]
        parent.append(min(later) if later else -1)
    return TreeDecomposition(tuple(order), tuple(bags), tuple(parent))


def dp_cost(F: Graph, host_order: int, td: TreeDecomposition | None = None) -> int:
    td = td or tree_decomposition(F)
    return host_order ** 2 + sum(host_order ** len(b) for b in td.bags)


# ------------------------------------------------------- factor contraction

@dataclass
class _Factor:
    vars: tuple[int, ...]  # ascending
    table: object  # ndarray with one axis per var, or int for a scalar
    bound: int  # upper bound on any entry


def _dtype_for(bound: int):
    return np.int64 if bound <= _INT64_EXACT else object


def _as(table, dtype):
    return table if isinstance(table, int) else table.astype(dtype, copy=False)


def _merge_same_vars(factors: list[_Factor]) -> list[_Factor]:
    merged: dict[tuple[int, ...], _Factor] = {}
    for f in factors:
        if f.vars in merged:
            g = merged[f.vars]
            bound = g.bound * f.bound
            dt = _dtype_for(bound)
            merged[f.vars] = _Factor(f.vars, _as(g.table, dt) * _as(f.table, dt), bound)
        else:
            merged[f.vars] = f
    return list(merged.values())


def _eliminate(factors: list[_Factor], v: int, n: int) -> _Factor:
    factors = _merge_same_vars(factors)
    out_vars = tuple(sorted({u for f in factors for u in f.vars} - {v}))
    bound = n * math.prod(f.bound for f in factors)
    dt = _dtype_for(bound)

    unary = [f for f in factors if f.vars == (v,)]
    binary = [f for f in factors if len(f.vars) == 2]
    if len(out_vars) == 2 and len(binary) == 2 and len(unary) + len(binary) == len(factors):
        # sum_v X[a, v] w[v] Y[v, b] as one matrix product
        x, y = binary
        if out_vars[0] not in x.vars:
            x, y = y, x
        xm = x.table if x.vars[1] == v else x.table.T
        ym = y.table if y.vars[0] == v else y.table.T
        if unary:
            xm = _as(xm, dt) * _as(unary[0].table, dt)[None, :]
        if bound < _FLOAT_EXACT:
            prod = np.rint(xm.astype(np.float64) @ ym.astype(np.float64)).astype(np.int64)
        else:
            prod = _as(xm, dt) @ _as(ym, dt)
        return _Factor(out_vars, prod, bound)

    letters = {u: ascii_letters[i] for i, u in enumerate(sorted(set(out_vars) | {v}))}
    spec = ",".join("".join(letters[u] for u in f.vars) for f in factors)
    spec += "->" + "".join(letters[u] for u in out_vars)
    operands = [np.asarray(_as(f.table, dt), dtype=dt) for f in factors]
    table = np.einsum(spec, *operands)
    if not out_vars:
        table = int(table)
    return _Factor(out_vars, table, bound)


def hom_count_dp(F: Graph, G: Graph, budget: int | None = None,
                 td: TreeDecomposition | None = None) -> int:
    """Count homomorphisms by contracting along a tree decomposition of ``F``."""
    n = G.vertex_count
    td = td or tree_decomposition(F)
    _check_budget("hom_count_dp", dp_cost(F, n, td), budget)
    if F.vertex_count == 0:
        return 1
    if n == 0:
        return 0
    adj = G.adjacency_matrix(np.int64)
    factors = [_Factor((u, v), adj, 1) for u, v in F.edge_list()]
    scalars: list[int] = []
    for v in td.order:
        touching = [f for f in factors if v in f.vars]
        if not touching:
            scalars.append(n)  # isolated pattern vertex
            continue
        factors = [f for f in factors if v not in f.vars]
        new = _eliminate(touching, v, n)
        if new.vars:
            factors.append(new)
        else:
            scalars.append(int(new.table))
    assert not factors
    return math.prod(scalars)


def hom_count(F: Graph, G: Graph, method: str = "auto", budget: int | None = None) -> int:
    if method == "brute":
        return hom_count_brute(F, G, budget)
    if method in ("dp", "auto"):
        return hom_count_dp(F, G, budget)
    raise ValueError(f"unknown method {method!r}")


# ----------------------------------------------------------------- densities

def hom_density(F: Graph, G: Graph, hom: int | None = None, budget: int | None = None) -> Fraction:
    """t(F, G) = hom(F, G) / |G|^|F|."""
    if G.vertex_count == 0:
        raise ValueError("hom_density: empty host")
    if hom is None:
        hom = hom_count_dp(F, G, budget)
    return Fraction(hom, G.vertex_count ** F.vertex_count)


def normalized_density(F: Graph, G: Graph, p: Fraction | int | str, hom: int | None = None,
                       budget: int | None = None) -> Fraction:
    """t_p(F, G) = hom(F, G) / (p^e_F |G|^|F|), exactly."""
    p = Fraction(p)
    if p <= 0:
        raise ValueError("normalized_density: p must be positive")
    return hom_density(F, G, hom, budget) / p ** F.edge_count


def edge_density(G: Graph, convention: str = PAPER) -> Fraction:
    """Edge density of ``G``.

    ``paper``: 2 e_G / |G|^2 (equal to hom(K2, G) / |G|^2).
    ``pairs``: e_G / C(|G|, 2), the fraction of vertex pairs that are edges.
    """
    n = G.vertex_count
    if convention == PAPER:
        if n == 0:
            raise ValueError("edge_density: empty host")
        return Fraction(2 * G.edge_count, n * n)
    if convention == PAIRS:
        if n < 2:
            raise ValueError("edge_density: pairs convention needs at least 2 vertices")
        return Fraction(2 * G.edge_count, n * (n - 1))
    raise ValueError(f"unknown p convention {convention!r}")
