"""Tensor (categorical) products, tensor powers of K_n, and blow-ups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import BudgetExceeded, Limits, default_limits
from .graph import Graph, complete_graph


def _arcs(g: Graph) -> np.ndarray:
    e = g.edge_array
    return np.concatenate([e, e[:, ::-1]])


def _check_size(what: str, vertices: int, edges: int, limits: Limits | None) -> None:
    limits = limits or default_limits()
    if vertices > limits.max_vertices:
        raise BudgetExceeded(f"{what} (vertices)", vertices, limits.max_vertices)
    if edges > limits.max_edges:
        raise BudgetExceeded(f"{what} (edges)", edges, limits.max_edges)


def _from_arcs(n: int, src: np.ndarray, dst: np.ndarray) -> Graph:
    keep = src < dst
    edges = np.stack([src[keep], dst[keep]], axis=1)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return Graph._trusted(n, edges[order])


def tensor_product(G: Graph, H: Graph, limits: Limits | None = None) -> Graph:
    """G x H on pairs (u, x) numbered u * |H| + x; adjacent iff adjacent in both factors."""
    nh = H.vertex_count
    _check_size("tensor_product", G.vertex_count * nh, 2 * G.edge_count * H.edge_count, limits)
    ag, ah = _arcs(G), _arcs(H)
    if ag.size == 0 or ah.size == 0:
        return Graph(G.vertex_count * nh)
    src = (ag[:, 0, None] * nh + ah[None, :, 0]).ravel()
    dst = (ag[:, 1, None] * nh + ah[None, :, 1]).ravel()
    return _from_arcs(G.vertex_count * nh, src, dst)


def blow_up(G: Graph, b: int, limits: Limits | None = None) -> Graph:
    """Replace each vertex v by clones v*b .. v*b + b-1; clones of adjacent vertices are adjacent."""
    if b < 1:
        raise ValueError("blow_up factor must be positive")
    _check_size("blow_up", G.vertex_count * b, G.edge_count * b * b, limits)
    e = G.edge_array
    if e.size == 0:
        return Graph(G.vertex_count * b)
    i, j = np.meshgrid(np.arange(b), np.arange(b), indexing="ij")
    src = (e[:, 0, None] * b + i.ravel()[None, :]).ravel()
    dst = (e[:, 1, None] * b + j.ravel()[None, :]).ravel()
    edges = np.stack([src, dst], axis=1)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return Graph._trusted(G.vertex_count * b, edges[order])


@dataclass(frozen=True)
class TensorPowerSpec:
    """K_n tensored with itself m times, kept implicit until ``materialize``."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("tensor power needs n >= 1 and m >= 1")

    @property
    def vertex_count(self) -> int:
        return self.n ** self.m

    @property
    def degree(self) -> int:
        return (self.n - 1) ** self.m

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.degree // 2

    @classmethod
    def parse(cls, text: str) -> "TensorPowerSpec":
        try:
            n, m = (int(x) for x in text.split(","))
        except ValueError:
            raise ValueError(f"expected 'n,m', got {text!r}") from None
        return cls(n, m)


def materialize(spec: TensorPowerSpec, limits: Limits | None = None) -> Graph:
    """Explicit K_n^(x m): tuples in [n]^m (first coordinate most significant),
    adjacent iff they differ in every coordinate."""
    _check_size("materialize", spec.vertex_count, spec.edge_count, limits)
    base = complete_graph(spec.n)
    g = base
    for _ in range(spec.m - 1):
        g = tensor_product(g, base, limits)
    return g
