"""Finite simple undirected graphs on vertices 0..n-1.

Edges are stored as a sorted ``(E, 2)`` integer array with ``u < v`` on every
row, plus lazily built neighbor lists and membership structures.  Graphs are
immutable once built.
"""

from __future__ import annotations

import re
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Invalid graph data (self-loop, duplicate edge, out-of-range endpoint)."""


class GraphFormatError(GraphError):
    """Malformed edge-list text; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _canonical_edges(vertex_count: int, arr: np.ndarray) -> np.ndarray:
    if arr.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError("edges must be pairs")
    if (arr < 0).any() or (arr >= vertex_count).any():
        bad = arr[((arr < 0) | (arr >= vertex_count)).any(axis=1)][0]
        raise GraphError(f"edge {tuple(int(x) for x in bad)} has an endpoint outside 0..{vertex_count - 1}")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        raise GraphError(f"self-loop at vertex {int(arr[loops][0, 0])}")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    out = np.stack([lo, hi], axis=1)
    order = np.lexsort((hi, lo))
    out = out[order]
    dup = (out[1:] == out[:-1]).all(axis=1)
    if dup.any():
        raise GraphError(f"duplicate edge {tuple(int(x) for x in out[1:][dup][0])}")
    return out


class Graph:
    """Immutable simple graph with dense 0-based vertex labels."""

    __slots__ = ("vertex_count", "_edges", "__dict__")

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] | np.ndarray = ()):
        vertex_count = int(vertex_count)
        if vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2) if arr.size else np.zeros((0, 2), dtype=np.int64)
        self.vertex_count = vertex_count
        self._edges = _canonical_edges(vertex_count, arr)
        self._edges.flags.writeable = False

    @classmethod
    def _trusted(cls, vertex_count: int, edges: np.ndarray) -> "Graph":
        # edges already canonical: u < v, lexicographically sorted, unique
        g = cls.__new__(cls)
        g.vertex_count = int(vertex_count)
        g._edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
        g._edges.flags.writeable = False
        return g

    # ------------------------------------------------------------------ basics

    @property
    def edge_array(self) -> np.ndarray:
        return self._edges

    @property
    def edge_count(self) -> int:
        return int(self._edges.shape[0])

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(map(tuple, self._edges.tolist()))

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self._edges.tolist()]

    def __len__(self) -> int:
        return self.vertex_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and np.array_equal(self._edges, other._edges)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self._edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count})"

    # ------------------------------------------------------------- adjacency

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.vertex_count
        src = np.concatenate([self._edges[:, 0], self._edges[:, 1]])
        dst = np.concatenate([self._edges[:, 1], self._edges[:, 0]])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        indices = dst[order]
        indices.flags.writeable = False
        return indptr, indices

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self._csr
        return indices[indptr[v]:indptr[v + 1]]

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        indptr, indices = self._csr
        flat = indices.tolist()
        return tuple(frozenset(flat[indptr[v]:indptr[v + 1]]) for v in range(self.vertex_count))

    def degrees(self) -> np.ndarray:
        indptr, _ = self._csr
        return np.diff(indptr)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v or not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
            return False
        row = self.neighbors(u)
        i = int(np.searchsorted(row, v))
        return i < row.size and int(row[i]) == v

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        n = self.vertex_count
        a = np.zeros((n, n), dtype=dtype)
        if self.edge_count:
            a[self._edges[:, 0], self._edges[:, 1]] = 1
            a[self._edges[:, 1], self._edges[:, 0]] = 1
        return a

    def is_regular(self) -> bool:
        d = self.degrees()
        return d.size == 0 or bool((d == d[0]).all())

    # ------------------------------------------------------------ operations

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self.vertex_count)):
            raise GraphError("relabeling must be a permutation of the vertices")
        return Graph(self.vertex_count, p[self._edges] if self.edge_count else ())

    def delete_edge(self, u: int, v: int) -> "Graph":
        u, v = min(u, v), max(u, v)
        keep = ~((self._edges[:, 0] == u) & (self._edges[:, 1] == v))
        if keep.all():
            raise GraphError(f"no edge {(u, v)}")
        return Graph._trusted(self.vertex_count, self._edges[keep])

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        nbrs = self.neighbor_sets
        out = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in nbrs[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edge_list() if u in index and v in index]
        return Graph(len(vertices), edges)


# ------------------------------------------------------------------ builders

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete_graph needs n >= 1")
    iu = np.triu_indices(n, k=1)
    return Graph._trusted(n, np.stack(iu, axis=1))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(edge_count: int) -> Graph:
    """Path with ``edge_count`` edges (so P3 has 4 vertices)."""
    return Graph(edge_count + 1, [(i, i + 1) for i in range(edge_count)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edge_list())
        offset += g.vertex_count
    return Graph(offset, edges)


_NAMED = re.compile(r"^(K|C|P|S)(\d+)(-e)?$")


def named_graph(name: str) -> Graph:
    """Small named patterns: ``K4``, ``C5``, ``P3`` (3 edges), ``S2`` (star), ``K4-e``.

    A ``+`` joins disjoint components, e.g. ``K2+K1``.
    """
    if "+" in name:
        return disjoint_union(*(named_graph(part) for part in name.split("+")))
    m = _NAMED.match(name.strip())
    if not m:
        raise GraphError(f"unknown graph name {name!r}")
    kind, k, minus = m.group(1), int(m.group(2)), m.group(3)
    g = {"K": complete_graph, "C": cycle_graph, "P": path_graph, "S": star_graph}[kind](k)
    if minus:
        if g.edge_count == 0:
            raise GraphError(f"{name}: no edge to remove")
        u, v = g.edge_list()[-1]
        g = g.delete_edge(u, v)
    return g


# ---------------------------------------------------------------- statistics

def triangle_count(g: Graph) -> int:
    """Number of triangles, by intersecting neighbor sets along each edge."""
    nbrs = g.neighbor_sets
    higher = [frozenset(w for w in s if w > v) for v, s in enumerate(nbrs)]
    total = 0
    for u, v in g.edge_list():
        total += len(higher[u] & higher[v])
    return total


def triangle_count_naive(g: Graph) -> int:
    return sum(
        1
        for a, b, c in combinations(range(g.vertex_count), 3)
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)
    )


# ------------------------------------------------------------------- text I/O

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format (``graph N`` header, then ``u v`` lines)."""
    vertex_count = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if vertex_count is None:
            if len(parts) != 2 or parts[0] != "graph":
                raise GraphFormatError(lineno, "expected header 'graph <vertex_count>'")
            try:
                vertex_count = int(parts[1])
            except ValueError:
                raise GraphFormatError(lineno, f"bad vertex count {parts[1]!r}") from None
            if vertex_count < 0:
                raise GraphFormatError(lineno, "vertex count must be nonnegative")
            continue
        if len(parts) != 2:
            raise GraphFormatError(lineno, "expected '<u> <v>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer vertex in {line!r}") from None
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphFormatError(lineno, f"vertex index out of range 0..{vertex_count - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(lineno, f"duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    if vertex_count is None:
        raise GraphFormatError(1, "missing 'graph <vertex_count>' header")
    return Graph(vertex_count, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"graph {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(g))
