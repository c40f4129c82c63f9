"""Chromatic polynomials by memoized deletion-contraction.

P_F(k) counts proper k-colorings of F, which is hom(F, K_k).  The memo is
keyed on a canonical form of the minor for graphs with at most
``CANONICAL_MAX`` vertices; larger minors are cached by their labeled edge
set only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations, product

from .config import BudgetExceeded, default_limits
from .graph import Graph, triangle_count

CANONICAL_MAX = 8

Key = tuple[int, tuple[tuple[int, int], ...]]


@dataclass(frozen=True)
class IntegerPolynomial:
    """Integer polynomial in one variable; ``coeffs[i]`` multiplies ``k**i``."""

    coeffs: tuple[int, ...]
    chromatic: bool = field(default=False, compare=False)

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c) or (0,))

    @property
    def degree(self) -> int:
        return 0 if self.coeffs == (0,) else len(self.coeffs) - 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, n: int) -> int:
        return eval_polynomial(self, n)

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return IntegerPolynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(m)))

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntegerPolynomial(tuple(out))

    def __pow__(self, k: int) -> "IntegerPolynomial":
        out = IntegerPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("k" if i == 1 else f"k^{i}")
            mag = abs(c)
            body = mono if (mag == 1 and mono) else f"{mag}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {b}" for s, b in terms[1:])


def eval_polynomial(P: IntegerPolynomial, n: int) -> int:
    """Horner evaluation in exact integers."""
    acc = 0
    for c in reversed(P.coeffs):
        acc = acc * n + c
    if P.chromatic and n >= 0:
        assert acc >= 0, f"chromatic polynomial negative at {n}: {acc}"
    return acc


def _power(n: int) -> IntegerPolynomial:
    return IntegerPolynomial((0,) * n + (1,))


def _falling(n: int) -> IntegerPolynomial:
    out = IntegerPolynomial((1,))
    for i in range(n):
        out = out * IntegerPolynomial((-i, 1))
    return out


# ---------------------------------------------------------------- canonical

def canonical_key(n: int, edges: frozenset[tuple[int, int]]) -> Key:
    """Lexicographically least relabeled edge list over degree-respecting orderings.

    Vertices are first partitioned by (degree, sorted neighbor degrees); only
    orderings that list the cells in a fixed order are tried, and the minimum
    over all of them is taken, so isomorphic graphs get equal keys.
    """
    nbrs = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    deg = [len(x) for x in nbrs]
    inv = [(deg[v], tuple(sorted(deg[w] for w in nbrs[v]))) for v in range(n)]
    cells: dict[tuple, list[int]] = {}
    for v in range(n):
        cells.setdefault(inv[v], []).append(v)
    ordered = [cells[k] for k in sorted(cells)]
    best = None
    for choice in product(*(permutations(c) for c in ordered)):
        label = [0] * n
        i = 0
        for cell in choice:
            for v in cell:
                label[v] = i
                i += 1
        cand = tuple(sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in edges))
        if best is None or cand < best:
            best = cand
    return n, best or ()


# ------------------------------------------------------ deletion-contraction

_memo: dict[Key, IntegerPolynomial] = {}


def _components(n: int, edges: frozenset[tuple[int, int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _contract(n: int, edges: frozenset[tuple[int, int]], u: int, v: int) -> frozenset[tuple[int, int]]:
    # merge v into u, then shift labels above v down by one; parallel edges collapse
    def relabel(x):
        x = u if x == v else x
        return x - 1 if x > v else x

    out = set()
    for a, b in edges:
        if (a, b) == (u, v):
            continue
        a, b = relabel(a), relabel(b)
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


def _chromatic(n: int, edges: frozenset[tuple[int, int]]) -> IntegerPolynomial:
    m = len(edges)
    if m == 0:
        return _power(n)
    if m == n * (n - 1) // 2:
        return _falling(n)
    comps = _components(n, edges)
    if len(comps) > 1:
        out = IntegerPolynomial((1,))
        for comp in comps:
            index = {v: i for i, v in enumerate(comp)}
            sub = frozenset((index[a], index[b]) for a, b in edges if a in index)
            out = out * _chromatic(len(comp), sub)
        return out
    if m == n - 1:
        return IntegerPolynomial((0, 1)) * IntegerPolynomial((-1, 1)) ** (n - 1)

    key: Key = canonical_key(n, edges) if n <= CANONICAL_MAX else (n, tuple(sorted(edges)))
    hit = _memo.get(key)
    if hit is not None:
        return hit
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    u, v = max(sorted(edges), key=lambda e: deg[e[0]] + deg[e[1]])
    result = _chromatic(n, edges - {(u, v)}) - _chromatic(n - 1, _contract(n, edges, u, v))
    return _memo.setdefault(key, result)


def chromatic_polynomial(F: Graph, cap: int | None = None) -> IntegerPolynomial:
    cap = default_limits().chromatic_cap if cap is None else cap
    if F.vertex_count > cap:
        raise BudgetExceeded("chromatic_polynomial", F.vertex_count, cap)
    P = _chromatic(F.vertex_count, F.edges)
    return IntegerPolynomial(P.coeffs, chromatic=True)


def expansion_coefficients(F: Graph) -> tuple[int, int, int]:
    """Coefficients of k^|F|, k^(|F|-1), k^(|F|-2) in the chromatic polynomial."""
    v = F.vertex_count
    if v < 2:
        raise ValueError("expansion_coefficients needs at least 2 vertices")
    P = chromatic_polynomial(F)
    return P.coefficient(v), P.coefficient(v - 1), P.coefficient(v - 2)


def expansion_formula(F: Graph) -> tuple[int, int, int]:
    """The closed form (1, -e_F, C(e_F, 2) - triangles) for the same three coefficients."""
    e = F.edge_count
    return 1, -e, math.comb(e, 2) - triangle_count(F)
