"""Step kernels with exact rational arithmetic.

A step kernel on k blocks has block measures mu_1..mu_k (positive, summing to
one) and a symmetric k x k value matrix.  The H-density integral becomes the
finite sum over block assignments phi: V(H) -> [k] of

    prod_{uv in E(H)} values[phi(u)][phi(v)] * prod_{v} mu[phi(v)].
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from string import ascii_letters
from typing import Sequence

import numpy as np

from .config import BudgetExceeded, default_limits
from .graph import Graph, complete_bipartite, complete_graph, cycle_graph, path_graph


class KernelError(ValueError):
    pass


def _frac(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise KernelError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise KernelError(f"{where}: bad rational {x!r}") from None
    raise KernelError(f"{where}: expected a rational string, got {x!r}")


@dataclass(frozen=True)
class SignedStepKernel:
    block_weights: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        w = tuple(_frac(x, f"block_weights[{i}]") for i, x in enumerate(self.block_weights))
        k = len(w)
        if k == 0:
            raise KernelError("a step kernel needs at least one block")
        if len(self.values) != k:
            raise KernelError(f"values has {len(self.values)} rows, expected {k}")
        vals = []
        for i, row in enumerate(self.values):
            if len(row) != k:
                raise KernelError(f"values[{i}] has {len(row)} entries, expected {k}")
            vals.append(tuple(_frac(x, f"values[{i}][{j}]") for j, x in enumerate(row)))
        for i, x in enumerate(w):
            if x <= 0:
                raise KernelError(f"block_weights[{i}] must be positive")
        if sum(w) != 1:
            raise KernelError(f"block_weights sum to {sum(w)}, not 1")
        for i in range(k):
            for j in range(i + 1, k):
                if vals[i][j] != vals[j][i]:
                    raise KernelError(f"values[{i}][{j}] != values[{j}][{i}]")
        object.__setattr__(self, "block_weights", w)
        object.__setattr__(self, "values", tuple(vals))

    @property
    def k(self) -> int:
        return len(self.block_weights)

    @classmethod
    def constant(cls, c, k: int = 1):
        return cls((Fraction(1, k),) * k, ((Fraction(c),) * k,) * k)

    def _rebuild(self, weights, values):
        return type(self)(tuple(weights), tuple(tuple(r) for r in values))

    def minus_one(self) -> "SignedStepKernel":
        return SignedStepKernel(self.block_weights, tuple(tuple(x - 1 for x in r) for r in self.values))

    def negated(self) -> "SignedStepKernel":
        return SignedStepKernel(self.block_weights, tuple(tuple(-x for x in r) for r in self.values))

    def scaled(self, c):
        c = Fraction(c)
        return self._rebuild(self.block_weights, [[c * x for x in r] for r in self.values])

    def permuted(self, perm: Sequence[int]):
        """Block perm[i] of the result is block i of this kernel."""
        inv = [0] * self.k
        for i, p in enumerate(perm):
            inv[p] = i
        return self._rebuild([self.block_weights[inv[a]] for a in range(self.k)],
                             [[self.values[inv[a]][inv[b]] for b in range(self.k)] for a in range(self.k)])

    def refined(self, block: int, fraction=Fraction(1, 2)):
        """Split ``block`` into two blocks of measure fraction*mu and (1-fraction)*mu."""
        fraction = Fraction(fraction)
        if not 0 < fraction < 1:
            raise KernelError("split fraction must lie strictly between 0 and 1")
        src = list(range(self.k)) + [block]
        w = list(self.block_weights)
        w[block] = self.block_weights[block] * fraction
        w.append(self.block_weights[block] * (1 - fraction))
        return self._rebuild(w, [[self.values[a][b] for b in src] for a in src])

    def is_constant(self, c=1) -> bool:
        return all(x == c for row in self.values for x in row)

    def to_dict(self) -> dict:
        return {
            "block_weights": [str(x) for x in self.block_weights],
            "values": [[str(x) for x in row] for row in self.values],
        }


@dataclass(frozen=True)
class StepKernel(SignedStepKernel):
    """Nonnegative step kernel."""

    def __post_init__(self):
        super().__post_init__()
        for i, row in enumerate(self.values):
            for j, x in enumerate(row):
                if x < 0:
                    raise KernelError(f"values[{i}][{j}] is negative")


def parse_kernel(text: str, signed: bool = False) -> SignedStepKernel:
    """Read the step-kernel JSON document: block_weights and values as rational strings."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KernelError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise KernelError("kernel document must be a JSON object")
    for key in ("block_weights", "values"):
        if key not in doc:
            raise KernelError(f"missing field {key!r}")
    if not isinstance(doc["block_weights"], list):
        raise KernelError("block_weights must be an array")
    if not isinstance(doc["values"], list) or not all(isinstance(r, list) for r in doc["values"]):
        raise KernelError("values must be an array of arrays")
    cls = SignedStepKernel if signed else StepKernel
    return cls(tuple(doc["block_weights"]), tuple(tuple(r) for r in doc["values"]))


def serialize_kernel(W: SignedStepKernel) -> str:
    return json.dumps(W.to_dict(), indent=2)


# ---------------------------------------------------------------- densities

def kernel_density(H: Graph, W: SignedStepKernel) -> Fraction:
    """t(H, W) as an exact rational."""
    if H.vertex_count == 0:
        return Fraction(1)
    if H.vertex_count > len(ascii_letters):
        raise ValueError("pattern too large")
    vals = np.empty((W.k, W.k), dtype=object)
    for i in range(W.k):
        for j in range(W.k):
            vals[i, j] = W.values[i][j]
    weights = np.empty(W.k, dtype=object)
    for i, w in enumerate(W.block_weights):
        weights[i] = w
    letter = ascii_letters
    terms = [letter[u] + letter[v] for u, v in H.edge_list()]
    terms += [letter[v] for v in range(H.vertex_count)]
    ops = [vals] * H.edge_count + [weights] * H.vertex_count
    return Fraction(np.einsum(",".join(terms) + "->", *ops))


def edge_density_kernel(W: SignedStepKernel) -> Fraction:
    """t(K2, W) = sum_ij mu_i mu_j W_ij."""
    mu = W.block_weights
    return sum(mu[i] * mu[j] * W.values[i][j] for i in range(W.k) for j in range(W.k))


# ---------------------------------------------------------------- cut norm

@dataclass(frozen=True)
class CutNormResult:
    value: Fraction
    rows: tuple[int, ...]  # blocks forming A
    cols: tuple[int, ...]  # blocks forming B


def _weighted_integer_matrix(U: SignedStepKernel) -> tuple[list[list[int]], int]:
    mu = U.block_weights
    m = [[mu[i] * mu[j] * U.values[i][j] for j in range(U.k)] for i in range(U.k)]
    den = math.lcm(*(x.denominator for row in m for x in row))
    return [[int(x * den) for x in row] for row in m], den


def cut_norm_witness(U: SignedStepKernel, cap: int | None = None) -> CutNormResult:
    """Exact cut norm of a step kernel with a maximizing block pair.

    The bilinear form sum a_i b_j mu_i mu_j U_ij over the box [0,1]^k x [0,1]^k
    attains its extremes at 0/1 vectors, so it suffices to enumerate row sets A
    and take B as the columns whose partial sums have the favorable sign.  Ties
    go to the smallest (A, B) when each set is read as a bitmask.
    """
    cap = default_limits().cutnorm_cap if cap is None else cap
    k = U.k
    if k > cap:
        raise BudgetExceeded("cut_norm", k, cap)
    z, den = _weighted_integer_matrix(U)
    col = [0] * k
    best = (0, 0, 0)  # (value, A mask, B mask)
    mask = 0
    for step in range(1, 1 << k):
        # Gray code: flip one row per step
        bit = (step & -step).bit_length() - 1
        mask ^= 1 << bit
        sign = 1 if mask >> bit & 1 else -1
        row = z[bit]
        for j in range(k):
            col[j] += sign * row[j]
        pos = sum(c for c in col if c > 0)
        neg = -sum(c for c in col if c < 0)
        for val, bmask in ((pos, sum(1 << j for j in range(k) if col[j] > 0)),
                           (neg, sum(1 << j for j in range(k) if col[j] < 0))):
            if val > best[0] or (val == best[0] and val > 0 and (mask, bmask) < best[1:]):
                best = (val, mask, bmask)
    value, amask, bmask = best
    return CutNormResult(Fraction(value, den),
                         tuple(i for i in range(k) if amask >> i & 1),
                         tuple(j for j in range(k) if bmask >> j & 1))


def cut_norm(U: SignedStepKernel, cap: int | None = None) -> Fraction:
    return cut_norm_witness(U, cap).value


def cut_norm_brute(U: SignedStepKernel) -> Fraction:
    """Reference: maximize over all pairs of block subsets directly."""
    mu, k = U.block_weights, U.k
    best = Fraction(0)
    for a in range(1 << k):
        for b in range(1 << k):
            s = sum(mu[i] * mu[j] * U.values[i][j]
                    for i in range(k) if a >> i & 1 for j in range(k) if b >> j & 1)
            best = max(best, abs(s))
    return best


# ------------------------------------------------------- C4 lemma, rigidity

K2 = complete_graph(2)
P3 = path_graph(3)  # three edges
K21 = complete_bipartite(2, 1)  # two edges sharing a vertex
C4 = cycle_graph(4)
K3 = complete_graph(3)


def c4_expansion(W: SignedStepKernel) -> Fraction:
    """t(C4, W - 1) expanded over the subgraphs of C4."""
    e = kernel_density(K2, W)
    return kernel_density(C4, W) - 4 * kernel_density(P3, W) + 4 * kernel_density(K21, W) + 2 * e * e - 4 * e + 1


def c4_deviation(W: SignedStepKernel) -> Fraction:
    """t(C4, W - 1), computed directly and by expansion; the two must agree exactly."""
    direct = kernel_density(C4, W.minus_one())
    expanded = c4_expansion(W)
    if direct != expanded:
        raise AssertionError(f"t(C4, W-1) mismatch: direct {direct} vs expansion {expanded}")
    return direct


@dataclass(frozen=True)
class LemmaCheck:
    lhs: Fraction  # cut_norm(W - 1) ** 4
    rhs: Fraction  # t(C4, W - 1)
    holds: bool


def lemma_check(W: SignedStepKernel, cap: int | None = None) -> LemmaCheck:
    lhs = cut_norm(W.minus_one(), cap) ** 4
    rhs = c4_deviation(W)
    return LemmaCheck(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class RigidityVerdict:
    applicable: bool
    t_k2: Fraction
    t_c4: Fraction | None
    constant_one: bool
    verdict: str


def rigidity_check(W: SignedStepKernel) -> RigidityVerdict:
    """With t(K2, W) = 1: t(C4, W) >= 1, and equality forces W = 1 on every block."""
    t_k2 = edge_density_kernel(W)
    const = W.is_constant(1)
    if t_k2 != 1:
        return RigidityVerdict(False, t_k2, None, const, "not applicable: t(K2, W) != 1")
    t_c4 = kernel_density(C4, W)
    if t_c4 < 1:
        raise AssertionError(f"t(C4, W) = {t_c4} < 1 although t(K2, W) = 1")
    if t_c4 == 1 and not const:
        raise AssertionError("t(K2, W) = t(C4, W) = 1 for a non-constant step kernel")
    verdict = "constant: rigid case confirmed" if t_c4 == 1 else "non-constant: excluded since t(C4, W) > 1"
    return RigidityVerdict(True, t_k2, t_c4, const, verdict)


def normalize_edge_density(W: SignedStepKernel):
    """W / t(K2, W), so the result has edge density exactly 1."""
    t = edge_density_kernel(W)
    if t <= 0:
        raise KernelError("kernel has nonpositive edge density")
    return W.scaled(1 / t)


def graph_kernel(G: Graph, p=1) -> StepKernel:
    """Associated step kernel of G (one block per vertex) divided by p."""
    n = G.vertex_count
    if n == 0:
        raise KernelError("empty graph has no kernel")
    p = Fraction(p)
    if p <= 0:
        raise KernelError("p must be positive")
    one, zero = 1 / p, Fraction(0)
    rows = [[zero] * n for _ in range(n)]
    for u, v in G.edge_list():
        rows[u][v] = rows[v][u] = one
    return StepKernel((Fraction(1, n),) * n, tuple(tuple(r) for r in rows))


def random_step_kernel(rng: random.Random, max_blocks: int = 5, max_den: int = 16,
                       max_value: int = 3) -> StepKernel:
    """Random kernel with small-denominator rational weights and values."""
    k = rng.randint(1, max_blocks)
    raw = [rng.randint(1, max_den) for _ in range(k)]
    total = sum(raw)
    weights = tuple(Fraction(x, total) for x in raw)
    vals = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            den = rng.randint(1, max_den)
            vals[i][j] = vals[j][i] = Fraction(rng.randint(0, max_value * den), den)
    return StepKernel(weights, tuple(tuple(r) for r in vals))
