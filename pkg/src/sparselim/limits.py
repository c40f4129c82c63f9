"""Normalized densities of F in K_n^(x m), evaluated without building the host.

Since hom(F, K_n^(x m)) = P_F(n)^m and the host has n^m vertices and edge
density ((n-1)/n)^m, the normalized density is r^m with

    r = P_F(n) * n^(e_F - |F|) / (n-1)^e_F,

an exact rational.  Only the final logarithm is inexact.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .chromatic import IntegerPolynomial, chromatic_polynomial
from .graph import Graph, complete_graph, named_graph, triangle_count
from .highprec import (
    GUARD_BITS,
    MINUS_INFINITY,
    HighPrecisionValue,
    MinusInfinity,
    exp_value,
    log_fixed,
    log_rational,
)
from .hom import P_CONVENTIONS, PAIRS, PAPER
from .rng import splitmix64_block

LnValue = HighPrecisionValue | MinusInfinity


def edge_density_power(n: int, m: int) -> Fraction:
    """((n-1)/n)^m, the edge density 2e/|G|^2 of K_n^(x m)."""
    if n < 2:
        raise ValueError("edge_density_power needs n >= 2")
    if m < 1:
        raise ValueError("edge_density_power needs m >= 1")
    return Fraction((n - 1) ** m, n ** m)


def density_ratio(F: Graph, n: int, P: IntegerPolynomial | None = None) -> Fraction:
    """r with t_p(F, K_n^(x m)) = r^m when p = 2e/N^2."""
    P = P or chromatic_polynomial(F)
    e, v = F.edge_count, F.vertex_count
    return Fraction(P(n)) * Fraction(n) ** (e - v) / Fraction(n - 1) ** e


def _log_sum(terms: Sequence[tuple[int, Fraction]], bits: int) -> HighPrecisionValue:
    """sum(scale * ln q) as one fixed-point accumulation."""
    terms = [(s, q) for s, q in terms if q != 1 and s != 0]
    if not terms:
        return HighPrecisionValue.zero(bits)
    if len(terms) == 1:
        return log_rational(terms[0][1], bits, terms[0][0])
    wp = bits + GUARD_BITS + 16 + max(abs(s).bit_length() + abs(q.numerator.bit_length()
                                      - q.denominator.bit_length()).bit_length() for s, q in terms)
    total = sum(s * log_fixed(q, wp) for s, q in terms)
    return HighPrecisionValue.from_scaled_int(total, -wp, bits)


def log_normalized_density(F: Graph, n: int, m: int, mantissa_bits: int = 128,
                           convention: str = PAPER, P: IntegerPolynomial | None = None) -> LnValue:
    """ln t_p(F, K_n^(x m)), or MINUS_INFINITY when P_F(n) = 0."""
    if n < 2 or m < 1:
        raise ValueError("log_normalized_density needs n >= 2 and m >= 1")
    if convention not in P_CONVENTIONS:
        raise ValueError(f"unknown p convention {convention!r}")
    P = P or chromatic_polynomial(F)
    if P(n) == 0:
        return MINUS_INFINITY
    terms = [(m, density_ratio(F, n, P))]
    if convention == PAIRS:
        # p_pairs = p_paper * N / (N - 1) with N = n^m
        N = n ** m
        terms.append((F.edge_count, Fraction(N - 1, N)))
    return _log_sum(terms, mantissa_bits)


# --------------------------------------------------------------- limit table

@dataclass(frozen=True)
class LimitRow:
    n: int
    m: int
    ln_t: LnValue
    target: int
    abs_err: HighPrecisionValue | None  # None when ln_t is -inf

    @property
    def finite(self) -> bool:
        return isinstance(self.ln_t, HighPrecisionValue)


@dataclass
class LimitReport:
    pattern: str
    triangles: int
    rows: list[LimitRow]
    p_convention: str = PAPER
    mantissa_bits: int = 128

    @property
    def target(self) -> int:
        return -self.triangles

    @property
    def digits(self) -> int:
        return math.ceil(self.mantissa_bits * 0.3)

    def _fmt(self, x) -> str:
        if x is None:
            return "inf"
        return x.to_decimal(self.digits)

    def row_fields(self, row: LimitRow) -> list[str]:
        return [str(row.n), str(row.m), self._fmt(row.ln_t), str(row.target), self._fmt(row.abs_err)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "m", "ln_t", "target", "abs_err"])
        for row in self.rows:
            w.writerow(self.row_fields(row))
        return buf.getvalue()

    def to_dict(self) -> dict:
        keys = ["n", "m", "ln_t", "target", "abs_err"]
        return {
            "pattern": self.pattern,
            "p_convention": self.p_convention,
            "mantissa_bits": self.mantissa_bits,
            "triangles": self.triangles,
            "limit": limit_value(self.target, self.mantissa_bits),
            "rows": [dict(zip(keys, self.row_fields(r))) for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def limit_value(target: int, bits: int = 128) -> str:
    """e^target as a decimal string; "1" for target 0."""
    if target == 0:
        return "1"
    return exp_value(target, bits).to_decimal(math.ceil(bits * 0.3))


def square(n: int) -> int:
    return n * n


def limit_table(F: Graph, n_values: Iterable[int], mantissa_bits: int = 128,
                convention: str = PAPER, name: str | None = None,
                exponent: Callable[[int], int] = square) -> LimitReport:
    """Rows (n, m, ln t, -triangles, |ln t + triangles|) with m = exponent(n), default n^2."""
    P = chromatic_polynomial(F)
    tri = triangle_count(F)
    rows = []
    for n in sorted(set(n_values)):
        m = exponent(n)
        ln_t = log_normalized_density(F, n, m, mantissa_bits, convention, P)
        if isinstance(ln_t, MinusInfinity):
            rows.append(LimitRow(n, m, ln_t, -tri, None))
        else:
            err = abs(ln_t.to_fraction() + tri)
            rows.append(LimitRow(n, m, ln_t, -tri, HighPrecisionValue.from_fraction(err, mantissa_bits)))
    return LimitReport(name or _describe(F), tri, rows, convention, mantissa_bits)


def _describe(F: Graph) -> str:
    return f"graph({F.vertex_count}; {F.edge_list()})"


# --------------------------------------------------------- edge asymptotics

@dataclass(frozen=True)
class AsymptoticsRow:
    n: int
    ln_p: HighPrecisionValue
    residual: HighPrecisionValue  # |ln p_n + n + 1/2|
    bound: Fraction  # 1/n
    exponent_ratio: HighPrecisionValue  # ln p_n / ln |G_n|, with |G_n| = n^(n^2)

    @property
    def within_bound(self) -> bool:
        return self.residual.to_fraction() <= self.bound


def density_asymptotics_check(n_values: Iterable[int], mantissa_bits: int = 128) -> list[AsymptoticsRow]:
    rows = []
    for n in sorted(set(n_values)):
        if n < 2:
            raise ValueError("density_asymptotics_check needs n >= 2")
        ln_p = log_rational(Fraction(n - 1, n), mantissa_bits, n * n)
        lp = ln_p.to_fraction()
        residual = HighPrecisionValue.from_fraction(abs(lp + n + Fraction(1, 2)), mantissa_bits)
        ln_size = log_rational(n, mantissa_bits, n * n).to_fraction()
        ratio = HighPrecisionValue.from_fraction(lp / ln_size, mantissa_bits)
        rows.append(AsymptoticsRow(n, ln_p, residual, Fraction(1, n), ratio))
    return rows


# ----------------------------------------------------------- forcing witness

@dataclass
class ForcingReport:
    triangles: dict[str, int]
    tables: dict[str, LimitReport] = field(default_factory=dict)
    k3_table: LimitReport | None = None

    @property
    def triangle_free(self) -> list[str]:
        return [k for k, t in self.triangles.items() if t == 0]

    @property
    def with_triangles(self) -> list[str]:
        return [k for k, t in self.triangles.items() if t > 0]

    @property
    def witness(self) -> bool:
        return not self.with_triangles

    def to_dict(self) -> dict:
        out = {
            "witness": self.witness,
            "triangle_free": self.triangle_free,
            "with_triangles": {k: self.triangles[k] for k in self.with_triangles},
        }
        if self.witness:
            out["members"] = {k: t.to_dict() for k, t in self.tables.items()}
            out["K3"] = self.k3_table.to_dict()
        return out


def forcing_witness(family: Mapping[str, Graph] | Sequence[Graph], n_values: Iterable[int],
                    mantissa_bits: int = 128) -> ForcingReport:
    """Check whether K_n^(x n^2) witnesses that ``family`` is not sparse forcing.

    Every triangle-free member has limiting normalized density 1 on this
    sequence while K3 has e^-1, so an all-triangle-free family cannot force.
    """
    if not isinstance(family, Mapping):
        family = {f"F{i}": g for i, g in enumerate(family)}
    if not family:
        raise ValueError("forcing_witness needs a nonempty family")
    n_values = sorted(set(n_values))
    report = ForcingReport({name: triangle_count(g) for name, g in family.items()})
    if report.witness:
        for name, g in family.items():
            report.tables[name] = limit_table(g, n_values, mantissa_bits, name=name)
        report.k3_table = limit_table(complete_graph(3), n_values, mantissa_bits, name="K3")
    return report


# ------------------------------------------------------------------- G(n,p)

def _threshold(p: Fraction) -> int:
    # x < p * 2^64 for integer x  <=>  x < ceil(p * 2^64)
    return -((-p.numerator << 64) // p.denominator)


def sample_gnp(n: int, p: Fraction | str | int, seed: int) -> Graph:
    """G(n, p): pair (u, v), u < v, taken in lexicographic order as draw i of the
    seeded stream, is an edge iff draw_i < p * 2^64."""
    if n < 1:
        raise ValueError("sample_gnp needs n >= 1")
    p = Fraction(p)
    if not (0 < p <= 1):
        raise ValueError("sample_gnp needs 0 < p <= 1")
    iu = np.triu_indices(n, k=1)
    t = _threshold(p)
    if t >= 1 << 64:
        keep = np.ones(iu[0].size, dtype=bool)
    else:
        keep = splitmix64_block(seed, 0, iu[0].size) < np.uint64(t)
    edges = np.stack([iu[0][keep], iu[1][keep]], axis=1)
    return Graph._trusted(n, edges)


# named corpus used by the tables and acceptance checks
PATTERN_CORPUS = ("K2", "P2", "P3", "C4", "C5", "K3", "K4", "K4-e")


def corpus() -> dict[str, Graph]:
    return {name: named_graph(name) for name in PATTERN_CORPUS}
