"""Command-line interface: ``sparselim <subcommand> ...``.

Every subcommand prints one JSON document ``{"status", "payload",
"diagnostics"}``.  Exit codes: 0 ok, 1 error, 2 refused (a budget or size
limit was hit; not a failure of the computation).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .chromatic import chromatic_polynomial, eval_polynomial, expansion_coefficients, expansion_formula
from .config import BudgetExceeded
from .graph import Graph, GraphError, named_graph, read_graph, write_graph
from .hom import PAIRS, PAPER, edge_density, hom_count, injective_hom_count, normalized_density
from .kernels import (
    KernelError,
    cut_norm_witness,
    kernel_density,
    lemma_check,
    parse_kernel,
    rigidity_check,
)
from .limits import density_asymptotics_check, forcing_witness, limit_table, sample_gnp
from .products import TensorPowerSpec, materialize

EXIT_CODES = {"ok": 0, "error": 1, "refused": 2}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        return json.dumps({"status": self.status, "payload": self.payload,
                           "diagnostics": self.diagnostics}, indent=2)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ------------------------------------------------------------------ helpers

def _graph_arg(text: str) -> Graph:
    path = Path(text)
    if path.exists():
        return read_graph(path)
    try:
        return named_graph(text)
    except GraphError:
        raise GraphError(f"{text}: no such file, and not a graph name like K3 or C4") from None


def _host(args) -> Graph:
    if args.tensor_power:
        return materialize(TensorPowerSpec.parse(args.tensor_power))
    if args.host:
        return _graph_arg(args.host)
    raise UsageError("a host is required: --host FILE or --tensor-power n,m")


def _n_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --n-list {text!r}") from None
    if not values:
        raise UsageError("--n-list is empty")
    return values


def _kernel(path: str, signed: bool = False):
    return parse_kernel(Path(path).read_text(encoding="utf-8"), signed=signed)


def _write_csv(path: str | None, text: str, diagnostics: list[str]) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
        diagnostics.append(f"wrote {path}")


# -------------------------------------------------------------- subcommands

def cmd_hom(args, diag):
    F, G = _graph_arg(args.pattern), _host(args)
    out = {"hom": str(hom_count(F, G, args.method, args.budget)), "method": args.method}
    if args.injective:
        out["injective"] = str(injective_hom_count(F, G, args.budget))
    return out


def cmd_chromatic(args, diag):
    F = _graph_arg(args.graph)
    P = chromatic_polynomial(F)
    if args.eval is not None:
        return {"k": args.eval, "value": str(eval_polynomial(P, args.eval))}
    if args.expansion_check:
        c = expansion_coefficients(F)
        return {"c0": c[0], "c1": c[1], "c2": c[2], "formula_ok": c == expansion_formula(F)}
    return {"coeffs": [str(c) for c in P.coeffs], "polynomial": str(P)}


def cmd_density(args, diag):
    F, G = _graph_arg(args.pattern), _host(args)
    if args.p is not None:
        p, conv = Fraction(args.p), "explicit"
    else:
        conv = PAIRS if args.pairs_p else PAPER
        p = edge_density(G, conv)
    hom = hom_count(F, G, "dp", args.budget)
    t_p = normalized_density(F, G, p, hom=hom)
    return {"hom": str(hom), "t": str(Fraction(hom, G.vertex_count ** F.vertex_count)),
            "p": str(p), "p_convention": conv, "t_p": str(t_p)}


def cmd_limit_table(args, diag):
    F = _graph_arg(args.pattern)
    name = args.name or Path(args.pattern).stem
    report = limit_table(F, _n_list(args.n_list), args.bits, args.p_convention, name=name)
    _write_csv(args.csv, report.to_csv(), diag)
    return report.to_dict()


def cmd_density_asymptotics(args, diag):
    rows = density_asymptotics_check(_n_list(args.n_list), args.bits)
    digits = -(-args.bits * 3 // 10)
    return {"mantissa_bits": args.bits, "rows": [
        {"n": r.n, "ln_p": r.ln_p.to_decimal(digits), "residual": r.residual.to_decimal(digits),
         "bound": str(r.bound), "within_bound": r.within_bound,
         "exponent_ratio": r.exponent_ratio.to_decimal(digits)} for r in rows]}


def cmd_forcing_check(args, diag):
    folder = Path(args.family)
    files = sorted(folder.glob("*.el"))
    if not files:
        raise GraphError(f"{folder}: no *.el files")
    family = {f.stem: read_graph(f) for f in files}
    return forcing_witness(family, _n_list(args.n_list), args.bits).to_dict()


def cmd_kernel_density(args, diag):
    H, W = _graph_arg(args.pattern), _kernel(args.kernel, signed=args.signed)
    return {"t": str(kernel_density(H, W))}


def cmd_cutnorm(args, diag):
    U = _kernel(args.kernel, signed=True)
    if args.minus_one:
        U = U.minus_one()
    res = cut_norm_witness(U)
    return {"cut_norm": str(res.value), "rows": list(res.rows), "cols": list(res.cols)}


def cmd_lemma_check(args, diag):
    res = lemma_check(_kernel(args.kernel))
    return {"lhs": str(res.lhs), "rhs": str(res.rhs), "holds": res.holds}


def cmd_rigidity_check(args, diag):
    v = rigidity_check(_kernel(args.kernel))
    return {"applicable": v.applicable, "t_k2": str(v.t_k2),
            "t_c4": None if v.t_c4 is None else str(v.t_c4),
            "constant_one": v.constant_one, "verdict": v.verdict}


def cmd_gnp(args, diag):
    p = Fraction(args.p)
    G = sample_gnp(args.n, p, args.seed)
    if args.out:
        write_graph(G, args.out)
        diag.append(f"wrote {args.out}")
    dens = {}
    for text in args.pattern or []:
        F = _graph_arg(text)
        hom = hom_count(F, G, "dp", args.budget)
        t_p = normalized_density(F, G, p, hom=hom)
        dens[text] = {"hom": str(hom), "t_p": str(t_p), "t_p_float": float(t_p)}
    return {"n": args.n, "p": str(p), "seed": args.seed, "edges": G.edge_count,
            "p_convention": "explicit", "densities": dens}


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparselim", description=__doc__.splitlines()[0])
    parser.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (default 1e8 or $SPARSELIM_BUDGET)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def host_args(p):
        p.add_argument("--host", help="host edge-list file")
        p.add_argument("--tensor-power", metavar="N,M", help="host K_N tensored M times")

    p = sub.add_parser("hom", help="homomorphism count hom(F, G)")
    p.add_argument("--pattern", required=True)
    host_args(p)
    p.add_argument("--method", choices=["brute", "dp", "auto"], default="auto")
    p.add_argument("--injective", action="store_true", help="also count injective homomorphisms")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("chromatic", help="chromatic polynomial of a graph")
    p.add_argument("--graph", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--coeffs", action="store_true", help="coefficients, ascending degree (default)")
    mode.add_argument("--eval", type=int, metavar="K")
    mode.add_argument("--expansion-check", action="store_true")
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("density", help="t(F, G) and the normalized density t_p(F, G)")
    p.add_argument("--pattern", required=True)
    host_args(p)
    pm = p.add_mutually_exclusive_group()
    pm.add_argument("--p", help="explicit rational p")
    pm.add_argument("--paper-p", action="store_true", help="p = 2e/|G|^2 (default)")
    pm.add_argument("--pairs-p", action="store_true", help="p = e / C(|G|, 2)")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("limit-table", help="ln t_p(F, K_n^(x n^2)) against -triangles(F)")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n-list", required=True)
    p.add_argument("--bits", type=int, default=128)
    p.add_argument("--p-convention", choices=[PAPER, PAIRS], default=PAPER)
    p.add_argument("--name")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_limit_table)

    p = sub.add_parser("density-asymptotics", help="|ln p_n + n + 1/2| for p_n = (1 - 1/n)^(n^2)")
    p.add_argument("--n-list", required=True)
    p.add_argument("--bits", type=int, default=128)
    p.set_defaults(func=cmd_density_asymptotics)

    p = sub.add_parser("forcing-check", help="limit evidence for a family of patterns")
    p.add_argument("--family", required=True, help="directory of *.el files")
    p.add_argument("--n-list", required=True)
    p.add_argument("--bits", type=int, default=128)
    p.set_defaults(func=cmd_forcing_check)

    p = sub.add_parser("kernel-density", help="t(H, W) for a step kernel")
    p.add_argument("--pattern", required=True)
    p.add_argument("--kernel", required=True)
    p.add_argument("--signed", action="store_true", help="allow negative kernel values")
    p.set_defaults(func=cmd_kernel_density)

    p = sub.add_parser("cutnorm", help="exact cut norm of a (signed) step kernel")
    p.add_argument("--kernel", required=True)
    p.add_argument("--minus-one", action="store_true", help="use W - 1 instead of W")
    p.set_defaults(func=cmd_cutnorm)

    p = sub.add_parser("lemma-check", help="cut_norm(W-1)^4 <= t(C4, W-1)")
    p.add_argument("--kernel", required=True)
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("rigidity-check", help="t(K2,W) = 1 forces t(C4,W) >= 1")
    p.add_argument("--kernel", required=True)
    p.set_defaults(func=cmd_rigidity_check)

    p = sub.add_parser("gnp", help="sample G(n, p) and report normalized densities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pattern", action="append")
    p.add_argument("--out", help="write the sample as an edge list")
    p.set_defaults(func=cmd_gnp)
    return parser


def run(argv: list[str]) -> CommandResult:
    diag: list[str] = []
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        payload = args.func(args, diag)
        return CommandResult("ok", payload, diag)
    except BudgetExceeded as exc:
        return CommandResult("refused", {}, diag + [str(exc)])
    except (UsageError, GraphError, KernelError, ValueError, OSError, AssertionError) as exc:
        return CommandResult("error", {}, diag + [str(exc)])


def main(argv: list[str] | None = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    print(result.to_json())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
