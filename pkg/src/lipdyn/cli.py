"""``lipdyn`` command line.

Exit codes: 0 success, 1 verification failure, 2 validation error, 3 I/O
error, 4 unbounded operator or ``NotHypercyclic`` verdict, 5 ``Unknown``
verdict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .dynamics import (
    DOUBLING, Verdict, classify_hypercyclic, eigen_residual, eigenvector,
    fhc_check_annihilation, fhc_series_B, orbit_simulate,
)
from .errors import ContractError, DomainError, LipdynError, SpecError, TruncationError
from .operators import (
    UNBOUNDED, CompositionOp, MultiplicationOp, ShiftOp, SymbolPhi, SymbolPsi, matrix_truncate,
    mult_norms, mult_plus_norm,
)
from .oracles import OracleReport, op_norm_rowsum
from .scalars import DEFAULT_TOL, EXACT, FLOATING, format_pair, format_scalar, parse_scalar
from .spaces import SeqVec
from .trees import PathN0, parse_vertex_key, tree_from_json, vertex_key

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_UNBOUNDED = 4
EXIT_UNKNOWN = 5


class CliIOError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    mode: str = EXACT
    tolerance: float = DEFAULT_TOL
    depth: int = 16
    budget: int = 64
    output_format: str = "json"
    out: Path | None = None

    def __post_init__(self):
        if self.mode not in (EXACT, FLOATING):
            raise SpecError(f"mode must be exact or floating, got {self.mode!r}")
        if not self.tolerance > 0:
            raise SpecError("tolerance must be positive")
        if self.depth < 1:
            raise SpecError("depth must be at least 1")
        if self.budget < 1:
            raise SpecError("budget must be at least 1")
        if self.output_format not in ("json", "csv"):
            raise SpecError("format must be json or csv")


def _load_json(text: str | None, what: str):
    """Inline JSON, or ``@path`` to read it from a file."""
    if text is None:
        return None
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise CliIOError(f"cannot read {what} file: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{what} is not valid JSON: {exc}") from exc


def _tree(args):
    data = _load_json(args.tree, "tree")
    return PathN0() if data is None else tree_from_json(data)


def _vector(tree, text, cfg: RunConfig, what: str = "vector") -> SeqVec:
    data = _load_json(text, what)
    if data is None:
        raise SpecError(f"{what} is required")
    return SeqVec.from_json(tree, data, cfg.mode)


def _num(value):
    if value == math.inf:
        return "inf"
    if isinstance(value, complex):
        return format_pair(value)
    return format_scalar(value)


def _emit(cfg: RunConfig, name: str, payload, csv_text: str | None = None) -> None:
    if cfg.output_format == "csv" and csv_text is not None:
        text, suffix = csv_text, "csv"
    else:
        text, suffix = json.dumps(payload, indent=2, default=str) + "\n", "json"
    sys.stdout.write(text)
    if cfg.out is not None:
        try:
            cfg.out.mkdir(parents=True, exist_ok=True)
            (cfg.out / f"{name}.{suffix}").write_text(text)
        except OSError as exc:
            raise CliIOError(f"cannot write to {cfg.out}: {exc}") from exc


def _operator(args, tree, cfg: RunConfig):
    kind = args.op
    if kind == "shift":
        return ShiftOp(tree)
    spec = _load_json(args.symbol, "symbol")
    if spec is None:
        raise SpecError(f"--symbol is required for the {kind} operator")
    if kind == "composition":
        return CompositionOp(SymbolPhi.from_json(tree, spec))
    return MultiplicationOp(SymbolPsi.from_json(tree, spec, cfg.mode))


# -- commands ----------------------------------------------------------------

def cmd_norm(args, cfg: RunConfig) -> int:
    tree = _tree(args)
    op = _operator(args, tree, cfg)
    value = op.norm()
    report = {"operator": args.op, "norm": _num(value), "bounded": value != UNBOUNDED}
    if value == UNBOUNDED:
        _emit(cfg, "norm", report)
        return EXIT_UNBOUNDED
    depth = op.certified_depth()
    oracle = op_norm_rowsum(matrix_truncate(op, depth=depth))
    tol = None if cfg.mode == EXACT else cfg.tolerance
    check = OracleReport.compare(f"{args.op} norm", value, oracle, depth, tol)
    report["oracle"] = check.to_json()
    if isinstance(op, MultiplicationOp):
        lip, plus_formula = mult_norms(op.psi)
        report["norm_plus_formula"] = _num(plus_formula)
        report["norm_plus_exact"] = _num(mult_plus_norm(op.psi))
    if args.witness is not None:
        u = parse_vertex_key(args.witness)
        w = op.witness(u)
        report["witness"] = {"vertex": vertex_key(u), "vector": w.to_json(),
                             "value": _num(abs(op.apply(w)[u])), "term": _num(op.term(u))}
    _emit(cfg, "norm", report)
    return EXIT_OK if check.agreement else EXIT_VERIFY


def cmd_classify(args, cfg: RunConfig) -> int:
    phi = SymbolPhi.from_json(PathN0(), _load_json(args.symbol, "symbol") or {})
    result = classify_hypercyclic(phi, j_max=args.j_max, budget=cfg.budget)
    _emit(cfg, "classify", result.to_json())
    return {Verdict.FHC_HYPERCYCLIC: EXIT_OK, Verdict.NOT_HYPERCYCLIC: EXIT_UNBOUNDED,
            Verdict.UNKNOWN: EXIT_UNKNOWN}[result.verdict]


def cmd_matrix(args, cfg: RunConfig) -> int:
    tree = _tree(args)
    op = _operator(args, tree, cfg)
    m = matrix_truncate(op, num_rows=args.rows, num_cols=args.cols)
    _emit(cfg, "matrix", m.to_json(), m.to_csv())
    return EXIT_OK


def cmd_witness(args, cfg: RunConfig) -> int:
    phi = SymbolPhi.from_json(PathN0(), _load_json(args.symbol, "symbol") or {})
    w = fhc_series_B(phi, args.l, terms=args.terms)
    if args.x is not None:
        w.N0 = fhc_check_annihilation(phi, _vector(PathN0(), args.x, cfg, "x")).N0
    _emit(cfg, "witness", w.to_json())
    return EXIT_OK


def cmd_eigen(args, cfg: RunConfig) -> int:
    lam = parse_scalar(_load_json(args.lam, "lambda") if args.lam.startswith("[") else args.lam, cfg.mode)
    x = eigenvector(lam, cfg.depth)
    res = eigen_residual(lam, cfg.depth)
    ok = res == 0 if cfg.mode == EXACT else abs(res) <= cfg.tolerance
    report = {"lambda": _num(lam), "depth": cfg.depth, "vector": x.to_json(),
              "residual": _num(res), "ok": ok}
    csv_text = "vertex,value\n" + "".join(f"{vertex_key(v)},{_num(val)}\n" for v, val in x.items())
    _emit(cfg, "eigen", report, csv_text)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_orbit(args, cfg: RunConfig) -> int:
    tree = _tree(args)
    lam = parse_scalar(args.lam, cfg.mode)
    phi = SymbolPhi.from_json(tree, _load_json(args.symbol, "symbol")) if args.symbol else DOUBLING
    if phi.tree != tree:
        raise SpecError("symbol and tree disagree")
    x0 = _vector(tree, args.x0, cfg, "x0")
    trace = orbit_simulate(lam, phi, x0, args.steps, depth=args.limit_depth, snapshots=args.snapshots)
    payload = [{"step": n, "norm": _num(val), **({"snapshot": x.to_json()} if x is not None else {})}
               for n, val, x in trace]
    csv_text = "step,norm\n" + "".join(f"{n},{_num(val)}\n" for n, val, _ in trace)
    _emit(cfg, "orbit", payload, csv_text)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    from .verification import run_suite

    reports = run_suite(seed=args.seed, rounds=args.rounds)
    ok = all(r.agreement for r in reports)
    _emit(cfg, "verify", {"all_pass": ok, "checks": [r.to_json() for r in reports]})
    return EXIT_OK if ok else EXIT_VERIFY


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=(EXACT, FLOATING), default=EXACT)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--depth", type=int, default=16)
    common.add_argument("--budget", type=int, default=64)
    common.add_argument("--out", type=Path, default=None, help="directory for output files")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="lipdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def tree_arg(p):
        p.add_argument("--tree", help="tree spec as JSON or @file (default: the path tree)")

    p = add("norm", cmd_norm, "operator norm with oracle cross-check")
    tree_arg(p)
    p.add_argument("--op", choices=("composition", "multiplication", "shift"), default="composition")
    p.add_argument("--symbol", help="symbol spec as JSON or @file")
    p.add_argument("--witness", help="vertex at which to build an extremal witness")

    p = add("classify", cmd_classify, "hypercyclicity verdict for an increasing path-tree symbol")
    p.add_argument("--symbol", required=True)
    p.add_argument("--j-max", dest="j_max", type=int, default=32)

    p = add("matrix", cmd_matrix, "row-complete truncated matrix")
    tree_arg(p)
    p.add_argument("--op", choices=("composition", "multiplication", "shift"), default="composition")
    p.add_argument("--symbol")
    p.add_argument("--rows", type=int, default=16)
    p.add_argument("--cols", type=int, default=None)

    p = add("witness", cmd_witness, "windows and series records of the criterion")
    p.add_argument("--symbol", required=True)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--terms", type=int, default=30)
    p.add_argument("--x", help="vector whose annihilation index N0 is reported")

    p = add("eigen", cmd_eigen, "eigenvector of j -> 2j+1 and its residual")
    p.add_argument("--lambda", dest="lam", required=True, help='e.g. "3/2" or "[0.5, 0.5]"')

    p = add("orbit", cmd_orbit, "orbit of lambda * C")
    tree_arg(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--symbol")
    p.add_argument("--x0", required=True)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--limit-depth", dest="limit_depth", type=int, default=None)
    p.add_argument("--snapshots", action="store_true")

    p = add("verify", cmd_verify, "run the self-check suite")
    p.add_argument("--seed", type=int, default=None, help="overrides $LIPDYN_SEED")
    p.add_argument("--rounds", type=int, default=20)
    return parser


def main(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.mode, args.tol, args.depth, args.budget, args.format, args.out)
        return args.func(args, cfg)
    except CliIOError as exc:
        print(f"lipdyn: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SpecError, DomainError, ContractError, TruncationError, ValueError, TypeError) as exc:
        print(f"lipdyn: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except LipdynError as exc:
        print(f"lipdyn: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
