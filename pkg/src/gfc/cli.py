"""``gfc`` command line: eval, repl, table, cocycle.

Exit codes: 0 success, 1 evaluation error, 2 parse error, 3 configuration
error.  ``GFC_SCALAR=rational|float`` overrides the scalar mode.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from .blades import basis, indices, wedge
from .cayley import meet
from .clifford import clifford_product
from .cocycle import circle_product, coboundary
from .expr import ConfigError, ExprError, SessionConfig, run
from .render import format_scalar, multivector_json, render

EXIT_OK, EXIT_EVAL, EXIT_PARSE, EXIT_CONFIG = 0, 1, 2, 3


def load_matrix(arg: Optional[str]):
    """Accept a JSON file path or an inline JSON array."""
    if arg is None:
        return None
    text = arg
    if not arg.lstrip().startswith("["):
        path = Path(arg)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read matrix file {arg!r}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"matrix is not valid JSON: {exc.msg}") from None
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ConfigError("matrix must be a JSON array of arrays")
    return data


def scalar_mode(arg: Optional[str]) -> str:
    mode = os.environ.get("GFC_SCALAR") or arg or "rational"
    if mode not in ("rational", "float"):
        raise ConfigError(f"GFC_SCALAR must be 'rational' or 'float', got {mode!r}")
    return mode


def infer_dim(args) -> int:
    if args.dim is not None:
        return args.dim
    for name in ("form", "coform", "p"):
        m = getattr(args, name, None)
        if m is not None:
            return len(m)
    raise ConfigError("--dim is required when no matrix is given")


def make_config(args) -> SessionConfig:
    args.form = load_matrix(getattr(args, "form", None))
    args.coform = load_matrix(getattr(args, "coform", None))
    args.p = load_matrix(getattr(args, "p", None))
    return SessionConfig(dim=infer_dim(args), scalar_mode=scalar_mode(getattr(args, "scalar", None)),
                         form=args.form, coform=args.coform, p=args.p,
                         output=getattr(args, "format", "text"))


def cmd_eval(args, out) -> int:
    cfg = make_config(args)
    value = run(args.expr, cfg)
    print(render(value, cfg.output), file=out)
    return EXIT_OK


def cmd_repl(args, out, inp=None) -> int:
    cfg = make_config(args)
    inp = inp or sys.stdin
    interactive = inp.isatty()
    while True:
        if interactive:
            print("gfc> ", end="", file=out, flush=True)
        line = inp.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            break
        try:
            print(render(run(line, cfg), cfg.output), file=out)
        except ExprError as exc:
            print(f"error: {exc}", file=out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    cfg = make_config(args)
    sig = cfg.sig
    if args.op == "clifford":
        if cfg.form is None:
            raise ConfigError("table --op clifford needs --form")
        form = cfg.need_form()
        op = lambda a, b: clifford_product(form, a, b)  # noqa: E731
    elif args.op == "wedge":
        op = wedge
    else:
        op = meet
    blades = basis(sig)
    table = {
        "dim": sig.dim,
        "op": args.op,
        "basis": [indices(m) for m in sig.blades()],
        "table": [[multivector_json(op(a, b))["terms"] for b in blades] for a in blades],
    }
    print(json.dumps(table, indent=1 if args.pretty else None), file=out)
    return EXIT_OK


def cmd_cocycle(args, out) -> int:
    cfg = make_config(args)
    if cfg.p is None:
        raise ConfigError("cocycle needs --p")
    p, q = cfg.need_cochain()
    sig = cfg.sig
    dp = coboundary(p, q)
    failures: List[List[List[int]]] = []
    for a in basis(sig):
        for b in basis(sig):
            if circle_product(p, a, b, q) != clifford_product(dp, a, b):
                failures.append([indices(next(iter(a.terms))), indices(next(iter(b.terms)))])
    report = {
        "dim": sig.dim,
        "cocycle": [{"left": indices(u), "right": indices(v), "value": format_scalar(c)}
                    for (u, v), c in sorted(dp.table.items())],
        "owl": not failures,
        "owl_failures": failures,
    }
    print(json.dumps(report), file=out)
    return EXIT_OK if not failures else EXIT_EVAL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gfc", description="Grade-free Grassmann/Clifford kernel")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_expr=False):
        p.add_argument("--dim", type=int)
        p.add_argument("--form", help="bilinear form B: JSON file or inline array")
        p.add_argument("--coform", help="coscalar C: JSON file or inline array")
        p.add_argument("--p", help="cochain bivector matrix: JSON file or inline array")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--scalar", choices=("rational", "float"))
        if with_expr:
            p.add_argument("expr")

    common(sub.add_parser("eval", help="evaluate one expression"), with_expr=True)
    common(sub.add_parser("repl", help="read expressions from stdin"))
    t = sub.add_parser("table", help="basis multiplication table as JSON")
    common(t)
    t.add_argument("--op", choices=("clifford", "wedge", "meet"), default="clifford")
    t.add_argument("--pretty", action="store_true")
    common(sub.add_parser("cocycle", help="dump dP and check the owl equality"))
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    handler = {"eval": cmd_eval, "repl": cmd_repl, "table": cmd_table, "cocycle": cmd_cocycle}[args.command]
    try:
        return handler(args, out)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def entry() -> None:  # pragma: no cover
    sys.exit(main())
