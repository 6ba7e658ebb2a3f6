"""Command-line front end.

    qtop invariant [--strands L] [--order N] [--format text|json] [--out FILE] INPUT
    qtop milnor    [--strands L] [--length M] [--index I] INPUT
    qtop weight    [--strands L] [--length M] [--order N] INPUT
    qtop verify    --theorem ID [--strands L] [--length M] [--order N] INPUT...
    qtop selftest  [--format text|json]

INPUT is a braid word (``"A(1,2) s2^-1 [A(1,2),A(2,3)]"``), a tangle diagram
as JSON (``{"strands": 1, "slices": [...]}``), a path to a file holding
either, or ``-`` for standard input.  ``weight`` also takes a tree such as
``"T(1,2,3)"`` or ``"[[1,2],[3,4]]"``.

Exit status: 0 on success or pass, 1 when a verification fails (the witness
is printed), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .diagrams import W_of_milnor, tree_from_string, weight_W
from .hpoly import DomainError
from .links import (
    DegenerateIndex, MalformedDiagram, NotPure, ParseError, TangleDiagram, invariant,
    parse_word,
)
from .milnor import NotInFiltration, milnor_number, milnor_numbers, parse_index
from .tensor import IndexOutOfRange, StrandMismatch
from .verify import (
    CONTAINMENT_KINDS, HypothesisNotVerified, check_cabling_diagram, check_containments,
    check_prop_sc, check_sth1, check_sth2, check_sth2h,
)

DEFAULT_ORDER = 5
THEOREMS = ("prop-sc", "sth1", "sth2", "sth2h", "cabling") + CONTAINMENT_KINDS
_NEEDS_LENGTH = {"sth1", "sth2", "sth2h", "cabling", "eqJT", "eqJT2", "lemma-sl4"}


class InputError(Exception):
    pass


def _default_order() -> int:
    raw = os.environ.get("QTOP_DEFAULT_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"QTOP_DEFAULT_ORDER must be an integer, got {raw!r}") from None
    if n < 1:
        raise InputError("QTOP_DEFAULT_ORDER must be >= 1")
    return n


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _load_link(arg: str, strands):
    text = _read_text(arg).strip()
    if text.startswith("{") or text.startswith("["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError:
            obj = None
        if isinstance(obj, dict):
            T = TangleDiagram.from_json(obj)
            if strands is not None and strands != T.strands:
                raise InputError(f"--strands {strands} but the diagram has {T.strands}")
            return T
    return parse_word(text, strands)


def _show_parse_error(text: str, exc: ParseError) -> str:
    msg = f"parse error: {exc}"
    if exc.position is not None and "\n" not in text:
        msg += f"\n  {text}\n  {' ' * exc.position}^"
    return msg


# -- subcommands -------------------------------------------------------------

def _cmd_invariant(args, out):
    L = _load_link(args.input[0], args.strands)
    order = args.order or _default_order()
    J = invariant(L, order)
    if args.format == "json":
        return json.dumps(J.to_json_obj(), indent=1), 0
    return J.pretty(), 0


def _cmd_milnor(args, out):
    L = _load_link(args.input[0], args.strands)
    if isinstance(L, TangleDiagram):
        raise InputError("Milnor invariants need a braid input")
    if args.index:
        I = parse_index(args.index)
        v = milnor_number(L, I)
        if args.format == "json":
            return json.dumps({"index": "".join(map(str, I)), "mu": v}), 0
        return str(v), 0
    length = args.length or L.strands
    mus = milnor_numbers(L, length)
    rows = sorted(mus.items(), key=lambda kv: (len(kv[0]), kv[0]))
    if args.format == "json":
        return json.dumps({"strands": L.strands, "length": length,
                           "mu": {"".join(map(str, I)): v for I, v in rows}}), 0
    if not rows:
        return f"all Milnor invariants of length <= {length} vanish", 0
    return "\n".join(f"mu_{''.join(map(str, I))} = {v}" for I, v in rows), 0


_TREE_RE = re.compile(r"^\s*(T\([\d,\s]+\)|[\[\]\d,\s]+)\s*$")


def _cmd_weight(args, out):
    text = _read_text(args.input[0]).strip()
    if _TREE_RE.match(text):
        T = tree_from_string(text, args.strands)
        l = args.strands or max(T.labels)
        order = args.order or T.degree + 1
        W = weight_W(T, l, order)
    else:
        if args.length is None:
            raise InputError("weight of a string link needs --length m")
        L = _load_link(text, args.strands)
        order = args.order or args.length + 1
        W = W_of_milnor(L, args.length, order)
    if args.format == "json":
        return json.dumps(W.to_json_obj(), indent=1), 0
    return W.pretty(), 0


def _run_theorem(theorem: str, L, m, order, p):
    if theorem == "prop-sc":
        return check_prop_sc(L, order or 2)
    if theorem == "sth1":
        return check_sth1(L, m, order)
    if theorem == "sth2":
        return check_sth2(L, m, order)
    if theorem == "sth2h":
        return check_sth2h(L, m, order)
    if theorem == "cabling":
        return check_cabling_diagram(L, m, p or m + 1)
    return check_containments(L, theorem, order, m=m)


def _cmd_verify(args, out):
    theorem, _, p = args.theorem.partition(":")
    if theorem not in THEOREMS:
        raise InputError(f"unknown theorem {args.theorem!r}; choose from {', '.join(THEOREMS)}")
    if theorem in _NEEDS_LENGTH and args.length is None:
        raise InputError(f"--theorem {theorem} needs --length m")
    try:
        p = int(p) if p else None
    except ValueError:
        raise InputError(f"bad cable multiplicity in {args.theorem!r}") from None
    reports, code = [], 0
    for arg in sorted(args.input):
        L = _load_link(arg, args.strands)
        try:
            rep = _run_theorem(theorem, L, args.length, args.order, p)
        except HypothesisNotVerified as exc:
            reports.append({"theorem": theorem, "input": arg, "status": "fail",
                            "hypothesis": str(exc), "witness": exc.witness})
            code = 1
            continue
        reports.append(rep)
        if not rep.ok:
            code = 1
    if args.format == "json":
        objs = [r if isinstance(r, dict) else r.to_json_obj() for r in reports]
        return json.dumps(objs[0] if len(objs) == 1 else objs, indent=1), code
    lines = []
    for r in reports:
        if isinstance(r, dict):
            lines.append(f"{r['theorem']} [{r['input']}]: fail\n  hypothesis: {r['hypothesis']}")
        else:
            lines.append(str(r))
    return "\n".join(lines), code


def _cmd_selftest(args, out):
    from .acceptance import run_all
    results = run_all()
    code = 0 if all(r.passed for r in results) else 1
    if args.format == "json":
        return json.dumps([{"criterion": r.number, "title": r.title, "passed": r.passed,
                            "checks": r.checks, "seconds": round(r.seconds, 3),
                            "failures": r.failures} for r in results], indent=1), code
    return "\n".join(r.line() for r in results), code


_COMMANDS = {
    "invariant": _cmd_invariant, "milnor": _cmd_milnor, "weight": _cmd_weight,
    "verify": _cmd_verify, "selftest": _cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtop", description="Universal sl2 invariant, Milnor invariants and weight systems of string links.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs="?"):
        p.add_argument("--strands", type=int, help="number of strands l")
        p.add_argument("--order", type=int, help="truncation order N (work mod h^N)")
        p.add_argument("--length", type=int, help="filtration degree m")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the output to this file")
        if inputs:
            p.add_argument("input", nargs=inputs)

    common(sub.add_parser("invariant", help="J(L) mod h^N"), 1)
    pm = sub.add_parser("milnor", help="Milnor invariants")
    common(pm, 1)
    pm.add_argument("--index", help="a single index sequence, e.g. 123")
    common(sub.add_parser("weight", help="W(mu_m(L)) or the weight of a tree"), 1)
    pv = sub.add_parser("verify", help="check a theorem on one or more inputs")
    common(pv, "+")
    pv.add_argument("--theorem", required=True,
                    help=f"one of {', '.join(THEOREMS)}; cabling:P sets the cable multiplicity")
    common(sub.add_parser("selftest", help="run the acceptance suite"), None)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    for flag in ("strands", "order", "length"):
        v = getattr(args, flag, None)
        if v is not None and v < 1:
            print(f"error: --{flag} must be >= 1", file=sys.stderr)
            return 2
    try:
        text, code = _COMMANDS[args.command](args, sys.stdout)
    except ParseError as exc:
        src = args.input[0] if getattr(args, "input", None) else ""
        print(_show_parse_error(src, exc), file=sys.stderr)
        return 2
    except (InputError, MalformedDiagram, NotPure, DegenerateIndex, IndexOutOfRange,
            StrandMismatch, DomainError, NotInFiltration, ValueError, OSError) as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run())
