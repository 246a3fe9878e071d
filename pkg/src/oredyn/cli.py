"""Command-line front end.

Subcommands: semigroup check|frac, map compose|verify-pa,
graph check|dual|invariant-sets, pgraph verify|aperiodicity|report,
qn report, corpus run.

Exit codes: 0 for well-formed input (verdicts live in the output),
2 for malformed input with a diagnostic naming the offending field,
3 when an internal enumeration bound is exceeded, 64 for an unknown
subcommand.  ORE_DYNAMICS_BOUND overrides the default subset
enumeration bound.  JSON output is canonical (sorted keys, fixed
separators) and byte-identical across runs.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import circle, graphs, jsonio, multimaps, pgraphs
from .jsonio import InputError, canonical_json
from .semigroups import (
    FiniteGroup,
    Fraction,
    NatAdd,
    NatMult,
    frac_inv,
    frac_mul,
    verify_finite_table,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BOUND = 3
EXIT_USAGE = 64

USAGE = """\
usage: oredyn <command> <subcommand> [args]

commands:
  semigroup check <table.json> [--json]       audit a multiplication table
  semigroup frac <family> <expr> [--json]     evaluate a fraction expression
  map compose <outer.json> <inner.json>       relation composition (inner first)
  map verify-pa <action.json> [--json]        partial-action axiom audit
  graph check <graph.json> [--json]           simplicity report
  graph dual <graph.json>                     dual multivalued map as JSON
  graph invariant-sets <graph.json> [--json]  all invariant vertex sets
  pgraph verify <pgraph.json> [--json]        factorization data audit
  pgraph aperiodicity <pgraph.json> [--box B] [--fmax N] [--json]
  pgraph report <pgraph.json> [--box B] [--fmax N] [--json]
  qn report [--bound N] [--json]              circle-system certificates
  corpus run <corpus.json>                    run declared fixture suite

family: natadd:k | natmult | group:<file>;  expr: fraction literals
[p,q] joined by *, with ~ prefix for inverses, e.g. "[2,3]*~[5,7]".
ORE_DYNAMICS_BOUND=<n> overrides the subset-enumeration bound.
"""


def _env_bound():
    raw = os.environ.get("ORE_DYNAMICS_BOUND")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError("ORE_DYNAMICS_BOUND", f"not an integer: {raw!r}") from None


def _emit_report(report, as_json):
    if as_json:
        print(canonical_json(report.to_json()))
    else:
        print(report.render())


def _parse_element(S, text, where="expr"):
    text = text.strip()
    if isinstance(S, NatAdd):
        if S.k == 1:
            try:
                return (int(text),)
            except ValueError:
                raise InputError(where, f"bad element: {text!r}") from None
        if not (text.startswith("(") and text.endswith(")")):
            raise InputError(where, f"element must be a tuple: {text!r}")
        parts = [p.strip() for p in text[1:-1].split(",") if p.strip()]
        try:
            return tuple(int(p) for p in parts)
        except ValueError:
            raise InputError(where, f"bad element: {text!r}") from None
    if isinstance(S, NatMult):
        try:
            return int(text)
        except ValueError:
            raise InputError(where, f"bad element: {text!r}") from None
    if isinstance(S, FiniteGroup):
        try:
            return S.index_of(text)
        except ValueError:
            raise InputError(where, f"unknown group element: {text!r}") from None
    raise InputError(where, "unsupported semigroup")


def _parse_fraction_literal(S, text, where="expr"):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise InputError(where, f"fraction literal must be [p,q]: {text!r}")
    inner = text[1:-1]
    depth = 0
    split_at = None
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            split_at = i
            break
    if split_at is None:
        raise InputError(where, f"fraction literal needs two entries: {text!r}")
    num = _parse_element(S, inner[:split_at], where)
    den = _parse_element(S, inner[split_at + 1:], where)
    try:
        return Fraction(S, num, den)
    except ValueError as exc:
        raise InputError(where, str(exc)) from None


def parse_fraction_expr(S, text):
    """Product of fraction literals: [p,q] terms joined by *, each
    optionally prefixed by ~ for the inverse."""
    terms = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "*" and depth == 0:
            terms.append(text[start:i])
            start = i + 1
    terms.append(text[start:])
    if not terms or not any(t.strip() for t in terms):
        raise InputError("expr", "empty expression")
    result = None
    for term in terms:
        term = term.strip()
        invert = False
        while term.startswith("~"):
            invert = not invert
            term = term[1:].strip()
        frac = _parse_fraction_literal(S, term)
        if invert:
            frac = frac_inv(frac)
        result = frac if result is None else frac_mul(result, frac)
    return result


def render_normal(S, frac):
    normal = frac.normal
    if isinstance(S, NatAdd):
        if S.k == 1:
            return str(normal[0])
        return "(" + ",".join(str(x) for x in normal) + ")"
    if isinstance(S, NatMult):
        return f"{normal.numerator}/{normal.denominator}"
    return S.labels[normal]


def _cmd_semigroup(args):
    parser = argparse.ArgumentParser(prog="oredyn semigroup", add_help=False)
    parser.add_argument("sub", choices=["check", "frac"])
    parser.add_argument("rest", nargs="*")
    parser.add_argument("--json", action="store_true")
    ns = parser.parse_args(args)
    if ns.sub == "check":
        if len(ns.rest) != 1:
            raise InputError("args", "semigroup check needs one file")
        table, elements, declared = jsonio.load_table(ns.rest[0])
        try:
            report = verify_finite_table(table)
        except ValueError as exc:
            raise InputError("table", str(exc)) from None
        if elements is not None and len(elements) != len(table):
            raise InputError("elements", "length does not match table")
        if declared is not None and elements is not None:
            if declared not in elements:
                raise InputError("identity", f"not among elements: {declared!r}")
            ident_verdict = report.checks.get("identity")
            if ident_verdict is not None and ident_verdict.holds:
                note = ident_verdict.note
                found = int(note.rsplit(" ", 1)[1]) if note else -1
                if elements[found] != declared:
                    report.notes.append(
                        f"declared identity {declared!r} differs from "
                        f"computed identity {elements[found]!r}"
                    )
        _emit_report(report, ns.json)
        return EXIT_OK
    if len(ns.rest) != 2:
        raise InputError("args", "semigroup frac needs a family tag and an expression")
    S = jsonio.parse_semigroup_tag(ns.rest[0])
    frac = parse_fraction_expr(S, ns.rest[1])
    rendered = render_normal(S, frac)
    if ns.json:
        print(canonical_json({"normal": rendered}))
    else:
        print(rendered)
    return EXIT_OK


def _cmd_map(args):
    parser = argparse.ArgumentParser(prog="oredyn map", add_help=False)
    parser.add_argument("sub", choices=["compose", "verify-pa"])
    parser.add_argument("rest", nargs="*")
    parser.add_argument("--json", action="store_true")
    ns = parser.parse_args(args)
    if ns.sub == "compose":
        if len(ns.rest) != 2:
            raise InputError("args", "map compose needs outer and inner files")
        outer = jsonio.load_multimap(ns.rest[0])
        inner = jsonio.load_multimap(ns.rest[1])
        try:
            composed = multimaps.compose(outer, inner)
        except ValueError as exc:
            raise InputError("map", str(exc)) from None
        print(canonical_json(jsonio.multimap_to_json(composed)))
        return EXIT_OK
    if len(ns.rest) != 1:
        raise InputError("args", "map verify-pa needs one file")
    action = jsonio.load_partial_action(ns.rest[0])
    report = multimaps.verify_partial_action(action)
    _emit_report(report, ns.json)
    return EXIT_OK


def _cmd_graph(args):
    parser = argparse.ArgumentParser(prog="oredyn graph", add_help=False)
    parser.add_argument("sub", choices=["check", "dual", "invariant-sets"])
    parser.add_argument("file")
    parser.add_argument("--json", action="store_true")
    ns = parser.parse_args(args)
    E = jsonio.load_graph(ns.file)
    bound = _env_bound()
    if ns.sub == "check":
        report = graphs.simplicity_report(E, bound=bound, subject=ns.file)
        _emit_report(report, ns.json)
        return EXIT_OK
    if ns.sub == "dual":
        print(canonical_json(jsonio.multimap_to_json(graphs.dual_map(E))))
        return EXIT_OK
    sets = graphs.invariant_sets(E, bound=bound)
    rendered = [sorted(s) for s in sets]
    if ns.json:
        print(canonical_json(rendered))
    else:
        for s in rendered:
            print("{" + ",".join(s) + "}")
    return EXIT_OK


def _parse_box(S, text):
    if text is None:
        return None
    if isinstance(S, NatAdd):
        try:
            box = tuple(int(p) for p in text.split(","))
        except ValueError:
            raise InputError("box", f"bad box: {text!r}") from None
        return box
    try:
        return int(text)
    except ValueError:
        raise InputError("box", f"bad box: {text!r}") from None


def _cmd_pgraph(args):
    parser = argparse.ArgumentParser(prog="oredyn pgraph", add_help=False)
    parser.add_argument("sub", choices=["verify", "aperiodicity", "report"])
    parser.add_argument("file")
    parser.add_argument("--box")
    parser.add_argument("--fmax", type=int)
    parser.add_argument("--json", action="store_true")
    ns = parser.parse_args(args)
    L = jsonio.load_pgraph(ns.file)
    if ns.sub == "verify":
        report = pgraphs.verify_pgraph(L)
        _emit_report(report, ns.json)
        return EXIT_OK
    box = _parse_box(L.semigroup, ns.box)
    if ns.sub == "aperiodicity":
        verdict = pgraphs.check_aperiodicity(L, f_max=ns.fmax, box=box)
        if ns.json:
            print(canonical_json(verdict.to_json()))
        else:
            print(f"aperiodicity: {verdict.render()}")
        return EXIT_OK
    report = pgraphs.simplicity_report_p(
        L, f_max=ns.fmax, box=box, bound=_env_bound(), subject=ns.file
    )
    _emit_report(report, ns.json)
    return EXIT_OK


def _cmd_qn(args):
    parser = argparse.ArgumentParser(prog="oredyn qn", add_help=False)
    parser.add_argument("sub", choices=["report"])
    parser.add_argument("--bound", type=int, default=12)
    parser.add_argument("--json", action="store_true")
    ns = parser.parse_args(args)
    try:
        report = circle.qn_report(ns.bound)
    except ValueError as exc:
        raise InputError("bound", str(exc)) from None
    _emit_report(report, ns.json)
    return EXIT_OK


def _run_case(case, base_dir):
    kind = case["kind"]
    path = os.path.join(base_dir, case["file"]) if "file" in case else None
    if kind == "graph":
        report = graphs.simplicity_report(jsonio.load_graph(path), subject=case["name"])
    elif kind == "pgraph":
        L = jsonio.load_pgraph(path)
        box = case.get("box")
        if box is not None and isinstance(L.semigroup, NatAdd):
            box = tuple(box)
        report = pgraphs.simplicity_report_p(
            L, f_max=case.get("fmax"), box=box, subject=case["name"]
        )
    elif kind == "pgraph-verify":
        report = pgraphs.verify_pgraph(jsonio.load_pgraph(path))
    elif kind == "qn":
        report = circle.qn_report(case.get("bound", 12))
    elif kind == "semigroup":
        table, _, _ = jsonio.load_table(path)
        try:
            report = verify_finite_table(table)
        except ValueError as exc:
            raise InputError("table", str(exc)) from None
    elif kind == "pa":
        report = multimaps.verify_partial_action(jsonio.load_partial_action(path))
    else:
        raise InputError("kind", f"unknown corpus kind: {kind!r}")

    expect = case["expect"]
    problems = []
    if "conclusion" in expect and report.conclusion != expect["conclusion"]:
        problems.append(
            f"conclusion: expected {expect['conclusion']!r}, got {report.conclusion!r}"
        )
    for name, outcome in expect.get("checks", {}).items():
        verdict = report.checks.get(name)
        if verdict is None:
            problems.append(f"checks.{name}: missing from report")
        elif verdict.outcome != outcome:
            problems.append(
                f"checks.{name}: expected {outcome}, got {verdict.outcome}"
            )
    return problems


def _cmd_corpus(args):
    parser = argparse.ArgumentParser(prog="oredyn corpus", add_help=False)
    parser.add_argument("sub", choices=["run"])
    parser.add_argument("file")
    ns = parser.parse_args(args)
    cases = jsonio.load_corpus(ns.file)
    base_dir = os.path.dirname(os.path.abspath(ns.file))
    if not cases:
        print("warning: empty corpus")
        print("0 passed, 0 failed")
        return EXIT_OK
    failures = 0
    for case in cases:
        problems = _run_case(case, base_dir)
        if problems:
            failures += 1
            print(f"FAIL {case['name']}: " + "; ".join(problems))
        else:
            print(f"PASS {case['name']}")
    print(f"{len(cases) - failures} passed, {failures} failed")
    return EXIT_FAIL if failures else EXIT_OK


_COMMANDS = {
    "semigroup": _cmd_semigroup,
    "map": _cmd_map,
    "graph": _cmd_graph,
    "pgraph": _cmd_pgraph,
    "qn": _cmd_qn,
    "corpus": _cmd_corpus,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE)
        return EXIT_USAGE if not argv else EXIT_OK
    command = argv[0]
    handler = _COMMANDS.get(command)
    if handler is None:
        print(f"unknown subcommand: {command}", file=sys.stderr)
        print(USAGE, file=sys.stderr)
        return EXIT_USAGE
    try:
        return handler(argv[1:])
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except graphs.BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except SystemExit as exc:
        # argparse rejected a flag or subcommand shape
        if exc.code not in (0, None):
            return EXIT_USAGE
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
