"""JSON loading and rendering for every CLI-facing format.

All loaders raise InputError with the offending field named, so the
CLI can print one diagnostic line and exit with the malformed-input
status.  Serialization is canonical: sorted keys, fixed separators,
so output is byte-identical across runs.
"""

from __future__ import annotations

import json

from .graphs import Graph
from .multimaps import MultiMap, PartialAction, PartialBijection, PointSet
from .pgraphs import PGraph, parse_degree
from .semigroups import FiniteGroup, NatAdd, NatMult


class InputError(ValueError):
    """Malformed input; field names the offending location."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError("file", f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError("file", f"invalid JSON in {path}: {exc}") from None


def _require(data, field, kind, where):
    if not isinstance(data, dict):
        raise InputError(where, "expected an object")
    if field not in data:
        raise InputError(f"{where}.{field}" if where else field, "missing")
    value = data[field]
    if kind is not None and not isinstance(value, kind):
        raise InputError(
            f"{where}.{field}" if where else field,
            f"expected {kind.__name__}",
        )
    return value


def parse_semigroup_tag(tag, loader=None):
    """Parse a --semigroup style tag: natadd:k, natmult, group:<file>."""
    if tag == "natmult":
        return NatMult()
    if tag.startswith("natadd:"):
        try:
            k = int(tag.split(":", 1)[1])
        except ValueError:
            raise InputError("semigroup", f"bad rank in {tag!r}") from None
        if k < 1:
            raise InputError("semigroup", "rank must be >= 1")
        return NatAdd(k)
    if tag.startswith("group:"):
        path = tag.split(":", 1)[1]
        if loader is None:
            loader = load_group
        group, _ = loader(path)
        return group
    raise InputError("semigroup", f"unknown semigroup tag: {tag!r}")


def load_group(path):
    """Group-table JSON -> (FiniteGroup, declared identity label)."""
    data = load_json(path)
    elements = _require(data, "elements", list, "")
    if not elements or not all(isinstance(e, str) for e in elements):
        raise InputError("elements", "need a non-empty list of strings")
    identity = _require(data, "identity", str, "")
    if identity not in elements:
        raise InputError("identity", f"not among elements: {identity!r}")
    table = _require(data, "table", list, "")
    n = len(elements)
    if len(table) != n:
        raise InputError("table", f"need {n} rows, got {len(table)}")
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"table[{i}]", f"need a list of {n} indices")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise InputError(f"table[{i}][{j}]", f"bad element index: {v!r}")
    try:
        group = FiniteGroup(table, labels=elements)
    except ValueError as exc:
        raise InputError("table", str(exc)) from None
    return group, identity


def load_table(path):
    """Raw multiplication table for auditing; group axioms not assumed."""
    data = load_json(path)
    table = _require(data, "table", list, "")
    for i, row in enumerate(table):
        if not isinstance(row, list):
            raise InputError(f"table[{i}]", "need a list")
        for j, v in enumerate(row):
            if not isinstance(v, int):
                raise InputError(f"table[{i}][{j}]", f"bad entry: {v!r}")
    declared = data.get("identity")
    elements = data.get("elements")
    return table, elements, declared


def load_multimap(path):
    data = load_json(path)
    points = _require(data, "points", list, "")
    if not all(isinstance(p, str) for p in points):
        raise InputError("points", "need strings")
    try:
        carrier = PointSet(points)
    except ValueError as exc:
        raise InputError("points", str(exc)) from None
    mapping = _require(data, "map", dict, "")
    pairs = set()
    for src, targets in mapping.items():
        if src not in carrier:
            raise InputError(f"map.{src}", "source not among points")
        if not isinstance(targets, list):
            raise InputError(f"map.{src}", "targets must be a list")
        for t in targets:
            if not isinstance(t, str) or t not in carrier:
                raise InputError(f"map.{src}", f"target not among points: {t!r}")
            pairs.add((carrier.index(src), carrier.index(t)))
    return MultiMap(carrier, carrier, pairs)


def multimap_to_json(f):
    return {
        "points": list(f.domain_set.labels),
        "map": {src: sorted(f.apply(src)) for src in f.domain_set if f.apply(src)},
    }


def load_graph(path):
    data = load_json(path)
    vertices = _require(data, "vertices", list, "")
    if not all(isinstance(v, str) for v in vertices):
        raise InputError("vertices", "need strings")
    edges = _require(data, "edges", list, "")
    triples = []
    for i, e in enumerate(edges):
        eid = _require(e, "id", str, f"edges[{i}]")
        src = _require(e, "src", str, f"edges[{i}]")
        rng = _require(e, "rng", str, f"edges[{i}]")
        triples.append((eid, src, rng))
    try:
        return Graph(vertices, triples)
    except ValueError as exc:
        raise InputError("edges", str(exc)) from None


def load_pgraph(path):
    data = load_json(path)
    tag = _require(data, "semigroup", str, "")
    semigroup = parse_semigroup_tag(tag)
    if not isinstance(semigroup, (NatAdd, NatMult)):
        raise InputError("semigroup", "pgraph needs natadd:k or natmult")
    vertices = _require(data, "vertices", list, "")
    fibers_json = _require(data, "fibers", dict, "")
    fibers = {}
    for key, edges in fibers_json.items():
        try:
            degree = parse_degree(semigroup, key)
        except ValueError as exc:
            raise InputError(f"fibers.{key}", str(exc)) from None
        if not isinstance(edges, list):
            raise InputError(f"fibers.{key}", "need a list of edges")
        triples = []
        for i, e in enumerate(edges):
            eid = _require(e, "id", str, f"fibers.{key}[{i}]")
            src = _require(e, "src", str, f"fibers.{key}[{i}]")
            rng = _require(e, "rng", str, f"fibers.{key}[{i}]")
            triples.append((eid, src, rng))
        fibers[degree] = triples
    squares_json = data.get("squares", [])
    if not isinstance(squares_json, list):
        raise InputError("squares", "need a list")
    squares = []
    for i, sq in enumerate(squares_json):
        bf = _require(sq, "bf", list, f"squares[{i}]")
        fb = _require(sq, "fb", list, f"squares[{i}]")
        if len(bf) != 2 or len(fb) != 2:
            raise InputError(f"squares[{i}]", "bf and fb must pair two edge ids")
        squares.append(((bf[0], bf[1]), (fb[0], fb[1])))
    try:
        return PGraph(semigroup, vertices, fibers, squares)
    except ValueError as exc:
        raise InputError("fibers", str(exc)) from None


def load_partial_action(path):
    data = load_json(path)
    points = _require(data, "points", list, "")
    try:
        carrier = PointSet(points)
    except ValueError as exc:
        raise InputError("points", str(exc)) from None
    group_json = _require(data, "group", dict, "")
    elements = _require(group_json, "elements", list, "group")
    identity = _require(group_json, "identity", str, "group")
    table = _require(group_json, "table", list, "group")
    n = len(elements)
    if identity not in elements:
        raise InputError("group.identity", f"not among elements: {identity!r}")
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"group.table[{i}]", f"need {n} indices")
    index = {lab: i for i, lab in enumerate(elements)}

    def mul(s, t):
        return elements[table[index[s]][index[t]]]

    action_json = _require(data, "action", dict, "")
    maps = {}
    for label, assignment in action_json.items():
        if label not in index:
            raise InputError(f"action.{label}", "not a group element")
        if not isinstance(assignment, dict):
            raise InputError(f"action.{label}", "need an object point -> point")
        for src, tgt in assignment.items():
            if not isinstance(tgt, str):
                raise InputError(f"action.{label}.{src}", f"bad target: {tgt!r}")
        try:
            maps[label] = PartialBijection.from_labels(
                carrier, carrier, {src: [tgt] for src, tgt in assignment.items()}
            )
        except ValueError as exc:
            raise InputError(f"action.{label}", str(exc)) from None
    missing = [lab for lab in elements if lab not in maps]
    if missing:
        raise InputError("action", f"missing group elements: {missing}")
    try:
        return PartialAction(carrier, maps, identity, mul=mul)
    except ValueError as exc:
        raise InputError("action", str(exc)) from None


def load_corpus(path):
    data = load_json(path)
    cases = _require(data, "cases", list, "")
    out = []
    for i, case in enumerate(cases):
        name = _require(case, "name", str, f"cases[{i}]")
        kind = _require(case, "kind", str, f"cases[{i}]")
        entry = {"name": name, "kind": kind}
        if kind != "qn":
            entry["file"] = _require(case, "file", str, f"cases[{i}]")
        entry["expect"] = _require(case, "expect", dict, f"cases[{i}]")
        for opt in ("box", "fmax", "bound"):
            if opt in case:
                entry[opt] = case[opt]
        out.append(entry)
    return out
