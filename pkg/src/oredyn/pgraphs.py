"""Finite higher-rank graphs over the built-in semigroups.

A PGraph is a vertex set, one edge fiber per generating degree
(unit vectors for NatAdd(k), primes for NatMult), and square data
identifying each composable two-generator path with its reordering:
a square ((u, v), (v2, u2)) asserts the path equality u.v = v2.u2,
where the left factor of a path is its outer (range-side) edge.

Paths are written outer to inner: (x1, ..., xm) composes when
s(xi) = r(x_{i+1}); the source of the path is s(xm) and the range is
r(x1).  The canonical normal form lists fibers in generator order
(axis order for NatAdd, ascending primes for NatMult); rewriting any
path to normal form walks adjacent squares, bubble-sort style.

Degrees live in the ambient semigroup; the fiber at a composite
degree consists of the normal-form paths of that degree, and its dual
relation satisfies the composition law dual(p) after dual(q) =
dual(pq), which check_semigroup_law audits both as a relation
identity and as a bijection between factor pairs and normal forms.

Aperiodicity is three-valued.  Rank one reduces exactly to cycle
existence in the skeleton.  For higher rank the defining condition
quantifies over all finite degree sets F, so a bounded search can
refute but never confirm: a witness (v, q, F) is reported only when
v is trapped under every ordering of F along the canonical join
chain s1 = p1 v q, si = pi v s_{i-1} (escape propagates downward in
the chain order, so trying all orderings is a sound refutation), and
anything short of that is Unknown at the stated bound.
"""

from __future__ import annotations

import itertools

from . import graphs as graphmod
from .kernel import compose as kcompose, identity as kidentity
from .multimaps import as_point_set
from .semigroups import NatAdd, NatMult
from .verdicts import Report, fails, holds, unknown

DEFAULT_F_MAX = 3
DEFAULT_BOX_SIDE = 4
MAX_SEQUENCE_LENGTH = 24
MAX_PATHS = 200_000


class FactorizationDefect(Exception):
    """Raised when square data cannot rewrite a path to normal form."""

    def __init__(self, detail):
        super().__init__(str(detail))
        self.detail = detail


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factor(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def degree_key(S, d):
    """Render a degree the way JSON fiber keys spell it."""
    if isinstance(S, NatAdd):
        return "(" + ",".join(str(x) for x in d) + ")"
    return str(d)


def parse_degree(S, text):
    text = text.strip()
    if isinstance(S, NatAdd):
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"bad degree key: {text!r}")
        parts = [p.strip() for p in text[1:-1].split(",") if p.strip()]
        d = tuple(int(p) for p in parts)
        S.check(d)
        return d
    d = int(text)
    S.check(d)
    return d


class PGraph:
    """Vertices, generator fibers, and square factorization data."""

    def __init__(self, semigroup, vertices, fibers, squares):
        """fibers: {degree: [(edge id, src, rng), ...]} keyed by the
        generating degrees; squares: [((u, v), (v2, u2)), ...] with
        u, u2 in one fiber and v, v2 in another."""
        if not isinstance(semigroup, (NatAdd, NatMult)):
            raise ValueError("PGraph needs a NatAdd or NatMult degree semigroup")
        self.semigroup = semigroup
        self.vertices = as_point_set(vertices)

        if isinstance(semigroup, NatAdd):
            if semigroup.k > 3:
                raise ValueError("rank above 3 is not supported")
            self.generators = [
                tuple(1 if j == i else 0 for j in range(semigroup.k))
                for i in range(semigroup.k)
            ]
            expected = set(self.generators)
            if set(fibers) != expected:
                raise ValueError(
                    "fibers must be keyed by exactly the unit degrees "
                    f"{sorted(expected)}"
                )
        else:
            primes = sorted(fibers)
            for p in primes:
                if not _is_prime(p):
                    raise ValueError(f"fiber degree must be prime: {p!r}")
            if len(primes) > 3:
                raise ValueError("more than 3 prime fibers is not supported")
            self.generators = primes

        self.fibers = {}
        self.edge_fiber = {}
        for g in self.generators:
            graph = graphmod.Graph(self.vertices, fibers[g])
            self.fibers[g] = graph
            for eid in graph.edge_ids:
                if eid in self.edge_fiber:
                    raise ValueError(f"edge id reused across fibers: {eid!r}")
                self.edge_fiber[eid] = g

        self.squares = []
        for (u, v), (v2, u2) in squares:
            for eid in (u, v, v2, u2):
                if eid not in self.edge_fiber:
                    raise ValueError(f"square references unknown edge: {eid!r}")
            self.squares.append(((u, v), (v2, u2)))

        self._flip = {}
        self._flip_dups = []
        for (u, v), (v2, u2) in self.squares:
            a, b = self.edge_fiber[u], self.edge_fiber[v]
            for key_dir, key, val in (
                ((a, b), (u, v), (v2, u2)),
                ((b, a), (v2, u2), (u, v)),
            ):
                table = self._flip.setdefault(key_dir, {})
                if key in table:
                    self._flip_dups.append({"direction": key_dir, "pair": key})
                else:
                    table[key] = val

        self._gen_order = {g: i for i, g in enumerate(self.generators)}
        self._path_cache = {}
        self._relation_cache = {}

    def __repr__(self):
        return (
            f"PGraph({self.semigroup!r}, {len(self.vertices)} vertices, "
            f"{sum(len(f.edge_ids) for f in self.fibers.values())} generator edges)"
        )

    def src(self, eid):
        return self.fibers[self.edge_fiber[eid]].src(eid)

    def rng(self, eid):
        return self.fibers[self.edge_fiber[eid]].rng(eid)

    def canonical_sequence(self, d):
        """Generator degrees of the normal form of degree d, outer first.

        Returns None when d needs a prime with no fiber: no path has
        that degree, so the fiber there is empty rather than an error.
        """
        S = self.semigroup
        S.check(d)
        if isinstance(S, NatAdd):
            seq = []
            for g, count in zip(self.generators, d):
                seq.extend([g] * count)
        else:
            seq = sorted(_factor(d))
            if any(p not in self.fibers for p in seq):
                return None
        if len(seq) > MAX_SEQUENCE_LENGTH:
            raise graphmod.BoundExceeded(
                f"degree {degree_key(S, d)} needs {len(seq)} generator steps, "
                f"bound is {MAX_SEQUENCE_LENGTH}"
            )
        return tuple(seq)

    def flip(self, u, v):
        """Rewrite the composable pair u.v to the other fiber order."""
        a, b = self.edge_fiber[u], self.edge_fiber[v]
        table = self._flip.get((a, b), {})
        if (u, v) not in table:
            raise FactorizationDefect(
                {"kind": "missing-square", "pair": [u, v]}
            )
        v2, u2 = table[(u, v)]
        if self.src(v2) != self.rng(u2):
            raise FactorizationDefect(
                {"kind": "incomposable-image", "pair": [u, v], "image": [v2, u2]}
            )
        return v2, u2

    def normalize(self, edges):
        """Rewrite a composable edge sequence to canonical fiber order."""
        arr = list(edges)
        for i in range(len(arr) - 1):
            if self.src(arr[i]) != self.rng(arr[i + 1]):
                raise FactorizationDefect(
                    {"kind": "incomposable-input", "pair": [arr[i], arr[i + 1]]}
                )
        changed = True
        while changed:
            changed = False
            for i in range(len(arr) - 1):
                a = self._gen_order[self.edge_fiber[arr[i]]]
                b = self._gen_order[self.edge_fiber[arr[i + 1]]]
                if a > b:
                    arr[i], arr[i + 1] = self.flip(arr[i], arr[i + 1])
                    changed = True
        for i in range(len(arr) - 1):
            if self.src(arr[i]) != self.rng(arr[i + 1]):
                raise FactorizationDefect(
                    {"kind": "incomposable-output", "pair": [arr[i], arr[i + 1]]}
                )
        return tuple(arr)

    def paths(self, d):
        """Normal-form paths of degree d as (edges, src, rng) triples."""
        key = d
        if key in self._path_cache:
            return self._path_cache[key]
        seq = self.canonical_sequence(d)
        if seq is None:
            out = []
        elif not seq:
            out = [((), v, v) for v in self.vertices]
        else:
            out = []
            stack = [((eid,), self.fibers[seq[0]].src(eid), self.fibers[seq[0]].rng(eid))
                     for eid in self.fibers[seq[0]].edge_ids]
            for g in seq[1:]:
                fiber = self.fibers[g]
                nxt = []
                for edges, src, rng in stack:
                    for eid in fiber.edge_ids:
                        if fiber.rng(eid) == src:
                            nxt.append((edges + (eid,), fiber.src(eid), rng))
                    if len(nxt) > MAX_PATHS:
                        raise graphmod.BoundExceeded(
                            f"more than {MAX_PATHS} paths at degree "
                            f"{degree_key(S, d)}"
                        )
                stack = nxt
            out = stack
        self._path_cache[key] = out
        return out

    def degree_relation(self, d):
        """Packed rows of the source-to-range relation at degree d,
        computed by composing generator relations along the normal form."""
        key = d
        if key in self._relation_cache:
            return self._relation_cache[key]
        n = len(self.vertices)
        seq = self.canonical_sequence(d)
        if seq is None:
            acc = (0,) * n
        else:
            acc = kidentity(n)
            for g in seq:
                acc = kcompose(acc, graphmod.dual_map(self.fibers[g]).rows)
        self._relation_cache[key] = acc
        return acc


def path_id(pgraph, edges, src):
    return ".".join(edges) if edges else src


def fiber_graph(L, d):
    """Graph whose edges are the degree-d normal-form paths.

    The identity degree yields one loop per vertex (paths of degree e
    are the vertices); a generating degree reproduces the stored fiber.
    """
    triples = [
        (path_id(L, edges, src), src, rng) for edges, src, rng in L.paths(d)
    ]
    return graphmod.Graph(L.vertices, triples)


def dual_at(L, d):
    """Dual multivalued map of the degree-d fiber graph."""
    return graphmod.dual_map(fiber_graph(L, d))


def verify_pgraph(L):
    """Audit the factorization data.

    Checks, in order: every square references two distinct fibers and
    both of its sides compose; no pair is assigned twice; every
    composable cross-fiber pair has a square (totality) and no two
    share an image (injectivity); squares preserve the outer range and
    inner source; and for three generators the two rewrite routes of
    every composable triple agree (cube consistency).
    """
    report = Report(
        kind="pgraph-verification",
        subject=f"{len(L.vertices)} vertices, {len(L.squares)} squares",
    )

    wf_bad = []
    for (u, v), (v2, u2) in L.squares:
        a, b = L.edge_fiber[u], L.edge_fiber[v]
        a2, b2 = L.edge_fiber[u2], L.edge_fiber[v2]
        if a == b or (b2, a2) != (b, a):
            wf_bad.append(
                {"square": [[u, v], [v2, u2]], "kind": "fiber-pattern"}
            )
            continue
        if L.src(u) != L.rng(v):
            wf_bad.append({"square": [[u, v], [v2, u2]], "kind": "left-incomposable"})
        if L.src(v2) != L.rng(u2):
            wf_bad.append({"square": [[u, v], [v2, u2]], "kind": "right-incomposable"})
    report.add(
        "square_wellformed",
        holds(rule="rule:squares-wellformed")
        if not wf_bad
        else fails(wf_bad, note="malformed squares", rule="rule:squares-wellformed"),
    )

    dup_bad = [
        {"direction": [degree_key(L.semigroup, d) for d in dup["direction"]],
         "pair": list(dup["pair"])}
        for dup in L._flip_dups
    ]
    report.add(
        "square_functional",
        holds(rule="rule:squares-functional")
        if not dup_bad
        else fails(dup_bad, note="pair assigned twice", rule="rule:squares-functional"),
    )

    tot_bad = []
    inj_bad = []
    for ai, a in enumerate(L.generators):
        for b in L.generators[ai + 1:]:
            for direction in ((a, b), (b, a)):
                da, db = direction
                table = L._flip.get(direction, {})
                images = {}
                for u in L.fibers[da].edge_ids:
                    for v in L.fibers[db].edge_ids:
                        if L.src(u) != L.rng(v):
                            continue
                        if (u, v) not in table:
                            tot_bad.append(
                                {
                                    "direction": [
                                        degree_key(L.semigroup, da),
                                        degree_key(L.semigroup, db),
                                    ],
                                    "pair": [u, v],
                                }
                            )
                            continue
                        img = table[(u, v)]
                        if img in images:
                            inj_bad.append(
                                {
                                    "direction": [
                                        degree_key(L.semigroup, da),
                                        degree_key(L.semigroup, db),
                                    ],
                                    "image": list(img),
                                    "pairs": [list(images[img]), [u, v]],
                                }
                            )
                        else:
                            images[img] = (u, v)
    report.add(
        "square_totality",
        holds(rule="rule:squares-total")
        if not tot_bad
        else fails(tot_bad, note="composable pair with no square", rule="rule:squares-total"),
    )
    report.add(
        "square_injectivity",
        holds(rule="rule:squares-injective")
        if not inj_bad
        else fails(inj_bad, note="two pairs share an image", rule="rule:squares-injective"),
    )

    pres_bad = []
    for (u, v), (v2, u2) in L.squares:
        if L.edge_fiber[u] == L.edge_fiber[v]:
            continue
        if L.rng(u) != L.rng(v2):
            pres_bad.append({"square": [[u, v], [v2, u2]], "kind": "outer-range"})
        if L.src(v) != L.src(u2):
            pres_bad.append({"square": [[u, v], [v2, u2]], "kind": "inner-source"})
    report.add(
        "endpoint_preservation",
        holds(rule="rule:squares-endpoints")
        if not pres_bad
        else fails(
            pres_bad,
            note="square moves the outer range or inner source",
            rule="rule:squares-endpoints",
        ),
    )

    cube_bad = []
    if len(L.generators) >= 3:
        for a, b, c in itertools.combinations(L.generators, 3):
            fa, fb, fc = L.fibers[a], L.fibers[b], L.fibers[c]
            for z in fc.edge_ids:
                for y in fb.edge_ids:
                    if fb.rng(y) != fc.src(z):
                        continue
                    for x in fa.edge_ids:
                        if fa.rng(x) != fb.src(y):
                            continue
                        try:
                            one = _route(L, (z, y, x), ((0, 1), (1, 2), (0, 1)))
                            two = _route(L, (z, y, x), ((1, 2), (0, 1), (1, 2)))
                        except FactorizationDefect as exc:
                            cube_bad.append(
                                {"triple": [z, y, x], "kind": "rewrite-failed",
                                 "detail": exc.detail}
                            )
                            continue
                        if one != two:
                            cube_bad.append(
                                {
                                    "triple": [z, y, x],
                                    "route_a": list(one),
                                    "route_b": list(two),
                                }
                            )
    report.add(
        "cube_consistency",
        holds(rule="rule:squares-cube")
        if not cube_bad
        else fails(cube_bad, note="rewrite routes disagree", rule="rule:squares-cube"),
    )

    bad = [name for name, v in report.checks.items() if not v.holds]
    report.conclusion = (
        "factorization data verified" if not bad else "violations: " + ", ".join(bad)
    )
    return report


def _route(L, triple, flips):
    arr = list(triple)
    for i, j in flips:
        arr[i], arr[j] = L.flip(arr[i], arr[j])
    return tuple(arr)


def check_semigroup_law(L, p, q):
    """Audit dual(p) after dual(q) = dual(pq).

    Two routes: the relation identity on vertices, and the
    factorization route, where gluing each composable pair of
    normal forms (degree p outer, degree q inner) and renormalizing
    must biject onto the degree-pq normal forms with matching
    endpoints.  Fails pinpoints the first disagreeing vertex or the
    offending pair.
    """
    S = L.semigroup
    pq = S.mul(p, q)
    dual_p = dual_at(L, p)
    dual_q = dual_at(L, q)
    dual_pq = dual_at(L, pq)
    composed_rows = kcompose(dual_p.rows, dual_q.rows)
    if composed_rows != dual_pq.rows:
        for i, lab in enumerate(L.vertices):
            if composed_rows[i] != dual_pq.rows[i]:
                return fails(
                    {
                        "vertex": lab,
                        "composed": sorted(L.vertices.labels_of(composed_rows[i])),
                        "direct": sorted(L.vertices.labels_of(dual_pq.rows[i])),
                    },
                    note="relation route and direct dual disagree",
                    rule="rule:dual-semigroup-law",
                )

    paths_p = L.paths(p)
    paths_q = L.paths(q)
    paths_pq = {edges: (src, rng) for edges, src, rng in L.paths(pq)}
    seen = {}
    count = 0
    for edges_p, src_p, rng_p in paths_p:
        for edges_q, src_q, rng_q in paths_q:
            if src_p != rng_q:
                continue
            count += 1
            glued = edges_p + edges_q
            try:
                nf = L.normalize(glued)
            except FactorizationDefect as exc:
                return fails(
                    {"pair": [list(edges_p), list(edges_q)], "defect": exc.detail},
                    note="factorization rewrite failed",
                    rule="rule:dual-semigroup-law",
                )
            if nf not in paths_pq:
                return fails(
                    {"pair": [list(edges_p), list(edges_q)], "normal_form": list(nf)},
                    note="rewrite left the normal-form fiber",
                    rule="rule:dual-semigroup-law",
                )
            nf_src, nf_rng = paths_pq[nf]
            if (nf_src, nf_rng) != (src_q, rng_p):
                return fails(
                    {
                        "pair": [list(edges_p), list(edges_q)],
                        "normal_form": list(nf),
                        "expected_endpoints": [src_q, rng_p],
                        "got_endpoints": [nf_src, nf_rng],
                    },
                    note="rewrite moved an endpoint",
                    rule="rule:dual-semigroup-law",
                )
            if nf in seen:
                return fails(
                    {
                        "normal_form": list(nf),
                        "pairs": [seen[nf], [list(edges_p), list(edges_q)]],
                    },
                    note="two factor pairs rewrite to one normal form",
                    rule="rule:dual-semigroup-law",
                )
            seen[nf] = [list(edges_p), list(edges_q)]
    if count != len(paths_pq):
        missing = sorted(set(paths_pq) - set(seen))[:3]
        return fails(
            {
                "composable_pairs": count,
                "normal_forms": len(paths_pq),
                "unreached": [list(m) for m in missing],
            },
            note="factor pairs and normal forms do not correspond",
            rule="rule:dual-semigroup-law",
        )
    return holds(
        note="relation identity and factor-pair bijection both check out",
        rule="rule:dual-semigroup-law",
    )


def _box_degrees(L, box):
    S = L.semigroup
    if isinstance(S, NatAdd):
        if box is None:
            box = (DEFAULT_BOX_SIDE,) * S.k
        if len(box) != S.k or any(b < 0 for b in box):
            raise ValueError(f"box must be {S.k} non-negative bounds")
        ranges = [range(b + 1) for b in box]
        return box, sorted(itertools.product(*ranges))
    if box is None:
        box = DEFAULT_BOX_SIDE
    if not isinstance(box, int) or box < 1:
        raise ValueError("box must be a positive integer bound")
    return box, list(range(1, box + 1))


def _coincidence_mask(L, b, a, cache):
    """Mask of vertices v admitting paths of degrees b and a with a
    common source and range v."""
    key = (b, a)
    if key in cache:
        return cache[key]
    rows_b = L.degree_relation(b)
    rows_a = L.degree_relation(a)
    acc = 0
    for rb, ra in zip(rows_b, rows_a):
        acc |= rb & ra
    cache[key] = acc
    return acc


def _chain(L, q, ordering):
    """Join chain s1 = p1 v q, si = pi v s_{i-1}, with the residual
    degree pairs tested at each step."""
    S = L.semigroup
    steps = []
    s = None
    for p in ordering:
        s = S.join(p, q) if s is None else S.join(p, s)
        steps.append((S.residual(p, s), S.residual(q, s)))
    return steps


def _exhibit_pair(L, b, a, v):
    """Concrete path pair for a coincidence: degree-b and degree-a
    paths with common source and range v, deterministic pick."""
    by_source = {}
    for edges, src, rng in L.paths(b):
        if rng == v:
            by_source.setdefault(src, []).append(edges)
    for edges, src, rng in L.paths(a):
        if rng == v and src in by_source:
            mu = min(by_source[src])
            return (
                path_id(L, mu, src),
                path_id(L, edges, src),
            )
    return None


def check_aperiodicity(L, f_max=None, box=None):
    """Three-valued aperiodicity verdict.

    Rank one is decided exactly by cycle existence in the skeleton.
    Otherwise the search refutes: a witness (v, q, F) counts only when
    every ordering of F traps v somewhere along its canonical join
    chain, each trap meaning a path pair of the two residual degrees
    with common source and range v.  Every reported witness is
    re-validated by exhibiting such a pair per ordering.  No trapped
    witness within the box means Unknown, never Holds: the defining
    condition ranges over all finite degree sets.
    """
    S = L.semigroup
    f_max = DEFAULT_F_MAX if f_max is None else f_max
    if f_max < 1:
        raise ValueError("f_max must be >= 1")

    if isinstance(S, NatAdd) and S.k == 1:
        skeleton = L.fibers[(1,)]
        cycle = graphmod.find_cycle(skeleton)
        if cycle is None:
            return holds(
                note="rank one is exactly decidable: the skeleton has no cycles",
                rule="rule:aperiodicity-rank-one",
            )
        base = skeleton.src(cycle[0])
        ln = (len(cycle),)
        nu_edges = tuple(reversed(cycle))
        return fails(
            {
                "v": base,
                "q": degree_key(S, S.identity),
                "F": [degree_key(S, ln)],
                "orderings": [
                    {
                        "order": [degree_key(S, ln)],
                        "trapped_at": 0,
                        "mu": base,
                        "nu": path_id(L, nu_edges, base),
                    }
                ],
            },
            note="rank one is exactly decidable: the skeleton has a cycle",
            rule="rule:aperiodicity-rank-one",
        )

    box, degrees = _box_degrees(L, box)
    cache = {}
    for v_ix, v in enumerate(L.vertices):
        bit = 1 << v_ix
        for q in degrees:
            others = [p for p in degrees if p != q]
            for size in range(1, f_max + 1):
                for F in itertools.combinations(others, size):
                    all_trapped = True
                    for ordering in itertools.permutations(F):
                        trapped = False
                        for b, a in _chain(L, q, ordering):
                            if _coincidence_mask(L, b, a, cache) & bit:
                                trapped = True
                                break
                        if not trapped:
                            all_trapped = False
                            break
                    if not all_trapped:
                        continue
                    validations = []
                    for ordering in itertools.permutations(F):
                        steps = _chain(L, q, ordering)
                        for i, (b, a) in enumerate(steps):
                            if _coincidence_mask(L, b, a, cache) & bit:
                                pair = _exhibit_pair(L, b, a, v)
                                if pair is None:
                                    raise AssertionError(
                                        "coincidence mask not matched by paths"
                                    )
                                validations.append(
                                    {
                                        "order": [degree_key(S, p) for p in ordering],
                                        "trapped_at": i,
                                        "mu": pair[0],
                                        "nu": pair[1],
                                    }
                                )
                                break
                    return fails(
                        {
                            "v": v,
                            "q": degree_key(S, q),
                            "F": [degree_key(S, p) for p in F],
                            "orderings": validations,
                        },
                        note="trapped under every ordering of F",
                        rule="rule:aperiodicity-refutation",
                    )
    return unknown(
        f"box={degree_key(S, box) if isinstance(S, NatAdd) else box},f_max={f_max}",
        note="no refutation in the box; the condition ranges over all finite F",
        rule="rule:aperiodicity-refutation",
    )


def _law_gate(L):
    for a in L.generators:
        for b in L.generators:
            if a == b:
                continue
            verdict = check_semigroup_law(L, a, b)
            if not verdict.holds:
                raise ValueError(
                    "composition law fails for generators "
                    f"{degree_key(L.semigroup, a)}, {degree_key(L.semigroup, b)}: "
                    f"{verdict.witness}"
                )


def invariant_sets_p(L, bound=None):
    """All vertex sets fixed by every generator dual.

    The composition law is verified on generator pairs first; it
    transports invariance from the generators to every box degree
    (images under a composite dual factor through the generator
    duals), so checking generators suffices.
    """
    _law_gate(L)
    bound = graphmod.DEFAULT_SUBSET_BOUND if bound is None else bound
    n = len(L.vertices)
    if n > bound:
        raise graphmod.BoundExceeded(
            f"subset enumeration over {n} vertices exceeds bound {bound}"
        )
    gen_rows = [graphmod.dual_map(L.fibers[g]).rows for g in L.generators]
    out = []
    for mask in range(1 << n):
        ok = True
        for rows in gen_rows:
            image = 0
            m = mask
            while m:
                low = m & -m
                image |= rows[low.bit_length() - 1]
                m ^= low
            if image != mask:
                ok = False
                break
        if ok:
            out.append(frozenset(L.vertices.labels_of(mask)))
    return out


def is_minimal_p(L, bound=None):
    sets = invariant_sets_p(L, bound=bound)
    full = frozenset(L.vertices)
    for V in sets:
        if V and V != full:
            return fails(
                {"invariant_set": sorted(V)},
                note="proper nonempty set invariant under every generator dual",
                rule="rule:minimality-invariant-sets",
            )
    return holds(
        note="only the empty and full vertex sets are invariant",
        rule="rule:minimality-invariant-sets",
    )


def simplicity_report_p(L, f_max=None, box=None, bound=None, subject="pgraph"):
    """Combine fiber regularity, aperiodicity, and minimality.

    Regularity is checked fiber by fiber on the generators (composite
    fibers inherit it).  An Unknown aperiodicity caps the conclusion
    at "inconclusive at bound"; sufficient criteria only, so nothing
    is ever declared non-simple.
    """
    report = Report(kind="pgraph", subject=subject)

    reg_bad = []
    for g in L.generators:
        verdict = graphmod.check_regularity(L.fibers[g])
        if verdict.fails:
            reg_bad.append(
                {"generator": degree_key(L.semigroup, g), **verdict.witness}
            )
    reg = (
        holds(note="every generator fiber is regular", rule="rule:regularity-fibers")
        if not reg_bad
        else fails(reg_bad, note="generator fiber with a starved vertex",
                   rule="rule:regularity-fibers")
    )
    ape = check_aperiodicity(L, f_max=f_max, box=box)
    mini = is_minimal_p(L, bound=bound)
    report.add("regularity", reg)
    report.add("aperiodicity", ape)
    report.add("minimality", mini)

    failed = [
        name
        for name, v in (("regularity", reg), ("aperiodicity", ape), ("minimality", mini))
        if v.fails
    ]
    if reg.holds and ape.holds and mini.holds:
        report.conclusion = "C*_r(Lambda,d) simple"
    elif reg.holds and ape.holds and mini.fails:
        report.conclusion = "uniqueness theorem applies"
    elif failed:
        report.conclusion = "hypotheses not met: " + ", ".join(failed)
    else:
        report.conclusion = "inconclusive at bound"
    return report
