"""Finite directed graphs as discrete-model dynamical systems.

A graph is (vertices, edges, src, rng).  An edge e runs src(e) ->
rng(e); a vertex "receives" e when rng(e) is that vertex.  The dual
multivalued map sends a vertex to the ranges of the edges leaving it:

    dual(v) = rng(src_preimage(v))

Cycles are edge sequences chained range-to-source and closing up; the
system is aperiodic exactly when no cycle exists, and a finite graph
where every vertex receives an edge always has a cycle, so the
interesting aperiodic examples are the irregular ones.  Every verdict
carries a canonical, lexicographically least witness so results are
identical under any execution order.

On a finite discrete vertex set "empty interior" degenerates to
"empty"; that reduction is applied throughout.
"""

from __future__ import annotations

from fractions import Fraction as Q

from . import _purerel
from .kernel import cyclic_mask
from .multimaps import MultiMap, PointSet, as_point_set
from .verdicts import Report, fails, holds

DEFAULT_SUBSET_BOUND = 20


class BoundExceeded(RuntimeError):
    """An enumeration would exceed its configured bound."""


class Graph:
    """Finite directed graph with labelled vertices and edges."""

    __slots__ = ("vertices", "edge_ids", "_src", "_rng", "_eix")

    def __init__(self, vertices, edges):
        """edges: iterable of (edge id, source label, range label)."""
        self.vertices = as_point_set(vertices)
        ids = []
        src = {}
        rng = {}
        for eid, s, r in edges:
            eid = str(eid)
            if eid in src:
                raise ValueError(f"duplicate edge id: {eid!r}")
            if s not in self.vertices:
                raise ValueError(f"edge {eid!r} has unknown source {s!r}")
            if r not in self.vertices:
                raise ValueError(f"edge {eid!r} has unknown range {r!r}")
            ids.append(eid)
            src[eid] = s
            rng[eid] = r
        self.edge_ids = tuple(ids)
        self._src = src
        self._rng = rng
        self._eix = {eid: i for i, eid in enumerate(ids)}

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edge_ids)} edges)"

    def src(self, eid):
        return self._src[eid]

    def rng(self, eid):
        return self._rng[eid]

    def edge_index(self, eid):
        return self._eix[eid]

    def out_edges(self, v):
        return [e for e in self.edge_ids if self._src[e] == v]

    def in_edges(self, v):
        return [e for e in self.edge_ids if self._rng[e] == v]


def from_map(points, sigma):
    """Graph of a total map: vertices = edges = the carrier, the edge
    named m runs sigma(m) -> m.

    The dual map is then exactly the preimage relation t -> sigma^{-1}(t),
    and every vertex receives its own name-edge, so these graphs are
    always regular; the dual is total iff sigma is surjective.
    """
    pts = as_point_set(points)
    if callable(sigma):
        sigma = {m: sigma(m) for m in pts}
    missing = [m for m in pts if m not in sigma]
    if missing:
        raise ValueError(f"map not total, undefined at: {missing}")
    for m in pts:
        if sigma[m] not in pts:
            raise ValueError(f"map leaves the carrier at {m!r} -> {sigma[m]!r}")
    return Graph(pts, [(m, sigma[m], m) for m in pts])


def dual_map(E):
    """MultiMap on vertices: v -> ranges of edges with source v."""
    pairs = set()
    for eid in E.edge_ids:
        pairs.add((E.vertices.index(E.src(eid)), E.vertices.index(E.rng(eid))))
    return MultiMap(E.vertices, E.vertices, pairs)


def check_regularity(E):
    """Holds iff every vertex receives at least one edge."""
    received = {E.rng(eid) for eid in E.edge_ids}
    for v in E.vertices:
        if v not in received:
            return fails(
                {"vertex": v},
                note="vertex receives no edge",
                rule="rule:regularity-receivers",
            )
    return holds(note="every vertex receives an edge", rule="rule:regularity-receivers")


def _edge_adjacency(E):
    """Packed rows over edge indices: a -> b iff rng(a) = src(b)."""
    n = len(E.edge_ids)
    rows = [0] * n
    for i, a in enumerate(E.edge_ids):
        for j, b in enumerate(E.edge_ids):
            if E.rng(a) == E.src(b):
                rows[i] |= 1 << j
    return tuple(rows)


def find_cycle(E):
    """Shortest cycle, lexicographically least by edge position.

    A cycle is an edge sequence chained range-to-source whose last
    range closes on the first source; returned in traversal order.
    Returns None when the graph is acyclic.
    """
    m = len(E.edge_ids)
    if m == 0:
        return None
    adj = _edge_adjacency(E)
    powers = [_purerel.identity(m)]
    length = None
    for n in range(1, m + 1):
        powers.append(_purerel.compose(adj, powers[-1]))
        if _purerel.diagonal_mask(powers[n]):
            length = n
            break
    if length is None:
        return None
    diag = _purerel.diagonal_mask(powers[length])
    start = (diag & -diag).bit_length() - 1
    walk = [start]
    current = start
    for remaining in range(length - 1, 0, -1):
        successors = adj[current]
        j = 0
        found = None
        while successors:
            if successors & 1 and powers[remaining][j] & (1 << start):
                found = j
                break
            successors >>= 1
            j += 1
        walk.append(found)
        current = found
    return [E.edge_ids[i] for i in walk]


def is_aperiodic(E):
    """Holds iff the graph has no cycle.

    Decided structurally via find_cycle and cross-validated against
    the dual route: some vertex lies in its own n-step dual image for
    an n up to the vertex count (an exact bound, since any cycle
    visits at most that many vertices).
    """
    cycle = find_cycle(E)
    dual = dual_map(E)
    nmax = len(E.vertices)
    periodic = cyclic_mask(dual.rows, nmax) != 0 if nmax else False
    if (cycle is not None) != periodic:
        raise AssertionError("cycle search and dual periodic points disagree")
    caveats = ()
    if check_regularity(E).fails:
        caveats = ("graph is irregular: some vertex receives no edge",)
    if cycle is None:
        return holds(
            note=f"no cycles up to the exact bound {nmax}",
            rule="rule:aperiodicity-no-cycles",
            caveats=caveats,
        )
    return fails(
        {"cycle": cycle},
        note="cycle found; its base points are periodic",
        rule="rule:aperiodicity-no-cycles",
        caveats=caveats,
    )


def is_topologically_free(E):
    """Holds iff every cycle has an entry.

    An entry to a cycle is an edge arriving at a cycle vertex other
    than the cycle edge already arriving there.  Entry-less cycles
    live among vertices of in-degree one, where following the unique
    incoming edge backwards is a partial function; its cycles are
    exactly the entry-less cycles, pairwise disjoint, so the canonical
    witness starts at the least vertex involved.
    """
    unique_in = {}
    for v in E.vertices:
        incoming = E.in_edges(v)
        if len(incoming) == 1:
            unique_in[v] = incoming[0]

    seen = set()
    best = None
    for v0 in E.vertices:
        if v0 in seen or v0 not in unique_in:
            continue
        trail = []
        trail_set = {}
        v = v0
        while v in unique_in and v not in trail_set and v not in seen:
            trail_set[v] = len(trail)
            trail.append(v)
            v = E.src(unique_in[v])
        if v in trail_set:
            cycle_vertices = trail[trail_set[v]:]
            least = min(cycle_vertices, key=E.vertices.index)
            if best is None or E.vertices.index(least) < E.vertices.index(best[0]):
                best = (least, cycle_vertices)
        seen.update(trail)

    if best is None:
        return holds(
            note="every cycle has an entry",
            rule="rule:condition-L-entries",
        )
    least, cycle_vertices = best
    edges = []
    v = least
    for _ in cycle_vertices:
        e = unique_in[v]
        edges.append(e)
        v = E.src(e)
    edges.reverse()
    # traversal order: the edge leaving `least` comes first
    return fails(
        {"cycle": edges},
        note="cycle without entries: every vertex on it receives only its cycle edge",
        rule="rule:condition-L-entries",
    )


def _invariant_by_dual(E, dual_rows, n):
    out = []
    for mask in range(1 << n):
        image = 0
        m = mask
        while m:
            low = m & -m
            image |= dual_rows[low.bit_length() - 1]
            m ^= low
        if image == mask:
            out.append(mask)
    return out


def _invariant_by_conditions(E, n):
    edges = [(E.vertices.index(E.src(e)), E.vertices.index(E.rng(e))) for e in E.edge_ids]
    incoming = [[] for _ in range(n)]
    for i, j in edges:
        incoming[j].append(i)
    out = []
    for mask in range(1 << n):
        ok = all(mask & (1 << j) for i, j in edges if mask & (1 << i))
        if ok:
            for v in range(n):
                if mask & (1 << v) and not any(mask & (1 << i) for i in incoming[v]):
                    ok = False
                    break
        if ok:
            out.append(mask)
    return out


def invariant_sets(E, bound=None):
    """All vertex subsets fixed by the dual map, smallest mask first.

    Computed twice: once straight from the definition, once through
    the two closure conditions (forward closure along edges, and every
    member receives an edge from inside), and asserted equal.
    """
    bound = DEFAULT_SUBSET_BOUND if bound is None else bound
    n = len(E.vertices)
    if n > bound:
        raise BoundExceeded(
            f"subset enumeration over {n} vertices exceeds bound {bound}"
        )
    dual_rows = dual_map(E).rows
    direct = _invariant_by_dual(E, dual_rows, n)
    by_conditions = _invariant_by_conditions(E, n)
    if direct != by_conditions:
        raise AssertionError("invariant-set routes disagree")
    return [frozenset(E.vertices.labels_of(mask)) for mask in direct]


def is_minimal(E, bound=None):
    """Holds iff the only invariant vertex sets are empty and full."""
    sets = invariant_sets(E, bound=bound)
    full = frozenset(E.vertices)
    for V in sets:
        if V and V != full:
            return fails(
                {"invariant_set": sorted(V)},
                note="proper nonempty invariant vertex set",
                rule="rule:minimality-invariant-sets",
            )
    return holds(
        note="no proper nonempty invariant vertex set",
        rule="rule:minimality-invariant-sets",
    )


def transfer_operator(points, sigma, a):
    """Averaging operator of a surjective map: the value at t is the
    mean of a over the preimage of t.  Exact rational arithmetic."""
    pts = as_point_set(points)
    if callable(sigma):
        sigma = {m: sigma(m) for m in pts}
    missing = [m for m in pts if m not in sigma]
    if missing:
        raise ValueError(f"map not total, undefined at: {missing}")
    fibers = {t: [] for t in pts}
    for m in pts:
        t = sigma[m]
        if t not in pts:
            raise ValueError(f"map leaves the carrier at {m!r} -> {t!r}")
        fibers[t].append(m)
    empty = [t for t in pts if not fibers[t]]
    if empty:
        raise ValueError(f"map not surjective, empty preimage at: {empty}")
    out = {}
    for t in pts:
        total = sum(Q(a[s]) for s in fibers[t])
        out[t] = total / len(fibers[t])
    return out


def simplicity_report(E, bound=None, subject="graph"):
    """Check regularity, aperiodicity and minimality and report which
    sufficient criteria apply.

    Conclusions: "uniqueness theorem applies" needs regular and
    aperiodic; "O_X^r simple" additionally needs minimal; otherwise
    "hypotheses not met: <failed ones>".  Never claims non-simplicity;
    the criteria are sufficient only.
    """
    report = Report(kind="graph", subject=subject)
    reg = check_regularity(E)
    ape = is_aperiodic(E)
    free = is_topologically_free(E)
    mini = is_minimal(E, bound=bound)
    report.add("regularity", reg)
    report.add("aperiodicity", ape)
    report.add("topological_freeness", free)
    report.add("minimality", mini)

    if ape.holds:
        report.notes.append(
            "no cycles: the associated algebra sits in the approximately "
            "finite-dimensional regime"
        )
    failed = [
        name
        for name, v in (("regularity", reg), ("aperiodicity", ape), ("minimality", mini))
        if not v.holds
    ]
    if not failed:
        report.conclusion = "O_X^r simple"
    elif failed == ["minimality"]:
        report.conclusion = "uniqueness theorem applies"
    else:
        report.conclusion = "hypotheses not met: " + ", ".join(failed)
    return report
