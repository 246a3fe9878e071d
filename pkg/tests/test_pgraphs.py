"""Higher-rank factorization graphs: normal forms, audits, verdicts."""

import itertools
import random

import pytest

from oredyn.graphs import BoundExceeded, Graph, find_cycle, is_aperiodic
from oredyn.multimaps import MultiMap
from oredyn.pgraphs import (
    FactorizationDefect,
    PGraph,
    check_aperiodicity,
    check_semigroup_law,
    dual_at,
    fiber_graph,
    invariant_sets_p,
    is_minimal_p,
    simplicity_report_p,
    verify_pgraph,
)
from oredyn.semigroups import NatAdd, NatMult


def torus():
    return PGraph(
        NatAdd(2),
        ["v"],
        {(1, 0): [("b", "v", "v")], (0, 1): [("r", "v", "v")]},
        [(("b", "r"), ("r", "b"))],
    )


def torus23():
    return PGraph(
        NatAdd(2),
        ["v"],
        {
            (1, 0): [("b1", "v", "v"), ("b2", "v", "v")],
            (0, 1): [("r", "v", "v")],
        },
        [(("b1", "r"), ("r", "b2")), (("b2", "r"), ("r", "b1"))],
    )


def grid2():
    return PGraph(
        NatAdd(2),
        ["u", "v"],
        {
            (1, 0): [("B1", "u", "v"), ("B2", "v", "u")],
            (0, 1): [("R1", "u", "u"), ("R2", "v", "v")],
        },
        [(("B1", "R1"), ("R2", "B1")), (("B2", "R2"), ("R1", "B2"))],
    )


def mult23():
    return PGraph(
        NatMult(),
        ["v"],
        {2: [("p", "v", "v")], 3: [("q", "v", "v")]},
        [(("p", "q"), ("q", "p"))],
    )


def test_construction_validation():
    S = NatAdd(2)
    with pytest.raises(ValueError, match="rank above 3"):
        PGraph(NatAdd(4), ["v"], {}, [])
    with pytest.raises(ValueError):
        PGraph(S, ["v"], {(1, 0): []}, [])  # missing the (0,1) fiber
    with pytest.raises(ValueError, match="prime"):
        PGraph(NatMult(), ["v"], {4: [("p", "v", "v")]}, [])
    with pytest.raises(ValueError, match="unknown edge"):
        PGraph(
            S,
            ["v"],
            {(1, 0): [("b", "v", "v")], (0, 1): [("r", "v", "v")]},
            [(("b", "z"), ("r", "b"))],
        )
    with pytest.raises(ValueError, match="reused"):
        PGraph(
            S,
            ["v"],
            {(1, 0): [("b", "v", "v")], (0, 1): [("b", "v", "v")]},
            [],
        )


def test_canonical_sequence_and_bounds():
    L = torus()
    assert L.canonical_sequence((2, 1)) == ((1, 0), (1, 0), (0, 1))
    with pytest.raises(BoundExceeded):
        L.canonical_sequence((25, 0))
    M = mult23()
    assert M.canonical_sequence(12) == (2, 2, 3)
    # a prime with no fiber means an empty path set, not an error
    assert M.canonical_sequence(5) is None
    assert M.paths(5) == []
    assert all(row == 0 for row in M.degree_relation(5))


def test_paths_and_normal_forms():
    L = torus23()
    # degree (1,1): blue-first normal forms
    trips = L.paths((1, 1))
    ids = sorted(edges for edges, _, _ in trips)
    assert ids == [("b1", "r"), ("b2", "r")]
    # identity degree: one empty path per vertex
    assert L.paths((0, 0)) == [((), "v", "v")]


def test_flip_and_normalize():
    L = torus23()
    assert L.flip("b1", "r") == ("r", "b2")
    assert L.flip("r", "b2") == ("b1", "r")
    assert L.normalize(("r", "b2")) == ("b1", "r")
    assert L.normalize(("b1", "r")) == ("b1", "r")
    # same-fiber sequences are already in canonical order
    assert L.normalize(("b1", "b2")) == ("b1", "b2")
    bad = PGraph(
        NatAdd(2),
        ["v"],
        {
            (1, 0): [("b1", "v", "v"), ("b2", "v", "v")],
            (0, 1): [("r", "v", "v")],
        },
        [(("b1", "r"), ("r", "b1"))],
    )
    with pytest.raises(FactorizationDefect) as exc:
        bad.normalize(("r", "b2"))
    assert exc.value.detail["kind"] == "missing-square"


def test_fiber_graph_and_dual():
    L = grid2()
    Eb = fiber_graph(L, (1, 0))
    assert set(Eb.edge_ids) == {"B1", "B2"}
    Ee = fiber_graph(L, (0, 0))
    # identity degree: one loop per vertex
    assert len(Ee.edge_ids) == 2
    d = dual_at(L, (1, 0))
    assert d.apply("u") == {"v"} and d.apply("v") == {"u"}
    dr = dual_at(L, (0, 1))
    assert dr.apply("u") == {"u"} and dr.apply("v") == {"v"}


def test_verify_pgraph_passes_on_good_fixtures():
    for L in (torus(), torus23(), grid2(), mult23()):
        rep = verify_pgraph(L)
        assert rep.conclusion == "factorization data verified", rep.render()


def test_verify_pgraph_catches_corruption():
    bad = PGraph(
        NatAdd(2),
        ["v"],
        {
            (1, 0): [("b1", "v", "v"), ("b2", "v", "v")],
            (0, 1): [("r", "v", "v")],
        },
        [(("b1", "r"), ("r", "b1")), (("b2", "r"), ("r", "b1"))],
    )
    rep = verify_pgraph(bad)
    assert rep.conclusion.startswith("violations:")
    assert rep.checks["square_injectivity"].fails
    assert rep.checks["square_totality"].fails


def test_semigroup_law_on_fixtures():
    for L in (torus(), torus23(), grid2()):
        gens = list(L.fibers)
        for p, q in itertools.product(gens, repeat=2):
            v = check_semigroup_law(L, p, q)
            assert v.holds, (p, q, v.render())
        # composite degrees too
        v = check_semigroup_law(L, (2, 1), (1, 1))
        assert v.holds
    M = mult23()
    assert check_semigroup_law(M, 2, 3).holds
    assert check_semigroup_law(M, 6, 4).holds


def test_semigroup_law_relation_route_matches_duals():
    L = grid2()
    S = L.semigroup
    for p, q in [((1, 0), (0, 1)), ((1, 1), (1, 0)), ((2, 0), (0, 1))]:
        pq = S.mul(p, q)
        dp, dq, dpq = dual_at(L, p), dual_at(L, q), dual_at(L, pq)
        composed = MultiMap(
            dq.domain_set,
            dp.codomain_set,
            {
                (i, k)
                for i in range(len(L.vertices))
                for k in range(len(L.vertices))
                if any(
                    (i, j) in dq.pairs and (j, k) in dp.pairs
                    for j in range(len(L.vertices))
                )
            },
        )
        assert composed.pairs == dpq.pairs


def test_law_check_flags_corrupted_square():
    bad = PGraph(
        NatAdd(2),
        ["v"],
        {
            (1, 0): [("b1", "v", "v"), ("b2", "v", "v")],
            (0, 1): [("r", "v", "v")],
        },
        [(("b1", "r"), ("r", "b1")), (("b2", "r"), ("r", "b1"))],
    )
    v = check_semigroup_law(bad, (0, 1), (1, 0))
    assert v.fails, v.render()


def test_aperiodicity_torus_witness_revalidated():
    L = torus()
    v = check_aperiodicity(L)
    assert v.fails
    w = v.witness
    assert w["v"] == "v"
    assert w["orderings"], "refutation must exhibit a pair per ordering"
    for entry in w["orderings"]:
        assert entry["mu"] != entry["nu"]


def test_aperiodicity_rank_one_matches_graph_verdicts():
    rng = random.Random(1759)
    S = NatAdd(1)
    vertices = ["a", "b", "c"]
    for _ in range(120):
        k = rng.randint(0, 5)
        triples = [
            (f"e{i}", rng.choice(vertices), rng.choice(vertices))
            for i in range(k)
        ]
        L = PGraph(S, vertices, {(1,): triples}, [])
        E = Graph(vertices, triples)
        verdict = check_aperiodicity(L)
        graph_verdict = is_aperiodic(E)
        assert verdict.outcome == graph_verdict.outcome
        if verdict.fails:
            cyc = verdict.witness["orderings"][0]["nu"].split(".")
            # the exhibited loop really is a cycle in the skeleton
            for a, b in zip(cyc, cyc[1:]):
                assert E.src(a) == E.rng(b)
            assert E.rng(cyc[0]) == E.src(cyc[-1])


def test_aperiodicity_unknown_paths():
    S = NatAdd(2)
    sparse = PGraph(
        S,
        ["u", "v"],
        {(1, 0): [("B", "u", "v")], (0, 1): []},
        [],
    )
    v = check_aperiodicity(sparse)
    assert v.unknown
    assert any("bound=" in c for c in v.caveats)
    # shrinking the box to nothing forces Unknown even on the torus
    assert check_aperiodicity(torus(), box=(0, 0)).unknown
    with pytest.raises(ValueError):
        check_aperiodicity(torus(), f_max=0)


def test_regular_fixtures_all_refuted():
    # finite graphs with every fiber regular cannot be aperiodic, and
    # the bounded search must actually find the refutation
    for L in (torus(), torus23(), grid2(), mult23()):
        assert check_aperiodicity(L).fails


def test_invariant_sets_and_minimality():
    L = grid2()
    sets = invariant_sets_p(L)
    assert sets == [frozenset(), frozenset({"u", "v"})]
    assert is_minimal_p(L).holds

    # two disconnected tori: each half is invariant
    L2 = PGraph(
        NatAdd(2),
        ["u", "v"],
        {
            (1, 0): [("bu", "u", "u"), ("bv", "v", "v")],
            (0, 1): [("ru", "u", "u"), ("rv", "v", "v")],
        },
        [
            (("bu", "ru"), ("ru", "bu")),
            (("bv", "rv"), ("rv", "bv")),
        ],
    )
    sets2 = invariant_sets_p(L2)
    assert len(sets2) == 4
    assert is_minimal_p(L2).fails


def test_law_gate_rejects_broken_factorizations():
    bad = PGraph(
        NatAdd(2),
        ["v"],
        {
            (1, 0): [("b1", "v", "v"), ("b2", "v", "v")],
            (0, 1): [("r", "v", "v")],
        },
        [(("b1", "r"), ("r", "b1")), (("b2", "r"), ("r", "b1"))],
    )
    with pytest.raises(ValueError, match="composition law fails"):
        invariant_sets_p(bad)


def test_simplicity_report_p_shapes():
    rep = simplicity_report_p(torus())
    assert rep.conclusion == "hypotheses not met: aperiodicity"
    assert rep.checks["regularity"].holds
    assert rep.checks["minimality"].holds

    sparse = PGraph(
        NatAdd(2),
        ["u", "v"],
        {(1, 0): [("B", "u", "v")], (0, 1): []},
        [],
    )
    rep2 = simplicity_report_p(sparse)
    assert rep2.checks["aperiodicity"].unknown
    # a definite failed hypothesis outranks the open aperiodicity search
    assert rep2.conclusion == "hypotheses not met: regularity"

    # with an empty search box nothing is refuted, so the verdict stays open
    rep3 = simplicity_report_p(torus(), box=(0, 0))
    assert rep3.checks["regularity"].holds
    assert rep3.checks["minimality"].holds
    assert rep3.checks["aperiodicity"].unknown
    assert rep3.conclusion == "inconclusive at bound"
