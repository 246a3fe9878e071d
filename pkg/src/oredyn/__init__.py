"""Exact dynamics over directed semigroups: fraction groups, finite
multivalued maps and partial actions, graph dynamics with
theorem-backed verdicts, higher-rank factorization graphs, and an
exact roots-of-unity circle system.

All decision procedures return three-valued verdicts (Holds, Fails
with a canonical witness, Unknown with the exhausted bound); nothing
is ever reported as settled beyond what was actually checked.
"""

from .verdicts import FAILS, HOLDS, UNKNOWN, Report, Verdict, fails, holds, unknown
from .semigroups import (
    FiniteGroup,
    Fraction,
    NatAdd,
    NatMult,
    directed_witness,
    embed,
    frac_identity,
    frac_inv,
    frac_mul,
    join,
    leq,
    residual,
    sim_r,
    verify_finite_table,
)
from .multimaps import (
    MultiMap,
    PartialAction,
    PartialBijection,
    PointSet,
    compose,
    empty_map,
    identity_map,
    inverse,
    iterate,
    periodic_points,
    preimage,
    round_trip,
    topologically_free,
    verify_partial_action,
)
from .graphs import (
    BoundExceeded,
    Graph,
    check_regularity,
    dual_map,
    find_cycle,
    from_map,
    invariant_sets,
    is_aperiodic,
    is_minimal,
    is_topologically_free,
    simplicity_report,
    transfer_operator,
)
from .pgraphs import (
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
from .circle import (
    coincidence_set,
    mth_roots,
    power,
    qn_aperiodicity_certificate,
    qn_minimality_certificate,
    qn_report,
)
from .kernel import BACKEND, HAVE_FAST

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundExceeded",
    "FAILS",
    "FactorizationDefect",
    "FiniteGroup",
    "Fraction",
    "Graph",
    "HAVE_FAST",
    "HOLDS",
    "MultiMap",
    "NatAdd",
    "NatMult",
    "PGraph",
    "PartialAction",
    "PartialBijection",
    "PointSet",
    "Report",
    "UNKNOWN",
    "Verdict",
    "check_aperiodicity",
    "check_regularity",
    "check_semigroup_law",
    "coincidence_set",
    "compose",
    "directed_witness",
    "dual_at",
    "dual_map",
    "embed",
    "empty_map",
    "fails",
    "fiber_graph",
    "find_cycle",
    "frac_identity",
    "frac_inv",
    "frac_mul",
    "from_map",
    "holds",
    "identity_map",
    "invariant_sets",
    "invariant_sets_p",
    "inverse",
    "is_aperiodic",
    "is_minimal",
    "is_minimal_p",
    "is_topologically_free",
    "iterate",
    "join",
    "leq",
    "mth_roots",
    "periodic_points",
    "power",
    "preimage",
    "qn_aperiodicity_certificate",
    "qn_minimality_certificate",
    "qn_report",
    "residual",
    "round_trip",
    "sim_r",
    "simplicity_report",
    "simplicity_report_p",
    "topologically_free",
    "transfer_operator",
    "unknown",
    "verify_finite_table",
    "verify_partial_action",
    "verify_pgraph",
]
