"""Finite multivalued maps (relations), partial bijections, partial actions.

A MultiMap from one finite labelled carrier to another is a set of
(source index, target index) pairs read as x -> f(x) = set of targets.
Composition takes unions over intermediate points, the inverse swaps
pairs, and the preimage of B is every point whose image meets B.
Relations also carry a packed boolean-matrix view so the hot loops run
on the bitset kernel.

Everything here is finite and discrete, where every map is continuous
and every singleton is open; emptiness therefore stands in for
empty-interior throughout.
"""

from __future__ import annotations

from .kernel import (
    compose as _kcompose,
    identity as _kidentity,
    image_mask,
    inverse as _kinverse,
    iterate as _kiterate,
    periodic_mask,
    preimage_mask,
)
from .verdicts import Report, Verdict, fails, holds


class PointSet:
    """Ordered carrier of distinct labels; order fixes all iteration."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("carrier labels must be distinct")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"PointSet({list(self.labels)!r})"

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"label not in carrier: {label!r}") from None

    def mask_of(self, labels):
        acc = 0
        for lab in labels:
            acc |= 1 << self.index(lab)
        return acc

    def labels_of(self, mask):
        out = set()
        i = 0
        while mask:
            if mask & 1:
                out.add(self.labels[i])
            mask >>= 1
            i += 1
        return out


def as_point_set(points):
    return points if isinstance(points, PointSet) else PointSet(points)


class MultiMap:
    """Finite relation between two carriers, viewed as a multivalued map."""

    __slots__ = ("domain_set", "codomain_set", "pairs", "_rows")

    def __init__(self, domain_set, codomain_set, pairs):
        self.domain_set = as_point_set(domain_set)
        self.codomain_set = as_point_set(codomain_set)
        checked = set()
        n, m = len(self.domain_set), len(self.codomain_set)
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < m):
                raise ValueError(f"pair out of range: {(i, j)!r}")
            checked.add((i, j))
        self.pairs = frozenset(checked)
        rows = [0] * n
        for i, j in self.pairs:
            rows[i] |= 1 << j
        self._rows = tuple(rows)

    @classmethod
    def from_labels(cls, domain_set, codomain_set, mapping):
        """Build from {source label: iterable of target labels}."""
        dom = as_point_set(domain_set)
        cod = as_point_set(codomain_set)
        pairs = set()
        for src, targets in mapping.items():
            i = dom.index(src)
            for tgt in targets:
                pairs.add((i, cod.index(tgt)))
        return cls(dom, cod, pairs)

    @property
    def rows(self):
        return self._rows

    def __eq__(self, other):
        if not isinstance(other, MultiMap):
            return NotImplemented
        return (
            self.domain_set == other.domain_set
            and self.codomain_set == other.codomain_set
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((self.domain_set, self.codomain_set, self.pairs))

    def __repr__(self):
        body = {}
        for src in self.domain_set:
            targets = sorted(self.apply(src))
            if targets:
                body[src] = targets
        return f"MultiMap({body!r})"

    def apply(self, label):
        """f(x) as a set of codomain labels."""
        i = self.domain_set.index(label)
        return self.codomain_set.labels_of(self._rows[i])

    def domain(self):
        """D(f) = {x : f(x) != empty}, always derived."""
        return {x for x in self.domain_set if self._rows[self.domain_set.index(x)]}

    def image(self):
        return self.codomain_set.labels_of(image_mask(self._rows))

    def is_endo(self):
        return self.domain_set == self.codomain_set

    def to_mapping(self):
        return {
            src: sorted(self.apply(src)) for src in self.domain_set if self.apply(src)
        }


def identity_map(points):
    pts = as_point_set(points)
    n = len(pts)
    return MultiMap(pts, pts, {(i, i) for i in range(n)})


def empty_map(domain_set, codomain_set=None):
    dom = as_point_set(domain_set)
    cod = dom if codomain_set is None else as_point_set(codomain_set)
    return MultiMap(dom, cod, set())


def compose(g, f):
    """g after f: (g o f)(x) = union of g(y) over y in f(x)."""
    if f.codomain_set != g.domain_set:
        raise ValueError("carrier mismatch: codomain of f must be domain of g")
    rows = _kcompose(g.rows, f.rows)
    pairs = set()
    for i, mask in enumerate(rows):
        j = 0
        while mask:
            if mask & 1:
                pairs.add((i, j))
            mask >>= 1
            j += 1
    return MultiMap(f.domain_set, g.codomain_set, pairs)


def inverse(f):
    """Pair-swapped relation: y in f_inv(x) iff x in f(y)."""
    return MultiMap(f.codomain_set, f.domain_set, {(j, i) for i, j in f.pairs})


def preimage(f, B):
    """{x : f(x) meets B}; B must live in the codomain carrier."""
    mask = f.codomain_set.mask_of(B)
    return f.domain_set.labels_of(preimage_mask(f.rows, mask))


def round_trip(f):
    """f o f_inv; sends x to a set containing x when x is in the image,
    and to the empty set otherwise."""
    return compose(f, inverse(f))


def iterate(f, n):
    """n-fold self-composition; iterate(f, 0) is the identity."""
    if not f.is_endo():
        raise ValueError("iterate needs matching domain and codomain")
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    rows = _kiterate(f.rows, n)
    pairs = set()
    for i, mask in enumerate(rows):
        j = 0
        while mask:
            if mask & 1:
                pairs.add((i, j))
            mask >>= 1
            j += 1
    return MultiMap(f.domain_set, f.codomain_set, pairs)


def periodic_points(f, n):
    """{x : x in f^n(x)} for a fixed period n >= 1."""
    if not f.is_endo():
        raise ValueError("periodic points need matching domain and codomain")
    if n < 1:
        raise ValueError("period must be >= 1")
    return f.domain_set.labels_of(periodic_mask(f.rows, n))


class PartialBijection(MultiMap):
    """MultiMap whose pairs form a partial injective function."""

    __slots__ = ()

    def __init__(self, domain_set, codomain_set, pairs):
        super().__init__(domain_set, codomain_set, pairs)
        srcs = [i for i, _ in self.pairs]
        tgts = [j for _, j in self.pairs]
        if len(set(srcs)) != len(srcs):
            raise ValueError("not a partial function: repeated source")
        if len(set(tgts)) != len(tgts):
            raise ValueError("not injective: repeated target")

    @classmethod
    def from_labels(cls, domain_set, codomain_set, mapping):
        dom = as_point_set(domain_set)
        cod = as_point_set(codomain_set)
        pairs = set()
        for src, tgt in mapping.items():
            targets = [tgt] if isinstance(tgt, str) else list(tgt)
            for t in targets:
                pairs.add((dom.index(src), cod.index(t)))
        return cls(dom, cod, pairs)

    def apply_one(self, label):
        """The unique image of label, or None when undefined."""
        out = self.apply(label)
        if not out:
            return None
        return next(iter(out))


class PartialAction:
    """Group elements acting by partial bijections of one carrier.

    maps: {element key: PartialBijection on points}.  Keys may be
    fraction-group elements (which multiply on their own) or opaque
    labels with a supplied mul table/callable.  mul(s, t) must return
    the key of s t when that product is stored, else None; pairs whose
    product is not stored are skipped by the verifier and counted.
    """

    def __init__(self, points, maps, identity, mul=None):
        self.points = as_point_set(points)
        if identity not in maps:
            raise ValueError("missing identity element")
        self.identity = identity
        self.maps = {}
        for key, pb in maps.items():
            if not isinstance(pb, PartialBijection):
                pb = PartialBijection(pb.domain_set, pb.codomain_set, pb.pairs)
            if pb.domain_set != self.points or pb.codomain_set != self.points:
                raise ValueError(f"partial bijection for {key!r} lives off-carrier")
            self.maps[key] = pb
        self.keys = list(self.maps)
        self._mul = mul

    def resolve(self, s, t):
        """Key of the product s t among stored keys, or None."""
        if self._mul is not None:
            if callable(self._mul):
                out = self._mul(s, t)
            else:
                out = self._mul.get((s, t))
            return out if out in self.maps else None
        product = s * t
        for key in self.keys:
            if key == product:
                return key
        return None

    def theta(self, key):
        return self.maps[key]

    def dom(self, key):
        """Domain of the partial bijection attached to key."""
        return self.maps[key].domain()


def verify_partial_action(A):
    """Audit the partial-action axioms on stored data.

    PA1: the identity element acts as the identity on the full carrier.
    PA2: theta_t(dom theta_t  ∩ img theta_s) = img theta_t ∩ img theta_ts
         for every stored pair with stored product.
    PA3: whenever theta_s(theta_t(x)) is defined, theta_st(x) is
         defined and equal, for every stored pair with stored product.

    The report lists every violated instance; pairs whose product is
    not stored are skipped and counted in the notes.
    """
    report = Report(kind="partial-action", subject=f"{len(A.points)} points")
    e = A.identity

    ident = identity_map(A.points)
    th_e = A.maps[e]
    if MultiMap(th_e.domain_set, th_e.codomain_set, th_e.pairs) == ident:
        report.add("PA1_identity", holds(rule="rule:pa1-identity"))
    else:
        missing = sorted(set(A.points) - set(th_e.domain()))
        moved = sorted(x for x in th_e.domain() if th_e.apply_one(x) != x)
        report.add(
            "PA1_identity",
            fails(
                {"not_fixed": moved, "undefined_at": missing},
                note="identity element must act as the full identity",
                rule="rule:pa1-identity",
            ),
        )

    skipped = 0
    pa2_bad = []
    pa3_bad = []
    for t in A.keys:
        th_t = A.maps[t]
        dom_t = th_t.domain()
        img_t = th_t.image()
        for s in A.keys:
            th_s = A.maps[s]

            ts = A.resolve(t, s)
            if ts is None:
                skipped += 1
            else:
                lhs = {th_t.apply_one(x) for x in dom_t & A.maps[s].image()}
                rhs = img_t & A.maps[ts].image()
                if lhs != rhs:
                    pa2_bad.append(
                        {
                            "t": str(t),
                            "s": str(s),
                            "lhs": sorted(lhs),
                            "rhs": sorted(rhs),
                        }
                    )

            st = A.resolve(s, t)
            for x in sorted(dom_t):
                y = th_t.apply_one(x)
                if y is None or y not in th_s.domain():
                    continue
                z = th_s.apply_one(y)
                if st is None:
                    skipped += 1
                    break
                w = A.maps[st].apply_one(x)
                if w != z:
                    pa3_bad.append({"s": str(s), "t": str(t), "x": x})

    report.add(
        "PA2_domain_compatibility",
        holds(rule="rule:pa2-domains")
        if not pa2_bad
        else fails(pa2_bad, note="domain compatibility broken", rule="rule:pa2-domains"),
    )
    report.add(
        "PA3_composition",
        holds(rule="rule:pa3-composition")
        if not pa3_bad
        else fails(
            pa3_bad,
            note="composite action disagrees with the product element",
            rule="rule:pa3-composition",
        ),
    )
    if skipped:
        report.notes.append(f"{skipped} instances skipped: product not stored")
    bad = [name for name, v in report.checks.items() if not v.holds]
    report.conclusion = (
        "partial action verified" if not bad else "violations: " + ", ".join(bad)
    )
    return report


def topologically_free(A, F):
    """On a finite discrete carrier: Holds iff no t in F fixes a point
    of its domain.  F must not contain the identity element."""
    for t in F:
        if t == A.identity:
            raise ValueError("F must consist of non-identity elements")
        if t not in A.maps:
            raise ValueError(f"element not stored in the action: {t!r}")
    ordered = [t for t in A.keys if t in set(F)]
    for x in A.points:
        for t in ordered:
            th = A.maps[t]
            if x in th.domain() and th.apply_one(x) == x:
                return Verdict(
                    "Fails",
                    {"x": x, "t": str(t)},
                    note="fixed point inside the domain of a non-identity element",
                    rule="rule:topological-freeness-fixed-points",
                )
    return holds(
        note="no non-identity element fixes a point of its domain",
        rule="rule:topological-freeness-fixed-points",
    )
