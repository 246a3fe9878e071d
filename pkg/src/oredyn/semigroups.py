"""Ore-type semigroups and their groups of fractions.

Three built-in families, each left cancellative and directed with
identity: NatAdd(k) is (ℕ^k, +), NatMult is the positive integers
under multiplication, FiniteGroup is any finite group given by its
multiplication table.  A finite cancellative monoid is already a
group, so these families cover every finite case; exotic infinite
presentations are out of scope.

Fractions [p, q] represent p "over" q in the enveloping group; the
product uses a directed witness s above both inner entries:

    [p1, p2] * [q1, q2] = [p1 (p2\\s), q2 (q1\\s)],  s >= p2, s >= q1

where a\\b is the residual, the unique r with a r = b.  Equality of
fractions is equality of family-specific normal forms.
"""

from __future__ import annotations

from fractions import Fraction as Q
from math import gcd

from .verdicts import Report, fails, holds


class NatAdd:
    """(ℕ^k, +): elements are k-tuples of non-negative integers."""

    family = "natadd"

    def __init__(self, k):
        if not isinstance(k, int) or k < 1:
            raise ValueError("NatAdd needs a positive integer rank")
        self.k = k
        self.identity = (0,) * k

    def key(self):
        return ("natadd", self.k)

    def __repr__(self):
        return f"NatAdd({self.k})"

    def contains(self, p):
        return (
            isinstance(p, tuple)
            and len(p) == self.k
            and all(isinstance(x, int) and x >= 0 for x in p)
        )

    def check(self, p):
        if not self.contains(p):
            raise ValueError(f"not an element of {self!r}: {p!r}")
        return p

    def mul(self, p, q):
        self.check(p)
        self.check(q)
        return tuple(a + b for a, b in zip(p, q))

    def leq(self, p, q):
        self.check(p)
        self.check(q)
        return all(a <= b for a, b in zip(p, q))

    def residual(self, p, q):
        if not self.leq(p, q):
            raise ValueError(f"{p!r} is not below {q!r}")
        return tuple(b - a for a, b in zip(p, q))

    def join(self, p, q):
        self.check(p)
        self.check(q)
        return tuple(max(a, b) for a, b in zip(p, q))

    def sim_r(self, p, q):
        # pr = qr forces p = q in a right-cancellative semigroup.
        self.check(p)
        self.check(q)
        return p == q

    def frac_normal(self, p, q):
        return tuple(a - b for a, b in zip(p, q))


class NatMult:
    """Positive integers under multiplication; the order is divisibility."""

    family = "natmult"
    identity = 1

    def key(self):
        return ("natmult",)

    def __repr__(self):
        return "NatMult()"

    def contains(self, p):
        return isinstance(p, int) and p >= 1

    def check(self, p):
        if not self.contains(p):
            raise ValueError(f"not an element of {self!r}: {p!r}")
        return p

    def mul(self, p, q):
        self.check(p)
        self.check(q)
        return p * q

    def leq(self, p, q):
        self.check(p)
        self.check(q)
        return q % p == 0

    def residual(self, p, q):
        if not self.leq(p, q):
            raise ValueError(f"{p!r} does not divide {q!r}")
        return q // p

    def join(self, p, q):
        self.check(p)
        self.check(q)
        return p * q // gcd(p, q)

    def sim_r(self, p, q):
        self.check(p)
        self.check(q)
        return p == q

    def frac_normal(self, p, q):
        return Q(p, q)


class FiniteGroup:
    """Finite group from a multiplication table of element indices.

    The table is validated by brute force at construction; anything
    short of a group (associativity, two-sided identity, both
    cancellation laws) is rejected.  Directedness is automatic:
    p <= q always, with residual p^{-1} q.
    """

    family = "group"

    def __init__(self, table, labels=None):
        report = verify_finite_table(table)
        bad = [name for name, v in report.checks.items() if not v.holds]
        if bad:
            raise ValueError(f"not a group table, failed: {', '.join(bad)}")
        self.table = tuple(tuple(row) for row in table)
        self.n = len(table)
        if labels is None:
            labels = [str(i) for i in range(self.n)]
        if len(labels) != self.n or len(set(labels)) != self.n:
            raise ValueError("labels must be distinct, one per element")
        self.labels = tuple(labels)
        self.identity = next(
            i
            for i in range(self.n)
            if all(self.table[i][j] == j and self.table[j][i] == j for j in range(self.n))
        )
        self._inv = [0] * self.n
        for i in range(self.n):
            self._inv[i] = next(
                j for j in range(self.n) if self.table[i][j] == self.identity
            )

    def key(self):
        return ("group", self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.n})"

    def contains(self, p):
        return isinstance(p, int) and 0 <= p < self.n

    def check(self, p):
        if not self.contains(p):
            raise ValueError(f"not an element index of {self!r}: {p!r}")
        return p

    def index_of(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown element label: {label!r}") from None

    def mul(self, p, q):
        self.check(p)
        self.check(q)
        return self.table[p][q]

    def inv(self, p):
        self.check(p)
        return self._inv[p]

    def leq(self, p, q):
        self.check(p)
        self.check(q)
        return True

    def residual(self, p, q):
        return self.mul(self._inv[self.check(p)], self.check(q))

    def join(self, p, q):
        # Any element is a common upper bound; tie-break to the
        # second argument for determinism.
        self.check(p)
        return self.check(q)

    def sim_r(self, p, q):
        self.check(p)
        self.check(q)
        return p == q

    def frac_normal(self, p, q):
        return self.mul(p, self._inv[q])


def leq(S, p, q):
    """True iff p r = q for some r, the left-divisibility preorder."""
    return S.leq(p, q)


def residual(S, p, q):
    """The unique r with p r = q; unique by left cancellation."""
    return S.residual(p, q)


def join(S, p, q):
    """Least common upper bound in the preorder."""
    return S.join(p, q)


def directed_witness(S, p, q):
    """Some s with p <= s and q <= s; the join for all built-ins."""
    return S.join(p, q)


def sim_r(S, p, q):
    """True iff p r = q r for some r; a congruence, and equality here."""
    return S.sim_r(p, q)


class Fraction:
    """Element [p, q] of the enveloping group of fractions."""

    __slots__ = ("semigroup", "num", "den", "normal")

    def __init__(self, semigroup, num, den):
        semigroup.check(num)
        semigroup.check(den)
        self.semigroup = semigroup
        self.num = num
        self.den = den
        self.normal = semigroup.frac_normal(num, den)

    def __repr__(self):
        return f"Fraction[{self.num!r}, {self.den!r}]"

    def __eq__(self, other):
        if not isinstance(other, Fraction):
            return NotImplemented
        return (
            self.semigroup.key() == other.semigroup.key()
            and self.normal == other.normal
        )

    def __hash__(self):
        return hash((self.semigroup.key(), self.normal))

    def __mul__(self, other):
        return frac_mul(self, other)

    def inv(self):
        return frac_inv(self)


def frac_mul(a, b):
    """Product of fractions via a directed witness above a.den and b.num."""
    S = a.semigroup
    if S.key() != b.semigroup.key():
        raise ValueError("fractions over different semigroups")
    s = directed_witness(S, a.den, b.num)
    left = S.mul(a.num, S.residual(a.den, s))
    right = S.mul(b.den, S.residual(b.num, s))
    return Fraction(S, left, right)


def frac_inv(a):
    """[q, p] inverts [p, q]."""
    return Fraction(a.semigroup, a.den, a.num)


def frac_identity(S):
    return Fraction(S, S.identity, S.identity)


def embed(S, p):
    """The injective homomorphism p -> [p, e] into the fraction group."""
    return Fraction(S, p, S.identity)


def verify_finite_table(table):
    """Brute-force audit of a finite multiplication table.

    Checks shape, associativity, two-sided identity, left and right
    cancellativity, and directedness; each gets its own verdict with
    a minimal witness on failure.
    """
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise ValueError("table must be square and non-empty")
    for row in table:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValueError(f"table entry out of range: {v!r}")

    report = Report(kind="semigroup-table", subject=f"{n} elements")

    assoc = holds(rule="rule:table-associativity")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    assoc = fails(
                        {"a": a, "b": b, "c": c},
                        note="(a b) c differs from a (b c)",
                        rule="rule:table-associativity",
                    )
                    break
            if assoc.fails:
                break
        if assoc.fails:
            break
    report.add("associative", assoc)

    identity_ix = None
    for e in range(n):
        if all(table[e][j] == j and table[j][e] == j for j in range(n)):
            identity_ix = e
            break
    if identity_ix is None:
        report.add(
            "identity",
            fails(None, note="no two-sided identity", rule="rule:table-identity"),
        )
    else:
        report.add(
            "identity",
            holds(note=f"identity at index {identity_ix}", rule="rule:table-identity"),
        )

    left_c = holds(rule="rule:table-left-cancel")
    for a in range(n):
        seen = {}
        for b in range(n):
            v = table[a][b]
            if v in seen:
                left_c = fails(
                    {"a": a, "b": seen[v], "c": b},
                    note="a b = a c with b != c",
                    rule="rule:table-left-cancel",
                )
                break
            seen[v] = b
        if left_c.fails:
            break
    report.add("left_cancellative", left_c)

    right_c = holds(rule="rule:table-right-cancel")
    for a in range(n):
        seen = {}
        for b in range(n):
            v = table[b][a]
            if v in seen:
                right_c = fails(
                    {"a": a, "b": seen[v], "c": b},
                    note="b a = c a with b != c",
                    rule="rule:table-right-cancel",
                )
                break
            seen[v] = b
        if right_c.fails:
            break
    report.add("right_cancellative", right_c)

    directed = holds(rule="rule:table-directed")
    for p in range(n):
        for q in range(n):
            upper_p = {table[p][r] for r in range(n)}
            upper_q = {table[q][r] for r in range(n)}
            if not (upper_p & upper_q):
                directed = fails(
                    {"p": p, "q": q},
                    note="pP and qP are disjoint",
                    rule="rule:table-directed",
                )
                break
        if directed.fails:
            break
    report.add("directed", directed)

    bad = [name for name, v in report.checks.items() if not v.holds]
    report.conclusion = "all axioms pass" if not bad else "failed: " + ", ".join(bad)
    return report
