"""Finite domains, tuples, and weighted relations.

A weighted relation is a partial map from fixed-arity tuples over a finite
domain to exact rationals.  Tuples absent from the table are infeasible;
there is no explicit infinity value anywhere.  All values are immutable
after construction and may be shared freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

# The weight type everywhere: exact, arbitrary-precision, always normalized.
Rational = Fraction


@dataclass(frozen=True, order=True)
class Domain:
    """The finite value set {0, .., size-1}."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"domain size must be >= 1, got {self.size}")

    def elements(self):
        return range(self.size)

    def tuples(self, arity):
        """All tuples of the given arity, in lexicographic order."""
        return itertools.product(range(self.size), repeat=arity)

    def tuple_rank(self, t):
        """Lexicographic rank of a tuple (base-size positional value)."""
        r = 0
        for v in t:
            r = r * self.size + v
        return r


def _check_tuple(domain, arity, t):
    if len(t) != arity:
        raise InputError(f"tuple {t} has length {len(t)}, expected arity {arity}")
    for v in t:
        if not (0 <= v < domain.size):
            raise InputError(f"tuple entry {v} outside domain of size {domain.size}")


class WeightedRelation:
    """A partial rational-valued cost function on domain tuples.

    Stored sparsely: only defined tuples appear in the table.  Equality is
    exact structural equality of (domain, arity, table).
    """

    __slots__ = ("domain", "arity", "table", "_hash")

    def __init__(self, domain, arity, table):
        if arity < 0:
            raise InputError(f"arity must be >= 0, got {arity}")
        tbl = {}
        for t, w in table.items() if isinstance(table, dict) else table:
            t = tuple(t)
            _check_tuple(domain, arity, t)
            tbl[t] = Fraction(w)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "table", tbl)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("WeightedRelation is immutable")

    def defined_tuples(self):
        """The feasibility relation, as a lexicographically sorted list."""
        return sorted(self.table)

    def is_total(self):
        return len(self.table) == self.domain.size ** self.arity

    def __contains__(self, t):
        return tuple(t) in self.table

    def __eq__(self, other):
        if not isinstance(other, WeightedRelation):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.arity == other.arity
            and self.table == other.table
        )

    def __hash__(self):
        if self._hash is None:
            h = hash((self.domain, self.arity, frozenset(self.table.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        return (
            f"WeightedRelation(d={self.domain.size}, arity={self.arity}, "
            f"defined={len(self.table)})"
        )


def wr_eval(rel, t):
    """The stored weight of t, or None if t is infeasible."""
    t = tuple(t)
    _check_tuple(rel.domain, rel.arity, t)
    return rel.table.get(t)


def wr_add(rel1, rel2, argmap1, argmap2, arity):
    """Pointwise sum of two relations pulled back along argument maps.

    The result at (x_1..x_r) is rel1(x at argmap1) + rel2(x at argmap2),
    defined exactly where both summands are defined.
    """
    if rel1.domain != rel2.domain:
        raise InputError("wr_add requires a shared domain")
    for argmap, rel in ((argmap1, rel1), (argmap2, rel2)):
        if len(argmap) != rel.arity:
            raise InputError(
                f"argmap length {len(argmap)} does not match arity {rel.arity}"
            )
        for i in argmap:
            if not (0 <= i < arity):
                raise InputError(f"argmap index {i} out of range for arity {arity}")
    table = {}
    for x in rel1.domain.tuples(arity):
        w1 = rel1.table.get(tuple(x[i] for i in argmap1))
        if w1 is None:
            continue
        w2 = rel2.table.get(tuple(x[i] for i in argmap2))
        if w2 is None:
            continue
        table[x] = w1 + w2
    return WeightedRelation(rel1.domain, arity, table)


def wr_minimize(rel, arg):
    """Minimize out one argument; defined wherever some extension is."""
    if rel.arity < 1:
        raise InputError("cannot minimize an arity-0 relation")
    if not (0 <= arg < rel.arity):
        raise InputError(f"argument index {arg} out of range")
    table = {}
    for t, w in rel.table.items():
        key = t[:arg] + t[arg + 1 :]
        cur = table.get(key)
        if cur is None or w < cur:
            table[key] = w
    return WeightedRelation(rel.domain, rel.arity - 1, table)


def wr_scale_shift(rel, alpha, beta):
    """alpha*rel + beta on the same defined set; alpha must be non-negative."""
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha < 0:
        raise InputError(f"scale factor must be non-negative, got {alpha}")
    return WeightedRelation(
        rel.domain, rel.arity, {t: alpha * w + beta for t, w in rel.table.items()}
    )


def weighted_equality(domain):
    """The binary relation defined with weight 0 exactly on the diagonal."""
    return WeightedRelation(
        domain, 2, {(v, v): Fraction(0) for v in domain.elements()}
    )


def equality_cost_relation(domain):
    """Total binary relation charging 1 unless both arguments agree."""
    return WeightedRelation(
        domain,
        2,
        {
            (x, y): Fraction(0 if x == y else 1)
            for x in domain.elements()
            for y in domain.elements()
        },
    )


def disequality_cost_relation(domain):
    """Total binary relation charging 1 unless the arguments differ."""
    return WeightedRelation(
        domain,
        2,
        {
            (x, y): Fraction(1 if x == y else 0)
            for x in domain.elements()
            for y in domain.elements()
        },
    )


def wr_feasibility(rel):
    """Zero-valued relation on exactly the defined tuples of rel."""
    return WeightedRelation(rel.domain, rel.arity, {t: Fraction(0) for t in rel.table})


def relation_sort_key(rel):
    """Deterministic ordering key for sets of relations."""
    return (rel.arity, len(rel.table), sorted(rel.table.items()))
