"""Polymorphism testing and bounded enumeration of the k-ary polymorphisms
of a set of weighted relations."""

from __future__ import annotations

import itertools

from .errors import Caps, DEFAULT_CAPS, InputError, ResourceLimitError
from .operations import Operation, apply_to_tuples


def is_polymorphism(f, rel, caps: Caps = DEFAULT_CAPS):
    """True iff f maps every k-sequence of defined tuples into the defined set.

    Only the feasibility relation matters; weights are never consulted.
    """
    if f.domain != rel.domain:
        raise InputError("operation and relation must share a domain")
    defined = rel.defined_tuples()
    count = len(defined) ** f.arity
    if count > caps.max_sequences:
        raise ResourceLimitError(
            f"{count} tuple sequences exceed max_sequences cap ({caps.max_sequences})"
        )
    for xs in itertools.product(defined, repeat=f.arity):
        if apply_to_tuples(f, xs) not in rel.table:
            return False
    return True


def pol_k(relations, k, caps: Caps = DEFAULT_CAPS, domain=None):
    """All k-ary operations preserving every relation, by pruned enumeration.

    Table entries are fixed in lexicographic input order; a partial table is
    rejected as soon as some sequence of defined tuples has a fully
    determined image outside the defined set.
    """
    relations = list(relations)
    if domain is None:
        if not relations:
            raise InputError("pol_k with no relations needs an explicit domain")
        domain = relations[0].domain
    for rel in relations:
        if rel.domain != domain:
            raise InputError("relations must share a domain")
    d = domain.size
    n = d**k
    if d**n > caps.max_ops:
        raise ResourceLimitError(
            f"{d}^{n} candidate operations exceed max_ops cap ({caps.max_ops})"
        )

    # Group the closure conditions by the last table position they touch,
    # so each is checked exactly once, as soon as it becomes decidable.
    by_last_pos = {}
    total_seqs = 0
    for rel in relations:
        defined = rel.defined_tuples()
        feas = frozenset(rel.table)
        total_seqs += len(defined) ** k
        if total_seqs > caps.max_sequences:
            raise ResourceLimitError(
                f"tuple sequences exceed max_sequences cap ({caps.max_sequences})"
            )
        for xs in itertools.product(defined, repeat=k):
            ranks = tuple(
                domain.tuple_rank(tuple(x[j] for x in xs)) for j in range(rel.arity)
            )
            last = max(ranks) if ranks else -1
            by_last_pos.setdefault(last, []).append((ranks, feas))

    results = []
    table = [0] * n

    def extend(pos):
        if pos == n:
            results.append(Operation(domain, k, tuple(table)))
            return
        for v in range(d):
            table[pos] = v
            ok = True
            for ranks, feas in by_last_pos.get(pos, ()):
                if tuple(table[r] for r in ranks) not in feas:
                    ok = False
                    break
            if ok:
                extend(pos + 1)

    # Arity-0 relations constrain nothing beyond emptiness of their table.
    for ranks, feas in by_last_pos.get(-1, ()):
        if ranks == () and () not in feas:
            return set()
    extend(0)
    return set(results)


def inv_check(operations, rel, caps: Caps = DEFAULT_CAPS):
    """True iff the relation is invariant under every listed operation."""
    return all(is_polymorphism(f, rel, caps) for f in operations)
