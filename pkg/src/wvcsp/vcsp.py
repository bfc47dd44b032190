"""VCSP instances, exact brute-force solving, projection gadgets, and the
two cost-preserving reduction constructions.

Instances are immutable; solving is a pure function and witness order is
the lexicographic assignment order, so repeated runs are identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Domain, WeightedRelation, wr_scale_shift
from .errors import Caps, DEFAULT_CAPS, InputError, ResourceLimitError


class VcspInstance:
    """Variables, a shared domain, and a multiset of weighted constraints."""

    __slots__ = ("variables", "domain", "constraints")

    def __init__(self, variables, domain, constraints):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputError("duplicate variable names")
        varset = set(variables)
        constraints = tuple((tuple(scope), rel) for scope, rel in constraints)
        for scope, rel in constraints:
            if len(scope) != rel.arity:
                raise InputError(
                    f"scope {scope} has length {len(scope)}, relation arity {rel.arity}"
                )
            if rel.domain != domain:
                raise InputError("constraint relation domain differs from instance")
            for v in scope:
                if v not in varset:
                    raise InputError(f"unknown variable {v!r} in scope")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "constraints", constraints)

    def __setattr__(self, name, value):
        raise AttributeError("VcspInstance is immutable")

    def __eq__(self, other):
        if not isinstance(other, VcspInstance):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.domain == other.domain
            and sorted(self.constraints, key=_constraint_key)
            == sorted(other.constraints, key=_constraint_key)
        )

    def __repr__(self):
        return (
            f"VcspInstance(vars={len(self.variables)}, d={self.domain.size}, "
            f"constraints={len(self.constraints)})"
        )


def _constraint_key(c):
    scope, rel = c
    return (scope, rel.arity, sorted(rel.table.items()))


@dataclass(frozen=True)
class SolveResult:
    status: str  # "Solved" or "Infeasible"
    optimal_cost: Fraction | None
    witnesses: tuple = ()

    @property
    def solved(self):
        return self.status == "Solved"


def cost(instance, assignment):
    """Total cost of a total assignment, or None if any term is infeasible."""
    for v in instance.variables:
        if v not in assignment:
            raise InputError(f"assignment misses variable {v!r}")
    total = Fraction(0)
    for scope, rel in instance.constraints:
        w = rel.table.get(tuple(assignment[v] for v in scope))
        if w is None:
            return None
        total += w
    return total


def _check_enumeration_cap(instance, caps):
    count = instance.domain.size ** len(instance.variables)
    if count > caps.max_assignments:
        raise ResourceLimitError(
            f"{count} assignments exceed max_assignments cap ({caps.max_assignments})"
        )
    return count


def _assignments(instance):
    names = instance.variables
    for values in instance.domain.tuples(len(names)):
        yield dict(zip(names, values))


def solve_bruteforce(instance, caps: Caps = DEFAULT_CAPS):
    """Exact optimum by exhaustive enumeration in lexicographic order."""
    _check_enumeration_cap(instance, caps)
    best = None
    witnesses = []
    for s in _assignments(instance):
        c = cost(instance, s)
        if c is None:
            continue
        if best is None or c < best:
            best = c
            witnesses = [dict(s)]
        elif c == best and len(witnesses) < caps.max_witnesses:
            witnesses.append(dict(s))
    if best is None:
        return SolveResult("Infeasible", None)
    return SolveResult("Solved", best, tuple(witnesses))


def project(instance, onto, caps: Caps = DEFAULT_CAPS):
    """Weighted relation of the minimum cost over assignments agreeing on onto.

    Undefined where no feasible agreeing assignment exists; the minimum
    over an empty set is undefined.
    """
    onto = tuple(onto)
    varset = set(instance.variables)
    for v in onto:
        if v not in varset:
            raise InputError(f"unknown projection variable {v!r}")
    _check_enumeration_cap(instance, caps)
    table = {}
    for s in _assignments(instance):
        c = cost(instance, s)
        if c is None:
            continue
        key = tuple(s[v] for v in onto)
        cur = table.get(key)
        if cur is None or c < cur:
            table[key] = c
    return WeightedRelation(instance.domain, len(onto), table)


def substitute_gadgets(instance, gadgets):
    """Replace each gadgeted constraint by a fresh copy of its gadget.

    gadgets maps a weighted relation to (gadget instance, interface variable
    list); interface variables are identified with the constraint scope and
    every other gadget variable becomes a fresh auxiliary named
    g<constraint-index>_<gadget-variable>.
    """
    variables = list(instance.variables)
    constraints = []
    for idx, (scope, rel) in enumerate(instance.constraints):
        entry = gadgets.get(rel)
        if entry is None:
            constraints.append((scope, rel))
            continue
        gadget, interface = entry
        interface = tuple(interface)
        if len(interface) != rel.arity:
            raise InputError(
                f"gadget interface arity {len(interface)} != constraint arity {rel.arity}"
            )
        if gadget.domain != instance.domain:
            raise InputError("gadget domain differs from instance domain")
        rename = {}
        for pos, gv in enumerate(interface):
            target = scope[pos]
            if gv in rename and rename[gv] != target:
                raise InputError(
                    f"gadget variable {gv!r} bound to two different scope variables"
                )
            rename[gv] = target
        for gv in gadget.variables:
            if gv not in rename:
                fresh = f"g{idx}_{gv}"
                rename[gv] = fresh
                variables.append(fresh)
        for gscope, grel in gadget.constraints:
            constraints.append((tuple(rename[v] for v in gscope), grel))
    return VcspInstance(variables, instance.domain, constraints)


@dataclass(frozen=True)
class ScaleReductionReport:
    replication: dict = field(default_factory=dict)  # constraint index -> copies
    zero_alpha_factor: int = 1


def scale_reduction(instance, provenance):
    """Rewrite scaled-and-shifted constraints back to their source relations.

    Every relation used by the instance must appear in provenance as
    (source, alpha, beta) with alpha >= 0.  Positive alpha = p/q turns the
    constraint into p copies of the source while all other constraints are
    replicated q times, multiplicatively across constraints.  The zero-alpha
    constraints each become one source copy and all remaining constraints
    are replicated ceil(M*k/m + 1) times, with M the maximum weight over
    the used relations and m the minimum positive gap between distinct
    weights.  The set of minimal-cost assignments is preserved exactly.
    """
    used = []
    for scope, rel in instance.constraints:
        if rel not in provenance:
            raise InputError("provenance missing for a used relation")
        source, alpha, beta = provenance[rel]
        alpha = Fraction(alpha)
        beta = Fraction(beta)
        if alpha < 0:
            raise InputError(f"alpha must be non-negative, got {alpha}")
        if rel != wr_scale_shift(source, alpha, beta):
            raise InputError("provenance does not reproduce the used relation")
        used.append((scope, source, alpha))

    # multiplicity[i] = copies of the rewritten constraint i in the output
    n = len(used)
    multiplicity = [1] * n
    for i, (_, _, alpha) in enumerate(used):
        if alpha == 0:
            continue
        p, q = alpha.numerator, alpha.denominator
        multiplicity[i] *= p
        if q != 1:
            for j in range(n):
                if j != i:
                    multiplicity[j] *= q

    zero_set = {i for i, (_, _, a) in enumerate(used) if a == 0}
    factor = 1
    if zero_set and len(zero_set) < n:
        # Replicate the positively scaled part until any cost difference in
        # it outweighs the zero-scale sources entirely.  Distinct costs of
        # the replicated part are multiples of one over the least common
        # denominator of its (already multiplied) weights; the zero-scale
        # part can shift costs by at most the sum of its weight ranges.
        denoms = [
            (multiplicity[i] * w).denominator
            for i, (_, source, _) in enumerate(used)
            if i not in zero_set
            for w in source.table.values()
        ]
        gap = Fraction(1, math.lcm(*denoms)) if denoms else Fraction(1)
        spread = Fraction(0)
        for i in zero_set:
            values = used[i][1].table.values()
            spread += max(values) - min(values)
        factor = max(1, math.ceil(spread / gap) + 1)
        for j in range(n):
            if j not in zero_set:
                multiplicity[j] *= factor

    constraints = []
    report = {}
    for i, (scope, source, _) in enumerate(used):
        report[i] = multiplicity[i]
        constraints.extend([(scope, source)] * multiplicity[i])
    out = VcspInstance(instance.variables, instance.domain, constraints)
    return out, ScaleReductionReport(report, factor)


def _cut_relation(domain, equal_is_cheap):
    table = {
        (x, y): Fraction(0 if (x == y) == equal_is_cheap else 1)
        for x in domain.elements()
        for y in domain.elements()
    }
    return WeightedRelation(domain, 2, table)


def encode_mincut(edges, n):
    """Boolean instance charging 1 per edge whose endpoints differ."""
    domain = Domain(2)
    rel = _cut_relation(domain, equal_is_cheap=True)
    return _edge_instance(edges, n, domain, rel)


def encode_maxcut(edges, n):
    """Boolean instance charging 1 per edge whose endpoints agree."""
    domain = Domain(2)
    rel = _cut_relation(domain, equal_is_cheap=False)
    return _edge_instance(edges, n, domain, rel)


def _edge_instance(edges, n, domain, rel):
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
    variables = [f"x{i}" for i in range(n)]
    constraints = [((f"x{u}", f"x{v}"), rel) for u, v in edges]
    return VcspInstance(variables, domain, constraints)


def encode_digraph_mch(g_edges, h_edges, h_size, costs):
    """Minimum-cost homomorphism instance: map G-vertices into H.

    One crisp edge constraint per G-edge (defined with weight 0 exactly on
    H-edges) and one unary cost constraint per G-vertex.
    """
    domain = Domain(h_size)
    for u, v in h_edges:
        if not (0 <= u < h_size and 0 <= v < h_size):
            raise InputError(f"H-edge ({u}, {v}) outside range 0..{h_size - 1}")
    g_vertices = sorted({u for e in g_edges for u in e} | {u for u, _ in costs})
    for u, v in g_edges:
        if u not in g_vertices or v not in g_vertices:
            raise InputError("G-edge endpoint missing from cost map")
    edge_rel = WeightedRelation(
        domain, 2, {(u, v): Fraction(0) for u, v in set(h_edges)}
    )
    variables = [f"u{u}" for u in g_vertices]
    constraints = [((f"u{u}", f"u{v}"), edge_rel) for u, v in g_edges]
    for u in g_vertices:
        table = {}
        for v in domain.elements():
            if (u, v) not in costs:
                raise InputError(f"cost map misses ({u}, {v})")
            table[(v,)] = Fraction(costs[(u, v)])
        constraints.append(((f"u{u}",), WeightedRelation(domain, 1, table)))
    return VcspInstance(variables, domain, constraints)
