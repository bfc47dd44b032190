"""Constructive membership deciders for the two closure systems.

wrelclone_member decides whether a weighted relation lies in the weighted
relational clone of a finite language and returns either an expressing
gadget (a VCSP instance plus interface variables and a constant shift) or
a separating weighting.  wclone_member decides whether a weighting lies in
the weighted clone of a finite weighting set and returns either a
combination recipe or a separating weighted relation.  Every answer is
re-verified before it is returned; a run that cannot verify its own answer
raises an internal error instead of reporting it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exactlp
from .core import WeightedRelation, wr_feasibility, wr_scale_shift
from .errors import (
    Caps,
    DEFAULT_CAPS,
    InputError,
    InternalCheckError,
    ResourceLimitError,
)
from .operations import all_projections
from .polymorphisms import pol_k
from .vcsp import VcspInstance, project
from .weightings import (
    CANONICAL_TAGS,
    Weighting,
    canonical_weighting,
    improves_all,
    is_weighted_polymorphism,
    wt_superpose,
    zero_extend,
)


@dataclass(frozen=True)
class KMatch:
    """A k-row matrix of defined tuples of one language relation.

    Columns are read as elements of D^k: they name variables of the
    canonical gadget instance.
    """

    gamma: WeightedRelation
    rows: tuple  # k tuples, each a defined tuple of gamma

    def columns(self):
        return tuple(zip(*self.rows)) if self.rows else ()


@dataclass(frozen=True)
class RelMembershipResult:
    member: bool
    gadget: VcspInstance = None
    interface: tuple = None
    shift: Fraction = None
    provenance: dict = None  # gadget relation -> (source, alpha, beta)
    separator: Weighting = None


@dataclass(frozen=True)
class CloneMembershipResult:
    member: bool
    recipe: tuple = None  # (source weighting, operation list, coefficient)
    separator: WeightedRelation = None


def _var_name(column):
    return "v" + "".join(str(c) for c in column)


def _image_key(f, col_ranks):
    table = f.table
    return tuple(table[r] for r in col_ranks)


def _match_col_ranks(domain, rows, width):
    return tuple(
        domain.tuple_rank(tuple(row[j] for row in rows)) for j in range(width)
    )


def _library_separator(relations, target, extra, caps):
    """A known weighting improving all of the language but not the target."""
    candidates = list(extra or ())
    if target.domain.size == 2:
        candidates.extend(canonical_weighting(tag) for tag in CANONICAL_TAGS)
    for omega in candidates:
        try:
            if improves_all(omega, relations, caps) and not is_weighted_polymorphism(
                omega, target, caps
            ):
                return omega
        except ResourceLimitError:
            continue
    return None


def wrelclone_member(relations, target, caps: Caps = DEFAULT_CAPS, library=None):
    """Decide membership of a weighted relation in a weighted relational clone.

    Member answers carry a gadget over the variable set D^k whose
    projection onto the interface equals the target plus the reported
    shift; non-member answers carry a weighting that improves every
    language relation and fails on the target.
    """
    relations = sorted(set(relations), key=_rel_key)
    domain = target.domain
    for rel in relations:
        if rel.domain != domain:
            raise InputError("language and target must share a domain")
    defined = target.defined_tuples()
    k = len(defined)
    if k == 0:
        raise InputError("target relation is defined nowhere")

    support = sorted(pol_k(relations, k, caps, domain=domain))
    target_ranks = _match_col_ranks(domain, defined, target.arity)

    # (i) invariance rejection: some polymorphism leaves the target's
    # feasible set.  The zero weighting on this support then separates.
    invariant = all(_image_key(f, target_ranks) in target.table for f in support)
    if not invariant:
        separator = _library_separator(relations, target, library, caps)
        if separator is None:
            separator = Weighting(domain, k, {f: Fraction(0) for f in support})
        return _verified_nonmember(relations, target, separator, caps)

    # (ii) fast separator path
    separator = _library_separator(relations, target, library, caps)
    if separator is not None:
        return _verified_nonmember(relations, target, separator, caps)

    # (iii) the full linear program over all k-matches
    matches = []
    for gamma in relations:
        rows_pool = gamma.defined_tuples()
        count = len(rows_pool) ** k
        if len(matches) + count > caps.max_matches:
            raise ResourceLimitError(
                f"{len(matches) + count} k-matches exceed max_matches cap "
                f"({caps.max_matches})"
            )
        for rows in itertools.product(rows_pool, repeat=k):
            matches.append(KMatch(gamma, rows))
    match_ranks = [
        _match_col_ranks(domain, m.rows, m.gamma.arity) for m in matches
    ]

    def coeff_row(f):
        return [
            m.gamma.table[_image_key(f, match_ranks[i])]
            for i, m in enumerate(matches)
        ]

    def rhs_of(f):
        return target.table[_image_key(f, target_ranks)]

    projections = all_projections(domain, k)
    active = [f for f in support if f.is_projection()]
    active_set = set(active)
    outcome = None
    while True:
        rows = []
        for f in active:
            kind = exactlp.EQ if f.is_projection() else exactlp.GEQ
            rows.append((coeff_row(f), rhs_of(f), kind))
        if len(rows) > caps.max_lp_rows:
            raise ResourceLimitError(
                f"{len(rows)} generated rows exceed max_lp_rows cap "
                f"({caps.max_lp_rows})"
            )
        sys = exactlp.LinearSystem.build(len(matches), rows, with_free_constant=True)
        outcome = exactlp.solve_farkas(sys, caps)
        if isinstance(outcome, exactlp.Certificate):
            # a certificate on a row subset extends by zeros to the full system
            table = dict(zip(active, (Fraction(y) for y in outcome.y)))
            separator = Weighting(domain, k, table)
            return _verified_nonmember(relations, target, separator, caps)
        # check the remaining inequality rows against the subset solution
        nonzero = [
            (x, match_ranks[i], matches[i].gamma.table)
            for i, x in enumerate(outcome.x)
            if x != 0
        ]
        shift = outcome.constant
        violated = []
        for f in support:
            if f in active_set:
                continue
            lhs = sum(
                (x * table[_image_key(f, ranks)] for x, ranks, table in nonzero),
                Fraction(0),
            )
            if lhs < rhs_of(f) + shift:
                violated.append(f)
                if len(violated) >= 50:
                    break
        if not violated:
            break
        active.extend(violated)
        active_set.update(violated)

    # assemble and verify the gadget
    shift = outcome.constant
    variables = [_var_name(col) for col in domain.tuples(k)]
    constraints = []
    provenance = {}
    for i, m in enumerate(matches):
        x = outcome.x[i]
        if x == 0:
            continue
        scope = tuple(_var_name(col) for col in m.columns())
        scaled = wr_scale_shift(m.gamma, x, 0)
        constraints.append((scope, scaled))
        provenance[scaled] = (m.gamma, x, Fraction(0))
    # crisp feasibility constraints pin the gadget's feasible assignments to
    # the polymorphisms; total relations constrain nothing and are skipped
    crisp_seen = set()
    for gamma in relations:
        if gamma.is_total():
            continue
        crisp = wr_feasibility(gamma)
        provenance.setdefault(crisp, (gamma, Fraction(0), Fraction(0)))
        rows_pool = gamma.defined_tuples()
        for rows in itertools.product(rows_pool, repeat=k):
            scope = tuple(
                _var_name(tuple(row[j] for row in rows)) for j in range(gamma.arity)
            )
            if scope not in crisp_seen:
                crisp_seen.add(scope)
                constraints.append((scope, crisp))
    gadget = VcspInstance(variables, domain, constraints)
    interface = tuple(_var_name(col) for col in zip(*defined))
    reprojected = project(gadget, interface, caps)
    if reprojected != wr_scale_shift(target, 1, shift):
        raise InternalCheckError("member gadget does not re-project to the target")
    return RelMembershipResult(
        True,
        gadget=gadget,
        interface=interface,
        shift=shift,
        provenance=provenance,
    )


def _rel_key(rel):
    return (rel.arity, len(rel.table), sorted(rel.table.items()))


def _verified_nonmember(relations, target, separator, caps):
    if not improves_all(separator, relations, caps):
        raise InternalCheckError("separator fails to improve the language")
    if is_weighted_polymorphism(separator, target, caps):
        raise InternalCheckError("separator does not separate the target")
    return RelMembershipResult(False, separator=separator)


def wclone_member(weightings, target, caps: Caps = DEFAULT_CAPS):
    """Decide membership of a weighting in the weighted clone of a finite set.

    Member answers carry a recipe of non-negative coefficients and
    superpositions summing to the target; non-member answers carry a
    weighted relation of arity |D|^k improved by every set member but not
    by the target.
    """
    weightings = list(weightings)
    domain = target.domain
    for omega in weightings:
        if omega.domain != domain:
            raise InputError("weighting set and target must share a domain")
    k = target.arity
    cap = max([k] + [omega.arity for omega in weightings])
    slices, extended = zero_extend(weightings, cap, caps, domain=domain)
    k_slice = slices.sorted_slice(k)
    d_pow_k = domain.size**k

    bad_support = [
        f for f, w in target.weights.items() if w != 0 and not slices.contains(f)
    ]
    if bad_support:
        # the extra weight is necessarily positive, so the zero-valued
        # relation on the clone's operation tuples already separates
        separator = WeightedRelation(
            domain, d_pow_k, {f.table: Fraction(0) for f in k_slice}
        )
        return _verified_clone_nonmember(weightings, target, separator, caps)

    columns = []  # (source weighting, gs, weight vector over k_slice)
    total = 0
    for omega in extended:
        pools = itertools.product(k_slice, repeat=omega.arity)
        for gs in pools:
            total += 1
            if total > caps.max_matches:
                raise ResourceLimitError(
                    f"superposition columns exceed max_matches cap "
                    f"({caps.max_matches})"
                )
            sigma = wt_superpose(omega, list(gs), slices)
            columns.append((omega, gs, [sigma.weights[f] for f in k_slice]))

    rows = []
    for i, f in enumerate(k_slice):
        coeffs = [col[2][i] for col in columns]
        rows.append((coeffs, target.weight(f), exactlp.EQ))
    if len(rows) > caps.max_lp_rows:
        raise ResourceLimitError(
            f"{len(rows)} rows exceed max_lp_rows cap ({caps.max_lp_rows})"
        )
    sys = exactlp.LinearSystem.build(len(columns), rows)
    outcome = exactlp.solve_farkas(sys, caps)

    if isinstance(outcome, exactlp.Solution):
        recipe = tuple(
            (columns[i][0], columns[i][1], c)
            for i, c in enumerate(outcome.x)
            if c != 0
        )
        combined = {f: Fraction(0) for f in k_slice}
        for source, gs, c in recipe:
            sigma = wt_superpose(source, list(gs), slices)
            for f, w in sigma.weights.items():
                combined[f] += c * w
        if any(combined[f] != target.weight(f) for f in k_slice):
            raise InternalCheckError("recipe does not sum to the target weighting")
        return CloneMembershipResult(True, recipe=recipe)

    separator = WeightedRelation(
        domain,
        d_pow_k,
        {f.table: Fraction(y) for f, y in zip(k_slice, outcome.y)},
    )
    return _verified_clone_nonmember(weightings, target, separator, caps)


def _verified_clone_nonmember(weightings, target, separator, caps):
    for omega in weightings:
        if not is_weighted_polymorphism(omega, separator, caps):
            raise InternalCheckError("separator fails to improve the weighting set")
    if is_weighted_polymorphism(target, separator, caps):
        raise InternalCheckError("separator does not separate the target weighting")
    return CloneMembershipResult(False, separator=separator)


def lemma65_combine(c1, omega1, gs1, c2, omega2, gs2):
    """Fold two scaled superpositions into one superposition.

    Returns a weighting on arity k1+k2 and the concatenated inner list;
    superposing the returned weighting by the returned list equals
    c1*omega1[gs1] + c2*omega2[gs2] pointwise.
    """
    c1, c2 = Fraction(c1), Fraction(c2)
    if c1 < 0 or c2 < 0:
        raise InputError("combination coefficients must be non-negative")
    gs1, gs2 = list(gs1), list(gs2)
    if len(gs1) != omega1.arity or len(gs2) != omega2.arity:
        raise InputError("inner list lengths must match the weighting arities")
    if omega1.domain != omega2.domain:
        raise InputError("weightings must share a domain")
    inner = {g.arity for g in gs1} | {g.arity for g in gs2}
    if len(inner) != 1:
        raise InputError("all inner operations must share one arity")
    from .operations import superpose

    k1, k2 = omega1.arity, omega2.arity
    k = k1 + k2
    domain = omega1.domain
    es = all_projections(domain, k)
    table = {}
    for f, w in omega1.weights.items():
        h = superpose(f, es[:k1])
        table[h] = table.get(h, Fraction(0)) + c1 * w
    for f, w in omega2.weights.items():
        h = superpose(f, es[k1:])
        table[h] = table.get(h, Fraction(0)) + c2 * w
    return Weighting(domain, k, table), gs1 + gs2
