"""Weightings of clone slices and the superposition calculus.

A k-ary weighting assigns exact rationals to an explicit finite support of
k-ary operations containing the k projections; the weights sum to zero and
are negative only on projections.  A raw weighting drops the sign
condition: it is what superposition produces before the properness check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import Caps, DEFAULT_CAPS, InputError, ResourceLimitError
from .operations import (
    Operation,
    all_projections,
    apply_to_tuples,
    boolean_constant,
    boolean_inversion,
    boolean_majority,
    boolean_minority,
    clone_generate,
    max_operation,
    min_operation,
    projection,
    superpose,
)
from .polymorphisms import is_polymorphism, pol_k


class RawWeighting:
    """Sum-zero rational map on a set of same-arity operations."""

    __slots__ = ("domain", "arity", "weights", "_hash")

    def __init__(self, domain, arity, weights, slices=None):
        wmap = {}
        for f, w in weights.items():
            if not isinstance(f, Operation):
                raise InputError("weighting keys must be operations")
            if f.domain != domain:
                raise InputError("support operation on the wrong domain")
            if f.arity != arity:
                raise InputError(
                    f"support operation arity {f.arity}, weighting arity {arity}"
                )
            wmap[f] = Fraction(w)
        for e in all_projections(domain, arity):
            wmap.setdefault(e, Fraction(0))
        if sum(wmap.values()) != 0:
            raise InputError("weights must sum to zero")
        if slices is not None:
            for f in wmap:
                if not slices.contains(f):
                    raise InputError("support operation outside the supplied clone")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "weights", wmap)
        object.__setattr__(self, "_hash", None)
        self._check_signs()

    def _check_signs(self):
        pass

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def support(self):
        """The declared operations, in canonical table order."""
        return sorted(self.weights)

    def weight(self, f):
        return self.weights.get(f, Fraction(0))

    def improper_operations(self):
        """Non-projections carrying negative weight, in canonical order."""
        return sorted(
            f for f, w in self.weights.items() if w < 0 and not f.is_projection()
        )

    def __eq__(self, other):
        if not isinstance(other, RawWeighting):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.arity == other.arity
            and self.weights == other.weights
        )

    def __hash__(self):
        if self._hash is None:
            h = hash((self.domain, self.arity, frozenset(self.weights.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        nz = sum(1 for w in self.weights.values() if w)
        return (
            f"{type(self).__name__}(d={self.domain.size}, k={self.arity}, "
            f"support={len(self.weights)}, nonzero={nz})"
        )


class Weighting(RawWeighting):
    """A raw weighting whose negative weights sit only on projections."""

    __slots__ = ()

    def _check_signs(self):
        bad = self.improper_operations()
        if bad:
            raise InputError(
                f"negative weight on non-projection {bad[0]!r}"
            )


def zero_weighting(domain, arity, support=()):
    """The all-zero weighting on the projections plus the given operations."""
    return Weighting(domain, arity, {f: Fraction(0) for f in support})


def wt_scale(omega, c):
    """Pointwise scale by a non-negative rational."""
    c = Fraction(c)
    if c < 0:
        raise InputError(f"scale factor must be non-negative, got {c}")
    return Weighting(
        omega.domain, omega.arity, {f: c * w for f, w in omega.weights.items()}
    )


def wt_add(omega1, omega2):
    """Pointwise sum of two weightings on the same support."""
    if omega1.domain != omega2.domain or omega1.arity != omega2.arity:
        raise InputError("weightings must share domain and arity")
    if set(omega1.weights) != set(omega2.weights):
        raise InputError("weightings must share one support")
    return Weighting(
        omega1.domain,
        omega1.arity,
        {f: w + omega2.weights[f] for f, w in omega1.weights.items()},
    )


def wt_superpose(omega, gs, slices):
    """Superposition by a list of equal-arity inner operations.

    The result weighs each operation of the target slice by the total
    weight of the support operations composing onto it; the weight sum is
    preserved, but properness is not guaranteed.
    """
    gs = list(gs)
    if len(gs) != omega.arity:
        raise InputError(
            f"superposition needs {omega.arity} inner operations, got {len(gs)}"
        )
    if not gs:
        raise InputError("superposition needs at least one inner operation")
    ell = gs[0].arity
    for g in gs:
        if not slices.contains(g):
            raise InputError("inner operation outside the clone")
        if g.arity != ell:
            raise InputError("inner operations must share one arity")
    for f in omega.weights:
        if not slices.contains(f):
            raise InputError("weighting support outside the clone")
    out = {f: Fraction(0) for f in slices.slice(ell)}
    for f, w in omega.weights.items():
        h = superpose(f, gs)
        if h not in out:
            raise InputError("superposition left the supplied clone slices")
        out[h] += w
    return RawWeighting(omega.domain, ell, out)


def is_proper(raw):
    """The same data as a Weighting when the sign condition holds, else None."""
    if raw.improper_operations():
        return None
    return Weighting(raw.domain, raw.arity, dict(raw.weights))


@dataclass(frozen=True)
class WpolCheck:
    """Outcome of a weighted-polymorphism test, with a counterexample."""

    holds: bool
    witness: tuple = None  # violating k-sequence of tuples, if any
    violation: Fraction = None  # the positive left-hand side, if numeric
    bad_operation: Operation = None  # support operation that is no polymorphism

    def __bool__(self):
        return self.holds


def is_weighted_polymorphism(omega, rel, caps: Caps = DEFAULT_CAPS):
    """Does the weighting improve the relation?

    Holds iff every support operation is a polymorphism and, for every
    sequence x_1..x_k of defined tuples, sum_f omega(f) * rel(f(x_1..x_k))
    is at most zero.  On failure the violating sequence is reported; when
    some image tuple is infeasible the violation has no finite value.
    """
    if omega.domain != rel.domain:
        raise InputError("weighting and relation must share a domain")
    defined = rel.defined_tuples()
    count = len(defined) ** omega.arity
    if count > caps.max_sequences:
        raise ResourceLimitError(
            f"{count} tuple sequences exceed max_sequences cap ({caps.max_sequences})"
        )
    for xs in itertools.product(defined, repeat=omega.arity):
        total = Fraction(0)
        for f, w in omega.weights.items():
            if w == 0:
                continue
            img = rel.table.get(apply_to_tuples(f, xs))
            if img is None:
                if w > 0:
                    # positive weight on an infeasible image: unbounded violation
                    bad = f if not is_polymorphism(f, rel, caps) else None
                    return WpolCheck(False, witness=xs, bad_operation=bad)
                continue
            total += w * img
        if total > 0:
            return WpolCheck(False, witness=xs, violation=total)
    for f in omega.weights:
        if not is_polymorphism(f, rel, caps):
            return WpolCheck(False, bad_operation=f)
    return WpolCheck(True)


def improves_all(omega, relations, caps: Caps = DEFAULT_CAPS):
    """True iff the weighting is a weighted polymorphism of every relation."""
    return all(is_weighted_polymorphism(omega, rel, caps).holds for rel in relations)


def zero_extend(weightings, arity_cap, caps: Caps = DEFAULT_CAPS, domain=None):
    """Re-express weightings over the capped clone generated by all supports.

    Returns the generated slices and the weightings extended with zero
    weight on every new operation.
    """
    weightings = list(weightings)
    if domain is None:
        if not weightings:
            raise InputError("zero_extend with no weightings needs a domain")
        domain = weightings[0].domain
    generators = []
    seen = set()
    for omega in weightings:
        if omega.domain != domain:
            raise InputError("weightings must share a domain")
        if omega.arity > arity_cap:
            raise InputError(
                f"weighting arity {omega.arity} exceeds cap {arity_cap}"
            )
        for f in omega.support():
            if f not in seen:
                seen.add(f)
                generators.append(f)
    slices = clone_generate(generators, arity_cap, caps, domain=domain)
    extended = []
    for omega in weightings:
        table = {f: Fraction(0) for f in slices.slice(omega.arity)}
        table.update(omega.weights)
        extended.append(Weighting(domain, omega.arity, table))
    return slices, extended


def find_positive_wpol(relations, k, caps: Caps = DEFAULT_CAPS, domain=None):
    """A k-ary weighted polymorphism of every relation with positive total
    weight on non-projections, or None.

    Searches by exact linear programming over the support pol_k: maximize
    the non-projection mass subject to sum-zero, the sign condition, every
    improvement inequality, and a normalization bounding the projection
    mass; a weighting exists iff the optimum is positive.
    """
    from . import exactlp

    relations = list(relations)
    if domain is None:
        if not relations:
            raise InputError("find_positive_wpol with no relations needs a domain")
        domain = relations[0].domain
    support = sorted(pol_k(relations, k, caps, domain=domain))
    projs = [f for f in support if f.is_projection()]
    nonprojs = [f for f in support if not f.is_projection()]
    # variables: x_f >= 0 per non-projection, then pos_e, neg_e per projection
    # with omega(e) = pos_e - neg_e
    nv = len(nonprojs) + 2 * len(projs)

    def row_from(coeff):
        # coeff maps operation -> rational coefficient of omega(op)
        out = [Fraction(0)] * nv
        for i, f in enumerate(nonprojs):
            out[i] = Fraction(coeff.get(f, 0))
        base = len(nonprojs)
        for i, e in enumerate(projs):
            c = Fraction(coeff.get(e, 0))
            out[base + 2 * i] = c
            out[base + 2 * i + 1] = -c
        return out

    rows = [(row_from({f: 1 for f in support}), Fraction(0), exactlp.EQ)]
    total_rows = 1
    for rel in relations:
        defined = rel.defined_tuples()
        for xs in itertools.product(defined, repeat=k):
            coeff = {}
            for f in support:
                w = rel.table[apply_to_tuples(f, xs)]
                if w:
                    coeff[f] = coeff.get(f, Fraction(0)) + w
            # improvement says sum <= 0, i.e. -sum >= 0
            rows.append(
                (row_from({f: -c for f, c in coeff.items()}), Fraction(0), exactlp.GEQ)
            )
            total_rows += 1
            if total_rows > caps.max_lp_rows:
                raise ResourceLimitError(
                    f"improvement rows exceed max_lp_rows cap ({caps.max_lp_rows})"
                )
    # normalization: sum_e (-omega(e)) <= 1, i.e. sum_e omega(e) >= -1
    rows.append((row_from({e: 1 for e in projs}), Fraction(-1), exactlp.GEQ))
    sys = exactlp.LinearSystem.build(nv, rows)
    objective = [Fraction(1)] * len(nonprojs) + [Fraction(0)] * (2 * len(projs))
    out = exactlp.maximize(sys, objective, caps)
    if isinstance(out, exactlp.Certificate):
        return None
    value = sum(out.x[: len(nonprojs)], Fraction(0))
    if value <= 0:
        return None
    table = {}
    for i, f in enumerate(nonprojs):
        table[f] = out.x[i]
    base = len(nonprojs)
    for i, e in enumerate(projs):
        table[e] = out.x[base + 2 * i] - out.x[base + 2 * i + 1]
    return Weighting(domain, k, table)


CANONICAL_TAGS = (
    "Const0",
    "Const1",
    "Inversion",
    "MinOnly",
    "MaxOnly",
    "MinMaxEqual",
    "MajorityOnly",
    "MinorityOnly",
    "MajMin21",
)


def canonical_weighting(tag):
    """The named Boolean weighting on its minimal support."""
    one = Fraction(1)
    if tag in ("Const0", "Const1", "Inversion"):
        op = {
            "Const0": boolean_constant(0),
            "Const1": boolean_constant(1),
            "Inversion": boolean_inversion(),
        }[tag]
        e1 = projection(op.domain, 1, 1)
        return Weighting(op.domain, 1, {e1: -one, op: one})
    if tag in ("MinOnly", "MaxOnly", "MinMaxEqual"):
        mn, mx = min_operation, max_operation
        d = mn(_bool_domain()).domain
        e1, e2 = all_projections(d, 2)
        if tag == "MinOnly":
            return Weighting(d, 2, {e1: -one, e2: -one, mn(d): 2 * one})
        if tag == "MaxOnly":
            return Weighting(d, 2, {e1: -one, e2: -one, mx(d): 2 * one})
        return Weighting(
            d, 2, {e1: -one, e2: -one, mn(d): one, mx(d): one}
        )
    if tag in ("MajorityOnly", "MinorityOnly", "MajMin21"):
        mj, mi = boolean_majority(), boolean_minority()
        d = mj.domain
        e1, e2, e3 = all_projections(d, 3)
        if tag == "MajorityOnly":
            return Weighting(d, 3, {e1: -one, e2: -one, e3: -one, mj: 3 * one})
        if tag == "MinorityOnly":
            return Weighting(d, 3, {e1: -one, e2: -one, e3: -one, mi: 3 * one})
        return Weighting(
            d, 3, {e1: -one, e2: -one, e3: -one, mj: 2 * one, mi: one}
        )
    raise InputError(f"unknown canonical weighting tag {tag!r}")


def _bool_domain():
    from .core import Domain

    return Domain(2)


def omega_sub():
    """The equal-weight min/max weighting defining submodularity."""
    return canonical_weighting("MinMaxEqual")
