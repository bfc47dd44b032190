"""Structural analysis of positive weightings and the Boolean dichotomy
classifier.

classify_boolean decides tractable versus NP-hard for a finite Boolean
language by testing the nine canonical weightings; positive_weighting_report
finds the least arity carrying a positive weighted polymorphism and
categorizes its positively weighted operations (unary non-projections, or
sharp: binary idempotent, majority, minority, Pixley, semiprojection).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Domain
from .errors import Caps, DEFAULT_CAPS, InputError, InternalCheckError
from .operations import (
    MAJORITY,
    MINORITY,
    PIXLEY,
    SEMIPROJECTION,
    classify_ternary_sharp,
    is_semiprojection,
    is_sharp,
    swierczkowski_check,
)
from .weightings import (
    CANONICAL_TAGS,
    Weighting,
    canonical_weighting,
    find_positive_wpol,
    improves_all,
)

TRACTABLE = "Tractable"
NP_HARD = "NPHard"
INVERSION_ONLY = "InversionOnly"
NO_POSITIVE_WEIGHTING = "NoPositiveWeighting"

# Witness search order over the eight tractable tags.  MinMaxEqual leads:
# several languages pass more than one check and the submodularity witness
# is the canonical answer for them.
_TRACTABLE_ORDER = (
    "MinMaxEqual",
    "Const0",
    "Const1",
    "MinOnly",
    "MaxOnly",
    "MajorityOnly",
    "MinorityOnly",
    "MajMin21",
)


@dataclass(frozen=True)
class BooleanVerdict:
    status: str
    witness: Weighting = None
    np_hard_reason: str = None
    type_report: dict = field(default_factory=dict)  # canonical tag -> bool

    @property
    def tractable(self):
        return self.status == TRACTABLE


def classify_boolean(relations, caps: Caps = DEFAULT_CAPS):
    """Complete tractable/NP-hard verdict for a finite Boolean language."""
    relations = list(relations)
    for rel in relations:
        if rel.domain != Domain(2):
            raise InputError("classification is defined on the Boolean domain")
    report = {
        tag: improves_all(canonical_weighting(tag), relations, caps)
        for tag in CANONICAL_TAGS
    }
    for tag in _TRACTABLE_ORDER:
        if report[tag]:
            return BooleanVerdict(TRACTABLE, canonical_weighting(tag), None, report)
    reason = INVERSION_ONLY if report["Inversion"] else NO_POSITIVE_WEIGHTING
    return BooleanVerdict(NP_HARD, None, reason, report)


UNARY_NON_PROJECTION = "UnaryNonProjection"
BINARY_IDEMPOTENT_NON_PROJECTION = "BinaryIdempotentNonProjection"

REPORT_CATEGORIES = (
    UNARY_NON_PROJECTION,
    BINARY_IDEMPOTENT_NON_PROJECTION,
    MAJORITY,
    MINORITY,
    PIXLEY,
    SEMIPROJECTION,
)


@dataclass(frozen=True)
class SharpReport:
    arity: int
    searched_cap: int
    weighting: Weighting
    categories: dict  # category name -> sorted operation list

    def counts(self):
        return {name: len(ops) for name, ops in self.categories.items()}


def _categorize(f, k):
    if k == 1:
        return UNARY_NON_PROJECTION
    if not is_sharp(f):
        raise InternalCheckError(
            "positively weighted non-projection at the minimal arity is not sharp"
        )
    if k == 2:
        return BINARY_IDEMPOTENT_NON_PROJECTION
    if k == 3:
        return classify_ternary_sharp(f)
    # arity >= 4: a sharp operation is a semiprojection
    if not swierczkowski_check(f) or not is_semiprojection(f):
        raise InternalCheckError("sharp operation of arity >= 4 is no semiprojection")
    return SEMIPROJECTION


def positive_weighting_report(relations, max_arity, caps: Caps = DEFAULT_CAPS,
                              domain=None):
    """Structure of the least-arity positive weighted polymorphism, or None.

    Searches arities 1..max_arity with the exact LP; at the least arity that
    admits a positive weighting, every positively weighted non-projection is
    provably a unary non-projection or sharp, and is categorized as such.
    """
    for k in range(1, max_arity + 1):
        omega = find_positive_wpol(relations, k, caps, domain=domain)
        if omega is None:
            continue
        categories = {name: [] for name in REPORT_CATEGORIES}
        for f, w in omega.weights.items():
            if w > 0 and not f.is_projection():
                categories[_categorize(f, k)].append(f)
        for name in categories:
            categories[name] = sorted(categories[name])
        return SharpReport(k, max_arity, omega, categories)
    return None


def jd_weighting_span_check(domain, k, omega):
    """Does the weighting generate all sum-zero weightings of the projections?

    The support must be exactly the k projections.  The generators are the
    superpositions sending every positive-weight projection to one argument
    and the rest to another; they span the sum-zero space exactly when the
    weighting is nonzero.
    """
    if omega.domain != domain or omega.arity != k:
        raise InputError("weighting does not match the given domain and arity")
    if any(not f.is_projection() for f in omega.weights):
        raise InputError("support must consist of projections only")
    weights = [omega.weight(f) for f in sorted(omega.weights)]
    positive_mass = sum((w for w in weights if w > 0), Fraction(0))
    if positive_mass == 0:
        return False
    # generators are positive_mass * (chi_a - chi_b) over ordered pairs;
    # check they span the (k-1)-dimensional sum-zero space
    vectors = []
    for a in range(k):
        for b in range(k):
            if a != b:
                v = [Fraction(0)] * k
                v[a] = positive_mass
                v[b] = -positive_mass
                vectors.append(v)
    return _rank(vectors) == k - 1


def _rank(vectors):
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [v / inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [v - f * p for v, p in zip(rows[i], rows[rank])]
        rank += 1
    return rank
