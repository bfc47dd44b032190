"""Exact tools for the algebra of valued constraint satisfaction.

Weighted relations and VCSP instances with exact rational weights, clones
of operations and their weightings, LP-backed membership deciders for the
two closure systems with constructive witnesses, and the complete Boolean
tractable/NP-hard classifier.
"""

from .core import (
    Domain,
    Rational,
    WeightedRelation,
    disequality_cost_relation,
    equality_cost_relation,
    weighted_equality,
    wr_add,
    wr_eval,
    wr_feasibility,
    wr_minimize,
    wr_scale_shift,
)
from .errors import Caps, DEFAULT_CAPS, InputError, InternalCheckError, ResourceLimitError
from .operations import (
    CloneSlices,
    Operation,
    all_projections,
    clone_generate,
    identify_arguments,
    is_sharp,
    projection,
    superpose,
)
from .polymorphisms import inv_check, is_polymorphism, pol_k
from .vcsp import (
    SolveResult,
    VcspInstance,
    cost,
    encode_digraph_mch,
    encode_maxcut,
    encode_mincut,
    project,
    scale_reduction,
    solve_bruteforce,
    substitute_gadgets,
)
from .weightings import (
    RawWeighting,
    Weighting,
    canonical_weighting,
    find_positive_wpol,
    is_proper,
    is_weighted_polymorphism,
    omega_sub,
    wt_add,
    wt_scale,
    wt_superpose,
    zero_extend,
)
from .membership import (
    CloneMembershipResult,
    KMatch,
    RelMembershipResult,
    lemma65_combine,
    wclone_member,
    wrelclone_member,
)
from .classify import (
    BooleanVerdict,
    SharpReport,
    classify_boolean,
    jd_weighting_span_check,
    positive_weighting_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
