"""Polymorphism testing and bounded enumeration."""

import pytest

from wvcsp import (
    Domain,
    InputError,
    WeightedRelation,
    inv_check,
    is_polymorphism,
    pol_k,
    weighted_equality,
)
from wvcsp.operations import (
    boolean_constant,
    boolean_inversion,
    max_operation,
    min_operation,
)

D2 = Domain(2)


def test_total_relation_admits_every_operation(r_ne):
    assert is_polymorphism(min_operation(D2), r_ne)
    assert is_polymorphism(boolean_constant(0), r_ne)
    assert len(pol_k([r_ne], 2)) == 16


def test_crisp_disequality_polymorphisms():
    # defined only off-diagonal: preserved by inversion, broken by constants
    crisp_ne = WeightedRelation(D2, 2, {(0, 1): 0, (1, 0): 0})
    assert is_polymorphism(boolean_inversion(), crisp_ne)
    assert not is_polymorphism(boolean_constant(0), crisp_ne)
    assert not is_polymorphism(min_operation(D2), crisp_ne)
    unary = pol_k([crisp_ne], 1)
    assert {f.table for f in unary} == {(0, 1), (1, 0)}


def test_pol_of_crisp_equality_is_everything():
    # applying any operation across diagonal tuples lands on the diagonal
    eq = weighted_equality(D2)
    assert len(pol_k([eq], 2)) == 16


def test_pol_of_order_relation_is_monotone():
    # feasibility set {(0,0),(0,1),(1,1)} is the Boolean order
    leq = WeightedRelation(D2, 2, {(0, 0): 0, (0, 1): 0, (1, 1): 0})
    ops = pol_k([leq], 2)
    assert len(ops) == 6
    assert min_operation(D2) in ops and max_operation(D2) in ops
    assert boolean_inversion() not in {f for f in ops}


def test_pol_needs_domain_for_empty_language():
    with pytest.raises(InputError):
        pol_k([], 1)
    assert len(pol_k([], 1, domain=D2)) == 4


def test_inv_check(r_eq):
    assert inv_check([min_operation(D2), max_operation(D2)], r_eq)


def test_weights_are_ignored(bool_domain):
    cheap = WeightedRelation(bool_domain, 1, {(0,): 0, (1,): 1000})
    assert is_polymorphism(boolean_constant(1), cheap)
