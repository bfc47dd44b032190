"""Membership deciders: witnesses on both branches, combination identity."""

from fractions import Fraction

import pytest

from wvcsp import (
    Domain,
    InputError,
    WeightedRelation,
    Weighting,
    all_projections,
    canonical_weighting,
    clone_generate,
    is_proper,
    is_weighted_polymorphism,
    lemma65_combine,
    project,
    wclone_member,
    wr_scale_shift,
    wrelclone_member,
    wt_superpose,
    zero_extend,
)
from wvcsp.operations import max_operation
from wvcsp.weightings import improves_all

D2 = Domain(2)


def test_wrelclone_identity(r_ne):
    res = wrelclone_member([r_ne], r_ne)
    assert res.member
    assert project(res.gadget, res.interface) == wr_scale_shift(r_ne, 1, res.shift)


def test_wrelclone_expresses_equality_from_disequality(r_eq, r_ne):
    res = wrelclone_member([r_ne], r_eq)
    assert res.member
    reproj = project(res.gadget, res.interface)
    assert reproj == wr_scale_shift(r_eq, 1, res.shift)


def test_wrelclone_separates_disequality_from_equality(r_eq, r_ne):
    res = wrelclone_member([r_eq], r_ne)
    assert not res.member
    sep = res.separator
    assert improves_all(sep, [r_eq])
    assert not is_weighted_polymorphism(sep, r_ne).holds


def test_wrelclone_invariance_rejection():
    # crisp diagonal cannot express the crisp off-diagonal relation
    crisp_eq = WeightedRelation(D2, 2, {(0, 0): 0, (1, 1): 0})
    crisp_ne = WeightedRelation(D2, 2, {(0, 1): 0, (1, 0): 0})
    res = wrelclone_member([crisp_eq], crisp_ne, library=[])
    assert not res.member
    assert improves_all(res.separator, [crisp_eq])
    assert not is_weighted_polymorphism(res.separator, crisp_ne).holds


def test_wrelclone_rejects_empty_target(r_eq):
    nowhere = WeightedRelation(D2, 2, {})
    with pytest.raises(InputError):
        wrelclone_member([r_eq], nowhere)


def test_wclone_identity(w_sub):
    res = wclone_member([w_sub], w_sub)
    assert res.member
    assert len(res.recipe) == 1
    source, gs, coeff = res.recipe[0]
    assert coeff == 1 and all(g.is_projection() for g in gs)


def test_wclone_superposed_weighting_is_member():
    e1, e2 = all_projections(D2, 2)
    mx = max_operation(D2)
    om = Weighting(D2, 2, {e1: Fraction(-1), e2: Fraction(1), mx: Fraction(0)})
    slices = clone_generate([mx], 2)
    target = is_proper(wt_superpose(om, [e2, mx], slices))
    res = wclone_member([om], target)
    assert res.member


def test_wclone_separates_min_only_from_submodularity(w_sub):
    res = wclone_member([w_sub], canonical_weighting("MinOnly"))
    assert not res.member
    sep = res.separator
    assert sep.arity == 4
    assert is_weighted_polymorphism(w_sub, sep).holds
    assert not is_weighted_polymorphism(canonical_weighting("MinOnly"), sep).holds


def test_wclone_scaled_member(w_sub):
    from wvcsp import wt_scale

    res = wclone_member([w_sub], wt_scale(w_sub, Fraction(7, 3)))
    assert res.member and res.recipe
    assert all(c > 0 for _, _, c in res.recipe)


def test_wclone_nonmember_target_outside_clone(w_sub):
    # inversion's support never enters the clone generated by min/max
    res = wclone_member([w_sub], canonical_weighting("Inversion"))
    assert not res.member
    assert is_weighted_polymorphism(w_sub, res.separator).holds
    assert not is_weighted_polymorphism(
        canonical_weighting("Inversion"), res.separator
    ).holds


def test_lemma65_combine_identity(w_sub):
    e1, e2 = all_projections(D2, 2)
    combined, gs = lemma65_combine(1, w_sub, [e1, e2], 1, w_sub, [e1, e2])
    assert combined.arity == 4 and gs == [e1, e2, e1, e2]
    slices, _ = zero_extend([w_sub], 4)
    back = wt_superpose(combined, gs, slices)
    for f in slices.slice(2):
        assert back.weights[f] == 2 * w_sub.weight(f)


def test_lemma65_combine_zero_coefficient(w_sub):
    e1, e2 = all_projections(D2, 2)
    combined, gs = lemma65_combine(1, w_sub, [e1, e2], 0, w_sub, [e2, e1])
    slices, _ = zero_extend([w_sub], 4)
    back = wt_superpose(combined, gs, slices)
    for f in slices.slice(2):
        assert back.weights[f] == w_sub.weight(f)
    with pytest.raises(InputError):
        lemma65_combine(-1, w_sub, [e1, e2], 0, w_sub, [e1, e2])
