"""Boolean classifier and positive-weighting structure reports."""

from fractions import Fraction

import pytest

from wvcsp import (
    Domain,
    InputError,
    WeightedRelation,
    Weighting,
    all_projections,
    canonical_weighting,
    classify_boolean,
    jd_weighting_span_check,
    positive_weighting_report,
)
from wvcsp.classify import INVERSION_ONLY, NO_POSITIVE_WEIGHTING
from wvcsp.weightings import improves_all

D2 = Domain(2)


def test_equality_language_is_tractable(r_eq):
    verdict = classify_boolean([r_eq])
    assert verdict.tractable
    assert verdict.witness == canonical_weighting("MinMaxEqual")
    assert improves_all(verdict.witness, [r_eq])
    assert verdict.type_report["MinOnly"] is False
    assert verdict.type_report["Inversion"] is True


def test_disequality_language_is_np_hard(r_ne):
    verdict = classify_boolean([r_ne])
    assert not verdict.tractable
    assert verdict.np_hard_reason == INVERSION_ONLY
    assert verdict.type_report == {
        tag: tag == "Inversion" for tag in verdict.type_report
    }


def test_joint_language_is_np_hard(r_eq, r_ne):
    verdict = classify_boolean([r_eq, r_ne])
    assert not verdict.tractable
    assert verdict.np_hard_reason == INVERSION_ONLY


def test_no_positive_weighting_regime():
    # a relation improved by no canonical weighting, inversion included
    rel = WeightedRelation(D2, 2, {(0, 0): 2, (0, 1): 0, (1, 0): 1, (1, 1): 2})
    verdict = classify_boolean([rel])
    assert not verdict.tractable
    assert verdict.np_hard_reason == NO_POSITIVE_WEIGHTING


def test_empty_language_is_tractable():
    verdict = classify_boolean([])
    assert verdict.tractable
    assert all(verdict.type_report.values())


def test_classifier_rejects_larger_domains():
    d3 = Domain(3)
    rel = WeightedRelation(d3, 1, {(0,): 0, (1,): 0, (2,): 0})
    with pytest.raises(InputError):
        classify_boolean([rel])


def test_monotone_toward_hardness(r_eq, r_ne):
    small = classify_boolean([r_eq])
    large = classify_boolean([r_eq, r_ne])
    assert small.tractable or not large.tractable


def test_positive_report_unary(r_ne):
    report = positive_weighting_report([r_ne], 1)
    assert report is not None and report.arity == 1
    assert report.counts()["UnaryNonProjection"] >= 1


def test_positive_report_records_search_cap(r_eq):
    report = positive_weighting_report([r_eq], 2)
    assert report is not None
    assert report.searched_cap == 2
    assert improves_all(report.weighting, [r_eq])


def test_positive_report_absent():
    rel = WeightedRelation(D2, 2, {(0, 0): 2, (0, 1): 0, (1, 0): 1, (1, 1): 2})
    assert positive_weighting_report([rel], 2) is None


def test_span_check():
    e = all_projections(D2, 2)
    nonzero = Weighting(D2, 2, {e[0]: Fraction(-1), e[1]: Fraction(1)})
    assert jd_weighting_span_check(D2, 2, nonzero)
    zero = Weighting(D2, 2, {e[0]: Fraction(0)})
    assert not jd_weighting_span_check(D2, 2, zero)
    e3 = all_projections(D2, 3)
    skew = Weighting(D2, 3, {e3[0]: -1, e3[1]: -1, e3[2]: 2})
    assert jd_weighting_span_check(D2, 3, skew)
    with pytest.raises(InputError):
        jd_weighting_span_check(D2, 2, canonical_weighting("MinMaxEqual"))
