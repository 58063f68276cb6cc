#!/usr/bin/env python3
"""
Tests for the claim verifier: limiting cases, Gram claims, bounds,
rank-14 exclusion and the full suite.
"""

import os
import random
import sys
import time
from dataclasses import replace
from fractions import Fraction

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.catalog import SystemId, identify
from core.cliff_weights import WeightConfig, WeightShape, build_weights
from core.rootsys import normalize
from core.verifier import (
    CASE_IDS, LimitCase, Status, exclude_r14, h_roots, limit_case, rank_bound_table, verify_all, verify_bounds,
    verify_gram, verify_limit_case,
)
from utils.config import Config
from utils.errors import IndefiniteFormError, MalformedInputError
from utils.exact_core import GramMatrix

F = Fraction

EXPECTED_NAMES = {'I': ('F4', 'B4'), 'II': ('E6', 'D5'), 'III': ('E7', 'A1+D6'), 'IV': ('E8', 'D8')}


def halfsign_config(form):
    units = [tuple(F(1) if k == i else F(0) for k in range(8)) for i in range(8)]
    return WeightConfig(WeightShape.IV, 8, form, units, [(F(0),) * 8])


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_limit_case_verified(case_id):
    report = verify_limit_case(case_id)
    assert report.status == Status.VERIFIED, report.failed_step
    final = report.steps[-1]
    assert final.detail['counts'] == list(Config.get_expected_counts(case_id))
    assert (final.detail['g'], final.detail['h']) == EXPECTED_NAMES[case_id]
    assert [s.name for s in report.steps] == ['a', 'b', 'c', 'admissible', 'd', 'e']


def test_limit_case_steps_are_deterministic():
    first = verify_limit_case('I').to_dict()
    second = verify_limit_case('I').to_dict()
    assert first == second
    assert any("h-completion assumed" in note for note in first['annotations'])


def test_case_two_is_normalized():
    report = verify_limit_case('II')
    assert report.steps[-1].detail['normalization_factors'] == ['1/2']
    assert any("{-1/4}" in note for note in report.annotations)


def test_perturbed_form_is_refuted():
    form = GramMatrix.diagonal([F(1, 7)] + [F(1, 8)] * 7)
    report = verify_limit_case('IV', halfsign_config(form))
    assert report.status == Status.REFUTED
    assert report.failed_step.name == 'b'
    assert report.failed_step.detail['error']['code'] == 'NOT_A_SUBSYSTEM'
    assert not report.as_expected


def test_uniform_rescaling_still_verifies():
    report = verify_limit_case('IV', halfsign_config(GramMatrix.identity(8, F(1, 7))))
    assert report.status == Status.VERIFIED


def test_scaled_case_three_verifies():
    cfg = limit_case('III').config
    scaled = replace(cfg, basis_form=cfg.basis_form.scaled(3))
    assert verify_limit_case('III', scaled).status == Status.VERIFIED


def test_limit_case_counts_must_add_up():
    cfg = limit_case('IV').config
    with pytest.raises(ValueError):
        LimitCase('IV', 16, cfg, SystemId('E', 8), (SystemId('D', 8),), (128, 112, 241))


def test_unknown_limit_case():
    with pytest.raises(ValueError):
        limit_case('V')


def test_r14_exclusion():
    report = exclude_r14()
    assert report.status == Status.INFEASIBLE
    assert report.as_expected
    step_c = next(s for s in report.steps if s.name == 'c')
    assert step_c.detail['candidates'] == ['-3/8']
    assert step_c.detail['norm_alpha1_plus_alpha2'] == '-1/2'
    assert next(s for s in report.steps if s.name == 'b').detail['h_roots'] == 'D8'


@pytest.mark.parametrize("q", [3, 4])
def test_gram_claims(q):
    report = verify_gram(q)
    assert report.status == Status.VERIFIED, report.failed_step
    assert len(report.artifacts['admissible']) == Config.EXPECTED_ADMISSIBLE_COUNTS[q]


def test_gram_claim_reports_additional_solution():
    report = verify_gram(3)
    assert len(report.artifacts['additional']) == 1
    assert report.annotations
    assert verify_gram(4).artifacts['additional'] == []


def test_gram_claim_without_solutions():
    report = verify_gram(5)
    assert report.status == Status.VERIFIED
    assert report.artifacts['solutions'] == []


def test_halfsign_claim():
    report = verify_gram(8)
    assert report.claim == "lemma-gram-q8"
    assert report.status == Status.VERIFIED
    assert report.steps[0].detail['pairings_checked'] == 840


@pytest.mark.parametrize("case_id", ['P1', 'P2', 'P3', 'P4'])
def test_bound_claims(case_id):
    report = verify_bounds(case_id)
    assert report.status == Status.VERIFIED
    assert report.artifacts['bounds'] == {
        'alpha_nonzero': Config.get_expected_bound(case_id, True),
        'alpha_zero': Config.get_expected_bound(case_id, False),
    }


def test_unknown_bound_case():
    with pytest.raises(ValueError):
        verify_bounds('P0')


def test_rank_table():
    assert rank_bound_table() == Config.EXPECTED_RANK_TABLE


def test_verify_all():
    result = verify_all()
    assert len(result.reports) == 12
    assert result.as_expected
    assert result.rank_table == Config.EXPECTED_RANK_TABLE
    assert result.to_dict()['rank_table']['IV'] == [8, 16]


def test_verify_all_filter():
    result = verify_all('theorem')
    assert [r.claim for r in result.reports] == [f"theorem-case-{c}" for c in CASE_IDS]
    assert result.rank_table is None
    with pytest.raises(ValueError):
        verify_all('nonsense')


def test_verify_all_override():
    perturbed = halfsign_config(GramMatrix.diagonal([F(1, 7)] + [F(1, 8)] * 7))
    result = verify_all('theorem', overrides={'IV': perturbed})
    assert not result.as_expected
    assert [r.status for r in result.reports][-1] == Status.REFUTED


def test_case_one_cites_a_forcing_root_string():
    detail = verify_limit_case('I').steps[2].detail
    assert detail['root_string']['string'] == [['0', '0', '0', '2']]


def test_rejected_published_grams_cite_a_pair():
    rejected = verify_gram(3).steps[-1].detail['rejected']
    assert set(rejected) == {'M3'}
    assert len(rejected['M3']['pair']) == 2
    assert set(verify_gram(4).steps[-1].detail['rejected']) == {'M0'}


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_union_identification_under_rescaling(case_id):
    cfg = limit_case(case_id).config
    weights = build_weights(cfg)
    union = weights.union(weights.with_vectors(h_roots(case_id, cfg)))
    expected = identify(normalize(union).rootset).names()
    rng = random.Random(case_id)
    for _ in range(20):
        factor = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        scaled = union.with_form(union.form.scaled(factor))
        assert identify(normalize(scaled).rootset).names() == expected


def test_replacement_config_is_checked_before_any_step():
    cfg = halfsign_config(GramMatrix.identity(8, F(1, 8)))
    with pytest.raises(MalformedInputError) as info:
        verify_limit_case('IV', replace(cfg, B=cfg.B[:7]))
    assert info.value.location == "$.B"
    with pytest.raises(IndefiniteFormError):
        verify_limit_case('IV', halfsign_config(GramMatrix.diagonal([F(-1, 8)] + [F(1, 8)] * 7)))


def test_case_four_within_time_limit():
    start = time.perf_counter()
    report = verify_limit_case('IV')
    elapsed = time.perf_counter() - start
    assert report.status == Status.VERIFIED
    assert elapsed < 10, f"case IV took {elapsed:.2f}s"


def test_r14_bounds_on_p_clash():
    steps = {s.name: s for s in exclude_r14().steps}
    assert steps['b'].detail['p_lower'] == 8
    assert steps['c'].detail['p_upper'] == 1
    assert steps['d'].passed
    assert steps['d'].detail['clash'] == "p >= 8 from D8 in h against p <= 1"
