#!/usr/bin/env python3
"""
Tests for Clifford periodicity data, spin sign classes and weight configurations.
"""

import os
import sys
from fractions import Fraction

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.cliff_weights import (
    FieldKind, WeightConfig, WeightShape, build_weights, clifford_info, spin_weight_signs, valuation_class,
    weight_config_from_dict, weight_config_to_dict,
)
from utils.errors import DuplicateWeightError, MalformedInputError, ZeroWeightError
from utils.exact_core import GramMatrix, neg

F = Fraction


def units(dim, start=0, stop=None):
    stop = dim if stop is None else stop
    return [tuple(F(1) if k == i else F(0) for k in range(dim)) for i in range(start, stop)]


@pytest.mark.parametrize("r,kind,n_r,split", [
    (2, FieldKind.COMPLEX, 1, False),
    (8, FieldKind.REAL, 8, True),
    (9, FieldKind.REAL, 16, False),
    (10, FieldKind.COMPLEX, 16, False),
    (12, FieldKind.QUATERNION, 16, True),
    (16, FieldKind.REAL, 128, True),
])
def test_clifford_info(r, kind, n_r, split):
    info = clifford_info(r)
    assert info.field_kind == kind
    assert info.n_r == n_r
    assert info.split is split


def test_clifford_info_rejects_small_rank():
    with pytest.raises(ValueError):
        clifford_info(1)


@pytest.mark.parametrize("r,shape,q", [
    (2, WeightShape.II, 1), (3, WeightShape.I, 1), (9, WeightShape.I, 4), (10, WeightShape.II, 5),
    (12, WeightShape.III, 6), (14, WeightShape.II, 7), (16, WeightShape.IV, 8),
])
def test_valuation_class(r, shape, q):
    assert valuation_class(r) == (shape, q)


def test_spin_weight_signs():
    odd = spin_weight_signs(9)
    assert len(odd.plus) == 16 and odd.minus is None
    split = spin_weight_signs(8)
    assert len(split.plus) == 8 and len(split.minus) == 8
    assert all(s.product() == -1 for s in split.minus)
    unsplit = spin_weight_signs(10)
    assert len(unsplit.plus) == 16 and unsplit.minus is None


def test_shape_one_weights():
    cfg = WeightConfig(WeightShape.I, 4, GramMatrix.identity(4, F(1, 4)), units(4), [(F(0),) * 4])
    rs = build_weights(cfg)
    assert len(rs) == 16
    assert set(rs.norm_histogram()) == {F(1)}


def test_shape_two_weights():
    form = GramMatrix.diagonal([F(3, 4)] + [F(1, 4)] * 5)
    alpha = units(6, 0, 1)[0]
    cfg = WeightConfig(WeightShape.II, 5, form, units(6, 1), [alpha, tuple(-x for x in alpha)])
    rs = build_weights(cfg)
    assert len(rs) == 32
    assert set(rs.norm_histogram()) == {F(2)}
    assert cfg.r == 10


def test_shape_four_weights():
    cfg = WeightConfig(WeightShape.IV, 8, GramMatrix.identity(8, F(1, 8)), units(8), [(F(0),) * 8])
    rs = build_weights(cfg)
    assert len(rs) == 128
    assert all(sum(1 for x in v if x < 0) % 2 == 0 for v in rs)


def test_duplicate_weights():
    cfg = WeightConfig(WeightShape.I, 1, GramMatrix.identity(2), [(F(0), F(1))],
                       [(F(1), F(0)), (F(-1), F(0)), (F(1), F(2)), (F(-1), F(-2))])
    with pytest.raises(DuplicateWeightError) as info:
        build_weights(cfg)
    assert info.value.details['expected'] == 8


def test_zero_alpha_forbidden():
    cfg = WeightConfig(WeightShape.III, 2, GramMatrix.identity(2), units(2), [(F(0), F(0))])
    with pytest.raises(ZeroWeightError):
        build_weights(cfg)
    cfg = WeightConfig(WeightShape.I, 1, GramMatrix.identity(1), [(F(1),)], [(F(0),)])
    with pytest.raises(ZeroWeightError):
        build_weights(cfg)


@pytest.mark.parametrize("shape,q,gamma,location", [
    (WeightShape.I, 2, [(F(1), F(1)), (F(-1), F(-1))], "$.Gamma"),
    (WeightShape.II, 2, [], "$.q"),
    (WeightShape.IV, 2, [], "$.q"),
])
def test_shape_invariants(shape, q, gamma, location):
    cfg = WeightConfig(shape, q, GramMatrix.identity(2), units(2), [(F(1), F(0)), (F(-1), F(0))], gamma)
    with pytest.raises(MalformedInputError) as info:
        cfg.validate()
    assert info.value.location == location


def test_alpha_must_be_symmetric():
    cfg = WeightConfig(WeightShape.I, 2, GramMatrix.identity(2), units(2), [(F(1), F(0))])
    with pytest.raises(MalformedInputError):
        cfg.validate()


def test_config_document_round_trip():
    doc = {
        'shape': 'II', 'q': 5,
        'basis_gram': [["3/4" if i == j == 0 else ("1/4" if i == j else 0) for j in range(6)] for i in range(6)],
        'B': [[1 if k == i else 0 for k in range(6)] for i in range(1, 6)],
        'A': [[1, 0, 0, 0, 0, 0], [-1, 0, 0, 0, 0, 0]],
    }
    cfg = weight_config_from_dict(doc)
    assert cfg.shape == WeightShape.II
    assert len(build_weights(cfg)) == 32
    again = weight_config_from_dict(weight_config_to_dict(cfg))
    assert again.basis_form == cfg.basis_form
    assert again.B == cfg.B


@pytest.mark.parametrize("doc", [
    {'shape': 'V', 'q': 1, 'basis_gram': [[1]], 'B': [[1]]},
    {'shape': 'I', 'q': "1", 'basis_gram': [[1]], 'B': [[1]]},
    {'shape': 'I', 'q': 1, 'B': [[1]]},
    {'shape': 'I', 'q': 1, 'basis_gram': [[1]], 'B': [[1, 0]]},
])
def test_malformed_documents(doc):
    with pytest.raises(MalformedInputError):
        weight_config_from_dict(doc)


@pytest.mark.parametrize("r", range(2, 17))
def test_clifford_info_is_eight_periodic(r):
    info, shifted = clifford_info(r), clifford_info(r + 8)
    assert shifted.field_kind == info.field_kind
    assert shifted.split is info.split
    assert shifted.n_r == 16 * info.n_r


@pytest.mark.parametrize("cfg", [
    WeightConfig(WeightShape.I, 4, GramMatrix.identity(4, F(1, 4)), units(4), [(F(0),) * 4]),
    WeightConfig(WeightShape.II, 5, GramMatrix.diagonal([F(3, 4)] + [F(1, 4)] * 5), units(6, 1),
                 [units(6, 0, 1)[0], neg(units(6, 0, 1)[0])]),
    WeightConfig(WeightShape.III, 6, GramMatrix.diagonal([F(1, 4)] + [F(1, 8)] * 6), units(7, 1),
                 [units(7, 0, 1)[0], neg(units(7, 0, 1)[0])]),
    WeightConfig(WeightShape.IV, 8, GramMatrix.identity(8, F(1, 8)), units(8), [(F(0),) * 8]),
], ids=['I', 'II', 'III', 'IV'])
def test_weights_are_closed_under_negation(cfg):
    rs = build_weights(cfg)
    assert all(neg(v) in rs for v in rs)
