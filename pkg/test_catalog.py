#!/usr/bin/env python3
"""
Tests for the standard root-system models and their identification.
"""

import os
import random
import sys
from fractions import Fraction

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.catalog import all_valid_systems, build, canonical_name, identify, root_count
from core.rootsys import RootSet, is_root_system
from utils.errors import InvalidSystemError, UnrecognizedSystemError
from utils.exact_core import GramMatrix


@pytest.mark.parametrize("family,rank,count", [
    ('A', 3, 12), ('B', 4, 32), ('C', 3, 18), ('D', 4, 24), ('E', 6, 72), ('E', 7, 126), ('E', 8, 240),
    ('F', 4, 48), ('G', 2, 12),
])
def test_root_counts(family, rank, count):
    rs = build(family, rank)
    assert len(rs) == count
    assert root_count(family, rank) == count


@pytest.mark.parametrize("family,rank", [('E', 5), ('F', 3), ('G', 3), ('D', 1), ('A', 0), ('X', 2)])
def test_invalid_systems(family, rank):
    with pytest.raises(InvalidSystemError):
        build(family, rank)


def test_family_is_case_insensitive():
    assert build('d', 4) == build('D', 4)


@pytest.mark.parametrize("family,rank", [('A', 2), ('B', 3), ('C', 3), ('D', 4), ('G', 2), ('F', 4)])
def test_small_models_are_root_systems(family, rank):
    holds, violations = is_root_system(build(family, rank))
    assert holds, violations[:1]


def test_every_model_identifies_as_itself():
    for family, rank in all_valid_systems(8):
        result = identify(build(family, rank))
        assert result.label == canonical_name(family, rank), (family, rank)


def test_low_rank_aliases():
    assert canonical_name('B', 1) == 'A1'
    assert canonical_name('C', 2) == 'B2'
    assert canonical_name('D', 2) == 'A1+A1'
    assert canonical_name('D', 3) == 'A3'
    assert identify(build('C', 2)).names() == ['B2']


def test_identification_is_scale_invariant():
    rng = random.Random(13)
    systems = [('A', 3), ('B', 3), ('C', 3), ('D', 4), ('G', 2), ('F', 4)]
    for _ in range(20):
        family, rank = rng.choice(systems)
        rs = build(family, rank)
        factor = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        scaled = rs.with_form(rs.form.scaled(factor))
        assert identify(scaled).names() == identify(rs).names()


def test_long_root_norm_is_reported():
    result = identify(build('B', 3))
    assert result.components[0].scale == 2
    assert result.to_dict()['components'][0]['scale'] == '2'
    assert result.total_roots == 18


def test_reducible_label():
    rs = RootSet(GramMatrix.identity(3), [(1, 0, 0), (-1, 0, 0), (0, 1, -1), (0, -1, 1)])
    assert identify(rs).label == 'A1+A1'


def test_unrecognized_system():
    rs = RootSet(GramMatrix.identity(2), [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])
    with pytest.raises(UnrecognizedSystemError):
        identify(rs)


def test_validate_rejects_non_root_system():
    rs = RootSet(GramMatrix.identity(1), [(1,), (-1,), (3,), (-3,)])
    with pytest.raises(UnrecognizedSystemError) as info:
        identify(rs, validate=True)
    assert info.value.code == 'UNRECOGNIZED'


def test_empty_identification():
    result = identify(RootSet(GramMatrix.identity(2), []))
    assert result.label == 'empty'
    assert result.total_roots == 0


def permuted(rs, perm, signs):
    """Same root system with coordinates permuted and sign-flipped, the form adjusted to match."""
    n = rs.form.dim
    rows = [[rs.form[perm[i], perm[j]] * signs[i] * signs[j] for j in range(n)] for i in range(n)]
    vectors = [tuple(v[perm[i]] * signs[i] for i in range(n)) for v in rs.vectors]
    return RootSet(GramMatrix.from_rows(rows), vectors)


@pytest.mark.parametrize("family,rank", [('A', 3), ('B', 3), ('C', 3), ('D', 5), ('G', 2), ('F', 4), ('E', 6)])
def test_identification_ignores_coordinate_symmetries(family, rank):
    rs = build(family, rank)
    expected = identify(rs).names()
    rng = random.Random(f"{family}{rank}")
    for _ in range(5):
        perm = list(range(rs.form.dim))
        rng.shuffle(perm)
        signs = [rng.choice((1, -1)) for _ in perm]
        moved = permuted(rs, perm, signs)
        assert len(moved) == len(rs)
        assert identify(moved).names() == expected
