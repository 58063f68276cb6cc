#!/usr/bin/env python3
"""
Tests for the Gram search: canonical forms, enumeration, admissibility
filtering, the half-sign classification and the bounds on q.
"""

import os
import random
import sys
from fractions import Fraction

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.gram_engine import (
    BASE_PAIRING, alpha_pair_candidates, apply_symmetry, canonicalize, check_sign_system, classify_halfsign_q8,
    constraint_vectors, enumerate_p1_grams, filter_admissible, gram_orbit, prop34_bound, realize, signed_pairings,
)
from core.catalog import identify
from core.rootsys import closure, mixed_norm_pairs
from utils.config import Config
from utils.exact_core import GramMatrix

F = Fraction


def reference(name):
    return GramMatrix.from_rows(Config.REFERENCE_GRAMS[name])


def canon(name):
    return canonicalize(reference(name))


@pytest.mark.parametrize("name", sorted(Config.REFERENCE_GRAMS))
def test_canonical_form_is_invariant(name):
    g = reference(name)
    c = canonicalize(g)
    assert canonicalize(c.canonical) == c
    rng = random.Random(name)
    for _ in range(30):
        perm = list(range(g.dim))
        rng.shuffle(perm)
        signs = [rng.choice((1, -1)) for _ in range(g.dim)]
        assert canonicalize(apply_symmetry(g, perm, signs)) == c


def test_canonical_forms_separate_references():
    forms = {canon(name) for name in Config.REFERENCE_GRAMS}
    assert len(forms) == len(Config.REFERENCE_GRAMS)


def test_orbit_sizes():
    assert len(gram_orbit(reference("M0"))) == 16
    assert len(gram_orbit(reference("Id4/4"))) == 1
    assert all(canonicalize(m) == canon("M0") for m in gram_orbit(reference("M0")))


def test_orbit_dimension_limit():
    with pytest.raises(ValueError):
        gram_orbit(GramMatrix.identity(7))


def test_constraint_vectors():
    assert len(constraint_vectors(3, F(1))) == 3
    assert constraint_vectors(4, F(2)) == [(F(1, 2),) * 4]
    assert constraint_vectors(5, F(3)) == []


def test_enumeration_q3():
    solutions = enumerate_p1_grams(3)
    assert len(solutions) == Config.EXPECTED_GRAM_COUNTS[3]
    for name in Config.PUBLISHED_GRAMS[3]:
        assert canon(name) in solutions
    extra = solutions - {canon(name) for name in Config.PUBLISHED_GRAMS[3]}
    assert extra == {canonicalize(GramMatrix.from_rows([["1/8", 0, "1/8"], [0, "1/4", 0], ["1/8", 0, "3/8"]]))}


def test_enumeration_q4():
    assert enumerate_p1_grams(4) == {canon("Id4/4"), canon("M0")}


def test_enumeration_q2_contains_scalar_form():
    assert canonicalize(GramMatrix.identity(2, F(1, 2))) in enumerate_p1_grams(2)


def test_enumeration_q2_full_set():
    # three choices for the second norm, two for the diagonal split; off-diagonals need not vanish
    rows = [
        [["1/2", 0], [0, "1/2"]], [["3/4", 0], [0, "1/4"]],
        [["3/8", "1/8"], ["1/8", "3/8"]], [["5/8", "1/8"], ["1/8", "1/8"]],
        [["1/3", "1/6"], ["1/6", "1/3"]], [["7/12", "1/6"], ["1/6", "1/12"]],
    ]
    assert enumerate_p1_grams(2) == {canonicalize(GramMatrix.from_rows(r)) for r in rows}


@pytest.mark.parametrize("q", [5, 6, 7])
def test_enumeration_empty_beyond_four(q):
    trace = []
    assert enumerate_p1_grams(q, trace) == set()
    assert any("no solutions" in line for line in trace)


@pytest.mark.parametrize("q", [1, 9])
def test_enumeration_range(q):
    with pytest.raises(ValueError):
        enumerate_p1_grams(q)


def test_every_solution_passes_the_sign_checks():
    for q in (3, 4):
        for sol in enumerate_p1_grams(q):
            assert check_sign_system(sol.canonical) is None


def test_check_sign_system_failures():
    assert check_sign_system(GramMatrix.identity(3, F(1, 3))) == "products"
    assert check_sign_system(GramMatrix.from_rows([[1, -1], [-1, 1]])) == "norms"


@pytest.mark.parametrize("q,names", [(3, ("M1", "M2")), (4, ("Id4/4",))])
def test_filter_admissible(q, names):
    kept = filter_admissible(enumerate_p1_grams(q), q)
    assert kept == {canon(name) for name in names}
    for sol in kept:
        assert mixed_norm_pairs(realize(sol.canonical)) == []


def test_filter_admissible_dimension_check():
    with pytest.raises(ValueError):
        filter_admissible({canon("M1")}, 4)


def test_signed_pairings():
    pairings = signed_pairings(8)
    assert len(pairings) == 840
    assert pairings[0] == (BASE_PAIRING, (1, 1, 1, 1))
    assert all(s.count(-1) % 2 == 0 for _, s in pairings)
    assert len(signed_pairings(4)) == 6


def test_halfsign_classification():
    result = classify_halfsign_q8()
    assert result.gram == canonicalize(GramMatrix.identity(8, F(1, 8)))
    assert result.pairings_checked == 840
    assert len(result.eliminations) == len(gram_orbit(reference("M0")))
    assert all(e['eliminated'] for e in result.eliminations)


def test_alpha_pair_candidates():
    assert alpha_pair_candidates(Config.R14_CANDIDATE_OFFSETS, Config.R14_ALLOWED_PRODUCTS) == {F(-3, 8)}
    assert alpha_pair_candidates((F(5, 4), F(1, 4), F(-3, 4)), (0, 1, -1)) == {F(-1, 4)}
    assert alpha_pair_candidates((F(3, 4), F(-3, 4), F(1, 4), F(-1, 4)), (0, F(1, 2), F(-1, 2))) == set()


@pytest.mark.parametrize("case_id,alpha_nonzero", sorted(Config.EXPECTED_BOUNDS))
def test_bounds(case_id, alpha_nonzero):
    report = prop34_bound(case_id, alpha_nonzero)
    assert report.feasible
    assert report.q == Config.get_expected_bound(case_id, alpha_nonzero)
    assert report.trace


def test_bound_unknown_case():
    with pytest.raises(ValueError):
        prop34_bound('P5', True)


def test_halfsign_vectors_have_unit_norm():
    rs = realize(GramMatrix.identity(8, F(1, 8)))
    half = [v for v in rs.vectors if sum(1 for x in v if x < 0) % 2 == 0]
    assert len(half) == 128
    assert all(rs.norm(v) == 1 for v in half)


@pytest.mark.parametrize("name,label", [("M1", "A3"), ("M2", "G2"), ("Id4/4", "D4")])
def test_admissible_grams_close_to_named_systems(name, label):
    assert identify(closure(realize(reference(name)))).label == label


def test_halfsign_branches_die_on_a_product_clash():
    result = classify_halfsign_q8()
    for e in result.eliminations:
        clash = e['clash']
        assert clash['pair'] is not None
        assert abs(F(clash['expected'])) == F(1, 16)
        assert F(clash['forced']) == 0
        assert e['description'] in result.trace


def test_extra_q3_class_closes_to_b3():
    extra = GramMatrix.from_rows([["1/8", 0, "1/8"], [0, "1/4", 0], ["1/8", 0, "3/8"]])
    assert identify(closure(realize(extra))).label == 'B3'
    assert filter_admissible({canonicalize(extra)}, 3) == set()
