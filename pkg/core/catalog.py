"""
Root System Catalog Module

Standard coordinate models of the irreducible reduced root systems and
scale-invariant identification of arbitrary root sets against them.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from core.rootsys import RootSet, components, is_root_system
from utils.config import Config
from utils.errors import InvalidSystemError, UnrecognizedSystemError
from utils.exact_core import ZERO, GramMatrix, Vector

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SystemId:
    """Name of an irreducible root system plus the norm of its long roots."""
    family: str
    rank: int
    scale: Fraction = Fraction(1)
    roots: int = 0

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def to_dict(self) -> Dict:
        from utils.json_io import format_rational
        return {'family': self.family, 'rank': self.rank, 'scale': format_rational(self.scale), 'roots': self.roots}


@dataclass
class IdentificationResult:
    components: List[SystemId] = field(default_factory=list)
    total_roots: int = 0

    @property
    def label(self) -> str:
        """Component names joined by '+', e.g. 'A1+D6'."""
        return "+".join(sorted(c.name for c in self.components)) or "empty"

    def names(self) -> List[str]:
        return sorted(c.name for c in self.components)

    def to_dict(self) -> Dict:
        ordered = sorted(self.components, key=lambda c: (c.family, c.rank, c.scale))
        return {'components': [c.to_dict() for c in ordered], 'total_roots': self.total_roots}


def _unit(n: int, i: int, value: Fraction = Fraction(1)) -> List[Fraction]:
    v = [ZERO] * n
    v[i] = value
    return v


def _pm_pairs(n: int) -> List[Vector]:
    """All ±e_i ± e_j with i < j."""
    vectors = []
    for i, j in itertools.combinations(range(n), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = [ZERO] * n
            v[i], v[j] = Fraction(si), Fraction(sj)
            vectors.append(tuple(v))
    return vectors


def _pm_units(n: int, length: int = 1) -> List[Vector]:
    return [tuple(_unit(n, i, Fraction(s * length))) for i in range(n) for s in (1, -1)]


def _e8_vectors() -> List[Vector]:
    vectors = _pm_pairs(8)
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            vectors.append(tuple(s * HALF for s in signs))
    return vectors


def _type_a(n: int) -> RootSet:
    m = n + 1
    vectors = []
    for i, j in itertools.permutations(range(m), 2):
        v = [ZERO] * m
        v[i], v[j] = Fraction(1), Fraction(-1)
        vectors.append(v)
    return RootSet(GramMatrix.identity(m), vectors)


def _type_g2() -> RootSet:
    short = _type_a(2).vectors
    long_ = []
    for i in range(3):
        v = [Fraction(-1)] * 3
        v[i] = Fraction(2)
        long_.append(tuple(v))
        long_.append(tuple(-x for x in v))
    return RootSet(GramMatrix.identity(3), list(short) + long_)


def build(family: str, rank: int) -> RootSet:
    """
    Standard model of the root system (family, rank).

    Args:
        family: One of A, B, C, D, E, F, G
        rank: Rank of the system

    Returns:
        RootSet on the standard form with integer or half-integer coordinates
    """
    family = family.upper()
    if not Config.is_valid_system(family, rank):
        raise InvalidSystemError(f"no root system of type {family}{rank}", {'family': family, 'rank': rank})

    if family == 'A':
        return _type_a(rank)
    if family == 'B':
        return RootSet(GramMatrix.identity(rank), _pm_pairs(rank) + _pm_units(rank))
    if family == 'C':
        return RootSet(GramMatrix.identity(rank), _pm_pairs(rank) + _pm_units(rank, 2))
    if family == 'D':
        return RootSet(GramMatrix.identity(rank), _pm_pairs(rank))
    if family == 'G':
        return _type_g2()
    if family == 'F':
        halves = [tuple(s * HALF for s in signs) for signs in itertools.product((1, -1), repeat=4)]
        return RootSet(GramMatrix.identity(4), _pm_pairs(4) + _pm_units(4) + halves)

    e8 = _e8_vectors()
    if rank == 8:
        selected = e8
    elif rank == 7:
        selected = [v for v in e8 if v[6] + v[7] == 0]
    else:
        selected = [v for v in e8 if v[5] == v[6] == v[7]]
    return RootSet(GramMatrix.identity(8), selected)


Fingerprint = Tuple[int, int, Tuple[Tuple[Fraction, int], ...]]


def expected_fingerprint(family: str, rank: int) -> Fingerprint:
    """(rank, root count, sorted histogram of long-norm / norm ratios) computed from closed formulas."""
    n = rank
    one, two, three = Fraction(1), Fraction(2), Fraction(3)
    if family == 'A':
        hist = {one: n * (n + 1)}
    elif family == 'B':
        hist = {one: 2 * n * (n - 1), two: 2 * n}
    elif family == 'C':
        hist = {one: 2 * n, two: 2 * n * (n - 1)}
    elif family == 'D':
        hist = {one: 2 * n * (n - 1)}
    elif family == 'G':
        hist = {one: 6, three: 6}
    elif family == 'F':
        hist = {one: 24, two: 24}
    else:
        hist = {one: {6: 72, 7: 126, 8: 240}[n]}
    hist = {k: v for k, v in hist.items() if v}
    return n, sum(hist.values()), tuple(sorted(hist.items()))


def canonical_candidates(rank: int) -> List[Tuple[str, int]]:
    """One name per isomorphism class: B from rank 2, C from rank 3, D from rank 4."""
    candidates = [('A', rank)]
    if rank >= 2:
        candidates.append(('B', rank))
    if rank >= 3:
        candidates.append(('C', rank))
    if rank >= 4:
        candidates.append(('D', rank))
    for family in ('E', 'F', 'G'):
        if Config.is_valid_system(family, rank):
            candidates.append((family, rank))
    return candidates


def fingerprint(rs: RootSet) -> Fingerprint:
    top = rs.max_norm()
    hist = Counter(top / n for n in (rs.norm(v) for v in rs.vectors))
    return rs.rank(), len(rs), tuple(sorted(hist.items()))


def identify_component(rs: RootSet) -> SystemId:
    """Match one irreducible component against the fingerprint table."""
    fp = fingerprint(rs)
    for family, rank in canonical_candidates(fp[0]):
        if expected_fingerprint(family, rank) == fp:
            return SystemId(family, rank, rs.max_norm(), len(rs))
    raise UnrecognizedSystemError(
        f"no root system has rank {fp[0]}, {fp[1]} roots and norm ratios {dict(fp[2])}",
        {'rank': fp[0], 'roots': fp[1], 'ratios': {str(k): v for k, v in fp[2]}},
    )


def identify(rs: RootSet, validate: bool = False) -> IdentificationResult:
    """
    Name every irreducible component of a root system.

    Args:
        rs: Root system (checked against R1-R4 first when validate is True)
        validate: Run is_root_system before matching

    Returns:
        IdentificationResult listing one SystemId per component
    """
    if validate:
        holds, violations = is_root_system(rs)
        if not holds:
            raise UnrecognizedSystemError(
                f"input is not a root system ({violations[0].axiom} fails)",
                {'violation': violations[0].to_dict()},
            )
    result = IdentificationResult(total_roots=len(rs))
    if len(rs) == 0:
        return result
    for part in components(rs):
        result.components.append(identify_component(part))
    logger.debug("identified %s", result.label)
    return result


def root_count(family: str, rank: int) -> int:
    """Number of roots of (family, rank), from the closed formulas."""
    return expected_fingerprint(family, rank)[1]


def all_valid_systems(max_rank: Optional[int] = None) -> List[Tuple[str, int]]:
    max_rank = max_rank or Config.MAX_CATALOG_RANK
    return [(f, r) for f in sorted(Config.FAMILIES) for r in range(1, max_rank + 1) if Config.is_valid_system(f, r)]


def canonical_name(family: str, rank: int) -> str:
    """Name that identify reports for build(family, rank), low-rank aliases resolved."""
    aliases = {('B', 1): 'A1', ('C', 1): 'A1', ('C', 2): 'B2', ('D', 2): 'A1+A1', ('D', 3): 'A3'}
    return aliases.get((family, rank), f"{family}{rank}")
