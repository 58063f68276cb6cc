"""
Gram Engine Module

Exhaustive exact search for the Gram matrices of sign-combination
subsystems, canonical forms under permutations and sign changes, the
pairing argument for eight half-sign vectors, and the bounds on q.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import sympy

from core.rootsys import RootSet, is_admissible
from utils.config import Config
from utils.errors import NotASubsystemError
from utils.exact_core import (
    HALF, ZERO, GramMatrix, all_sign_vectors, is_psd, offdiag_from_norms, to_rational,
)

logger = logging.getLogger(__name__)

CONSTRAINT_VALUES = (ZERO, HALF, -HALF)
MAX_ORBIT_DIM = 6


@dataclass(frozen=True)
class CanonicalGram:
    """A Gram matrix together with its canonical representative; compares by the latter."""
    canonical: GramMatrix
    source: Optional[GramMatrix] = field(default=None, compare=False, hash=False)

    @property
    def dim(self) -> int:
        return self.canonical.dim

    def to_dict(self) -> List[List[str]]:
        from utils.json_io import gram_to_dict
        return gram_to_dict(self.canonical)


@dataclass
class FeasibilityReport:
    case_id: str
    q: int
    alpha_nonzero: bool
    feasible: bool
    solutions: Set[CanonicalGram] = field(default_factory=set)
    trace: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'case_id': self.case_id,
            'q': self.q,
            'alpha_nonzero': self.alpha_nonzero,
            'feasible': self.feasible,
            'solutions': sorted(s.to_dict() for s in self.solutions),
            'trace': list(self.trace),
        }


@dataclass
class HalfSignClassification:
    gram: CanonicalGram
    trace: List[str] = field(default_factory=list)
    eliminations: List[Dict] = field(default_factory=list)
    pairings_checked: int = 0


# -- canonical forms ---------------------------------------------------------

def _components(e) -> Dict[int, int]:
    graph = nx.Graph()
    n = len(e)
    graph.add_nodes_from(range(n))
    graph.add_edges_from((i, j) for i in range(n) for j in range(i + 1, n) if e[i][j] != 0)
    label = {}
    for k, comp in enumerate(nx.connected_components(graph)):
        for x in comp:
            label[x] = k
    return label


def _twins(e, x: int, y: int) -> bool:
    """Swapping x and y, with one sign flip if needed, is an automorphism of e."""
    if e[x][x] != e[y][y]:
        return False
    others = [z for z in range(len(e)) if z not in (x, y)]
    return (all(e[x][z] == e[y][z] for z in others)
            or all(e[x][z] == -e[y][z] for z in others))


def canonicalize(g: GramMatrix) -> CanonicalGram:
    """
    Lexicographically least image of g under simultaneous permutation and sign flips.

    Entries are compared in row-major order of the lower triangle. The search
    fixes one row at a time and keeps only the partial placements that reach
    the least row so far; twin vertices and sign choices that cannot change
    the result are not branched on.
    """
    e = g.entries
    n = g.dim
    comp = _components(e)
    states: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = [((), ())]
    rows: List[Tuple[Fraction, ...]] = []

    for level in range(n):
        best = None
        frontier = []
        for placed, signs in states:
            unplaced = [x for x in range(n) if x not in placed]
            reps: List[int] = []
            for x in unplaced:
                if not any(_twins(e, x, y) for y in reps):
                    reps.append(x)
            placed_comps = {comp[p] for p in placed}
            for x in reps:
                links = [(j, e[x][p]) for j, p in enumerate(placed) if e[x][p] != 0]
                # the first nonzero link to a placed vertex fixes the sign
                if links:
                    j, value = links[0]
                    options = (-1,) if signs[j] * value > 0 else (1,)
                elif comp[x] in placed_comps:
                    options = (1, -1)
                else:
                    options = (1,)
                for s in options:
                    row = tuple(s * signs[j] * e[x][p] for j, p in enumerate(placed)) + (e[x][x],)
                    if best is None or row < best:
                        best, frontier = row, [(placed + (x,), signs + (s,))]
                    elif row == best:
                        frontier.append((placed + (x,), signs + (s,)))
        rows.append(best)
        states = list(dict.fromkeys(frontier))

    full = [[ZERO] * n for _ in range(n)]
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            full[i][j] = full[j][i] = value
    return CanonicalGram(GramMatrix.from_rows(full), g)


def apply_symmetry(g: GramMatrix, perm: Sequence[int], signs: Sequence[int]) -> GramMatrix:
    """h[i][j] = s_i s_j g[perm[i]][perm[j]]."""
    n = g.dim
    return GramMatrix(tuple(
        tuple(signs[i] * signs[j] * g.entries[perm[i]][perm[j]] for j in range(n)) for i in range(n)
    ))


def gram_orbit(g: GramMatrix) -> Set[GramMatrix]:
    """All distinct images of g under permutations and sign flips."""
    n = g.dim
    if n > MAX_ORBIT_DIM:
        raise ValueError(f"orbit enumeration is limited to dimension {MAX_ORBIT_DIM}, got {n}")
    orbit = set()
    for perm in itertools.permutations(range(n)):
        for tail in itertools.product((1, -1), repeat=n - 1):
            orbit.add(apply_symmetry(g, perm, (1,) + tail))
    return orbit


# -- enumeration -------------------------------------------------------------

def constraint_vectors(n: int, target: Fraction) -> List[Tuple[Fraction, ...]]:
    """Tuples over {0, 1/2, -1/2} of length n with the given sum."""
    return [c for c in itertools.product(CONSTRAINT_VALUES, repeat=n) if sum(c, ZERO) == target]


def _sign_vectors(q: int) -> List[Tuple[int, ...]]:
    return [tuple(s) for s in all_sign_vectors(q)]


def _quad(g: GramMatrix, u: Sequence[int], v: Sequence[int]) -> Fraction:
    e = g.entries
    return sum((u[i] * v[j] * e[i][j] for i in range(len(u)) for j in range(len(v))), ZERO)


def check_sign_system(g: GramMatrix, norms: Optional[Dict[Tuple[int, ...], Fraction]] = None) -> Optional[str]:
    """
    Verify that the 2^q sign combinations of g form a candidate subsystem.

    Returns:
        None when every check passes, otherwise the name of the first failed check
    """
    q = g.dim
    signs = _sign_vectors(q)
    values = {eps: _quad(g, eps, eps) for eps in signs}
    if norms is not None and any(values[eps] != norms[eps] for eps in signs):
        return "norms"
    if any(v <= 0 for v in values.values()):
        return "norms"
    for a, b in itertools.combinations(signs, 2):
        na, nb = values[a], values[b]
        uv = _quad(g, a, b)
        if na + nb - 2 * uv == 0:
            return "distinct"
        if all(x == -y for x, y in zip(a, b)):
            continue
        top = max(na, nb)
        if uv not in (ZERO, top / 2, -top / 2):
            return "products"
        if (2 * uv / na).denominator != 1 or (2 * uv / nb).denominator != 1:
            return "integrality"
    if not is_psd(g):
        return "psd"
    return None


def enumerate_p1_grams(q: int, trace: Optional[List[str]] = None) -> Set[CanonicalGram]:
    """
    All Gram matrices whose sign combinations satisfy the norm and product rules.

    The all-plus combination is fixed at norm 1, the maximum. Every other
    class {eps, -eps} takes a norm in {1, 1/2, 1/3}; off-diagonals follow by
    polarization, diagonals from the constraint values <beta, beta - 2 beta_i>.

    Args:
        q: Number of basis vectors
        trace: Optional list that receives pruning steps

    Returns:
        Set of canonical Gram matrices
    """
    if not Config.MIN_GRAM_ENUMERATION_Q <= q <= Config.MAX_GRAM_ENUMERATION_Q:
        raise ValueError(
            f"q must lie in [{Config.MIN_GRAM_ENUMERATION_Q}, {Config.MAX_GRAM_ENUMERATION_Q}], got {q}"
        )
    solutions, lines = _enumerate(q)
    if trace is not None:
        trace.extend(lines)
    return set(solutions)


@lru_cache(maxsize=None)
def _enumerate(q: int) -> Tuple[FrozenSet[CanonicalGram], Tuple[str, ...]]:
    trace: List[str] = []
    c_choices = constraint_vectors(q, Fraction(q - 2))
    if not c_choices:
        trace.append(
            f"q={q}: no values c_i in {{0, 1/2, -1/2}} sum to q-2={q - 2} (at most {Fraction(q, 2)}); no solutions"
        )
        return frozenset(), tuple(trace)

    signs = _sign_vectors(q)
    classes = [eps for eps in signs if eps[0] == 1]
    free = classes[1:]
    solutions: Set[CanonicalGram] = set()
    tried = rejected = 0
    for assignment in itertools.product(Config.NORM_VALUES, repeat=len(free)):
        norms = {classes[0]: Fraction(1)}
        norms.update(zip(free, assignment))
        for eps in classes:
            norms[tuple(-x for x in eps)] = norms[eps]
        partial = offdiag_from_norms(q, norms)
        for c in c_choices:
            tried += 1
            diagonal = [(1 - c[i]) / 2 - sum((partial.offdiag[i][j] for j in range(q) if j != i), ZERO)
                        for i in range(q)]
            if sum(diagonal, ZERO) != partial.trace:
                rejected += 1
                continue
            g = partial.complete(diagonal)
            if check_sign_system(g, norms) is not None:
                rejected += 1
                continue
            solutions.add(canonicalize(g))

    trace.append(f"q={q}: {3 ** len(free)} norm assignments, {len(c_choices)} constraint vectors each")
    trace.append(f"q={q}: {tried} candidates, {rejected} rejected, {len(solutions)} classes")
    logger.debug("enumerate_p1_grams(%d): %d classes", q, len(solutions))
    return frozenset(solutions), tuple(trace)


def realize(g: GramMatrix) -> RootSet:
    """The 2^q sign combinations on the abstract basis with form g."""
    return RootSet(g, [tuple(Fraction(x) for x in eps) for eps in _sign_vectors(g.dim)])


def filter_admissible(solutions: Iterable[CanonicalGram], q: int) -> Set[CanonicalGram]:
    """Keep the Gram matrices whose sign-combination subsystem is admissible."""
    kept = set()
    for sol in solutions:
        if sol.dim != q:
            raise ValueError(f"solution of dimension {sol.dim} passed with q={q}")
        try:
            admissible, _ = is_admissible(realize(sol.canonical))
        except NotASubsystemError as e:
            logger.debug("not a subsystem: %s", e.message)
            continue
        if admissible:
            kept.add(sol)
    return kept


# -- half-sign classification for q = 8 --------------------------------------

BASE_PAIRING = ((0, 1), (2, 3), (4, 5), (6, 7))


def _pairings(items: Tuple[int, ...]) -> List[Tuple[Tuple[int, int], ...]]:
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    result = []
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in _pairings(remaining):
            result.append(((first, partner),) + tail)
    return result


def signed_pairings(n: int = 8) -> List[Tuple[Tuple[Tuple[int, int], ...], Tuple[int, ...]]]:
    """Partitions into pairs with a sign per pair, the product of the signs being +1."""
    result = []
    for pairing in _pairings(tuple(range(n))):
        for signs in itertools.product((1, -1), repeat=n // 2):
            if signs.count(-1) % 2 == 0:
                result.append((pairing, signs))
    return result


class _SymbolicGram:
    """Unknown symmetric 8x8 Gram matrix as sympy symbols."""

    def __init__(self, n: int = 8):
        self.n = n
        self.symbols = {(i, j): sympy.Symbol(f"g{i + 1}{j + 1}") for i in range(n) for j in range(i, n)}
        self.matrix = sympy.Matrix(n, n, lambda i, j: self.symbols[(min(i, j), max(i, j))])
        self.unknowns = list(self.symbols.values())

    def paired(self, pair: Tuple[int, int], sign: int) -> sympy.Matrix:
        v = [0] * self.n
        v[pair[0]] = 1
        v[pair[1]] = sign
        return sympy.Matrix(v)

    def product(self, u: sympy.Matrix, v: sympy.Matrix) -> sympy.Expr:
        return sympy.expand((u.T * self.matrix * v)[0, 0])

    def pairing_gram(self, pairing, signs) -> List[List[sympy.Expr]]:
        vecs = [self.paired(p, s) for p, s in zip(pairing, signs)]
        return [[self.product(a, b) for b in vecs] for a in vecs]


def _as_sympy(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def _scale_matches(known: Sequence[Fraction], candidates: Iterable[CanonicalGram]) -> List[Tuple[CanonicalGram, Fraction, List[Fraction]]]:
    """
    Candidates c and scales mu with the known diagonal values inside mu * diag(c).

    Returns:
        (candidate, mu, remaining diagonal values) for every fit
    """
    fits = []
    for cand in candidates:
        diag = list(cand.canonical.diagonal_entries())
        for mu in sorted({known[0] / d for d in diag if d}):
            remaining = [mu * d for d in diag]
            try:
                for value in known:
                    remaining.remove(value)
            except ValueError:
                continue
            fits.append((cand, mu, sorted(remaining)))
    return fits


def _eliminate_branch(sg: _SymbolicGram, branch: GramMatrix, index: int,
                      candidates: Sequence[CanonicalGram]) -> Dict:
    """Show that the base pairing cannot carry the non-scalar Gram ``branch``."""
    base = sg.pairing_gram(BASE_PAIRING, (1, 1, 1, 1))
    heavy = max(range(4), key=lambda k: branch.entries[k][k])
    light = [k for k in range(4) if k != heavy]
    equations = [base[k][k] - _as_sympy(branch.entries[k][k]) for k in range(4)]
    # the heavy paired vector is orthogonal to the light ones
    equations += [base[heavy][k] for k in light]

    heavy_pair = BASE_PAIRING[heavy]
    slot_of = {i: k for k, pair in enumerate(BASE_PAIRING) for i in pair}
    light_indices = [i for k in light for i in BASE_PAIRING[k]]
    derived = []
    for j, k in itertools.combinations(light_indices, 2):
        if slot_of[j] == slot_of[k]:
            continue
        l_slot = next(s for s in light if s not in (slot_of[j], slot_of[k]))
        s_idx = next(i for i in BASE_PAIRING[slot_of[j]] if i != j)
        t_idx = next(i for i in BASE_PAIRING[slot_of[k]] if i != k)
        known = [branch.entries[heavy][heavy], branch.entries[l_slot][l_slot]]
        fits = _scale_matches(known, candidates)
        if len(fits) != 1 or len(set(fits[0][2])) != 1:
            continue
        # mixed pairing: the only fitting q=4 solution fixes the remaining norm
        forced_norm = _as_sympy(fits[0][2][0])
        for sign in (1, -1):
            for a, b in ((j, k), (s_idx, t_idx)):
                u = sg.paired((a, b), sign)
                derived.append(sg.product(u, u) - forced_norm)
        derived.append(sg.product(sg.paired(heavy_pair, 1), sg.paired((j, k), 1)))

    solution = sympy.linsolve(equations + derived, sg.unknowns)
    clash = None
    if solution == sympy.EmptySet or len(solution) == 0:
        description = f"branch {index}: heavy slot {heavy + 1}; equations inconsistent"
        clash = {'pair': None, 'expected': None, 'forced': None}
    else:
        description = f"branch {index}: heavy slot {heavy + 1}; no contradiction"
        values = dict(zip(sg.unknowns, next(iter(solution))))
        for a, b in itertools.combinations(light, 2):
            forced = sympy.simplify(base[a][b].subs(values))
            expected = _as_sympy(branch.entries[a][b])
            if forced.is_number and forced != expected:
                (p, q), (r, s) = BASE_PAIRING[a], BASE_PAIRING[b]
                clash = {'pair': [[p, q], [r, s]], 'expected': str(expected), 'forced': str(forced)}
                description = (f"branch {index}: heavy slot {heavy + 1}; "
                               f"<b{p + 1}+b{q + 1}, b{r + 1}+b{s + 1}> = {expected} vs {forced}")
                break
    return {'branch': index, 'heavy_slot': heavy, 'eliminated': clash is not None,
            'clash': clash, 'description': description}


def classify_halfsign_q8(candidates: Optional[Set[CanonicalGram]] = None) -> HalfSignClassification:
    """
    Determine the Gram matrix of eight vectors whose half-sign combinations are roots.

    Every signed pairing of the indices yields four paired vectors whose Gram
    must be one of the q=4 solutions up to scale. Non-scalar branches on the
    base pairing are eliminated by propagating through mixed pairings; the
    scalar branch on every pairing then forces (1/8) Id_8.
    """
    if candidates is None:
        return _classify_default()
    return _classify(set(candidates), [])


@lru_cache(maxsize=1)
def _classify_default() -> HalfSignClassification:
    trace: List[str] = []
    return _classify(enumerate_p1_grams(4, trace), trace)


def _classify(candidates: Set[CanonicalGram], trace: List[str]) -> HalfSignClassification:
    scalar = [c for c in candidates if c.canonical.is_diagonal() and len(set(c.canonical.diagonal_entries())) == 1]
    non_scalar = [c for c in candidates if c not in scalar]
    trace.append(f"q=4 candidates: {len(scalar)} scalar, {len(non_scalar)} non-scalar")

    sg = _SymbolicGram(8)
    eliminations = []
    index = 0
    for cand in sorted(non_scalar, key=lambda c: c.canonical.entries):
        for branch in sorted(gram_orbit(cand.canonical), key=lambda m: m.entries):
            index += 1
            result = _eliminate_branch(sg, branch, index, list(candidates))
            eliminations.append(result)
            trace.append(result['description'])
            if not result['eliminated']:
                raise RuntimeError(f"non-scalar branch {index} survived the pairing propagation")

    pairings = signed_pairings(8)
    trace.append(f"{len(pairings)} signed pairings, each required to carry a scalar Gram")

    equations = set()
    for pairing, signs in pairings:
        block = sg.pairing_gram(pairing, signs)
        for a in range(4):
            for b in range(a + 1, 4):
                equations.add(block[a][b])
            if a:
                equations.add(sympy.expand(block[a][a] - block[0][0]))
    ones = sympy.Matrix([1] * 8)
    equations.add(sg.product(ones, ones) - 1)
    solution = sympy.linsolve(sorted(equations, key=sympy.default_sort_key), sg.unknowns)
    if len(solution) != 1:
        raise RuntimeError("scalar-branch equations have no solution")
    values = next(iter(solution))
    if any(not v.is_number for v in values):
        raise RuntimeError("scalar-branch equations leave free parameters")
    lookup = dict(zip(sg.symbols.keys(), values))
    rows = [[to_rational(lookup[(min(i, j), max(i, j))]) for j in range(8)] for i in range(8)]
    gram = GramMatrix.from_rows(rows)
    trace.append(f"{len(equations)} linear equations from scalar pairings: unique solution")
    logger.debug("classify_halfsign_q8: %d branches eliminated", len(eliminations))
    return HalfSignClassification(canonicalize(gram), trace, eliminations, len(pairings))


# -- bounds ------------------------------------------------------------------

def alpha_pair_candidates(offsets: Iterable[Fraction], allowed: Iterable[Fraction]) -> Set[Fraction]:
    """All a with a + c in ``allowed`` for every c in ``offsets``."""
    allowed = [to_rational(x) for x in allowed]
    result: Optional[Set[Fraction]] = None
    for c in offsets:
        options = {x - to_rational(c) for x in allowed}
        result = options if result is None else result & options
    return result or set()


def _p1_limit(alpha_nonzero: bool, trace: List[str]) -> int:
    """Largest q for which the constraint values can reach their required sum."""
    q = 1
    while True:
        nxt = q + 1
        terms = nxt + 1 if alpha_nonzero else nxt
        target = Fraction(nxt - 1 if alpha_nonzero else nxt - 2)
        if not constraint_vectors(terms, target):
            trace.append(
                f"q={nxt}: {terms} values in {{0, 1/2, -1/2}} cannot sum to {target}; q <= {q}"
            )
            return q
        q = nxt


def prop34_bound(case_id: str, alpha_nonzero: bool) -> FeasibilityReport:
    """
    Largest feasible q for each weight-shape case.

    P1 comes from the constraint sum, cross-checked by the q=5 enumeration;
    P3 and P4 pair the beta_j and fall back on P1; P2 embeds into the
    half-sign case with one more vector.
    """
    if case_id not in ('P1', 'P2', 'P3', 'P4'):
        raise ValueError(f"unknown case {case_id!r}")
    trace: List[str] = []

    if case_id == 'P1':
        q_max = _p1_limit(alpha_nonzero, trace)
        effective = q_max + 1 if alpha_nonzero else q_max
        solutions = enumerate_p1_grams(effective, trace)
        beyond = enumerate_p1_grams(effective + 1, trace)
        if not solutions or beyond:
            raise RuntimeError(f"enumeration disagrees with the constraint-sum bound at q={effective}")
        trace.append(f"enumeration: {len(solutions)} classes at q={effective}, none at q={effective + 1}")
        return FeasibilityReport(case_id, q_max, alpha_nonzero, True, solutions, trace)

    half = _p1_limit(False, trace)
    if case_id in ('P3', 'P4'):
        base = _p1_limit(alpha_nonzero, trace)
        q_max = 2 * base
        trace.append(f"pairing beta_(2j-1) + beta_(2j) gives a P1 configuration with q/2 <= {base}; q <= {q_max}")
        return FeasibilityReport(case_id, q_max, alpha_nonzero, True, enumerate_p1_grams(half), trace)

    if alpha_nonzero:
        q_max = 2 * half - 1
        trace.append(f"alpha joins the betas as a half-sign configuration with q+1 <= {2 * half}; q <= {q_max}")
    else:
        q_max = half if half % 2 else half - 1
        trace.append(f"with alpha = 0 the P1 bound {half} applies; q is odd, so q <= {q_max}")
    return FeasibilityReport(case_id, q_max, alpha_nonzero, True, enumerate_p1_grams(half), trace)
