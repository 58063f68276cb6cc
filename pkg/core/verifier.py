"""
Verifier Module

Replays the classification claims end to end: the Gram classifications,
the bounds on q, the four limiting weight configurations and their
assembly into F4, E6, E7 and E8, the exclusion of rank 14, and the
resulting table of admissible ranks.

Every claim produces a Report whose steps are recorded in a fixed order,
so re-running a claim yields the same step list.
"""

import itertools
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from core.catalog import SystemId, identify
from core.cliff_weights import WeightConfig, WeightShape, build_weights, valuation_class, weight_config_to_dict
from core.gram_engine import (
    alpha_pair_candidates, canonicalize, classify_halfsign_q8, enumerate_p1_grams, filter_admissible,
    prop34_bound, realize,
)
from core.rootsys import RootSet, closure, is_root_system, mixed_norm_pairs, normalize, root_string
from utils.config import Config
from utils.errors import IndefiniteFormError, RootToolError
from utils.exact_core import ZERO, GramMatrix, Vector, add, is_psd, neg, scale, sub
from utils.json_io import format_rational, format_vector, gram_to_dict, rootset_to_dict

logger = logging.getLogger(__name__)

CASE_IDS = ('I', 'II', 'III', 'IV')
BOUND_CASES = ('P1', 'P2', 'P3', 'P4')
SUITES = ('lemma-gram', 'prop-bounds', 'theorem', 'r14')


class Status(Enum):
    VERIFIED = "VERIFIED"
    REFUTED = "REFUTED"
    INFEASIBLE = "INFEASIBLE"


@dataclass
class Step:
    """One assertion of a report, with the library operation that produced its data."""
    name: str
    operation: str
    passed: bool = True
    detail: Dict[str, Any] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def require(self, condition: bool, message: str) -> bool:
        if not condition:
            self.passed = False
            self.failures.append(message)
        return condition

    def to_dict(self) -> Dict[str, Any]:
        payload = {'step': self.name, 'operation': self.operation, 'passed': self.passed, 'detail': self.detail}
        if self.failures:
            payload['failures'] = list(self.failures)
        return payload


@dataclass
class Report:
    claim: str
    expected_status: Status = Status.VERIFIED
    status: Status = Status.REFUTED
    steps: List[Step] = field(default_factory=list)
    artifacts: Dict[str, Any] = field(default_factory=dict)
    annotations: List[str] = field(default_factory=list)

    @property
    def as_expected(self) -> bool:
        return self.status == self.expected_status

    @property
    def failed_step(self) -> Optional[Step]:
        return next((s for s in self.steps if not s.passed), None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'claim': self.claim,
            'status': self.status.value,
            'expected_status': self.expected_status.value,
            'steps': [s.to_dict() for s in self.steps],
            'artifacts': self.artifacts,
            'annotations': list(self.annotations),
        }


class _Refuted(Exception):
    pass


@contextmanager
def _step(report: Report, name: str, operation: str) -> Iterator[Step]:
    entry = Step(name, operation)
    report.steps.append(entry)
    try:
        yield entry
    except (RootToolError, RuntimeError) as e:
        entry.passed = False
        if isinstance(e, RootToolError):
            entry.detail['error'] = e.to_dict()
        entry.failures.append(str(e))
        raise _Refuted(name) from e
    if not entry.passed:
        raise _Refuted(name)


def _finish(report: Report, success: Status) -> Report:
    report.status = success if all(s.passed for s in report.steps) else Status.REFUTED
    level = logging.INFO if report.as_expected else logging.WARNING
    logger.log(level, "%s: %s", report.claim, report.status.value)
    return report


# -- limiting cases ----------------------------------------------------------

@dataclass(frozen=True)
class LimitCase:
    case_id: str
    r: int
    config: WeightConfig
    expected_g: SystemId
    expected_h: Tuple[SystemId, ...]
    expected_counts: Tuple[int, int, int]

    def __post_init__(self):
        w, h, g = self.expected_counts
        if w + h != g:
            raise ValueError(f"case {self.case_id}: {w} + {h} != {g}")


def _unit(dim: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else ZERO for k in range(dim))


def _builtin_config(case_id: str) -> WeightConfig:
    if case_id == 'I':
        form = GramMatrix.identity(4, Fraction(1, 4))
        return WeightConfig(WeightShape.I, 4, form, [_unit(4, i) for i in range(4)], [(ZERO,) * 4])
    if case_id == 'II':
        form = GramMatrix.diagonal([Fraction(3, 4)] + [Fraction(1, 4)] * 5)
        alpha = _unit(6, 0)
        return WeightConfig(WeightShape.II, 5, form, [_unit(6, i) for i in range(1, 6)], [alpha, neg(alpha)])
    if case_id == 'III':
        form = GramMatrix.diagonal([Fraction(1, 4)] + [Fraction(1, 8)] * 6)
        alpha = _unit(7, 0)
        return WeightConfig(WeightShape.III, 6, form, [_unit(7, i) for i in range(1, 7)], [alpha, neg(alpha)])
    if case_id == 'IV':
        form = GramMatrix.identity(8, Fraction(1, 8))
        return WeightConfig(WeightShape.IV, 8, form, [_unit(8, i) for i in range(8)], [(ZERO,) * 8])
    raise ValueError(f"unknown limit case {case_id!r}")


_EXPECTED_SYSTEMS = {
    'I': (('F', 4), (('B', 4),)),
    'II': (('E', 6), (('D', 5),)),
    'III': (('E', 7), (('A', 1), ('D', 6))),
    'IV': (('E', 8), (('D', 8),)),
}


def limit_case(case_id: str) -> LimitCase:
    """Built-in configuration and expectations of a limiting case."""
    if case_id not in CASE_IDS:
        raise ValueError(f"unknown limit case {case_id!r}; expected one of {', '.join(CASE_IDS)}")
    cfg = _builtin_config(case_id)
    g, hs = _EXPECTED_SYSTEMS[case_id]
    return LimitCase(
        case_id=case_id,
        r=cfg.r,
        config=cfg,
        expected_g=SystemId(*g),
        expected_h=tuple(SystemId(*h) for h in hs),
        expected_counts=Config.get_expected_counts(case_id),
    )


def _pair_roots(vectors: Sequence[Vector]) -> List[Vector]:
    """All ±2(v_i ± v_j) for i < j."""
    roots = []
    for u, v in itertools.combinations(vectors, 2):
        for w in (add(u, v), sub(u, v)):
            roots.append(scale(Fraction(2), w))
            roots.append(scale(Fraction(-2), w))
    return roots


def _doubled(vectors: Sequence[Vector]) -> List[Vector]:
    return [scale(Fraction(s * 2), v) for v in vectors for s in (1, -1)]


def h_roots(case_id: str, cfg: WeightConfig) -> List[Vector]:
    """Roots of the isotropy algebra h, written in the coordinates of ``cfg``."""
    pairs = _pair_roots(cfg.B)
    if case_id == 'I':
        return _doubled(cfg.B) + pairs
    if case_id == 'III':
        nonzero = [a for a in cfg.orbit_representatives() if any(a)]
        return _doubled(nonzero) + pairs
    return pairs


def expected_new_roots(case_id: str, cfg: WeightConfig) -> List[Vector]:
    """What the reflections of W alone produce: {±2β_i} in case I, all of R(h) otherwise."""
    if case_id == 'I':
        return _doubled(cfg.B)
    return h_roots(case_id, cfg)


def _forced_string(weights: RootSet, new_roots: RootSet) -> Optional[Dict[str, Any]]:
    """First pair of weights whose root string leaves W, with that string."""
    for u, v in itertools.combinations(weights.vectors, 2):
        if weights.dot(u, v) == 0 or weights.key(u) == neg(weights.key(v)):
            continue
        string = root_string(u, v, weights.form)
        if any(w in new_roots for w in string):
            return {'alpha': format_vector(u), 'beta': format_vector(v),
                    'string': [format_vector(w) for w in string]}
    return None


def _names(systems) -> List[str]:
    return sorted(s.name for s in systems)


def _annotate(report: Report, case_id: str, union: RootSet, h: RootSet):
    if case_id == 'I':
        report.annotations.append(
            "h-completion assumed: closure(W) yields only {±2β_i}; the long roots ±2β_i±2β_j of B4 are given data"
        )
    elif case_id == 'II':
        report.annotations.append(f"rank bookkeeping: rank {union.rank()} = {h.rank()} (D5) + 1 (u(1) has no roots)")
        offsets = (Fraction(5, 4), Fraction(1, 4), Fraction(-3, 4))
        candidates = alpha_pair_candidates(offsets, (ZERO, Fraction(1), Fraction(-1)))
        report.annotations.append(
            f"second-weight offsets 5/4, 1/4, -3/4 leave <α_i, α_j> in "
            f"{{{', '.join(format_rational(a) for a in sorted(candidates))}}}"
        )
        for p in (4, 5):
            gram = GramMatrix.from_rows([[Fraction(3, 4) if i == j else Fraction(-1, 4) for j in range(p)]
                                         for i in range(p)])
            total = sum((gram.entries[i][j] for i in range(p) for j in range(p)), ZERO)
            report.annotations.append(
                f"p={p}: norm(α_1+...+α_{p}) = {format_rational(total)}, Gram PSD = {is_psd(gram)}"
            )
    elif case_id == 'III':
        offsets = (Fraction(3, 4), Fraction(-3, 4), Fraction(1, 4), Fraction(-1, 4))
        candidates = alpha_pair_candidates(offsets, (ZERO, Fraction(1, 2), Fraction(-1, 2)))
        report.annotations.append(
            f"offsets ±3/4, ±1/4 against {{0, ±1/2}} leave {len(candidates)} candidate products for a second α"
        )
        report.annotations.append("A = {±α_1} gives 64 weights, the count forced by 126 - 62")


def verify_limit_case(case_id: str, config: Optional[WeightConfig] = None) -> Report:
    """
    Build a limiting configuration and check that it assembles into g.

    Steps, in order: (a) weights are simple with the expected count;
    (b) closure(W) exists; (c) the new roots are the expected ones;
    (d) W ∪ R(h) is a root system containing closure(W);
    (e) the union and h carry the expected names and counts. Admissibility
    of W and orthogonality of its different-norm members are checked as well.

    Args:
        case_id: One of I, II, III, IV
        config: Replacement weight configuration (the built-in one by default)

    Returns:
        Report with status VERIFIED or REFUTED

    Raises:
        MalformedInputError: a replacement configuration breaks its shape invariants
        IndefiniteFormError: a replacement configuration has an indefinite basis form
    """
    case = limit_case(case_id)
    if config is not None:
        config.validate()
        if not is_psd(config.basis_form):
            raise IndefiniteFormError("basis form of the configuration is not positive semidefinite")
    cfg = config or case.config
    expected_w, expected_h, expected_g = case.expected_counts
    report = Report(claim=f"theorem-case-{case_id}")
    report.artifacts['config'] = weight_config_to_dict(cfg)

    try:
        with _step(report, 'a', 'build_weights') as step:
            weights = build_weights(cfg)
            step.detail['weights'] = len(weights)
            step.require(len(weights) == expected_w, f"expected {expected_w} weights, got {len(weights)}")

        with _step(report, 'b', 'closure') as step:
            full = closure(weights)
            step.detail['closure'] = len(full)

        new_roots = full.difference(weights)
        with _step(report, 'c', 'closure minus W') as step:
            expected_new = weights.with_vectors(expected_new_roots(case_id, cfg))
            step.detail['new_roots'] = len(new_roots)
            step.require(new_roots == expected_new,
                         f"closure adds {len(new_roots)} roots, expected the {len(expected_new)} listed")
            witness = _forced_string(weights, new_roots)
            if witness:
                step.detail['root_string'] = witness

        with _step(report, 'admissible', 'is_root_system(closure minus W)') as step:
            holds, violations = is_root_system(new_roots)
            step.require(holds, violations[0].message if violations else "complement is not a root system")
            pairs = mixed_norm_pairs(weights)
            step.detail['mixed_norm_pairs'] = len(pairs)
            step.require(not pairs, "W has non-orthogonal members of different norms")

        h = weights.with_vectors(h_roots(case_id, cfg))
        union = weights.union(h)
        with _step(report, 'd', 'is_root_system(W ∪ R(h))') as step:
            holds, violations = is_root_system(union)
            step.detail['violations'] = [v.to_dict() for v in violations[:3]]
            step.require(holds, "W ∪ R(h) is not a root system")
            step.require(full.is_subset(union), "closure(W) is not contained in W ∪ R(h)")
            step.require(new_roots.is_subset(h), "closure(W) minus W is not contained in R(h)")
            if case_id == 'I':
                step.detail['note'] = "h-completion assumed"

        with _step(report, 'e', 'identify') as step:
            target = union
            if case_id == 'II':
                normalized = normalize(union)
                target = normalized.rootset
                step.detail['normalization_factors'] = [format_rational(f) for f in normalized.factors]
            g_id = identify(target)
            h_id = identify(h)
            counts = (len(weights), len(h), len(union))
            step.detail.update({
                'g': g_id.label,
                'h': h_id.label,
                'counts': list(counts),
            })
            step.require(g_id.names() == [case.expected_g.name],
                         f"union identified as {g_id.label}, expected {case.expected_g.name}")
            step.require(h_id.names() == _names(case.expected_h),
                         f"h identified as {h_id.label}, expected {'+'.join(_names(case.expected_h))}")
            step.require(counts == case.expected_counts, f"counts {counts} != {case.expected_counts}")
            step.require(counts[0] + counts[1] == counts[2], "|W| + |R(h)| != |R(g)|")
            report.artifacts['identification'] = g_id.to_dict()
            report.artifacts['h_identification'] = h_id.to_dict()
            report.artifacts['union'] = rootset_to_dict(target)

        _annotate(report, case_id, union, h)
    except _Refuted as e:
        logger.debug("%s refuted at step %s", report.claim, e)

    return _finish(report, Status.VERIFIED)


# -- Gram classifications ----------------------------------------------------

def reference_gram(name: str) -> GramMatrix:
    return GramMatrix.from_rows(Config.REFERENCE_GRAMS[name])


def verify_gram(q: int) -> Report:
    """
    Enumerate the sign-combination Gram matrices for q and compare with the published list.

    Published matrices must all be found and the admissible ones must be
    exactly the published admissible ones. Further solutions are reported
    under ``additional``; they must not be admissible.
    """
    if q == 8:
        return verify_halfsign()
    report = Report(claim=f"lemma-gram-q{q}")
    try:
        with _step(report, 'enumerate', 'enumerate_p1_grams') as step:
            trace: List[str] = []
            solutions = enumerate_p1_grams(q, trace)
            step.detail['classes'] = len(solutions)
            step.detail['trace'] = trace
            expected = Config.EXPECTED_GRAM_COUNTS.get(q)
            if expected is not None:
                step.require(len(solutions) == expected, f"expected {expected} classes, found {len(solutions)}")
        report.artifacts['solutions'] = sorted(s.to_dict() for s in solutions)

        published = {name: canonicalize(reference_gram(name)) for name in Config.PUBLISHED_GRAMS.get(q, ())}
        if published:
            with _step(report, 'published', 'canonicalize') as step:
                missing = sorted(name for name, c in published.items() if c not in solutions)
                step.detail['present'] = sorted(name for name in published if name not in missing)
                step.require(not missing, f"published matrices not found: {', '.join(missing)}")
            extra = solutions - set(published.values())
            report.artifacts['additional'] = sorted(s.to_dict() for s in extra)
            if extra:
                report.annotations.append(
                    f"{len(extra)} solution(s) beyond the published list; none is admissible"
                )

        with _step(report, 'admissible', 'filter_admissible') as step:
            kept = filter_admissible(solutions, q)
            step.detail['admissible'] = len(kept)
            report.artifacts['admissible'] = sorted(s.to_dict() for s in kept)
            names = Config.PUBLISHED_ADMISSIBLE.get(q)
            if names is not None:
                wanted = {published[n] for n in names}
                step.require(kept == wanted, f"admissible set has {len(kept)} classes, expected {len(wanted)}")
            for sol in sorted(kept, key=lambda s: s.canonical.entries):
                step.require(not mixed_norm_pairs(realize(sol.canonical)),
                             "an admissible subsystem has non-orthogonal roots of different norms")
            for name, sol in sorted(published.items()):
                if sol in kept:
                    continue
                pairs = mixed_norm_pairs(realize(sol.canonical))
                if pairs:
                    step.detail.setdefault('rejected', {})[name] = {
                        'reason': "non-orthogonal roots of different norms",
                        'pair': [format_vector(v) for v in pairs[0]],
                    }
    except _Refuted as e:
        logger.debug("%s refuted at step %s", report.claim, e)
    return _finish(report, Status.VERIFIED)


def verify_halfsign() -> Report:
    """Eight vectors whose half-sign combinations are roots have Gram (1/8) Id_8."""
    report = Report(claim="lemma-gram-q8")
    try:
        with _step(report, 'classify', 'classify_halfsign_q8') as step:
            result = classify_halfsign_q8()
            target = canonicalize(GramMatrix.identity(8, Fraction(1, 8)))
            step.detail['branches_eliminated'] = len(result.eliminations)
            step.detail['pairings_checked'] = result.pairings_checked
            step.detail['trace'] = list(result.trace)
            step.require(result.gram == target, "forced Gram is not (1/8) Id_8")
            step.require(bool(result.eliminations), "no non-scalar branch was examined")
            report.artifacts['gram'] = result.gram.to_dict()
            report.artifacts['eliminations'] = result.eliminations
    except _Refuted as e:
        logger.debug("%s refuted at step %s", report.claim, e)
    return _finish(report, Status.VERIFIED)


# -- bounds ------------------------------------------------------------------

def verify_bounds(case_id: str) -> Report:
    """Largest q for one bound case, with and without a zero α."""
    if case_id not in BOUND_CASES:
        raise ValueError(f"unknown bound case {case_id!r}; expected one of {', '.join(BOUND_CASES)}")
    report = Report(claim=f"prop-bounds-{case_id}")
    bounds = {}
    try:
        for alpha_nonzero in (True, False):
            label = 'alpha_nonzero' if alpha_nonzero else 'alpha_zero'
            with _step(report, label, 'prop34_bound') as step:
                result = prop34_bound(case_id, alpha_nonzero)
                expected = Config.get_expected_bound(case_id, alpha_nonzero)
                bounds[label] = result.q
                step.detail['q_max'] = result.q
                step.detail['trace'] = list(result.trace)
                step.require(result.feasible and result.q == expected, f"bound {result.q}, expected {expected}")
    except _Refuted as e:
        logger.debug("%s refuted at step %s", report.claim, e)
    report.artifacts['bounds'] = bounds
    return _finish(report, Status.VERIFIED)


def exclude_r14() -> Report:
    """
    Replay the argument that no configuration of rank 14 exists.

    Returns:
        Report with status INFEASIBLE when every step holds
    """
    report = Report(claim="r14-exclusion", expected_status=Status.INFEASIBLE)
    try:
        with _step(report, 'a', 'classify_halfsign_q8') as step:
            result = classify_halfsign_q8()
            scalar = canonicalize(GramMatrix.identity(8, Fraction(1, 8)))
            step.detail['gram'] = result.gram.to_dict()
            step.require(result.gram == scalar, "the eight vectors α_1, β_1..β_7 are not forced to (1/8) Id_8")

        with _step(report, 'b', 'closure + identify') as step:
            form = GramMatrix.identity(8, Fraction(1, 8))
            basis = [_unit(8, i) for i in range(8)]
            half_signs = [tuple(Fraction(e) for e in eps)
                          for eps in itertools.product((1, -1), repeat=8) if eps.count(-1) % 2 == 0]
            weights = RootSet(form, half_signs)
            new_roots = closure(weights).difference(weights)
            so16 = weights.with_vectors(_pair_roots(basis))
            step.require(new_roots == so16, "closure does not add exactly ±2(β_i ± β_j)")
            ident = identify(new_roots)
            step.detail['h_roots'] = ident.label
            step.require(ident.names() == ['D8'], f"new roots identified as {ident.label}, expected D8")
            p_lower = sum(c.rank for c in ident.components)
            step.detail['p_lower'] = p_lower
            report.annotations.append("R(so(16)) lies in closure(W) minus W, so p >= 8")

        with _step(report, 'c', 'alpha_pair_candidates + is_psd') as step:
            candidates = alpha_pair_candidates(Config.R14_CANDIDATE_OFFSETS, Config.R14_ALLOWED_PRODUCTS)
            step.detail['candidates'] = [format_rational(a) for a in sorted(candidates)]
            step.require(candidates == {Fraction(-3, 8)}, "candidate set for <α_1, α_2> is not {-3/8}")
            realizable = []
            if candidates:
                a = min(candidates)
                pair = GramMatrix.from_rows([[Fraction(1, 8), a], [a, Fraction(1, 8)]])
                value = pair.entries[0][0] + pair.entries[1][1] + 2 * a
                step.detail['pair_gram'] = gram_to_dict(pair)
                step.detail['norm_alpha1_plus_alpha2'] = format_rational(value)
                step.require(value < 0 and not is_psd(pair), "the candidate pair Gram is realizable")
            for a in sorted(candidates):
                if is_psd(GramMatrix.from_rows([[Fraction(1, 8), a], [a, Fraction(1, 8)]])):
                    realizable.append(a)
            # no realizable second α leaves a single ±pair in A
            p_upper = None if realizable else 1
            step.detail['p_upper'] = p_upper
            report.annotations.append("a second α is impossible, so p = 1")

        with _step(report, 'd', 'compare') as step:
            step.require(p_upper is not None and p_lower > p_upper,
                         f"bounds p >= {p_lower} and p <= {p_upper} do not clash")
            step.detail['clash'] = f"p >= {p_lower} from {ident.label} in h against p <= {p_upper}"
    except _Refuted as e:
        logger.debug("%s refuted at step %s", report.claim, e)
    return _finish(report, Status.INFEASIBLE)


def rank_bound_table(bound_reports: Optional[Dict[str, Report]] = None,
                     r14_report: Optional[Report] = None) -> Dict[str, Tuple[int, ...]]:
    """
    Ranks r allowed in each valuation class.

    A rank is kept when its q stays within the bound of its case (the
    zero-α bound only applies where the shape permits α = 0), and r = 14
    is dropped when the rank-14 exclusion holds.
    """
    if bound_reports is None:
        bound_reports = {c: verify_bounds(c) for c in BOUND_CASES}
    if r14_report is None:
        r14_report = exclude_r14()

    def bound(case_id: str, zero_allowed: bool) -> int:
        values = bound_reports[case_id].artifacts.get('bounds', {})
        limits = [values.get('alpha_nonzero', 0)]
        if zero_allowed:
            limits.append(values.get('alpha_zero', 0))
        return max(limits)

    case_of = {WeightShape.I: 'P1', WeightShape.II: 'P2', WeightShape.III: 'P3', WeightShape.IV: 'P4'}
    table: Dict[str, List[int]] = {shape.value: [] for shape in WeightShape}
    r = 2
    while r <= 2 * Config.MAX_GRAM_ENUMERATION_Q + 1:
        shape, q = valuation_class(r)
        zero_allowed = not ((shape == WeightShape.I and q % 4 in (1, 2)) or shape == WeightShape.III)
        if q >= 1 and q <= bound(case_of[shape], zero_allowed):
            if not (r == 14 and r14_report.status == Status.INFEASIBLE):
                table[shape.value].append(r)
        r += 1
    return {k: tuple(v) for k, v in table.items()}


# -- suites ------------------------------------------------------------------

@dataclass
class SuiteResult:
    reports: List[Report] = field(default_factory=list)
    rank_table: Optional[Dict[str, Tuple[int, ...]]] = None

    @property
    def as_expected(self) -> bool:
        return all(r.as_expected for r in self.reports)

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            'as_expected': self.as_expected,
            'reports': [r.to_dict() for r in self.reports],
        }
        if self.rank_table is not None:
            payload['rank_table'] = {k: list(v) for k, v in self.rank_table.items()}
        return payload


def verify_all(suite_filter: Optional[str] = None,
               overrides: Optional[Dict[str, WeightConfig]] = None) -> SuiteResult:
    """
    Run every claim, or those of one suite.

    Args:
        suite_filter: One of lemma-gram, prop-bounds, theorem, r14; None runs all
        overrides: Replacement configurations keyed by limit-case id

    Returns:
        SuiteResult with one report per claim in a fixed order
    """
    if suite_filter is not None and suite_filter not in SUITES:
        raise ValueError(f"unknown suite {suite_filter!r}; expected one of {', '.join(SUITES)}")
    overrides = overrides or {}
    wanted = (suite_filter,) if suite_filter else SUITES
    result = SuiteResult()
    bound_reports: Dict[str, Report] = {}
    r14 = None

    if 'lemma-gram' in wanted:
        result.reports.extend(verify_gram(q) for q in (3, 4, 8))
    if 'prop-bounds' in wanted:
        for case_id in BOUND_CASES:
            bound_reports[case_id] = verify_bounds(case_id)
            result.reports.append(bound_reports[case_id])
    if 'theorem' in wanted:
        result.reports.extend(verify_limit_case(c, overrides.get(c)) for c in CASE_IDS)
    if 'r14' in wanted:
        r14 = exclude_r14()
        result.reports.append(r14)

    if suite_filter is None:
        result.rank_table = rank_bound_table(bound_reports, r14)
    return result
