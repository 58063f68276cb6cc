"""
Clifford Weights Module

Periodicity data of the even real Clifford algebras, the spin and
half-spin sign classes, and the four weight-configuration shapes.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from core.rootsys import RootSet
from utils.errors import DuplicateWeightError, MalformedInputError, ZeroWeightError
from utils.exact_core import ZERO, GramMatrix, SignVector, Vector, add, all_sign_vectors, is_zero, neg, scale

logger = logging.getLogger(__name__)


class FieldKind(Enum):
    """Field over which Cl^0_r is a matrix algebra."""
    REAL = "REAL"
    COMPLEX = "COMPLEX"
    QUATERNION = "QUATERNION"


class WeightShape(Enum):
    I = "I"        # r = 2q + 1
    II = "II"      # r = 2q, q odd
    III = "III"    # r = 2q, q = 2 mod 4
    IV = "IV"      # r = 2q, q = 0 mod 4


@dataclass(frozen=True)
class CliffordInfo:
    r: int
    field_kind: FieldKind
    n_r: int
    split: bool

    def to_dict(self) -> Dict:
        return {'r': self.r, 'field_kind': self.field_kind.value, 'n_r': self.n_r, 'split': self.split}


def clifford_info(r: int) -> CliffordInfo:
    """
    Periodicity data for Cl^0_r.

    Args:
        r: Rank, at least 2

    Returns:
        CliffordInfo with the field, the module dimension n_r and the split flag
    """
    if r < 2:
        raise ValueError(f"Clifford rank must be at least 2, got {r}")
    k = (r - 1) // 8
    q = r - 8 * k
    if q <= 4:
        exponent = 4 * k
    elif q == 5:
        exponent = 4 * k + 1
    elif q == 6:
        exponent = 4 * k + 2
    else:
        exponent = 4 * k + 3

    residue = r % 8
    if residue in (0, 1, 7):
        kind = FieldKind.REAL
    elif residue in (2, 6):
        kind = FieldKind.COMPLEX
    else:
        kind = FieldKind.QUATERNION
    return CliffordInfo(r, kind, 2 ** exponent, r % 4 == 0)


@dataclass(frozen=True)
class SpinWeightSigns:
    """Sign classes of the spin weights; ``minus`` is set only when Sigma_r splits."""
    r: int
    q: int
    plus: Tuple[SignVector, ...]
    minus: Optional[Tuple[SignVector, ...]] = None


def spin_weight_signs(r: int) -> SpinWeightSigns:
    """All sign vectors for r = 2q + 1; the product +1 class (and -1 class when q is even) for r = 2q."""
    if r < 2:
        raise ValueError(f"Clifford rank must be at least 2, got {r}")
    q = r // 2
    signs = all_sign_vectors(q)
    if r % 2 == 1:
        return SpinWeightSigns(r, q, tuple(signs))
    plus = tuple(s for s in signs if s.product() == 1)
    minus = tuple(s for s in signs if s.product() == -1) if q % 2 == 0 else None
    return SpinWeightSigns(r, q, plus, minus)


def valuation_class(r: int) -> Tuple[WeightShape, int]:
    """Weight shape and q for rank r."""
    if r < 2:
        raise ValueError(f"Clifford rank must be at least 2, got {r}")
    if r % 2 == 1:
        return WeightShape.I, (r - 1) // 2
    q = r // 2
    if q % 2 == 1:
        return WeightShape.II, q
    if q % 4 == 2:
        return WeightShape.III, q
    return WeightShape.IV, q


@dataclass
class WeightConfig:
    """
    Data of one weight configuration.

    A and Gamma are stored as explicit sets closed under negation; B holds the
    q vectors beta_j. All coordinates are relative to ``basis_form``.
    """
    shape: WeightShape
    q: int
    basis_form: GramMatrix
    B: List[Vector]
    A: List[Vector] = field(default_factory=list)
    Gamma: List[Vector] = field(default_factory=list)

    @property
    def r(self) -> int:
        return 2 * self.q + 1 if self.shape == WeightShape.I else 2 * self.q

    def validate(self):
        """Raise on any violated shape invariant."""
        dim = self.basis_form.dim
        if len(self.B) != self.q:
            raise MalformedInputError(f"expected {self.q} beta vectors, got {len(self.B)}", "$.B")
        for name, group in (('A', self.A), ('Gamma', self.Gamma), ('B', self.B)):
            for i, v in enumerate(group):
                if len(v) != dim:
                    raise MalformedInputError(f"vector has length {len(v)}, expected {dim}", f"$.{name}[{i}]")
        if not self.A:
            raise MalformedInputError("A must not be empty", "$.A")
        if self.shape in (WeightShape.I, WeightShape.II) and self.Gamma:
            raise MalformedInputError(f"shape {self.shape.value} takes no Gamma", "$.Gamma")
        for name, group in (('A', self.A), ('Gamma', self.Gamma)):
            members = set(group)
            if any(neg(v) not in members for v in group):
                raise MalformedInputError(f"{name} is not closed under negation", f"$.{name}")

        shape, q = self.shape, self.q
        if shape == WeightShape.II and q % 2 != 1:
            raise MalformedInputError(f"shape II needs odd q, got {q}", "$.q")
        if shape == WeightShape.III and q % 4 != 2:
            raise MalformedInputError(f"shape III needs q = 2 mod 4, got {q}", "$.q")
        if shape == WeightShape.IV and q % 4 != 0:
            raise MalformedInputError(f"shape IV needs q = 0 mod 4, got {q}", "$.q")

        forbid_zero = (shape == WeightShape.I and q % 4 in (1, 2)) or shape == WeightShape.III
        if forbid_zero and any(is_zero(v) for v in self.A + self.Gamma):
            raise ZeroWeightError(f"shape {shape.value} with q={q} requires every alpha and gamma to be nonzero")

    def orbit_representatives(self) -> List[Vector]:
        """One member of each {a, -a} pair of A, the one with the larger coordinates."""
        reps = []
        for v in sorted(set(self.A), reverse=True):
            if neg(v) not in reps:
                reps.append(v)
        return reps

    def expected_size(self) -> int:
        if self.shape == WeightShape.I:
            return len(set(self.A)) * 2 ** self.q
        if self.shape == WeightShape.II:
            return len(self.orbit_representatives()) * 2 ** self.q
        return (len(set(self.A)) + len(set(self.Gamma))) * 2 ** (self.q - 1)

    def sign_sum(self, eps: SignVector) -> Vector:
        total = (ZERO,) * self.basis_form.dim
        for e, beta in zip(eps, self.B):
            total = add(total, scale(Fraction(e), beta))
        return total


def build_weights(cfg: WeightConfig) -> RootSet:
    """
    Assemble the weight set of a configuration.

    Args:
        cfg: Weight configuration

    Returns:
        RootSet of all weights

    Raises:
        DuplicateWeightError: two weights coincide
        ZeroWeightError: a weight or a forbidden alpha is zero
    """
    cfg.validate()
    signs = all_sign_vectors(cfg.q)
    weights: List[Vector] = []
    if cfg.shape == WeightShape.I:
        for alpha in sorted(set(cfg.A)):
            weights.extend(add(alpha, cfg.sign_sum(eps)) for eps in signs)
    elif cfg.shape == WeightShape.II:
        for alpha in cfg.orbit_representatives():
            weights.extend(add(scale(Fraction(eps.product()), alpha), cfg.sign_sum(eps)) for eps in signs)
    else:
        for alpha in sorted(set(cfg.A)):
            weights.extend(add(alpha, cfg.sign_sum(eps)) for eps in signs if eps.product() == 1)
        for gamma in sorted(set(cfg.Gamma)):
            weights.extend(add(gamma, cfg.sign_sum(eps)) for eps in signs if eps.product() == -1)

    rs = RootSet(cfg.basis_form, weights)
    if rs.collisions or len(rs) != cfg.expected_size():
        first = rs.collisions[0] if rs.collisions else ()
        raise DuplicateWeightError(
            f"weights are not simple: {len(rs)} distinct of {cfg.expected_size()} expected",
            {'distinct': len(rs), 'expected': cfg.expected_size(),
             'collision': [[str(x) for x in v] for v in first]},
        )
    logger.debug("shape %s, q=%d: %d weights", cfg.shape.value, cfg.q, len(rs))
    return rs


def weight_config_from_dict(doc: Dict) -> WeightConfig:
    """Parse {"shape", "q", "basis_gram", "B", "A", "Gamma"}."""
    from utils.json_io import parse_gram, parse_vectors, require

    shape_name = require(doc, 'shape')
    try:
        shape = WeightShape(shape_name)
    except ValueError:
        raise MalformedInputError(f"unknown shape {shape_name!r}", "$.shape")
    q = require(doc, 'q')
    if isinstance(q, bool) or not isinstance(q, int) or q < 1:
        raise MalformedInputError(f"q must be a positive integer, got {q!r}", "$.q")
    gram = parse_gram(require(doc, 'basis_gram'))
    return WeightConfig(
        shape=shape,
        q=q,
        basis_form=gram,
        B=parse_vectors(require(doc, 'B'), gram.dim, "$.B"),
        A=parse_vectors(doc.get('A', []), gram.dim, "$.A"),
        Gamma=parse_vectors(doc.get('Gamma', []), gram.dim, "$.Gamma"),
    )


def weight_config_to_dict(cfg: WeightConfig) -> Dict:
    from utils.json_io import format_vector, gram_to_dict
    return {
        'shape': cfg.shape.value,
        'q': cfg.q,
        'basis_gram': gram_to_dict(cfg.basis_form),
        'B': [format_vector(v) for v in cfg.B],
        'A': [format_vector(v) for v in sorted(set(cfg.A))],
        'Gamma': [format_vector(v) for v in sorted(set(cfg.Gamma))],
    }
