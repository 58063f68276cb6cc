"""
Root System Module

Root sets over an exact bilinear form: the axioms R1-R4, reflections,
minimal closure, irreducible components, normalization and admissibility.

Vectors are coordinate tuples relative to an abstract basis whose scalar
products are given by the form. The form may be degenerate, so membership
and equality are decided on the covector g·v rather than on coordinates.

The pairwise loops run on integer copies of the coordinates: members are
scaled by the lcm of their denominators, covectors likewise, and every
scalar product becomes an integer over one common ``scale``.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from utils.config import Config
from utils.errors import (
    DimensionMismatchError, IndefiniteFormError, MalformedInputError, NotASubsystemError, SizeExceededError,
    ZeroWeightError,
)
from utils.exact_core import (
    ZERO, GramMatrix, Vector, covector, dot, is_psd, is_zero, matrix_rank, scale, sub, to_vector,
)

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


def _denominator_lcm(vectors: Iterable[Vector]) -> int:
    d = 1
    for v in vectors:
        for x in v:
            d = d * x.denominator // gcd(d, x.denominator)
    return d


def _integral(v: Vector, d: int) -> IntVector:
    return tuple(x.numerator * (d // x.denominator) for x in v)


def _int_dot(u: IntVector, k: IntVector) -> int:
    return sum(a * b for a, b in zip(u, k) if a)


@dataclass(frozen=True)
class AxiomViolation:
    """A failed root-system axiom with the vectors that witness it."""
    axiom: str
    witness: Tuple[Vector, ...]
    ratio: Optional[Fraction] = None
    message: str = ""

    def to_dict(self) -> Dict:
        from utils.json_io import format_rational, format_vector
        payload = {
            'axiom': self.axiom,
            'witness': [format_vector(v) for v in self.witness],
            'message': self.message,
        }
        if self.ratio is not None:
            payload['ratio'] = format_rational(self.ratio)
        return payload


@dataclass(frozen=True)
class ScaledCoordinates:
    """
    Integer copies of the members and their covectors.

    ``vectors[i]`` is member i times ``vector_scale`` and ``keys[i]`` its
    covector times ``key_scale``, so <v_i, v_j> = int_dot(vectors[i], keys[j]) / scale.
    """
    vector_scale: int
    key_scale: int
    vectors: Tuple[IntVector, ...]
    keys: Tuple[IntVector, ...]
    norms: Tuple[int, ...]

    @property
    def scale(self) -> int:
        return self.vector_scale * self.key_scale


class RootSet:
    """
    Finite set of nonzero vectors sharing one bilinear form.

    Duplicates (vectors with equal covectors) are merged on construction and
    recorded in ``collisions``. Scalar products between members are cached
    by member index.
    """

    def __init__(self, form: GramMatrix, vectors: Iterable[Sequence] = (), check_form: bool = True):
        if check_form and not is_psd(form):
            raise IndefiniteFormError("basis form is not positive semidefinite")
        self.form = form
        self.collisions: List[Tuple[Vector, Vector]] = []
        by_key: Dict[Vector, Vector] = {}
        for raw in vectors:
            v = to_vector(raw)
            if len(v) != form.dim:
                raise DimensionMismatchError(
                    f"vector of length {len(v)} in a form of dimension {form.dim}",
                    {'length': len(v), 'dim': form.dim},
                )
            k = covector(v, form)
            if is_zero(k):
                raise ZeroWeightError(f"zero vector {tuple(str(x) for x in v)} in root set")
            if k in by_key:
                if by_key[k] != v:
                    self.collisions.append((by_key[k], v))
                    by_key[k] = min(by_key[k], v)
                continue
            by_key[k] = v
        self.vectors: Tuple[Vector, ...] = tuple(sorted(by_key.values()))
        self._keys: Dict[Vector, Vector] = {v: k for k, v in by_key.items()}
        self._members = set(by_key)
        self._index: Dict[Vector, int] = {v: i for i, v in enumerate(self.vectors)}
        self._scaled: Optional[ScaledCoordinates] = None
        self._rows: Dict[int, List[int]] = {}
        self._negatives: Optional[List[Optional[int]]] = None

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, v) -> bool:
        return self.key(to_vector(v)) in self._members

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootSet):
            return NotImplemented
        return self.form == other.form and self._members == other._members

    def __hash__(self):
        return hash((self.form, frozenset(self._members)))

    def __repr__(self) -> str:
        return f"RootSet(dim={self.form.dim}, size={len(self)})"

    def key(self, v: Vector) -> Vector:
        """Covector g·v, looked up for members and computed otherwise."""
        k = self._keys.get(v)
        if k is None:
            k = covector(v, self.form)
        return k

    def scaled(self) -> ScaledCoordinates:
        if self._scaled is None:
            keys = [self._keys[v] for v in self.vectors]
            lu, lk = _denominator_lcm(self.vectors), _denominator_lcm(keys)
            ivecs = tuple(_integral(v, lu) for v in self.vectors)
            ikeys = tuple(_integral(k, lk) for k in keys)
            norms = tuple(_int_dot(u, k) for u, k in zip(ivecs, ikeys))
            self._scaled = ScaledCoordinates(lu, lk, ivecs, ikeys, norms)
        return self._scaled

    def gram_row(self, i: int) -> List[int]:
        """Scalar products of member i with every member, multiplied by ``scaled().scale``."""
        row = self._rows.get(i)
        if row is None:
            sc = self.scaled()
            u = sc.vectors[i]
            row = [_int_dot(u, k) for k in sc.keys]
            self._rows[i] = row
        return row

    def negation_index(self, i: int) -> Optional[int]:
        """Index of the member equal to minus member i, if there is one."""
        if self._negatives is None:
            keys = self.scaled().keys
            lookup = {k: n for n, k in enumerate(keys)}
            self._negatives = [lookup.get(tuple(-a for a in k)) for k in keys]
        return self._negatives[i]

    def dot(self, u: Vector, v: Vector) -> Fraction:
        i = self._index.get(u)
        j = self._index.get(v) if i is not None else None
        if j is not None:
            return Fraction(self.gram_row(i)[j], self.scaled().scale)
        return sum((a * b for a, b in zip(u, self.key(v)) if a), ZERO)

    def norm(self, v: Vector) -> Fraction:
        i = self._index.get(v)
        if i is not None:
            sc = self.scaled()
            return Fraction(sc.norms[i], sc.scale)
        return sum((a * b for a, b in zip(v, self.key(v)) if a), ZERO)

    def norms(self) -> List[Fraction]:
        sc = self.scaled()
        return [Fraction(n, sc.scale) for n in sc.norms]

    def norm_histogram(self) -> Counter:
        return Counter(self.norms())

    def max_norm(self) -> Fraction:
        sc = self.scaled()
        return Fraction(max(sc.norms), sc.scale)

    def rank(self) -> int:
        """Dimension of the span of the set."""
        return matrix_rank([self.key(v) for v in self.vectors])

    def with_vectors(self, vectors: Iterable[Sequence]) -> 'RootSet':
        return RootSet(self.form, vectors, check_form=False)

    def with_form(self, form: GramMatrix) -> 'RootSet':
        return RootSet(form, self.vectors)

    def union(self, other: 'RootSet') -> 'RootSet':
        self._require_same_form(other)
        return self.with_vectors(list(self.vectors) + list(other.vectors))

    def difference(self, other: 'RootSet') -> 'RootSet':
        self._require_same_form(other)
        return self.with_vectors(v for v in self.vectors if v not in other)

    def is_subset(self, other: 'RootSet') -> bool:
        self._require_same_form(other)
        return self._members <= other._members

    def _require_same_form(self, other: 'RootSet'):
        if self.form != other.form:
            raise DimensionMismatchError("root sets do not share one bilinear form")


def reflect(alpha: Vector, v: Vector, g: GramMatrix) -> Vector:
    """
    Apply s_alpha(v) = v - 2<alpha, v>/<alpha, alpha> alpha.

    Args:
        alpha: Nonzero mirror vector
        v: Vector to reflect
        g: Bilinear form

    Returns:
        The reflected vector
    """
    alpha, v = to_vector(alpha), to_vector(v)
    aa = dot(alpha, alpha, g)
    if aa == 0:
        raise ZeroWeightError("cannot reflect in a vector of norm zero")
    c = 2 * dot(alpha, v, g) / aa
    if c == 0:
        return v
    return sub(v, scale(c, alpha))


def pair_violation(rs: RootSet, i: int, j: int) -> Optional[AxiomViolation]:
    """R2 and R3 test for members i and j."""
    sc = rs.scaled()
    uv = rs.gram_row(i)[j]
    uu, vv = sc.norms[i], sc.norms[j]
    u, v = rs.vectors[i], rs.vectors[j]
    if uv * uv == uu * vv and rs.negation_index(i) != j:
        return AxiomViolation('R2', (u, v), Fraction(uv, vv), "multiple of a root other than its negative")
    for a, b, bb in ((u, v, vv), (v, u, uu)):
        if (2 * uv) % bb:
            return AxiomViolation('R3', (a, b), Fraction(2 * uv, bb), "2<u,v>/<v,v> is not an integer")
    return None


def is_root_system(rs: RootSet) -> Tuple[bool, List[AxiomViolation]]:
    """
    Check R1-R4, with R1's span taken as the span of the set itself.

    Returns:
        (holds, violations); violations is empty exactly when holds is True
    """
    violations: List[AxiomViolation] = []
    n = len(rs)
    for i in range(n):
        for j in range(i + 1, n):
            found = pair_violation(rs, i, j)
            if found:
                violations.append(found)

    sc = rs.scaled()
    members = set(sc.keys)
    for i in range(n):
        row = rs.gram_row(i)
        ni, ki = sc.norms[i], sc.keys[i]
        for j in range(n):
            if row[j] == 0:
                continue
            num = 2 * row[j]
            if num % ni == 0:
                c = Fraction(num // ni)
                present = tuple(b - (num // ni) * a for a, b in zip(ki, sc.keys[j])) in members
            else:
                # off the integer lattice: compare exact covectors instead
                c = Fraction(num, ni)
                alpha, v = rs.vectors[i], rs.vectors[j]
                present = tuple(y - c * x for x, y in zip(rs.key(alpha), rs.key(v))) in rs._members
            if not present:
                alpha, v = rs.vectors[i], rs.vectors[j]
                image = sub(v, scale(c, alpha))
                violations.append(AxiomViolation('R4', (alpha, v, image), None, "reflection leaves the set"))
    return not violations, violations


def closure(rs: RootSet, max_size: int = Config.DEFAULT_MAX_CLOSURE_SIZE) -> RootSet:
    """
    Least superset of ``rs`` closed under its own reflections.

    Raises:
        MalformedInputError: the input set is empty
        NotASubsystemError: a generated pair violates R2 or R3
        SizeExceededError: the closure grows beyond max_size
    """
    if len(rs) == 0:
        raise MalformedInputError("closure of an empty root set", "$.vectors")
    sc = rs.scaled()
    lu = sc.vector_scale
    items: List[IntVector] = list(sc.vectors)
    keys: List[IntVector] = list(sc.keys)
    norms: List[int] = list(sc.norms)
    members = set(keys)

    def as_vector(iv: IntVector) -> Vector:
        return tuple(Fraction(a, lu) for a in iv)

    def fail(found: AxiomViolation):
        raise NotASubsystemError(
            f"{found.axiom} violated: {found.message}", violation=found, details=found.to_dict()
        )

    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            found = pair_violation(rs, i, j)
            if found:
                fail(found)

    processed = 0
    while processed < len(items):
        x = processed
        vx = items[x]
        for y in range(processed + 1):
            xy = _int_dot(vx, keys[y])
            if xy == 0:
                continue
            for mirror, target in ((x, y), (y, x)):
                # every stored pair already passed R3, so the coefficient is integral
                c = 2 * xy // norms[mirror]
                new_key = tuple(a - c * b for a, b in zip(keys[target], keys[mirror]))
                if new_key in members:
                    continue
                new_vec = tuple(a - c * b for a, b in zip(items[target], items[mirror]))
                new_norm = norms[target]
                opposite = tuple(-a for a in new_key)
                for k in range(len(items)):
                    uv = _int_dot(items[k], new_key)
                    if uv == 0:
                        continue
                    if uv * uv == norms[k] * new_norm and keys[k] != opposite:
                        fail(AxiomViolation('R2', (as_vector(new_vec), as_vector(items[k])), Fraction(uv, norms[k]),
                                            "multiple of a root other than its negative"))
                    for a, b, bb in ((new_vec, items[k], norms[k]), (items[k], new_vec, new_norm)):
                        if (2 * uv) % bb:
                            fail(AxiomViolation('R3', (as_vector(a), as_vector(b)), Fraction(2 * uv, bb),
                                                "2<u,v>/<v,v> is not an integer"))
                items.append(new_vec)
                keys.append(new_key)
                norms.append(new_norm)
                members.add(new_key)
                if len(items) > max_size:
                    raise SizeExceededError(
                        f"closure exceeds {max_size} vectors", {'max_size': max_size}
                    )
        processed += 1
        if processed % 64 == 0:
            logger.debug("closure: processed %d of %d vectors", processed, len(items))

    logger.debug("closure: %d input vectors, %d in closure", len(rs), len(items))
    return RootSet(rs.form, [as_vector(v) for v in items], check_form=False)


def components(rs: RootSet) -> List[RootSet]:
    """Classes of the transitive closure of non-orthogonality, ordered by smallest member."""
    graph = nx.Graph()
    vectors = rs.vectors
    graph.add_nodes_from(range(len(vectors)))
    for i in range(len(vectors)):
        row = rs.gram_row(i)
        graph.add_edges_from((i, j) for j in range(i + 1, len(vectors)) if row[j] != 0)
    classes = [sorted(c) for c in nx.connected_components(graph)]
    classes.sort(key=lambda c: c[0])
    return [rs.with_vectors(vectors[i] for i in c) for c in classes]


@dataclass
class Normalization:
    rootset: RootSet
    factors: List[Fraction] = field(default_factory=list)
    parts: List[RootSet] = field(default_factory=list)


def normalize(rs: RootSet) -> Normalization:
    """
    Rescale each component so that its longest root has norm 1.

    The form is rescaled, not the coordinates. When components need different
    factors the result lives on a block-diagonal direct sum of copies of the
    form, one block per component.
    """
    parts = components(rs)
    factors = [1 / p.max_norm() for p in parts]
    if len(set(factors)) == 1:
        scaled = rs.with_form(rs.form.scaled(factors[0]))
        return Normalization(scaled, factors, components(scaled))

    n, m = rs.form.dim, len(parts)
    form = GramMatrix.block_diagonal([rs.form.scaled(f) for f in factors])
    vectors = []
    for k, part in enumerate(parts):
        for v in part:
            vectors.append((ZERO,) * (k * n) + v + (ZERO,) * ((m - k - 1) * n))
    embedded = RootSet(form, vectors)
    return Normalization(embedded, factors, components(embedded))


def is_admissible(rs: RootSet, max_size: int = Config.DEFAULT_MAX_CLOSURE_SIZE) -> Tuple[bool, RootSet]:
    """
    Test whether the complement of ``rs`` in its closure is a root system.

    Returns:
        (admissible, complement)
    """
    full = closure(rs, max_size)
    complement = full.difference(rs)
    if len(complement) == 0:
        return True, complement
    holds, violations = is_root_system(complement)
    if not holds:
        logger.debug("not admissible: %s", violations[0].message)
    return holds, complement


def root_string(alpha: Vector, beta: Vector, g: GramMatrix) -> List[Vector]:
    """
    Vectors beta - sgn(n) k alpha for k = 1..|n|, with n = 2<alpha,beta>/<alpha,alpha>.

    The last entry is s_alpha(beta).
    """
    alpha, beta = to_vector(alpha), to_vector(beta)
    n = 2 * dot(alpha, beta, g) / dot(alpha, alpha, g)
    if n.denominator != 1:
        raise NotASubsystemError("root string of a non-integral pair",
                                 violation=AxiomViolation('R3', (beta, alpha), n))
    step = 1 if n > 0 else -1
    return [sub(beta, scale(Fraction(step * k), alpha)) for k in range(1, abs(int(n)) + 1)]


def mixed_norm_pairs(rs: RootSet) -> List[Tuple[Vector, Vector]]:
    """Non-orthogonal pairs of members with different norms."""
    norms = rs.scaled().norms
    pairs = []
    for i in range(len(rs)):
        row = rs.gram_row(i)
        for j in range(i + 1, len(rs)):
            if norms[i] != norms[j] and row[j] != 0:
                pairs.append((rs.vectors[i], rs.vectors[j]))
    return pairs
