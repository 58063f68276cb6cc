"""
Exact Core Module

Rational scalars, sign vectors, symmetric Gram matrices, positive-semidefiniteness
certification and the polarization identity. No floating point is used anywhere.
"""

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from utils.errors import DimensionMismatchError, IncompleteAssignmentError

Rational = Fraction
Vector = Tuple[Fraction, ...]
Scalar = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

_RATIONAL_TEXT = re.compile(r"[+-]?\d+(?:/\d+)?")


def to_rational(value: Scalar) -> Fraction:
    """
    Convert an int, string or Fraction into a Fraction in lowest terms.

    Args:
        value: Integer, Fraction or string such as "3", "-1/2" or "2/4"

    Returns:
        Fraction with positive denominator

    Raises:
        ValueError: floats, bools and decimal or exponent strings such as "0.5"
    """
    if isinstance(value, bool):
        raise ValueError(f"Not a rational value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_TEXT.fullmatch(text):
            raise ValueError(f"Not a rational string: {value!r}")
        return Fraction(text)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise ValueError(f"Not a rational value: {value!r}")


def to_vector(values: Iterable[Scalar]) -> Vector:
    """Coordinates as a tuple of Fractions."""
    return tuple(to_rational(v) for v in values)


def add(u: Vector, v: Vector) -> Vector:
    """Coordinatewise u + v."""
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    """Coordinatewise u - v."""
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Vector) -> Vector:
    """Scalar multiple c·v."""
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    """The vector -v."""
    return tuple(-a for a in v)


def is_zero(v: Vector) -> bool:
    """True when every coordinate vanishes."""
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class SignVector:
    """A q-tuple over {+1, -1}."""
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise ValueError("SignVector needs at least one entry")
        if any(e not in (1, -1) for e in self.entries):
            raise ValueError(f"SignVector entries must be +1 or -1: {self.entries}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]

    def product(self) -> int:
        result = 1
        for e in self.entries:
            result *= e
        return result

    def negate(self) -> 'SignVector':
        return SignVector(tuple(-e for e in self.entries))

    def as_vector(self) -> Vector:
        return tuple(Fraction(e) for e in self.entries)


def all_sign_vectors(q: int) -> List[SignVector]:
    """All 2^q sign vectors, all-plus first, in a fixed order."""
    return [SignVector(tuple(s)) for s in itertools.product((1, -1), repeat=q)]


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric rational matrix of basis scalar products."""
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise DimensionMismatchError("Gram matrix must have positive dimension")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise DimensionMismatchError(
                    f"Gram matrix row {i} has length {len(row)}, expected {n}",
                    {'row': i, 'length': len(row), 'dim': n},
                )
        for i in range(n):
            for j in range(i + 1, n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> 'GramMatrix':
        return cls(tuple(tuple(to_rational(x) for x in row) for row in rows))

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> 'GramMatrix':
        values = [to_rational(v) for v in values]
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def identity(cls, dim: int, factor: Scalar = 1) -> 'GramMatrix':
        return cls.diagonal([factor] * dim)

    @classmethod
    def block_diagonal(cls, blocks: Sequence['GramMatrix']) -> 'GramMatrix':
        n = sum(b.dim for b in blocks)
        rows = [[ZERO] * n for _ in range(n)]
        offset = 0
        for b in blocks:
            for i in range(b.dim):
                for j in range(b.dim):
                    rows[offset + i][offset + j] = b.entries[i][j]
            offset += b.dim
        return cls.from_rows(rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i][j]

    def rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self.entries]

    def diagonal_entries(self) -> Vector:
        return tuple(self.entries[i][i] for i in range(self.dim))

    def is_diagonal(self) -> bool:
        return all(self.entries[i][j] == 0 for i in range(self.dim) for j in range(self.dim) if i != j)

    def trace(self) -> Fraction:
        return sum(self.diagonal_entries(), ZERO)

    def scaled(self, factor: Scalar) -> 'GramMatrix':
        c = to_rational(factor)
        return GramMatrix(tuple(tuple(c * x for x in row) for row in self.entries))

def to_domain_matrix(rows: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    return DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in rows],
                        (len(rows), len(rows[0])), QQ)


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank of a rational matrix."""
    if not rows or not rows[0]:
        return 0
    return int(to_domain_matrix(rows).rank())


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    if not rows:
        return ONE
    d = to_domain_matrix(rows).det()
    return Fraction(int(d.numerator), int(d.denominator))


def covector(v: Vector, g: GramMatrix) -> Vector:
    """g·v, so that dot(u, v, g) is the plain sum of u * covector(v)."""
    return tuple(sum((g.entries[i][j] * v[j] for j in range(g.dim) if v[j]), ZERO) for i in range(g.dim))


def dot(u: Sequence[Fraction], v: Sequence[Fraction], g: GramMatrix) -> Fraction:
    """
    Evaluate u^T g v exactly.

    Args:
        u: Coordinate vector of length g.dim
        v: Coordinate vector of length g.dim
        g: Bilinear form

    Returns:
        The scalar product as a Fraction
    """
    if len(u) != g.dim or len(v) != g.dim:
        raise DimensionMismatchError(
            f"vectors of length {len(u)} and {len(v)} against a form of dimension {g.dim}",
            {'u': len(u), 'v': len(v), 'dim': g.dim},
        )
    total = ZERO
    for i, a in enumerate(u):
        if a:
            row = g.entries[i]
            for j, b in enumerate(v):
                if b:
                    total += a * row[j] * b
    return total


def norm(v: Sequence[Fraction], g: GramMatrix) -> Fraction:
    return dot(v, v, g)


@lru_cache(maxsize=4096)
def is_psd(g: GramMatrix) -> bool:
    """True iff every principal minor of g is non-negative."""
    n = g.dim
    diag = g.diagonal_entries()
    if any(d < 0 for d in diag):
        return False
    if g.is_diagonal():
        return True
    for size in range(2, n + 1):
        for idx in itertools.combinations(range(n), size):
            minor = [[g.entries[i][j] for j in idx] for i in idx]
            if determinant(minor) < 0:
                return False
    return True


@dataclass(frozen=True)
class PartialGram:
    """Off-diagonal entries recovered by polarization plus the trace."""
    q: int
    offdiag: Tuple[Tuple[Fraction, ...], ...]
    trace: Fraction

    def entry(self, i: int, j: int) -> Fraction:
        if i == j:
            raise ValueError("diagonal entries are not recoverable by polarization")
        return self.offdiag[i][j]

    def complete(self, diagonal: Sequence[Scalar]) -> GramMatrix:
        diagonal = [to_rational(d) for d in diagonal]
        if len(diagonal) != self.q:
            raise DimensionMismatchError(f"expected {self.q} diagonal entries, got {len(diagonal)}")
        return GramMatrix(tuple(
            tuple(diagonal[i] if i == j else self.offdiag[i][j] for j in range(self.q))
            for i in range(self.q)
        ))


def offdiag_from_norms(q: int, norms: Mapping[Union[SignVector, Tuple[int, ...]], Scalar]) -> PartialGram:
    """
    Recover the off-diagonal of a Gram matrix from the norms of all sign combinations.

    g_ij = 2^(-q-1) * sum over eps of eps_i * eps_j * N(eps), for i != j;
    trace = 2^(-q) * sum over eps of N(eps).

    Args:
        q: Number of basis vectors
        norms: Norm N(eps) of sum_j eps_j beta_j for every sign vector eps

    Returns:
        PartialGram with off-diagonal entries and the trace
    """
    table: Dict[Tuple[int, ...], Fraction] = {tuple(k): to_rational(v) for k, v in norms.items()}
    values = []
    for eps in all_sign_vectors(q):
        key = tuple(eps)
        if key not in table:
            raise IncompleteAssignmentError(f"no norm assigned to sign vector {key}", {'sign': list(key)})
        values.append((key, table[key]))

    denom = Fraction(1, 2 ** (q + 1))
    off = [[ZERO] * q for _ in range(q)]
    for i in range(q):
        for j in range(i + 1, q):
            s = sum((eps[i] * eps[j] * n for eps, n in values), ZERO)
            off[i][j] = off[j][i] = s * denom
    trace = sum((n for _, n in values), ZERO) / 2 ** q
    return PartialGram(q, tuple(tuple(row) for row in off), trace)
