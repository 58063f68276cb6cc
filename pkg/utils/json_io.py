"""
JSON I/O Module

Rational string codec and the loaders/dumpers for root sets, Gram matrices,
weight configurations and reports. Output is deterministic: keys sorted,
rationals canonical and vector arrays in lexicographic order.
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from utils.errors import MalformedInputError
from utils.exact_core import GramMatrix, Vector, to_rational


def format_rational(x: Fraction) -> str:
    """Canonical string: "p" when the denominator is 1, "p/q" otherwise."""
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value: Any, location: str = "$") -> Fraction:
    """Parse an int or rational string; "2/4" normalizes to 1/2."""
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise MalformedInputError(f"expected an integer or rational string, got {value!r}", location)
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"invalid rational {value!r} ({e})", location)


def format_vector(v: Sequence[Fraction]) -> List[str]:
    return [format_rational(x) for x in v]


def format_matrix(rows: Sequence[Sequence[Fraction]]) -> List[List[str]]:
    return [format_vector(row) for row in rows]


def sorted_vectors(vectors) -> List[Vector]:
    return sorted(vectors)


def parse_matrix(value: Any, location: str) -> List[List[Fraction]]:
    if not isinstance(value, list) or not value:
        raise MalformedInputError("expected a non-empty array of rows", location)
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise MalformedInputError("expected an array", f"{location}[{i}]")
        rows.append([parse_rational(x, f"{location}[{i}][{j}]") for j, x in enumerate(row)])
    return rows


def parse_gram(value: Any, location: str = "$.basis_gram") -> GramMatrix:
    rows = parse_matrix(value, location)
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedInputError(f"row has length {len(row)}, expected {n}", f"{location}[{i}]")
    try:
        return GramMatrix.from_rows(rows)
    except ValueError as e:
        raise MalformedInputError(str(e), location)


def parse_vectors(value: Any, dim: int, location: str) -> List[Vector]:
    if not isinstance(value, list):
        raise MalformedInputError("expected an array of vectors", location)
    vectors = []
    for i, vec in enumerate(value):
        if not isinstance(vec, list):
            raise MalformedInputError("expected an array", f"{location}[{i}]")
        if len(vec) != dim:
            raise MalformedInputError(f"vector has length {len(vec)}, expected {dim}", f"{location}[{i}]")
        vectors.append(tuple(parse_rational(x, f"{location}[{i}][{j}]") for j, x in enumerate(vec)))
    return vectors


def loads_document(text: str) -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})")
    if not isinstance(doc, dict):
        raise MalformedInputError("expected a JSON object")
    return doc


def load_document(path: str) -> Dict[str, Any]:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e.strerror}")
    return loads_document(text)


def require(doc: Dict[str, Any], key: str, location: str = "$") -> Any:
    if key not in doc:
        raise MalformedInputError(f"missing required key '{key}'", location)
    return doc[key]


def rootset_from_dict(doc: Dict[str, Any]):
    """Build a RootSet from {"basis_gram": [...], "vectors": [...]}."""
    from core.rootsys import RootSet

    gram = parse_gram(require(doc, 'basis_gram'))
    vectors = parse_vectors(require(doc, 'vectors'), gram.dim, "$.vectors")
    return RootSet(gram, vectors)


def gram_to_dict(g: GramMatrix) -> List[List[str]]:
    return format_matrix(g.entries)


def rootset_to_dict(rs) -> Dict[str, Any]:
    return {
        'basis_gram': gram_to_dict(rs.form),
        'vectors': [format_vector(v) for v in sorted_vectors(rs.vectors)],
        'norms': {format_rational(n): c for n, c in sorted(rs.norm_histogram().items())},
    }


def dumps(payload: Any) -> str:
    """Stable JSON text; two dumps of equal payloads are byte-identical."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
