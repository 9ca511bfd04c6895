"""JSON forms for spaces, maps, group-algebra elements and polynomials.

Rationals are always strings ("3", "-2/3"), never floats; plain ints stay ints.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .linalg import QMatrix


def rational_str(x) -> str:
    return str(Fraction(x))


def space_to_json(v):
    return str(v)


def space_from_json(s):
    from .supertensor import SuperSpace

    return SuperSpace.from_string(s)


def map_to_json(f):
    return {"source": str(f.source), "target": str(f.target), "entries": f.matrix.to_strings()}


def map_from_json(obj):
    from .supertensor import GradedMap, SuperSpace

    source = SuperSpace.from_string(obj["source"])
    target = SuperSpace.from_string(obj["target"])
    rows = obj["entries"]
    if len(rows) != target.dim or any(len(r) != source.dim for r in rows):
        raise ValueError("entries do not match the declared source and target")
    if target.dim == 0 or source.dim == 0:
        return GradedMap.zero(source, target)
    return GradedMap(source, target, QMatrix.from_rows(rows))


def jsonable(obj):
    """Recursively convert library values into JSON-ready data."""
    from .deligne import TracePolynomial
    from .supertensor import GradedMap, SuperSpace
    from .symgroup import GroupAlgebraElement, Permutation

    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, GradedMap):
        return map_to_json(obj)
    if isinstance(obj, SuperSpace):
        return space_to_json(obj)
    if isinstance(obj, QMatrix):
        return obj.to_strings()
    if isinstance(obj, GroupAlgebraElement):
        return obj.to_text()
    if isinstance(obj, Permutation):
        return list(obj.images)
    if isinstance(obj, TracePolynomial):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")
