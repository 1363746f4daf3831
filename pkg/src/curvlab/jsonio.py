"""JSON tensor schema.

A tensor is ``{"dim": n, "order": k, "components": [...]}`` with the
``n**k`` components flattened in row-major order. A symmetric form may
instead be given as ``{"matrix": [[...], ...]}``. Floats are written with
Python's shortest round-trip representation, so a re-read value is
bit-identical to the one written.
"""

from __future__ import annotations

import json
import math
from numbers import Real

import numpy as np

from .errors import SchemaError

__all__ = ["tensor_to_json", "tensor_from_json", "symform_from_json", "dumps", "loads"]


def tensor_to_json(T) -> dict:
    arr = np.asarray(T, dtype=np.float64)
    n = arr.shape[0] if arr.ndim else 0
    return {
        "dim": int(n),
        "order": int(arr.ndim),
        "components": [float(x) for x in arr.ravel(order="C")],
    }


def _number(x, path):
    if isinstance(x, bool) or not isinstance(x, Real):
        raise SchemaError(path, f"expected a number, got {type(x).__name__}")
    x = float(x)
    if not math.isfinite(x):
        raise SchemaError(path, "non-finite value")
    return x


def _int(obj, key, path):
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing field")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{path}.{key}", f"expected an integer, got {v!r}")
    return v


def tensor_from_json(obj, path="$", order=None) -> np.ndarray:
    """Parse a tensor object, reporting the offending field path on error."""
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if "matrix" in obj and "components" not in obj:
        arr = _matrix(obj["matrix"], f"{path}.matrix")
    else:
        n = _int(obj, "dim", path)
        k = _int(obj, "order", path)
        if n < 1:
            raise SchemaError(f"{path}.dim", "dimension must be positive")
        if k < 0:
            raise SchemaError(f"{path}.order", "order must be nonnegative")
        comps = obj.get("components")
        if not isinstance(comps, list):
            raise SchemaError(f"{path}.components", "expected an array")
        if len(comps) != n**k:
            raise SchemaError(f"{path}.components", f"expected {n**k} entries, got {len(comps)}")
        vals = [_number(x, f"{path}.components[{i}]") for i, x in enumerate(comps)]
        arr = np.array(vals, dtype=np.float64).reshape((n,) * k)
    if order is not None and arr.ndim != order:
        raise SchemaError(f"{path}.order", f"expected order {order}, got {arr.ndim}")
    return arr


def _matrix(rows, path):
    if not isinstance(rows, list) or not rows:
        raise SchemaError(path, "expected a nonempty array of rows")
    n = len(rows)
    out = np.empty((n, n))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"{path}[{i}]", f"expected a row of length {n}")
        for j, x in enumerate(row):
            out[i, j] = _number(x, f"{path}[{i}][{j}]")
    return out


def symform_from_json(obj, path="$", tol=1e-12) -> np.ndarray:
    """Parse a symmetric (0,2)-tensor; asymmetric input is a schema error."""
    m = tensor_from_json(obj, path, order=2)
    scale = max(float(np.max(np.abs(m))), 1.0)
    if np.max(np.abs(m - m.T)) > tol * scale:
        raise SchemaError(path, "matrix is not symmetric")
    return 0.5 * (m + m.T)


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_default, allow_nan=False)


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"malformed JSON: {exc}") from exc
