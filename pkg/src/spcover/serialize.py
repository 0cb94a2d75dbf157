"""JSON encoding of matrices, cover elements and result records.

Matrices are row-major lists; complex numbers are ``[re, im]`` pairs; non-finite
floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
"""
from __future__ import annotations

import dataclasses
import json
import math
from typing import Any

import numpy as np

from .cover import CoverElement, GroupPath
from .errors import InvalidInput


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, CoverElement):
        return cover_to_json(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return to_jsonable(obj.to_dict())
        return to_jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    if isinstance(obj, tuple) and hasattr(obj, "_asdict"):
        return to_jsonable(obj._asdict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, allow_nan=False)


def matrix_from_json(data: Any, shape=(4, 4)) -> np.ndarray:
    """Accept a flat row-major list or nested rows; complex entries as [re, im]."""
    arr = np.asarray(data, dtype=float)
    size = shape[0] * shape[1]
    if arr.size == 2 * size and arr.shape[-1] == 2:
        arr = arr[..., 0] + 1j * arr[..., 1]
    if arr.size != size:
        raise InvalidInput(f"expected {size} entries, got {arr.size}")
    return arr.reshape(shape)


def matrix_to_json(m: np.ndarray) -> list:
    return to_jsonable(np.asarray(m).reshape(-1))


def cover_to_json(x: CoverElement) -> dict:
    return {"g": matrix_to_json(x.g), "t": float(x.t)}


def cover_from_json(obj: Any) -> CoverElement:
    if not isinstance(obj, dict) or "g" not in obj or "t" not in obj:
        raise InvalidInput('cover element JSON needs "g" and "t"')
    return CoverElement(matrix_from_json(obj["g"]), float(obj["t"]))


def path_from_json(obj: Any, t0: float = 0.0) -> GroupPath:
    if not isinstance(obj, list) or not obj:
        raise InvalidInput("a path is a non-empty JSON array of matrices")
    return GroupPath(np.stack([matrix_from_json(m) for m in obj]), t0)
