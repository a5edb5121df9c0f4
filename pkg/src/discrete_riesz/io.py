"""JSON readers and writers for sequences, weights and integer sets."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .core import DomainError, FiniteSequence
from .weights import Weight
from .whitney import IntegerSet


class InputError(DomainError):
    """Well-formed file, malformed content."""


def _load(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def sequence_from_obj(obj) -> FiniteSequence:
    """``{"offset": i, "values": [...]}`` or a bare list (offset 0)."""
    if isinstance(obj, list):
        obj = {"offset": 0, "values": obj}
    if not isinstance(obj, dict) or "values" not in obj:
        raise InputError("sequence must be a list or an object with 'values'")
    vals = obj["values"]
    if not isinstance(vals, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                                             for v in vals):
        raise InputError("sequence values must be numbers")
    offset = obj.get("offset", 0)
    if not isinstance(offset, int) or isinstance(offset, bool):
        raise InputError("sequence offset must be an integer")
    return FiniteSequence(vals, offset)


def sequence_from_csv(text: str) -> FiniteSequence:
    """Rows ``index,value``; gaps are zeros, a non-numeric first row is a header."""
    entries: dict[int, float] = {}
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or not "".join(row).strip():
            continue
        if len(row) != 2:
            raise InputError(f"line {lineno}: expected index,value")
        try:
            k, v = int(row[0]), float(row[1])
        except ValueError:
            if lineno == 1:
                continue
            raise InputError(f"line {lineno}: bad number") from None
        if not math.isfinite(v):
            raise InputError(f"line {lineno}: value must be finite")
        if k in entries:
            raise InputError(f"line {lineno}: duplicate index {k}")
        entries[k] = v
    return FiniteSequence.from_mapping(entries)


def read_sequence(path) -> FiniteSequence:
    """JSON sequence, or CSV when the file name ends in ``.csv``."""
    if str(path).lower().endswith(".csv"):
        return sequence_from_csv(Path(path).read_text())
    return sequence_from_obj(_load(path))


def read_weight(path) -> Weight:
    obj = _load(path)
    if not isinstance(obj, dict):
        raise InputError("weight spec must be a JSON object")
    return Weight.from_dict(obj)


def read_integer_set(path) -> IntegerSet:
    obj = _load(path)
    if not isinstance(obj, dict):
        raise InputError("set must be a JSON object with 'runs'")
    return IntegerSet.from_dict(obj)


def dumps(obj) -> str:
    """Deterministic JSON; floats use the shortest round-trip form."""
    return json.dumps(_clean(obj)) + "\n"


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def write_text(path, text: str) -> None:
    Path(path).write_text(text)
