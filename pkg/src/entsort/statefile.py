"""Line-delimited JSON state files.

The first line is a header ``{"format": "entsort-states", "version": "1"}``;
each following line is one record::

    {"id": "bell-0", "kind": "pure", "dim_a": 2, "dim_b": 2, "data": [[re, im], ...]}

``data`` is the amplitude vector for pure states and the row-major matrix
for density states.  Floats are written with ``repr`` precision, so a
serialize/parse/serialize cycle is byte-identical.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from entsort.states import DensityState, PureState

FORMAT = "entsort-states"
VERSION = "1"


class StateFileError(ValueError):
    pass


def _pairs(a: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(a).reshape(-1)]


def record_of(state_id: str, state) -> dict:
    if isinstance(state, PureState):
        kind, data = "pure", state.amplitudes
    elif isinstance(state, DensityState):
        kind, data = "density", state.matrix
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    return {"id": str(state_id), "kind": kind, "dim_a": state.dim_a, "dim_b": state.dim_b, "data": _pairs(data)}


def state_of(record: dict):
    """Rebuild and validate the state described by one record."""
    try:
        kind, dim_a, dim_b = record["kind"], int(record["dim_a"]), int(record["dim_b"])
        data = np.array([complex(re, im) for re, im in record["data"]], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFileError(f"malformed record: {exc}") from exc
    if kind == "pure":
        return PureState(dim_a, dim_b, data)
    if kind == "density":
        n = dim_a * dim_b
        if data.size != n * n:
            raise StateFileError(f"density record needs {n * n} entries, has {data.size}")
        return DensityState(dim_a, dim_b, data.reshape(n, n))
    raise StateFileError(f"unknown state kind {kind!r}")


def dumps(items: Iterable[tuple[str, object]]) -> str:
    lines = [json.dumps({"format": FORMAT, "version": VERSION}, separators=(",", ":"))]
    for sid, state in items:
        lines.append(json.dumps(record_of(sid, state), separators=(",", ":")))
    return "\n".join(lines) + "\n"


def loads(text: str, strict: bool = True):
    """Parse a state file.

    Returns ``(states, errors)``: ``states`` is a list of ``(id, state)``
    and ``errors`` a list of ``(id, message)`` for records that failed
    validation.  With ``strict`` the first bad record raises instead.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise StateFileError("empty state file (missing header)")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise StateFileError(f"bad header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != FORMAT:
        raise StateFileError("not an entsort state file")
    if header.get("version") != VERSION:
        raise StateFileError(f"unsupported version {header.get('version')!r}")

    states, errors, seen = [], [], set()
    for lineno, line in enumerate(lines[1:], start=2):
        sid = f"line-{lineno}"
        try:
            record = json.loads(line)
            sid = str(record.get("id", sid))
            if sid in seen:
                raise StateFileError(f"duplicate id {sid!r}")
            seen.add(sid)
            states.append((sid, state_of(record)))
        except (ValueError, AttributeError) as exc:
            if strict:
                raise StateFileError(f"{sid}: {exc}") from exc
            errors.append((sid, str(exc)))
    return states, errors


def load(path: str, strict: bool = True):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), strict)


def dump(path: str, items) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(items))
