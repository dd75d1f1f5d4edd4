"""Reading and writing channel description files.

A channel file is UTF-8 JSON::

    { "name": str, "x1": [str], "x2": [str], "y": [str],
      "pmf": [[[num]]],          // indexed [x1][x2][y]
      "group": { ... } }          // optional additive structure

Probabilities are written with 17 significant digits so that round trips
preserve them bit-exactly. On load, rows whose sum deviates from 1 by
less than 1e-9 are renormalized; larger deviations are rejected with a
message naming the offending path into the document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._util import ZERO_CLAMP
from .channel import Mac, SUM_TOL
from .errors import ChannelFormatError
from .groups import GroupSpec


@dataclass(frozen=True)
class ChannelFile:
    """Everything a channel file carries: the law plus optional extras."""

    mac: Mac
    group: GroupSpec | None = None
    name: str = ""


def _parse_alphabet(obj: dict, key: str) -> tuple[str, ...]:
    if key not in obj:
        raise ChannelFormatError(f"{key}: missing field")
    raw = obj[key]
    if not isinstance(raw, list) or not raw:
        raise ChannelFormatError(f"{key}: expected a non-empty list of symbols")
    labels = [str(s) for s in raw]
    seen = set()
    for s in labels:
        if s in seen:
            raise ChannelFormatError(f"{key}: duplicate symbol {s!r}")
        seen.add(s)
    return tuple(labels)


def _parse_pmf(obj: dict, n1: int, n2: int, ny: int) -> np.ndarray:
    if "pmf" not in obj:
        raise ChannelFormatError("pmf: missing field")
    raw = obj["pmf"]
    if not isinstance(raw, list) or len(raw) != n1:
        raise ChannelFormatError(f"pmf: expected {n1} blocks, one per x1 symbol")
    out = np.zeros((n1, n2, ny))
    for i, block in enumerate(raw):
        if not isinstance(block, list) or len(block) != n2:
            raise ChannelFormatError(f"pmf[{i}]: expected {n2} rows, one per x2 symbol")
        for j, row in enumerate(block):
            if not isinstance(row, list) or len(row) != ny:
                raise ChannelFormatError(
                    f"pmf[{i}][{j}]: expected {ny} probabilities, one per y symbol"
                )
            for k, v in enumerate(row):
                if not isinstance(v, (int, float)) or isinstance(v, bool):
                    raise ChannelFormatError(f"pmf[{i}][{j}][{k}]: not a number")
                v = float(v)
                if abs(v) < ZERO_CLAMP:
                    v = 0.0
                if v < 0.0:
                    raise ChannelFormatError(
                        f"pmf[{i}][{j}][{k}]: negative probability {v!r}"
                    )
                if v > 1.0 + SUM_TOL:
                    raise ChannelFormatError(
                        f"pmf[{i}][{j}][{k}]: probability {v!r} above 1"
                    )
                out[i, j, k] = v
            s = out[i, j].sum()
            if abs(s - 1.0) > SUM_TOL:
                raise ChannelFormatError(f"pmf[{i}][{j}]: row sums to {s!r}")
            out[i, j] /= s
    return out


def _parse_group(obj: dict, n1: int, n2: int, ny: int) -> GroupSpec | None:
    if "group" not in obj or obj["group"] is None:
        return None
    raw = obj["group"]
    if not isinstance(raw, dict):
        raise ChannelFormatError("group: expected an object")
    try:
        g = GroupSpec.from_dict(raw)
    except ChannelFormatError:
        raise
    except Exception as exc:
        raise ChannelFormatError(f"group: {exc}") from None
    if g.embed_x1.shape[0] != n1:
        raise ChannelFormatError(
            f"group.embed_x1: expected {n1} entries, got {g.embed_x1.shape[0]}"
        )
    if g.embed_x2.shape[0] != n2:
        raise ChannelFormatError(
            f"group.embed_x2: expected {n2} entries, got {g.embed_x2.shape[0]}"
        )
    if g.y_action.shape[0] != ny:
        raise ChannelFormatError(
            f"group.y_action: expected {ny} rows, got {g.y_action.shape[0]}"
        )
    return g


def load_channel_file(path) -> ChannelFile:
    """Parse a channel file into the law, optional group and name."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ChannelFormatError(f"cannot read {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChannelFormatError(f"{path}: malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ChannelFormatError(f"{path}: top level must be an object")
    x1 = _parse_alphabet(obj, "x1")
    x2 = _parse_alphabet(obj, "x2")
    y = _parse_alphabet(obj, "y")
    pmf = _parse_pmf(obj, len(x1), len(x2), len(y))
    group = _parse_group(obj, len(x1), len(x2), len(y))
    name = str(obj.get("name", ""))
    mac = Mac(x1, x2, y, pmf, name=name)
    return ChannelFile(mac=mac, group=group, name=name)


def load_channel(path) -> Mac:
    """Parse a channel file and return just the channel law."""
    return load_channel_file(path).mac


def save_channel(mac: Mac, path, group: GroupSpec | None = None,
                 name: str | None = None) -> None:
    """Write a channel (and optional group block) as a JSON file."""
    obj = {
        "name": mac.name if name is None else name,
        "x1": list(mac.x1_alphabet),
        "x2": list(mac.x2_alphabet),
        "y": list(mac.y_alphabet),
        "pmf": [[[float(v) for v in row] for row in block] for block in mac.pmf],
    }
    if group is not None:
        obj["group"] = group.to_dict()
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
