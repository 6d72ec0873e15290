"""
Loading JSON arguments: inline JSON text, file paths, the data directory
named by ``DEFSPACE_DATA`` and the bundled scenario files.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

DATA_ENV = "DEFSPACE_DATA"


class InputError(ValueError):
    pass


def parse_json_text(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def find_file(name: str, base: Path | None = None) -> Path | None:
    """Resolve a path against the working directory, ``base``, $DEFSPACE_DATA and bundled scenarios."""
    candidates = [Path(name)]
    if base is not None:
        candidates.append(base / name)
    data = os.environ.get(DATA_ENV)
    if data:
        candidates.append(Path(data) / name)
    bundled = resources.files("defspace") / "scenarios"
    candidates += [Path(str(bundled / name)), Path(str(bundled / f"{name}.json"))]
    for c in candidates:
        if c.is_file():
            return c
    return None


def load_json(value, base: Path | None = None):
    """Return ``value`` parsed: dicts/lists pass through, strings are JSON text or a file name."""
    if not isinstance(value, str):
        return value
    s = value.strip()
    if s.startswith("{") or s.startswith("["):
        return parse_json_text(s)
    path = find_file(s, base)
    if path is None:
        raise InputError(f"file not found: {value}")
    return parse_json_text(path.read_text(), str(path))


def dumps(obj) -> str:
    """Deterministic machine output."""
    return json.dumps(obj, sort_keys=True, indent=2)
