"""Scenario files: parsing, schema checks and input diagnostics.

A scenario is a UTF-8 JSON object::

    {
      "schema": "cone22/1",
      "name": "optional label",
      "weyl": {"a": [a0, ..., a4], "b": [b0, ..., b4]}   or   {"full": 4x4x4x4 nested list},
      "hypersurface": {"l22": x, "l23": x, "l33": x, "h3": [h222, h223, h233, h333]},
      "tasks": ["classify_structure", ...],
      "tolerances": {"tol": 1e-10, "tol_mult": 1e-7}
    }

Numbers may be JSON numbers or ``"p/q"`` strings.  Unknown keys anywhere
are rejected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import numpy as np

SCHEMA_VERSION = "cone22/1"

TASKS = (
    "validate_weyl",
    "classify_structure",
    "principal_roots",
    "hypersurface_classify",
    "umbilical_check",
    "cone_check",
    "canonical_reduction",
)

TASK_INPUTS = {
    "validate_weyl": ("weyl",),
    "classify_structure": ("weyl",),
    "principal_roots": ("weyl",),
    "hypersurface_classify": ("hypersurface",),
    "umbilical_check": ("weyl", "hypersurface"),
    "cone_check": ("weyl", "hypersurface"),
    "canonical_reduction": ("weyl", "hypersurface"),
}

_TOP_KEYS = {"schema", "name", "weyl", "hypersurface", "tasks", "tolerances"}
_WEYL_KEYS = {"a", "b", "full"}
_HYPER_KEYS = {"l22", "l23", "l33", "h3"}
_TOL_KEYS = {"tol", "tol_mult"}


class ScenarioError(ValueError):
    """The file cannot be read as a scenario."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


@dataclass
class Scenario:
    tasks: list
    raw: dict
    name: Optional[str] = None
    weyl_ab: Optional[tuple] = None
    weyl_full: Optional[list] = None
    hypersurface: Optional[dict] = None
    tolerances: dict = field(default_factory=dict)


class _Num(str):
    """A JSON float literal kept as text until the arithmetic mode is known."""


def _read_json(path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    return json.loads(text, parse_float=_Num)


def to_number(x, exact: bool):
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(x, (int, float)):
        return Fraction(x) if exact else float(x)
    if isinstance(x, str):
        try:
            f = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise TypeError(f"not a number: {x!r}") from exc
        if exact:
            return f
        return float(x) if isinstance(x, _Num) else float(f)
    raise TypeError(f"not a number: {x!r}")


def _is_num(x) -> bool:
    try:
        to_number(x, exact=True)
        return True
    except TypeError:
        return False


def _check_vector(diags, where, v, n):
    if not isinstance(v, list) or len(v) != n:
        diags.append(f"{where}: expected a list of {n} numbers")
        return
    for i, x in enumerate(v):
        if not _is_num(x):
            diags.append(f"{where}[{i}]: not a number ({x!r})")


def _check_full(diags, v):
    arr = None
    try:
        arr = np.array(v, dtype=object)
    except (ValueError, TypeError):
        pass
    if arr is None or arr.size != 256 or arr.shape not in ((4, 4, 4, 4), (256,)):
        diags.append("weyl.full: expected a 4x4x4x4 nested list or 256 numbers")
        return
    for x in arr.reshape(-1):
        if not _is_num(x):
            diags.append(f"weyl.full: not a number ({x!r})")
            return


def schema_diagnostics(data) -> list[str]:
    """Structural problems; empty when the object is a well-formed scenario."""
    diags: list[str] = []
    if not isinstance(data, dict):
        return ["top level must be a JSON object"]
    for k in sorted(set(data) - _TOP_KEYS):
        diags.append(f"unknown field: {k}")
    if data.get("schema") != SCHEMA_VERSION:
        diags.append(f"schema must be {SCHEMA_VERSION!r}, got {data.get('schema')!r}")
    if "name" in data and not isinstance(data["name"], str):
        diags.append("name must be a string")

    tasks = data.get("tasks")
    if not isinstance(tasks, list) or not tasks:
        diags.append("tasks: expected a non-empty list")
        tasks = []
    for t in tasks:
        if t not in TASKS:
            diags.append(f"unknown task: {t!r}")

    weyl = data.get("weyl")
    if weyl is not None:
        if not isinstance(weyl, dict):
            diags.append("weyl must be an object")
        else:
            for k in sorted(set(weyl) - _WEYL_KEYS):
                diags.append(f"unknown field: weyl.{k}")
            if "full" in weyl:
                if {"a", "b"} & set(weyl):
                    diags.append("weyl: give either full or a/b, not both")
                _check_full(diags, weyl["full"])
            else:
                for k in ("a", "b"):
                    if k not in weyl:
                        diags.append(f"weyl.{k}: missing")
                    else:
                        _check_vector(diags, f"weyl.{k}", weyl[k], 5)

    hyper = data.get("hypersurface")
    if hyper is not None:
        if not isinstance(hyper, dict):
            diags.append("hypersurface must be an object")
        else:
            for k in sorted(set(hyper) - _HYPER_KEYS):
                diags.append(f"unknown field: hypersurface.{k}")
            for k in ("l22", "l23", "l33"):
                if k not in hyper:
                    diags.append(f"hypersurface.{k}: missing")
                elif not _is_num(hyper[k]):
                    diags.append(f"hypersurface.{k}: not a number")
            if "h3" in hyper:
                _check_vector(diags, "hypersurface.h3", hyper["h3"], 4)

    tols = data.get("tolerances")
    if tols is not None:
        if not isinstance(tols, dict):
            diags.append("tolerances must be an object")
        else:
            for k in sorted(set(tols) - _TOL_KEYS):
                diags.append(f"unknown field: tolerances.{k}")
            for k in sorted(set(tols) & _TOL_KEYS):
                x = tols[k]
                if not _is_num(x) or to_number(x, exact=True) < 0:
                    diags.append(f"tolerances.{k}: expected a non-negative number")

    for t in tasks:
        for need in TASK_INPUTS.get(t, ()):
            if data.get(need) is None:
                diags.append(f"missing input: task {t} needs a {need} block")
    return diags


def load(path) -> Scenario:
    try:
        data = _read_json(path)
    except (OSError, UnicodeDecodeError) as exc:
        raise ScenarioError([f"cannot read {path}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError([f"invalid JSON: {exc}"]) from exc
    diags = schema_diagnostics(data)
    if diags:
        raise ScenarioError(diags)
    weyl = data.get("weyl")
    return Scenario(
        tasks=list(data["tasks"]),
        raw=data,
        name=data.get("name"),
        weyl_ab=(tuple(weyl["a"]), tuple(weyl["b"])) if weyl and "full" not in weyl else None,
        weyl_full=weyl["full"] if weyl and "full" in weyl else None,
        hypersurface=data.get("hypersurface"),
        tolerances=dict(data.get("tolerances") or {}),
    )
