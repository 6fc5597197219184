"""JSON documents for distributions, utilities and distortions.

Distribution documents::

    {"type": "discrete", "support": [...], "probs": [...]}
    {"type": "samples", "values": [...]}
    {"type": "joint", "dim": n, "points": [[...], ...], "probs": [...]}

A document reference is inline JSON, a file path, or ``path#key.sub`` to
pick a member of a larger file (e.g. ``bundle.json#y1``).
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .convexfn import ConvexFunctionRep, family_utility, utility_to_doc
from .dist import (
    DiscreteDistribution,
    JointDiscreteDistribution,
    from_samples,
    make_discrete,
    make_joint,
)
from .distortion import Distortion, distortion_from_doc

__all__ = [
    "SchemaError",
    "dumps",
    "load_document",
    "dist_to_doc",
    "joint_to_doc",
    "dist_from_doc",
    "functional_from_doc",
    "functional_to_doc",
    "UTILITY_FAMILIES",
    "DISTORTION_FAMILIES",
]

UTILITY_FAMILIES = {"quadratic", "ramp", "abs", "exp"}
DISTORTION_FAMILIES = {"dual_power", "power", "wang", "piecewise_linear", "tvar", "identity"}


class SchemaError(ValueError):
    """Input document does not match its schema; message names the field."""


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return json.dumps("inf" if x > 0 else ("-inf" if x < 0 else "nan"))
    return format(x, ".17g")


def _encode(o: Any, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(o, (bool, np.bool_)):
        return "true" if o else "false"
    if o is None:
        return "null"
    if isinstance(o, (int, np.integer)):
        return str(int(o))
    if isinstance(o, (float, np.floating)):
        return _fmt_float(float(o))
    if isinstance(o, str):
        return json.dumps(o)
    if isinstance(o, np.ndarray):
        o = o.tolist()
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [json.dumps(str(k)) + ": " + _encode(v, indent, level + 1) for k, v in o.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(o, (list, tuple)):
        if not o:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in o):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in o) + "]"
        items = [_encode(v, indent, level + 1) for v in o]
        return "[" + pad + ("," + pad).join(items) + end + "]"
    if hasattr(o, "to_dict"):
        return _encode(o.to_dict(), indent, level)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0)


def load_document(ref: str | dict | list) -> Any:
    """Resolve inline JSON, a path, or ``path#key`` into a parsed document."""
    if isinstance(ref, (dict, list)):
        return ref
    text = ref.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"inline JSON: line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    path, _, key = text.partition("#")
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno} col {exc.colno}: {exc.msg}") from None
    if key:
        for part in key.split("."):
            if not isinstance(doc, dict) or part not in doc:
                raise SchemaError(f"{path}: no member {key!r}")
            doc = doc[part]
    return doc


def dist_to_doc(D: DiscreteDistribution) -> dict:
    return {"type": "discrete", "support": D.support.tolist(), "probs": D.probs.tolist()}


def joint_to_doc(J: JointDiscreteDistribution) -> dict:
    return {
        "type": "joint",
        "dim": J.dim,
        "points": [list(p) for p in J.points],
        "probs": J.probs.tolist(),
    }


def _numbers(doc: dict, field: str, where: str) -> list[float]:
    if field not in doc:
        raise SchemaError(f"{where}: missing field {field!r}")
    vals = doc[field]
    if not isinstance(vals, list) or not vals:
        raise SchemaError(f"{where}.{field}: expected a nonempty list of numbers")
    out = []
    for i, v in enumerate(vals):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise SchemaError(f"{where}.{field}[{i}]: expected a finite number, got {v!r}")
        out.append(float(v))
    return out


def _check_probs(probs: list[float], where: str) -> None:
    for i, p in enumerate(probs):
        if p < 0:
            raise SchemaError(f"{where}.probs[{i}]: negative probability {p!r}")
    if abs(math.fsum(probs) - 1.0) > 1e-9:
        raise SchemaError(f"{where}.probs: sums to {math.fsum(probs)!r}, expected 1")


def dist_from_doc(doc: Any, where: str = "dist") -> DiscreteDistribution | JointDiscreteDistribution:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    kind = doc.get("type")
    if kind == "discrete":
        xs = _numbers(doc, "support", where)
        ps = _numbers(doc, "probs", where)
        if len(xs) != len(ps):
            raise SchemaError(f"{where}: support and probs differ in length")
        _check_probs(ps, where)
        return make_discrete(xs, ps)
    if kind == "samples":
        return from_samples(_numbers(doc, "values", where))
    if kind == "joint":
        dim = doc.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise SchemaError(f"{where}.dim: expected a positive integer")
        pts = doc.get("points")
        if not isinstance(pts, list) or not pts:
            raise SchemaError(f"{where}.points: expected a nonempty list")
        for i, pt in enumerate(pts):
            if not isinstance(pt, list) or len(pt) != dim:
                raise SchemaError(f"{where}.points[{i}]: expected {dim} coordinates")
            for v in pt:
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                    raise SchemaError(f"{where}.points[{i}]: non-numeric coordinate {v!r}")
        ps = _numbers(doc, "probs", where)
        if len(ps) != len(pts):
            raise SchemaError(f"{where}: points and probs differ in length")
        _check_probs(ps, where)
        return make_joint(pts, ps)
    raise SchemaError(f"{where}.type: expected 'discrete', 'samples' or 'joint', got {kind!r}")


def functional_from_doc(
    doc: Any, lo: float = -1.0, hi: float = 1.0
) -> ConvexFunctionRep | Distortion:
    """Utility or distortion from its document; utilities are made faithful on [lo, hi]."""
    if not isinstance(doc, dict):
        raise SchemaError("functional: expected an object")
    kind = doc.get("kind")
    family = doc.get("family")
    try:
        if kind == "distortion" or family in DISTORTION_FAMILIES:
            return distortion_from_doc(doc)
        if kind == "utility" or family in UTILITY_FAMILIES or "gamma" in doc or "anchor" in doc:
            return family_utility(doc, lo, hi)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"functional: {exc}") from None
    raise SchemaError(f"functional.family: unknown family {family!r}")


def functional_to_doc(f: ConvexFunctionRep | Distortion) -> dict:
    if isinstance(f, Distortion):
        return {"kind": "distortion", **f.to_doc()}
    return {"kind": "utility", **utility_to_doc(f)}
