"""Shared tolerances and compensated summation helpers."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

# Values closer than this are the same atom.
ATOM_TOL = 1e-12
# Probability vectors must sum to one within this.
PROB_TOL = 1e-12
# Slack allowed when comparing stop-loss / TVaR / CDF values.
ORDER_TOL = 1e-12
# Lower bound a density must clear to count as covering Lebesgue measure.
COVERAGE_EPS = 1e-12
# Functional values closer than this are treated as equal.
EQUALITY_TOL = 1e-12
# CDF sup-distance at or above this certifies that two laws differ.
DIFFER_TOL = 1e-9


def fsum(values: Iterable[float]) -> float:
    return math.fsum(float(v) for v in values)


def dot(xs, ps) -> float:
    """Exactly rounded sum of products of two equal-length sequences."""
    return math.fsum(float(x) * float(p) for x, p in zip(xs, ps))


def compensated_cumsum(values) -> np.ndarray:
    """Running Neumaier sum; each prefix carries O(eps) error regardless of length."""
    out = np.empty(len(values), dtype=float)
    s = 0.0
    c = 0.0
    for i, v in enumerate(values):
        v = float(v)
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out[i] = s + c
    return out


def require_finite(values, what: str = "value") -> None:
    for v in values:
        if not math.isfinite(float(v)):
            raise ValueError(f"non-finite {what}: {v!r}")
