"""Convex and concave utilities encoded by their curvature measure.

A convex ``u`` is stored as its value and right slope at 0 plus the measure
``gamma`` with ``gamma((x, y]) = u'_+(y) - u'_+(x)``. Then

    u(x) = u(0) + u'_+(0) x + int_{(0, inf)} (x - t)_+ dgamma(t)
                            + int_{(-inf, 0]} (t - x)_+ dgamma(t).

With atoms plus step densities both ``u`` and ``E[u(X)]`` for a discrete
``X`` come out in closed form. A concave utility is the negation of a convex
body and carries ``orientation == "concave"``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._numerics import COVERAGE_EPS, dot, fsum
from .dist import DiscreteDistribution, lower_stop_loss, mean, stop_loss
from .measure import DensityPiece, RadonMeasure

__all__ = [
    "ConvexFunctionRep",
    "ConvexityCheck",
    "ExtrapolationWarning",
    "cfn_from_piecewise_linear",
    "cfn_from_density",
    "cfn_quadratic",
    "cfn_exp",
    "cfn_eval",
    "cfn_right_derivative",
    "expected_utility",
    "expected_utility_direct",
    "covers_lebesgue_gamma",
    "is_strictly_convex",
    "verify_convexity_grid",
]


class ExtrapolationWarning(UserWarning):
    """Evaluation left the interval on which a truncated utility is faithful."""


@dataclass(frozen=True)
class ConvexFunctionRep:
    anchor_value: float
    anchor_slope: float
    curvature: RadonMeasure
    orientation: str = "convex"
    # interval on which the representation equals the intended utility;
    # None means exact everywhere
    domain: tuple[float, float] | None = None

    def __post_init__(self):
        if self.orientation not in ("convex", "concave"):
            raise ValueError(f"orientation must be 'convex' or 'concave', not {self.orientation!r}")

    @property
    def sign(self) -> float:
        return 1.0 if self.orientation == "convex" else -1.0

    def negated(self) -> "ConvexFunctionRep":
        """Same body, opposite orientation: represents ``-u``."""
        flip = "concave" if self.orientation == "convex" else "convex"
        return ConvexFunctionRep(self.anchor_value, self.anchor_slope, self.curvature, flip, self.domain)

    def __call__(self, x: float) -> float:
        return cfn_eval(self, x)


def _body_eval(U: ConvexFunctionRep, x: float) -> float:
    g = U.curvature
    parts = [U.anchor_value, U.anchor_slope * x]
    if x > 0:
        parts.append(g.integrate_pwl(lambda t: x - t, (), 0.0, x))
    elif x < 0:
        parts.append(g.integrate_pwl(lambda t: t - x, (), x, 0.0))
    return fsum(parts)


def _check_domain(U: ConvexFunctionRep, lo: float, hi: float) -> None:
    if U.domain is not None and (lo < U.domain[0] or hi > U.domain[1]):
        warnings.warn(
            f"evaluating on [{lo}, {hi}] outside the faithful domain {U.domain}; "
            "the representation continues affinely there",
            ExtrapolationWarning,
            stacklevel=3,
        )


def cfn_eval(U: ConvexFunctionRep, x: float) -> float:
    _check_domain(U, x, x)
    return U.sign * _body_eval(U, x)


def cfn_right_derivative(U: ConvexFunctionRep, x: float) -> float:
    g = U.curvature
    if x >= 0:
        d = U.anchor_slope + g.measure(0.0, x)
    else:
        d = U.anchor_slope - g.measure(x, 0.0)
    return U.sign * d


def cfn_from_piecewise_linear(
    knots: Sequence[float],
    slopes: Sequence[float],
    point: tuple[float, float] | None = None,
    orientation: str = "convex",
) -> ConvexFunctionRep:
    """Convex piecewise-linear function with the given kinks and slopes.

    ``slopes`` has one more entry than ``knots``: the slope left of the first
    kink, between kinks, and right of the last. ``point = (x0, y0)`` pins the
    level; by default the value is 0 at the leftmost knot (or at 0 when there
    are no knots).
    """
    knots = [float(k) for k in knots]
    slopes = [float(s) for s in slopes]
    if len(slopes) != len(knots) + 1:
        raise ValueError("need exactly one more slope than knots")
    if any(k2 <= k1 for k1, k2 in zip(knots, knots[1:])):
        raise ValueError("knots must be strictly increasing (no duplicates)")
    if any(s2 < s1 for s1, s2 in zip(slopes, slopes[1:])):
        raise ValueError("slopes must be nondecreasing for a convex function")
    atoms = [(k, s2 - s1) for k, s1, s2 in zip(knots, slopes, slopes[1:]) if s2 > s1]
    gamma = RadonMeasure(tuple(atoms))
    slope0 = slopes[sum(1 for k in knots if k <= 0)]
    if point is None:
        point = (knots[0], 0.0) if knots else (0.0, 0.0)
    x0, y0 = point
    shape = ConvexFunctionRep(0.0, slope0, gamma)
    u0 = y0 - _body_eval(shape, x0)
    body = ConvexFunctionRep(u0, slope0, gamma)
    return body if orientation == "convex" else body.negated()


def cfn_from_density(
    anchor_value: float,
    anchor_slope: float,
    pieces: Sequence[Sequence[float]],
    orientation: str = "convex",
    atoms: Sequence[Sequence[float]] = (),
) -> ConvexFunctionRep:
    """Utility whose curvature is the step density ``[[a, b, v], ...]``.

    The density plays the role of ``u''``. The faithful domain is the hull of
    the pieces together with 0 (where the anchor lives).
    """
    for a, b, v in pieces:
        if v < 0:
            raise ValueError("negative density")
    gamma = RadonMeasure.from_lists(atoms, pieces)
    hull = gamma.hull()
    domain = None if hull is None else (min(hull[0], 0.0), max(hull[1], 0.0))
    return ConvexFunctionRep(anchor_value, anchor_slope, gamma, orientation, domain)


def cfn_quadratic(lo: float, hi: float, center: float = 0.0, orientation: str = "convex") -> ConvexFunctionRep:
    """Exact ``(x - center)**2`` on ``[min(lo, 0), max(hi, 0)]``."""
    lo, hi = min(lo, 0.0), max(hi, 0.0)
    if not lo < hi:
        lo, hi = -1.0, 1.0
    return cfn_from_density(center * center, -2.0 * center, [[lo, hi, 2.0]], orientation)


def cfn_exp(lo: float, hi: float, rate: float = 1.0, cells: int = 400, orientation: str = "convex") -> ConvexFunctionRep:
    """Step-density approximation of ``exp(rate * x)`` on ``[min(lo,0), max(hi,0)]``.

    Each cell carries the exact slope increment of the true function, so the
    right derivative matches at cell edges and the value error is O(h^2).
    """
    if rate == 0:
        raise ValueError("rate must be nonzero")
    lo, hi = min(lo, 0.0), max(hi, 0.0)
    if not lo < hi:
        lo, hi = -1.0, 1.0
    # 0 is always an edge so the anchor sits on a cell boundary
    n_left = max(1, round(cells * -lo / (hi - lo))) if lo < 0 else 0
    left = np.linspace(lo, 0.0, n_left + 1)[:-1] if n_left else np.empty(0)
    right = np.linspace(0.0, hi, max(1, cells - n_left) + 1) if hi > 0 else np.array([0.0])
    edges = np.concatenate([left, right])
    deriv = rate * np.exp(rate * edges)
    pieces = [[a, b, (db - da) / (b - a)] for a, b, da, db in zip(edges, edges[1:], deriv, deriv[1:])]
    return cfn_from_density(1.0, rate, pieces, orientation)


def _body_expectation(U: ConvexFunctionRep, D: DiscreteDistribution) -> float:
    g = U.curvature
    kinks = D.support
    parts = [U.anchor_value, U.anchor_slope * mean(D)]
    parts.append(g.integrate_pwl(lambda t: stop_loss(D, t), kinks, 0.0, math.inf))
    parts.append(g.integrate_pwl(lambda t: lower_stop_loss(D, t), kinks, -math.inf, 0.0))
    return fsum(parts)


def expected_utility(U: ConvexFunctionRep, D: DiscreteDistribution) -> float:
    """E[u(X)] through the curvature measure and stop-loss transforms of X."""
    _check_domain(U, D.lower, D.upper)
    return U.sign * _body_expectation(U, D)


def expected_utility_direct(U: ConvexFunctionRep, D: DiscreteDistribution) -> float:
    """E[u(X)] by pointwise evaluation, sum u(x_i) p_i."""
    _check_domain(U, D.lower, D.upper)
    return U.sign * dot([_body_eval(U, x) for x in D.support], D.probs)


def covers_lebesgue_gamma(U: ConvexFunctionRep, a: float, b: float, eps: float = COVERAGE_EPS) -> bool:
    """Whether Lebesgue measure on [a, b] is absolutely continuous w.r.t. the curvature.

    Decided as: curvature density at least ``eps`` throughout ``[a, b]``.
    """
    return U.curvature.covers(a, b, eps)


def is_strictly_convex(U: ConvexFunctionRep, a: float, b: float) -> bool:
    """Strict convexity (or concavity) of the body on [a, b].

    Within atoms-plus-steps this means every subinterval carries curvature,
    i.e. the density is positive throughout; atoms alone never suffice.
    """
    return U.curvature.covers(a, b, eps=np.nextafter(0.0, 1.0))


@dataclass(frozen=True)
class ConvexityCheck:
    holds: bool
    witness: tuple[float, float, float] | None = None

    def __bool__(self) -> bool:
        return self.holds


def verify_convexity_grid(xs: Sequence[float], fs: Sequence[float], tol: float = 1e-12) -> ConvexityCheck:
    """Second-difference test on an increasing grid.

    Fails at the first triple whose slope drops by more than ``tol``; the
    witness is the three abscissae.
    """
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=float)
    if xs.size < 3 or xs.shape != fs.shape:
        raise ValueError("need at least three matching samples")
    if np.any(np.diff(xs) <= 0):
        raise ValueError("grid must be strictly increasing")
    slopes = np.diff(fs) / np.diff(xs)
    jumps = np.diff(slopes)
    bad = np.nonzero(jumps < -tol)[0]
    if bad.size:
        i = int(bad[0])
        return ConvexityCheck(False, (float(xs[i]), float(xs[i + 1]), float(xs[i + 2])))
    return ConvexityCheck(True)


def family_utility(doc: dict, lo: float, hi: float) -> ConvexFunctionRep:
    """Build a utility from a family document, faithful on ``[lo, hi]``.

    Families: ``quadratic`` (center ``a``), ``ramp`` ``(x - a)+``, ``abs``
    ``|x - a|``, ``exp`` (rate ``t``). An explicit ``anchor``/``gamma``
    document is also accepted.
    """
    orientation = doc.get("orientation", "convex")
    if "gamma" in doc or "anchor" in doc:
        u0, s0 = doc.get("anchor", [0.0, 0.0])
        gamma = RadonMeasure.from_doc(doc.get("gamma", {}))
        hull = gamma.hull()
        domain = None
        if hull is not None and gamma.pieces:
            domain = (min(hull[0], 0.0), max(hull[1], 0.0))
        return ConvexFunctionRep(float(u0), float(s0), gamma, orientation, domain)
    family = doc.get("family")
    a = float(doc.get("a", 0.0))
    margin = 1.0
    if family == "quadratic":
        return cfn_quadratic(lo - margin, hi + margin, a, orientation)
    if family == "ramp":
        return cfn_from_piecewise_linear([a], [0.0, 1.0], (a, 0.0), orientation)
    if family == "abs":
        return cfn_from_piecewise_linear([a], [-1.0, 1.0], (a, 0.0), orientation)
    if family == "exp":
        return cfn_exp(lo - margin, hi + margin, float(doc.get("t", 1.0)), orientation=orientation)
    raise ValueError(f"unknown utility family {family!r}")


def utility_to_doc(U: ConvexFunctionRep) -> dict:
    return {
        "anchor": [U.anchor_value, U.anchor_slope],
        "gamma": U.curvature.to_doc(),
        "orientation": U.orientation,
    }
