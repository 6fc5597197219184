"""Finite discrete distributions on the real line and on R^n.

Every random variable in the package is a :class:`DiscreteDistribution`: a
strictly increasing support with positive probabilities. Because all the
functionals below are step or piecewise-linear in the support, they are
evaluated in closed form; the only error is float rounding, kept small by
compensated summation.
"""

from __future__ import annotations

import bisect
import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from ._numerics import (
    ATOM_TOL,
    PROB_TOL,
    compensated_cumsum,
    dot,
    fsum,
    require_finite,
)

__all__ = [
    "DiscreteDistribution",
    "JointDiscreteDistribution",
    "make_discrete",
    "make_joint",
    "degenerate",
    "from_samples",
    "cdf",
    "survival",
    "quantile_left",
    "quantile_right",
    "mean",
    "raw_moment",
    "stop_loss",
    "lower_stop_loss",
    "tvar",
    "independent_joint",
    "distribution_of_sum",
    "independent_sum",
    "same_distribution",
    "cdf_distance",
]


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class DiscreteDistribution:
    """Law of a real random variable with finitely many atoms.

    Use :func:`make_discrete` to build one from raw values and weights; the
    constructor only validates.
    """

    __slots__ = ("support", "probs", "_cum", "_tail")

    def __init__(self, support: Sequence[float], probs: Sequence[float]):
        support = _readonly(support)
        probs = _readonly(probs)
        if support.ndim != 1 or support.shape != probs.shape or support.size == 0:
            raise ValueError("support and probs must be nonempty 1-d sequences of equal length")
        require_finite(support, "support value")
        if np.any(np.diff(support) <= 0):
            raise ValueError("support must be strictly increasing")
        if np.any(probs <= 0):
            raise ValueError("probabilities must be positive")
        if abs(fsum(probs) - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {fsum(probs)!r}, not 1")
        cum = compensated_cumsum(probs)
        cum[-1] = 1.0
        # tail[i] = P(X > support[i])
        tail = compensated_cumsum(probs[::-1])[::-1]
        tail = np.append(tail[1:], 0.0)
        cum.setflags(write=False)
        tail.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "_cum", cum)
        object.__setattr__(self, "_tail", tail)

    def __setattr__(self, name, value):
        raise AttributeError("DiscreteDistribution is immutable")

    def __len__(self) -> int:
        return int(self.support.size)

    def __repr__(self) -> str:
        atoms = ", ".join(f"{x:.6g}: {p:.6g}" for x, p in zip(self.support, self.probs))
        return f"DiscreteDistribution({{{atoms}}})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return bool(
            np.array_equal(self.support, other.support)
            and np.array_equal(self.probs, other.probs)
        )

    def __hash__(self):
        return hash((self.support.tobytes(), self.probs.tobytes()))

    @property
    def cumulative(self) -> np.ndarray:
        """F at each support point; the last entry is exactly 1."""
        return self._cum

    @property
    def tails(self) -> np.ndarray:
        """P(X > x_i) at each support point; the last entry is exactly 0."""
        return self._tail

    @property
    def lower(self) -> float:
        return float(self.support[0])

    @property
    def upper(self) -> float:
        return float(self.support[-1])

    def is_degenerate(self) -> bool:
        return self.support.size == 1

    def affine(self, scale: float, shift: float) -> "DiscreteDistribution":
        """Law of ``scale * X + shift``."""
        return make_discrete([scale * x + shift for x in self.support], self.probs)

    def as_dict(self) -> dict[float, float]:
        return {float(x): float(p) for x, p in zip(self.support, self.probs)}


def _merge_sorted(values: np.ndarray, weights: np.ndarray, tol: float):
    order = np.argsort(values, kind="stable")
    values = values[order]
    weights = weights[order]
    out_x: list[float] = []
    groups: list[list[float]] = []
    for x, w in zip(values, weights):
        if out_x and x - out_x[-1] <= tol:
            groups[-1].append(float(w))
        else:
            out_x.append(float(x))
            groups.append([float(w)])
    return out_x, [fsum(g) for g in groups]


def make_discrete(
    values: Iterable[float], weights: Iterable[float], *, tol: float = ATOM_TOL
) -> DiscreteDistribution:
    """Build a distribution from possibly unsorted, duplicated, unnormalized atoms.

    Values within ``tol`` of each other are merged (weights summed, the
    smallest value kept), zero-weight atoms dropped, and the weights
    normalized once.
    """
    values = np.asarray(list(values), dtype=float)
    weights = np.asarray(list(weights), dtype=float)
    if values.size == 0:
        raise ValueError("empty input")
    if values.shape != weights.shape:
        raise ValueError("values and weights differ in length")
    require_finite(values, "value")
    require_finite(weights, "weight")
    if np.any(weights < 0):
        raise ValueError("negative weight")
    keep = weights > 0
    if not np.any(keep):
        raise ValueError("all weights are zero")
    xs, ws = _merge_sorted(values[keep], weights[keep], tol)
    total = fsum(ws)
    return DiscreteDistribution(xs, [w / total for w in ws])


def degenerate(c: float) -> DiscreteDistribution:
    return DiscreteDistribution([c], [1.0])


def from_samples(xs: Iterable[float]) -> DiscreteDistribution:
    """Empirical distribution of a sample (equal weights, ties merged)."""
    xs = list(xs)
    if not xs:
        raise ValueError("empty sample")
    return make_discrete(xs, [1.0] * len(xs))


def cdf(D: DiscreteDistribution, x: float) -> float:
    i = bisect.bisect_right(D.support, x)
    return 0.0 if i == 0 else float(D._cum[i - 1])


def survival(D: DiscreteDistribution, x: float) -> float:
    i = bisect.bisect_right(D.support, x)
    return 1.0 if i == 0 else float(D._tail[i - 1])


def _left_index(D: DiscreteDistribution, p: float) -> int:
    return min(int(np.searchsorted(D._cum, p, side="left")), len(D) - 1)


def quantile_left(D: DiscreteDistribution, p: float) -> float:
    """VaR_p = inf{x : F(x) >= p} for p in (0, 1]."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"quantile_left needs p in (0, 1], got {p!r}")
    return float(D.support[_left_index(D, p)])


def quantile_right(D: DiscreteDistribution, p: float) -> float:
    """VaR+_p = sup{x : F(x) <= p} for p in [0, 1)."""
    if not 0.0 <= p < 1.0:
        raise ValueError(f"quantile_right needs p in [0, 1), got {p!r}")
    i = int(np.searchsorted(D._cum, p, side="right"))
    return float(D.support[min(i, len(D) - 1)])


def mean(D: DiscreteDistribution) -> float:
    return dot(D.support, D.probs)


def raw_moment(D: DiscreteDistribution, k: int) -> float:
    if k < 1 or int(k) != k:
        raise ValueError("moment order must be a positive integer")
    return dot(D.support**k, D.probs)


def stop_loss(D: DiscreteDistribution, d: float) -> float:
    """E[(X - d)+]."""
    return dot(np.maximum(D.support - d, 0.0), D.probs)


def lower_stop_loss(D: DiscreteDistribution, d: float) -> float:
    """E[(d - X)+]."""
    return dot(np.maximum(d - D.support, 0.0), D.probs)


def upper_quantile_integral(D: DiscreteDistribution, p: float) -> float:
    """Integral of VaR_q over q in [p, 1]; piecewise linear in p.

    This is ``(1 - p) * tvar(D, p)`` and stays defined at ``p = 1`` (where it
    is zero).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    if p == 1.0:
        return 0.0
    k = _left_index(D, p) if p > 0 else 0
    head = float(D.support[k]) * (float(D._cum[k]) - p)
    return math.fsum([head, dot(D.support[k + 1 :], D.probs[k + 1 :])])


def tvar(D: DiscreteDistribution, p: float) -> float:
    """Tail value-at-risk (1/(1-p)) * integral_p^1 VaR_q dq; tvar(D, 0) is the mean."""
    if not 0.0 <= p < 1.0:
        raise ValueError(f"tvar needs p in [0, 1), got {p!r}")
    if p == 0.0:
        return mean(D)
    return upper_quantile_integral(D, p) / (1.0 - p)


# ---------------------------------------------------------------------------
# Random vectors
# ---------------------------------------------------------------------------


class JointDiscreteDistribution:
    """Law of a random vector with finitely many distinct atoms in R^dim.

    Points are kept in lexicographic order so equal laws have equal
    representations.
    """

    __slots__ = ("dim", "points", "probs")

    def __init__(self, points: Sequence[Sequence[float]], probs: Sequence[float]):
        pts = tuple(tuple(float(c) for c in pt) for pt in points)
        if not pts:
            raise ValueError("joint distribution needs at least one point")
        dim = len(pts[0])
        if dim < 1 or any(len(pt) != dim for pt in pts):
            raise ValueError("all points must share a positive dimension")
        for pt in pts:
            require_finite(pt, "coordinate")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        probs = _readonly(probs)
        if probs.shape != (len(pts),):
            raise ValueError("one probability per point required")
        if np.any(probs <= 0):
            raise ValueError("probabilities must be positive")
        if abs(fsum(probs) - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {fsum(probs)!r}, not 1")
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", tuple(pts[i] for i in order))
        object.__setattr__(self, "probs", _readonly(probs[order]))

    def __setattr__(self, name, value):
        raise AttributeError("JointDiscreteDistribution is immutable")

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"JointDiscreteDistribution(dim={self.dim}, atoms={len(self)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, JointDiscreteDistribution):
            return NotImplemented
        return self.points == other.points and np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash((self.points, self.probs.tobytes()))

    def marginal(self, i: int) -> DiscreteDistribution:
        return make_discrete([pt[i] for pt in self.points], self.probs)

    def marginals(self) -> list[DiscreteDistribution]:
        return [self.marginal(i) for i in range(self.dim)]

    def cdf(self, x: Sequence[float]) -> float:
        """P(X_1 <= x_1, ..., X_n <= x_n)."""
        return fsum(
            p
            for pt, p in zip(self.points, self.probs)
            if all(c <= xi for c, xi in zip(pt, x))
        )

    def expect(self, f) -> float:
        return fsum(f(pt) * p for pt, p in zip(self.points, self.probs))

    def as_dict(self) -> dict[tuple[float, ...], float]:
        return {pt: float(p) for pt, p in zip(self.points, self.probs)}

    def allclose(self, other: "JointDiscreteDistribution", tol: float = ATOM_TOL) -> bool:
        if self.dim != other.dim or len(self) != len(other):
            return False
        for a, b in zip(self.points, other.points):
            if any(abs(x - y) > tol for x, y in zip(a, b)):
                return False
        return bool(np.all(np.abs(self.probs - other.probs) <= tol))


def make_joint(
    points: Iterable[Sequence[float]], weights: Iterable[float]
) -> JointDiscreteDistribution:
    """Joint law from raw weighted points; duplicates merged, weights normalized."""
    acc: dict[tuple[float, ...], list[float]] = {}
    for pt, w in zip(points, weights):
        w = float(w)
        if not math.isfinite(w) or w < 0:
            raise ValueError(f"invalid weight {w!r}")
        if w > 0:
            acc.setdefault(tuple(float(c) for c in pt), []).append(w)
    if not acc:
        raise ValueError("empty input or all weights zero")
    masses = {pt: fsum(ws) for pt, ws in acc.items()}
    total = fsum(masses.values())
    return JointDiscreteDistribution(list(masses), [m / total for m in masses.values()])


def independent_joint(Ds: Sequence[DiscreteDistribution]) -> JointDiscreteDistribution:
    """Product coupling of the given marginals."""
    if not Ds:
        raise ValueError("need at least one marginal")
    points = []
    weights = []
    for combo in itertools.product(*(zip(D.support, D.probs) for D in Ds)):
        points.append(tuple(float(x) for x, _ in combo))
        weights.append(math.prod(float(p) for _, p in combo))
    return make_joint(points, weights)


def distribution_of_sum(J: JointDiscreteDistribution, *, tol: float = ATOM_TOL) -> DiscreteDistribution:
    """Law of X_1 + ... + X_n."""
    return make_discrete([fsum(pt) for pt in J.points], J.probs, tol=tol)


def independent_sum(Ds: Sequence[DiscreteDistribution]) -> DiscreteDistribution:
    """Law of a sum of independent variables (exact discrete convolution)."""
    if not Ds:
        raise ValueError("need at least one distribution")
    return distribution_of_sum(independent_joint(Ds))


def same_distribution(
    D1: DiscreteDistribution, D2: DiscreteDistribution, tol: float = ATOM_TOL
) -> bool:
    """Atom-by-atom match within ``tol`` on both locations and probabilities."""
    if len(D1) != len(D2):
        return False
    return bool(
        np.all(np.abs(D1.support - D2.support) <= tol)
        and np.all(np.abs(D1.probs - D2.probs) <= tol)
    )


def cdf_distance(D1: DiscreteDistribution, D2: DiscreteDistribution) -> float:
    """Kolmogorov distance sup_x |F1(x) - F2(x)|; attained on the union support."""
    grid = np.union1d(D1.support, D2.support)
    return max(abs(cdf(D1, x) - cdf(D2, x)) for x in grid)
