"""Stochastic-order checks and comonotonic couplings for discrete laws.

Stop-loss transforms of discrete laws are piecewise linear with kinks on the
support, and ``(1 - p) TVaR_p`` is piecewise linear in ``p`` with kinks at
the CDF levels. Comparing them on the union of kinks, plus the limits at the
ends, therefore decides the stop-loss and convex orders exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._numerics import ATOM_TOL, ORDER_TOL
from .dist import (
    DiscreteDistribution,
    JointDiscreteDistribution,
    distribution_of_sum,
    make_joint,
    mean,
    same_distribution,
    stop_loss,
    tvar,
    upper_quantile_integral,
)

__all__ = [
    "OrderReport",
    "check_stop_loss",
    "check_convex",
    "check_tvar_spectrum",
    "comonotonic_joint",
    "comonotonic_sum",
    "check_supermodular_bivariate",
    "supermodular_falsify",
]


@dataclass
class OrderReport:
    holds: bool
    order: str
    witness: dict | None = None
    margin: float = 0.0
    # False when ``holds`` only means "no violation found"
    complete: bool = True
    note: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        d = {"holds": self.holds, "order": self.order, "witness": self.witness, "margin": self.margin}
        if not self.complete:
            d["complete"] = False
        if self.note:
            d["note"] = self.note
        return d


def check_stop_loss(X: DiscreteDistribution, Y: DiscreteDistribution, tol: float = ORDER_TOL) -> OrderReport:
    """X <=_sl Y: E(X - d)+ <= E(Y - d)+ for every d."""
    slack = mean(Y) - mean(X)
    margin = slack
    witness = None
    if slack < -tol:
        witness = {"d": -math.inf, "lhs": mean(X), "rhs": mean(Y)}
    for d in np.union1d(X.support, Y.support):
        lhs, rhs = stop_loss(X, d), stop_loss(Y, d)
        margin = min(margin, rhs - lhs)
        if witness is None and rhs - lhs < -tol:
            witness = {"d": float(d), "lhs": lhs, "rhs": rhs}
    return OrderReport(witness is None, "sl", witness, float(margin))


def check_convex(X: DiscreteDistribution, Y: DiscreteDistribution, tol: float = ORDER_TOL) -> OrderReport:
    """X <=_cx Y: equal means and X <=_sl Y."""
    mx, my = mean(X), mean(Y)
    if abs(mx - my) > tol:
        return OrderReport(False, "cx", {"d": "means", "lhs": mx, "rhs": my}, -abs(mx - my))
    sl = check_stop_loss(X, Y, tol)
    return OrderReport(sl.holds, "cx", sl.witness, min(sl.margin, -abs(mx - my)))


def _jump_levels(D: DiscreteDistribution) -> list[float]:
    return [float(c) for c in D.cumulative[:-1]]


def check_tvar_spectrum(
    X: DiscreteDistribution,
    Y: DiscreteDistribution,
    grid: Sequence[float] = (),
    tol: float = ORDER_TOL,
) -> OrderReport:
    """TVaR_p[X] <= TVaR_p[Y] on ``grid`` refined by both laws' CDF jump levels.

    The comparison is made on ``(1 - p) TVaR_p``, which is linear between
    jump levels, so the refined grid decides the inequality for all p.
    """
    levels = sorted(set([0.0] + [float(p) for p in grid] + _jump_levels(X) + _jump_levels(Y)))
    if levels[-1] >= 1.0 or levels[0] < 0.0:
        raise ValueError("grid must lie in [0, 1)")
    margin = math.inf
    witness = None
    for p in levels:
        diff = upper_quantile_integral(Y, p) - upper_quantile_integral(X, p)
        margin = min(margin, diff)
        if witness is None and diff < -tol:
            witness = {"p": p, "lhs": tvar(X, p), "rhs": tvar(Y, p)}
    return OrderReport(witness is None, "tvar", witness, float(margin))


def comonotonic_joint(
    marginals: Sequence[DiscreteDistribution], tol: float = ATOM_TOL
) -> JointDiscreteDistribution:
    """Law of (F_1^{-1}(U), ..., F_n^{-1}(U)) for U uniform on (0, 1).

    The union of all CDF levels cuts (0, 1) into segments on which every
    quantile function is constant; each segment becomes one atom.
    """
    if not marginals:
        raise ValueError("need at least one marginal")
    levels = sorted(set(float(c) for D in marginals for c in D.cumulative))
    merged: list[float] = []
    for c in levels:
        if merged and c - merged[-1] <= tol:
            continue
        merged.append(c)
    if merged[-1] < 1.0:
        merged.append(1.0)
    merged[-1] = 1.0
    idx = [0] * len(marginals)
    points = []
    weights = []
    prev = 0.0
    for c in merged:
        pt = []
        for k, D in enumerate(marginals):
            cum = D.cumulative
            while cum[idx[k]] < c - tol:
                idx[k] += 1
            pt.append(float(D.support[idx[k]]))
        points.append(tuple(pt))
        weights.append(c - prev)
        prev = c
    return make_joint(points, weights)


def comonotonic_sum(marginals: Sequence[DiscreteDistribution]) -> DiscreteDistribution:
    """Law of the sum of the comonotonic coupling."""
    return distribution_of_sum(comonotonic_joint(marginals))


def _same_marginals(JX: JointDiscreteDistribution, JY: JointDiscreteDistribution, tol: float):
    for i in range(JX.dim):
        if not same_distribution(JX.marginal(i), JY.marginal(i), tol):
            return i
    return None


def check_supermodular_bivariate(
    JX: JointDiscreteDistribution, JY: JointDiscreteDistribution, tol: float = ORDER_TOL
) -> OrderReport:
    """Bivariate supermodular order via equal marginals plus joint-CDF dominance.

    In two dimensions X <=_sm Y iff the marginals agree and
    F_X(s, t) <= F_Y(s, t) everywhere; both CDFs are step functions, so the
    union grid of coordinates suffices.
    """
    if JX.dim != 2 or JY.dim != 2:
        raise ValueError("bivariate check needs dim == 2 for both inputs")
    bad = _same_marginals(JX, JY, tol)
    if bad is not None:
        return OrderReport(False, "sm", {"marginal": bad}, -math.inf, note="marginals differ")
    xs = sorted(set(p[0] for p in JX.points + JY.points))
    ys = sorted(set(p[1] for p in JX.points + JY.points))
    margin = math.inf
    witness = None
    for s, t in itertools.product(xs, ys):
        fx, fy = JX.cdf((s, t)), JY.cdf((s, t))
        margin = min(margin, fy - fx)
        if witness is None and fy - fx < -tol:
            witness = {"point": [s, t], "lhs": fx, "rhs": fy}
    return OrderReport(witness is None, "sm", witness, float(margin))


def _sum_excess(d):
    return lambda x: max(math.fsum(x) - d, 0.0)


def _product_excess(shifts):
    return lambda x: math.prod(max(xi - a, 0.0) for xi, a in zip(x, shifts))


def _joint_survival(shifts):
    return lambda x: float(all(xi > a for xi, a in zip(x, shifts)))


def _joint_lower(shifts):
    return lambda x: float(all(xi <= a for xi, a in zip(x, shifts)))


def _shifted_min(shifts):
    return lambda x: min(xi - a for xi, a in zip(x, shifts))


def supermodular_falsify(
    JX: JointDiscreteDistribution,
    JY: JointDiscreteDistribution,
    trials: int = 200,
    seed: int = 42,
    tol: float = ORDER_TOL,
) -> OrderReport:
    """Search for a supermodular f with E f(X) > E f(Y).

    The battery: (sum - d)+ on the grid of attainable sums; and, at random
    coordinate thresholds a, the product of (x_i - a_i)+, the joint survival
    and joint lower-orthant indicators, and min_i (x_i - a_i). A report that
    holds means only "not falsified".
    """
    if JX.dim != JY.dim:
        raise ValueError("dimension mismatch")
    bad = _same_marginals(JX, JY, tol)
    if bad is not None:
        return OrderReport(False, "sm", {"marginal": bad}, -math.inf, complete=False,
                           note="falsifier-only: marginals differ")
    tests: list[tuple[dict, object]] = []
    sums = sorted(set(math.fsum(p) for p in JX.points + JY.points))
    for d in sums:
        tests.append(({"family": "sum_excess", "d": d}, _sum_excess(d)))
    coords = [sorted(set(p[i] for p in JX.points + JY.points)) for i in range(JX.dim)]
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        shifts = [float(c[rng.integers(len(c))]) for c in coords]
        tests.append(({"family": "product_excess", "a": shifts}, _product_excess(shifts)))
        tests.append(({"family": "joint_survival", "a": shifts}, _joint_survival(shifts)))
        tests.append(({"family": "joint_lower", "a": shifts}, _joint_lower(shifts)))
        tests.append(({"family": "shifted_min", "a": shifts}, _shifted_min(shifts)))
    margin = math.inf
    for desc, f in tests:
        ex, ey = JX.expect(f), JY.expect(f)
        margin = min(margin, ey - ex)
        if ey - ex < -tol:
            return OrderReport(False, "sm", {"f": desc, "lhs": ex, "rhs": ey}, ey - ex,
                               complete=False, note="falsifier-only: violated")
    return OrderReport(True, "sm", None, float(margin), complete=False,
                       note="falsifier-only: not falsified (not a proof)")
