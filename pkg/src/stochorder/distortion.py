"""Distortion functions and distorted expectations.

A distortion ``g`` is a nondecreasing continuous map of [0, 1] onto itself
with ``g(0) = 0`` and ``g(1) = 1``; ``rho_g[X]`` integrates ``g`` of the
survival function. Three independent evaluations are provided:

* :func:`rho_survival` integrates ``g(P(X > x))`` over x,
* :func:`rho_quantile` is the Stieltjes sum of ``VaR_{1-q}`` against ``dg``,
* :func:`rho_tvar` mixes tail values-at-risk against the probability
  measure ``mu`` derived from ``g`` (concave ``g`` with finite slope at 0).

For concave ``g`` let ``nu([0, q]) = g'_+(1 - q)``. Then
``rho_g[X] = int_{[0,1]} TVaR_w[X] dmu(w)`` with ``dmu = (1 - w) dnu``; the
atom ``mu({0}) = g'_-(1)`` carries ``TVaR_0 = E X``. There is no extra
``nu([0,1]) * E X`` term: :func:`rho_tvar_uncorrected` keeps that variant so
the difference can be shown.
"""

from __future__ import annotations

import bisect
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Sequence

from scipy.special import ndtr, ndtri

from ._numerics import COVERAGE_EPS, fsum
from .dist import DiscreteDistribution, mean, tvar, upper_quantile_integral
from .measure import DensityPiece, RadonMeasure

__all__ = [
    "Distortion",
    "PiecewiseLinearDistortion",
    "DualPowerDistortion",
    "PowerDistortion",
    "WangDistortion",
    "UnsupportedDistortionError",
    "identity_distortion",
    "tvar_distortion",
    "distortion_from_doc",
    "dual",
    "nu_of",
    "mu_of",
    "rho_survival",
    "rho_quantile",
    "rho_tvar",
    "rho_tvar_uncorrected",
    "covers_lebesgue_nu",
]


class UnsupportedDistortionError(ValueError):
    """The requested operation needs a concave distortion with finite g'(0)."""


class Distortion(ABC):
    family: ClassVar[str]

    @abstractmethod
    def __call__(self, q: float) -> float: ...

    @abstractmethod
    def right_derivative(self, q: float) -> float:
        """g'_+(q) for q in [0, 1); may be ``inf`` at 0."""

    @abstractmethod
    def left_derivative(self, q: float) -> float:
        """g'_-(q) for q in (0, 1]; may be ``inf`` at 1."""

    @property
    @abstractmethod
    def concave(self) -> bool: ...

    @property
    @abstractmethod
    def convex(self) -> bool: ...

    @abstractmethod
    def dual(self) -> "Distortion": ...

    @abstractmethod
    def to_doc(self) -> dict: ...

    def _nu_parts(self) -> tuple[list[tuple[float, float]], list[DensityPiece]]:
        raise UnsupportedDistortionError(f"{self.family} has no finite nu decomposition")

    def _nu_density_infimum(self) -> float:
        raise UnsupportedDistortionError(f"{self.family} has no closed-form nu density bound")


@dataclass(frozen=True)
class PiecewiseLinearDistortion(Distortion):
    """Linear interpolation of knots ``(q_i, g_i)`` from (0, 0) to (1, 1)."""

    knots: tuple[tuple[float, float], ...]
    family: ClassVar[str] = "piecewise_linear"

    def __post_init__(self):
        knots = tuple((float(q), float(v)) for q, v in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2 or knots[0] != (0.0, 0.0) or knots[-1] != (1.0, 1.0):
            raise ValueError("knots must start at [0, 0] and end at [1, 1]")
        qs = [q for q, _ in knots]
        vs = [v for _, v in knots]
        if any(b <= a for a, b in zip(qs, qs[1:])):
            raise ValueError("knot abscissae must be strictly increasing")
        if any(b < a for a, b in zip(vs, vs[1:])):
            raise ValueError("distortion must be nondecreasing")
        s = self.slopes
        if not (self._monotone(s, -1) or self._monotone(s, 1)):
            raise ValueError("piecewise-linear distortion must be concave or convex")

    @staticmethod
    def _monotone(s, direction: int) -> bool:
        return all(direction * (b - a) >= 0 for a, b in zip(s, s[1:]))

    @property
    def slopes(self) -> list[float]:
        k = self.knots
        return [(v2 - v1) / (q2 - q1) for (q1, v1), (q2, v2) in zip(k, k[1:])]

    def __call__(self, q: float) -> float:
        qs = [x for x, _ in self.knots]
        if q <= 0:
            return 0.0
        if q >= 1:
            return 1.0
        i = bisect.bisect_right(qs, q) - 1
        (q1, v1), (q2, v2) = self.knots[i], self.knots[i + 1]
        return v1 + (v2 - v1) * (q - q1) / (q2 - q1)

    def right_derivative(self, q: float) -> float:
        qs = [x for x, _ in self.knots]
        i = min(bisect.bisect_right(qs, q) - 1, len(qs) - 2)
        return self.slopes[max(i, 0)]

    def left_derivative(self, q: float) -> float:
        qs = [x for x, _ in self.knots]
        i = max(bisect.bisect_left(qs, q) - 1, 0)
        return self.slopes[min(i, len(qs) - 2)]

    @property
    def concave(self) -> bool:
        return self._monotone(self.slopes, -1)

    @property
    def convex(self) -> bool:
        return self._monotone(self.slopes, 1)

    def dual(self) -> "PiecewiseLinearDistortion":
        flipped = [(1.0 - q, 1.0 - v) for q, v in reversed(self.knots)]
        flipped[0] = (0.0, 0.0)
        flipped[-1] = (1.0, 1.0)
        return PiecewiseLinearDistortion(tuple(flipped))

    def to_doc(self) -> dict:
        return {"family": self.family, "knots": [list(k) for k in self.knots]}

    def _nu_parts(self):
        s = self.slopes
        atoms = []
        # slope drop at interior knot q_i becomes an atom at 1 - q_i
        for (q, _), s_left, s_right in zip(self.knots[1:-1], s, s[1:]):
            if s_left > s_right:
                atoms.append((1.0 - q, s_left - s_right))
        if s[-1] > 0:
            atoms.append((0.0, s[-1]))
        return atoms, []


@dataclass(frozen=True)
class DualPowerDistortion(Distortion):
    """g(q) = 1 - (1 - q)**kappa; concave for kappa >= 1."""

    kappa: float
    family: ClassVar[str] = "dual_power"

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError("kappa must be positive")

    def __call__(self, q: float) -> float:
        q = min(max(q, 0.0), 1.0)
        return 1.0 - (1.0 - q) ** self.kappa

    def _deriv(self, q: float) -> float:
        k = self.kappa
        if k == 1:
            return 1.0
        base = 1.0 - q
        if base == 0:
            return 0.0 if k > 1 else math.inf
        return k * base ** (k - 1)

    right_derivative = _deriv
    left_derivative = _deriv

    @property
    def concave(self) -> bool:
        return self.kappa >= 1

    @property
    def convex(self) -> bool:
        return self.kappa <= 1

    def dual(self) -> "PowerDistortion":
        return PowerDistortion(self.kappa)

    def to_doc(self) -> dict:
        return {"family": self.family, "kappa": self.kappa}

    def _nu_parts(self):
        k = self.kappa
        if k == 1:
            return [(0.0, 1.0)], []
        # nu([0, q]) = k q^(k-1): density k(k-1) q^(k-2), no atoms
        return [], [DensityPiece(0.0, 1.0, ((k * (k - 1), k - 2),))]


@dataclass(frozen=True)
class PowerDistortion(Distortion):
    """g(q) = q**r; concave for r <= 1, where g'(0) is infinite unless r = 1."""

    r: float
    family: ClassVar[str] = "power"

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise ValueError("r must be positive")

    def __call__(self, q: float) -> float:
        q = min(max(q, 0.0), 1.0)
        return q**self.r

    def _deriv(self, q: float) -> float:
        if self.r == 1:
            return 1.0
        if q == 0:
            return math.inf if self.r < 1 else 0.0
        return self.r * q ** (self.r - 1)

    right_derivative = _deriv
    left_derivative = _deriv

    @property
    def concave(self) -> bool:
        return self.r <= 1

    @property
    def convex(self) -> bool:
        return self.r >= 1

    def dual(self) -> DualPowerDistortion:
        return DualPowerDistortion(self.r)

    def to_doc(self) -> dict:
        return {"family": self.family, "r": self.r}

    def _nu_parts(self):
        if self.r == 1:
            return [(0.0, 1.0)], []
        return super()._nu_parts()

    def _nu_density_infimum(self) -> float:
        # -g''(1 - q) = r(1 - r)(1 - q)^(r - 2) is smallest at q = 0
        return self.r * (1.0 - self.r)


@dataclass(frozen=True)
class WangDistortion(Distortion):
    """Wang transform g(q) = Phi(Phi^{-1}(q) + theta); concave for theta >= 0."""

    theta: float
    family: ClassVar[str] = "wang"

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")

    def __call__(self, q: float) -> float:
        if q <= 0:
            return 0.0
        if q >= 1:
            return 1.0
        return float(ndtr(ndtri(q) + self.theta))

    def _deriv(self, q: float) -> float:
        t = self.theta
        if t == 0:
            return 1.0
        if q <= 0:
            return math.inf if t > 0 else 0.0
        if q >= 1:
            return 0.0 if t > 0 else math.inf
        z = float(ndtri(q))
        return math.exp(-t * z - 0.5 * t * t)

    right_derivative = _deriv
    left_derivative = _deriv

    @property
    def concave(self) -> bool:
        return self.theta >= 0

    @property
    def convex(self) -> bool:
        return self.theta <= 0

    def dual(self) -> "WangDistortion":
        return WangDistortion(-self.theta)

    def to_doc(self) -> dict:
        return {"family": self.family, "theta": self.theta}

    def _nu_parts(self):
        if self.theta == 0:
            return [(0.0, 1.0)], []
        return super()._nu_parts()

    def _nu_density_infimum(self) -> float:
        # -g'' = theta sqrt(2 pi) exp((z - theta)^2 / 2 - theta^2), z = Phi^{-1}
        t = self.theta
        return t * math.sqrt(2.0 * math.pi) * math.exp(-t * t)


def identity_distortion() -> PiecewiseLinearDistortion:
    return PiecewiseLinearDistortion(((0.0, 0.0), (1.0, 1.0)))


def tvar_distortion(p: float) -> PiecewiseLinearDistortion:
    """g(q) = min(q / (1 - p), 1), for which rho_g is TVaR_p."""
    if not 0 <= p < 1:
        raise ValueError("p must lie in [0, 1)")
    if p == 0:
        return identity_distortion()
    return PiecewiseLinearDistortion(((0.0, 0.0), (1.0 - p, 1.0), (1.0, 1.0)))


def distortion_from_doc(doc: dict) -> Distortion:
    family = doc.get("family")
    if family == "dual_power":
        return DualPowerDistortion(float(doc["kappa"]))
    if family == "power":
        return PowerDistortion(float(doc["r"]))
    if family == "wang":
        return WangDistortion(float(doc["theta"]))
    if family == "piecewise_linear":
        return PiecewiseLinearDistortion(tuple(tuple(k) for k in doc["knots"]))
    if family == "tvar":
        return tvar_distortion(float(doc["p"]))
    if family == "identity":
        return identity_distortion()
    raise ValueError(f"unknown distortion family {family!r}")


def dual(g: Distortion) -> Distortion:
    """Dual distortion q -> 1 - g(1 - q)."""
    return g.dual()


def _require_finite_nu(g: Distortion) -> None:
    if not g.concave:
        raise UnsupportedDistortionError(f"{g.to_doc()} is not concave")
    if not math.isfinite(g.right_derivative(0.0)):
        raise UnsupportedDistortionError(f"{g.to_doc()} has infinite slope at 0")


def nu_of(g: Distortion) -> RadonMeasure:
    """Measure on [0, 1] with nu([0, q]) = g'_+(1 - q), for concave g with g'(0) finite."""
    _require_finite_nu(g)
    atoms, pieces = g._nu_parts()
    return RadonMeasure(tuple(atoms), tuple(pieces))


def mu_of(g: Distortion) -> RadonMeasure:
    """Probability measure dmu(w) = (1 - w) dnu(w) on [0, 1]."""
    nu = nu_of(g)
    atoms = [(w, (1.0 - w) * m) for w, m in nu.atoms if w < 1.0]
    pieces = [
        DensityPiece(p.a, p.b, tuple(t for c, e in p.terms for t in ((c, e), (-c, e + 1))))
        for p in nu.pieces
    ]
    return RadonMeasure(tuple(atoms), tuple(pieces))


def rho_survival(g: Distortion, D: DiscreteDistribution) -> float:
    """int_0^inf g(S(x)) dx + int_-inf^0 [g(S(x)) - 1] dx with S the survival function."""
    xs = [float(x) for x in D.support]
    tails = D.tails
    parts = []
    if xs[0] > 0:
        parts.append(g(1.0) * xs[0])
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        gs = g(float(tails[i]))
        if a >= 0:
            parts.append(gs * (b - a))
        elif b <= 0:
            parts.append((gs - 1.0) * (b - a))
        else:
            parts.append((gs - 1.0) * -a)
            parts.append(gs * b)
    if xs[-1] < 0:
        parts.append((g(0.0) - 1.0) * -xs[-1])
    return fsum(parts)


def rho_quantile(g: Distortion, D: DiscreteDistribution) -> float:
    """Stieltjes sum of VaR_{1-q} against dg.

    VaR_{1-q} equals x_i for q in [1 - F(x_i), 1 - F(x_{i-1})), so the
    integral is sum_i x_i (g(1 - F(x_{i-1})) - g(1 - F(x_i))).
    """
    parts = []
    prev = 0.0
    for x, c in zip(D.support, D.cumulative):
        c = float(c)
        parts.append(float(x) * (g(1.0 - prev) - g(1.0 - c)))
        prev = c
    return fsum(parts)


def rho_tvar(g: Distortion, D: DiscreteDistribution) -> float:
    """int_{[0,1]} TVaR_w[X] dmu(w).

    Atoms of ``mu`` weight ``tvar`` directly. On the density part,
    ``TVaR_w (1 - w) = int_w^1 VaR_q dq`` is piecewise linear in ``w`` with
    kinks at the CDF levels, so integrating it against ``nu`` is exact.
    """
    nu = nu_of(g)
    mu = mu_of(g)
    parts = [m * tvar(D, w) for w, m in mu.atoms]
    ac = RadonMeasure((), nu.pieces)
    parts.append(
        ac.integrate_pwl(
            lambda w: upper_quantile_integral(D, w),
            [float(c) for c in D.cumulative[:-1]],
            0.0,
            1.0,
            closed_left=True,
        )
    )
    return fsum(parts)


def rho_tvar_uncorrected(g: Distortion, D: DiscreteDistribution) -> float:
    """``nu([0,1]) * E X`` plus the weighted-TVaR integral.

    Not a distorted expectation: the mean is already carried by the atom of
    ``mu`` at 0, so this overshoots by ``g'_+(0) * E X``.
    """
    return fsum([nu_of(g).total_mass() * mean(D), rho_tvar(g, D)])


def covers_lebesgue_nu(g: Distortion, eps: float = COVERAGE_EPS) -> bool:
    """Whether Lebesgue measure on [0, 1] is absolutely continuous w.r.t. nu.

    Families with infinite slope at 0 have a nu of infinite mass; their
    density still has a closed-form infimum on (0, 1), which decides it.
    """
    if g.concave and not math.isfinite(g.right_derivative(0.0)):
        return g._nu_density_infimum() >= eps
    return nu_of(g).covers(0.0, 1.0, eps)
