"""Radon measures made of atoms plus a piecewise density.

Densities are sums of power terms ``c * t**e`` on each piece. Constant steps
(``e = 0``) cover curvature measures of utilities; the power terms cover the
measures induced by smooth distortions such as the dual-power family. Every
power term has closed-form moments, so integrating a continuous
piecewise-linear function against the measure is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from ._numerics import COVERAGE_EPS, fsum

__all__ = ["DensityPiece", "RadonMeasure"]

# Interior sample count used to bound non-constant densities from below.
_COVERAGE_GRID = 1024


@dataclass(frozen=True)
class DensityPiece:
    """Density ``sum(c * t**e for c, e in terms)`` on ``[a, b]``."""

    a: float
    b: float
    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or not self.a < self.b:
            raise ValueError(f"density piece needs finite a < b, got [{self.a}, {self.b}]")
        terms = tuple((float(c), float(e)) for c, e in self.terms)
        object.__setattr__(self, "terms", terms)
        for c, e in terms:
            if e <= -1:
                raise ValueError("exponent must exceed -1 for integrability")
            if e != int(e) and self.a < 0:
                raise ValueError("non-integer exponents need a >= 0")
        if self.is_constant():
            if self.value < 0:
                raise ValueError("negative density")
        elif min(self._grid_values()) < 0:
            raise ValueError("negative density")

    @classmethod
    def constant(cls, a: float, b: float, value: float) -> "DensityPiece":
        return cls(a, b, ((float(value), 0.0),))

    def is_constant(self) -> bool:
        return all(e == 0 for _, e in self.terms)

    @property
    def value(self) -> float:
        """Density value of a constant piece."""
        if not self.is_constant():
            raise ValueError("piece is not constant")
        return fsum(c for c, _ in self.terms)

    def density(self, t: float) -> float:
        if not self.a <= t <= self.b:
            return 0.0
        if t == 0.0:
            return fsum(c if e == 0 else (0.0 if e > 0 else math.copysign(math.inf, c)) for c, e in self.terms)
        return fsum(c * t**e for c, e in self.terms)

    def moment(self, lo: float, hi: float, k: int = 0) -> float:
        """Integral of ``t**k * density(t)`` over ``[lo, hi]`` clipped to the piece."""
        lo = max(lo, self.a)
        hi = min(hi, self.b)
        if hi <= lo:
            return 0.0
        parts = []
        for c, e in self.terms:
            n = k + e + 1
            parts.append(c * (hi**n - lo**n) / n)
        return fsum(parts)

    def _grid_values(self) -> list[float]:
        h = (self.b - self.a) / _COVERAGE_GRID
        return [self.density(self.a + (i + 0.5) * h) for i in range(_COVERAGE_GRID)]

    def lower_bound(self) -> float:
        """Infimum of the density over the open piece (sampled for power terms)."""
        if self.is_constant():
            return self.value
        return min(self._grid_values())

    def scaled(self, factor: float) -> "DensityPiece":
        return DensityPiece(self.a, self.b, tuple((c * factor, e) for c, e in self.terms))


@dataclass(frozen=True)
class RadonMeasure:
    """Positive measure = atoms + density pieces; all data finite.

    ``atoms`` holds ``(location, mass)`` pairs with strictly increasing
    locations; ``pieces`` are sorted and pairwise disjoint up to endpoints.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    pieces: tuple[DensityPiece, ...] = field(default=())

    def __post_init__(self):
        atoms = tuple(sorted((float(t), float(m)) for t, m in self.atoms))
        for t, m in atoms:
            if not math.isfinite(t) or not math.isfinite(m):
                raise ValueError("atoms must be finite")
            if m <= 0:
                raise ValueError(f"atom mass must be positive, got {m!r} at {t!r}")
        for (t1, _), (t2, _) in zip(atoms, atoms[1:]):
            if t1 == t2:
                raise ValueError(f"duplicate atom location {t1!r}")
        pieces = tuple(sorted(self.pieces, key=lambda p: p.a))
        for p1, p2 in zip(pieces, pieces[1:]):
            if p2.a < p1.b:
                raise ValueError("density pieces overlap")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def from_lists(
        cls,
        atoms: Iterable[Sequence[float]] = (),
        density: Iterable[Sequence[float]] = (),
    ) -> "RadonMeasure":
        """Build from ``[[t, m], ...]`` atoms and ``[[a, b, v], ...]`` constant steps.

        Zero-mass atoms and zero-valued steps are dropped.
        """
        ats = [(t, m) for t, m in atoms if m != 0]
        pcs = [DensityPiece.constant(a, b, v) for a, b, v in density if v != 0]
        return cls(tuple(ats), tuple(pcs))

    def is_zero(self) -> bool:
        return not self.atoms and not self.pieces

    def is_atomic(self) -> bool:
        return not self.pieces

    def hull(self) -> tuple[float, float] | None:
        """Smallest closed interval carrying the measure (None for the zero measure)."""
        ends = [t for t, _ in self.atoms]
        for p in self.pieces:
            ends += [p.a, p.b]
        return (min(ends), max(ends)) if ends else None

    def density_at(self, t: float) -> float:
        return fsum(p.density(t) for p in self.pieces if p.a <= t <= p.b)

    def atom_mass(self, t: float) -> float:
        for loc, m in self.atoms:
            if loc == t:
                return m
        return 0.0

    def measure(
        self, lo: float, hi: float, *, closed_left: bool = False, closed_right: bool = True
    ) -> float:
        """Mass of the interval between ``lo`` and ``hi``; defaults to ``(lo, hi]``."""
        if hi < lo:
            raise ValueError("interval endpoints reversed")
        parts = [p.moment(lo, hi, 0) for p in self.pieces]
        for t, m in self.atoms:
            inside_left = t > lo or (closed_left and t == lo)
            inside_right = t < hi or (closed_right and t == hi)
            if inside_left and inside_right:
                parts.append(m)
        return fsum(parts)

    def total_mass(self) -> float:
        return fsum([m for _, m in self.atoms] + [p.moment(p.a, p.b, 0) for p in self.pieces])

    def integrate_pwl(
        self,
        f: Callable[[float], float],
        kinks: Iterable[float] = (),
        lo: float = -math.inf,
        hi: float = math.inf,
        *,
        closed_left: bool = False,
        closed_right: bool = True,
    ) -> float:
        """Exact integral of a continuous function that is linear between ``kinks``.

        Atoms are taken with the endpoint convention of :meth:`measure`.
        """
        parts = []
        for t, m in self.atoms:
            inside_left = t > lo or (closed_left and t == lo)
            inside_right = t < hi or (closed_right and t == hi)
            if inside_left and inside_right:
                parts.append(m * f(t))
        kinks = sorted(set(float(k) for k in kinks))
        for p in self.pieces:
            a = max(p.a, lo)
            b = min(p.b, hi)
            if b <= a:
                continue
            cuts = [a] + [k for k in kinks if a < k < b] + [b]
            for l, r in zip(cuts, cuts[1:]):
                fl, fr = f(l), f(r)
                slope = (fr - fl) / (r - l)
                m0 = p.moment(l, r, 0)
                m1 = p.moment(l, r, 1)
                # integral of fl + slope*(t - l)
                parts.append(fl * m0)
                parts.append(slope * (m1 - l * m0))
        return fsum(parts)

    def covers(self, a: float, b: float, eps: float = COVERAGE_EPS) -> bool:
        """True iff the density is at least ``eps`` on all of ``[a, b]``.

        Atoms never contribute: a purely atomic measure is singular with
        respect to Lebesgue measure. Finitely many points (piece endpoints,
        isolated zeros of a power density) are ignored.
        """
        if not a < b:
            raise ValueError("need a < b")
        covered = a
        for p in self.pieces:
            if p.b <= covered:
                continue
            if p.a > covered:
                return False
            if p.lower_bound() < eps:
                return False
            covered = p.b
            if covered >= b:
                return True
        return covered >= b

    def to_doc(self) -> dict:
        dens = []
        for p in self.pieces:
            if p.is_constant():
                dens.append([p.a, p.b, p.value])
            else:
                dens.append([p.a, p.b, [list(t) for t in p.terms]])
        return {"atoms": [[t, m] for t, m in self.atoms], "density": dens}

    @classmethod
    def from_doc(cls, doc: dict) -> "RadonMeasure":
        atoms = [(float(t), float(m)) for t, m in doc.get("atoms", [])]
        pieces = []
        for entry in doc.get("density", []):
            a, b, v = entry
            if isinstance(v, (list, tuple)):
                pieces.append(DensityPiece(float(a), float(b), tuple(tuple(t) for t in v)))
            elif v != 0:
                pieces.append(DensityPiece.constant(float(a), float(b), float(v)))
        return cls(tuple((t, m) for t, m in atoms if m != 0), tuple(pieces))
