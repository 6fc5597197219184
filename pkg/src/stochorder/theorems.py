"""Checks, generators and counterexamples for equality-in-distribution results.

The results have the shape "ordered + equal functional value => equal in
law", under a hypothesis that Lebesgue measure is absolutely continuous with
respect to the functional's curvature measure. Exact equality of two float
functionals is a measure-zero event, so the checkable face is the
contrapositive: ordered, hypothesis met, laws differ => strictly different
functional values. Every report records which premises held and whether the
instance is consistent with the implication.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._numerics import DIFFER_TOL, EQUALITY_TOL
from .convexfn import ConvexFunctionRep, covers_lebesgue_gamma, expected_utility
from .dist import (
    DiscreteDistribution,
    JointDiscreteDistribution,
    cdf_distance,
    distribution_of_sum,
    independent_joint,
    make_discrete,
    make_joint,
    same_distribution,
)
from .distortion import (
    Distortion,
    PiecewiseLinearDistortion,
    covers_lebesgue_nu,
    rho_survival,
)
from .io import dist_to_doc, functional_from_doc, functional_to_doc, joint_to_doc
from .orders import (
    check_convex,
    check_stop_loss,
    check_supermodular_bivariate,
    check_tvar_spectrum,
    comonotonic_sum,
    supermodular_falsify,
)

__all__ = [
    "Premise",
    "TheoremReport",
    "CounterexampleBundle",
    "CorpusSummary",
    "THEOREM_IDS",
    "mean_preserving_spread",
    "concordance_transfer",
    "gen_cx_pair",
    "gen_sl_pair",
    "gen_sm_pair",
    "random_joint",
    "verify_utility_theorem",
    "verify_distortion_theorem",
    "verify_comonotonic_characterization",
    "verify_multivariate_theorem",
    "gap_counterexample",
    "run_corpus",
]

Functional = ConvexFunctionRep | Distortion

THEOREM_IDS = ("thm1.1", "thm1.2", "thm3.1", "thm4.1", "thm5.1", "thm5.2", "rem4.3")


@dataclass
class Premise:
    name: str
    satisfied: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "satisfied": self.satisfied, "detail": self.detail}


@dataclass
class TheoremReport:
    theorem: str
    premises: list[Premise]
    conclusion_checked: bool
    consistent: bool
    margins: dict[str, float] = field(default_factory=dict)
    # True iff the instance is a contrapositive witness: ordered, hypothesis
    # met, laws differ
    contrapositive: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def premises_hold(self) -> bool:
        return all(p.satisfied for p in self.premises)

    def premise(self, name: str) -> Premise:
        for p in self.premises:
            if p.name == name:
                return p
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "premises": [p.to_dict() for p in self.premises],
            "conclusion_checked": self.conclusion_checked,
            "consistent": self.consistent,
            "contrapositive": self.contrapositive,
            "margins": self.margins,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# Functional helpers
# ---------------------------------------------------------------------------


def _value(f: Functional, D: DiscreteDistribution) -> float:
    if isinstance(f, Distortion):
        return rho_survival(f, D)
    return expected_utility(f, D)


def _coverage(f: Functional, lo: float, hi: float) -> tuple[bool, str]:
    if isinstance(f, Distortion):
        # a convex g uses the mirror image of its dual's measure
        g = f if f.concave else f.dual()
        ok = covers_lebesgue_nu(g)
        return ok, "nu has density bounded away from 0 on [0, 1]" if ok else "nu is not equivalent to Lebesgue"
    if not lo < hi:
        return True, "degenerate hull"
    ok = covers_lebesgue_gamma(f, lo, hi)
    return ok, (f"gamma has density on [{lo}, {hi}]" if ok else f"gamma lacks density somewhere on [{lo}, {hi}]")


def _hull(*Ds: DiscreteDistribution) -> tuple[float, float]:
    return min(D.lower for D in Ds), max(D.upper for D in Ds)


def _compare(
    theorem: str,
    order_premise: Premise,
    f: Functional,
    Y1: DiscreteDistribution,
    Y2: DiscreteDistribution,
    tol: float,
    extra: Sequence[Premise] = (),
) -> TheoremReport:
    lo, hi = _hull(Y1, Y2)
    cov_ok, cov_detail = _coverage(f, lo, hi)
    v1, v2 = _value(f, Y1), _value(f, Y2)
    gap = v2 - v1
    equal = abs(gap) <= tol
    premises = [
        order_premise,
        *extra,
        Premise("absolute_continuity", cov_ok, cov_detail),
        Premise("equal_functional", equal, f"values {v1!r} vs {v2!r}"),
    ]
    same = same_distribution(Y1, Y2)
    dist = cdf_distance(Y1, Y2)
    all_hold = all(p.satisfied for p in premises)
    differ = (not same) and dist >= DIFFER_TOL
    consistent = not (all_hold and differ)
    contra = order_premise.satisfied and cov_ok and all(p.satisfied for p in extra) and differ
    notes = []
    if not consistent:
        notes.append("INCONSISTENT: premises hold but the laws differ")
    elif contra:
        notes.append("contrapositive: laws differ, functional gap is strict")
    elif not cov_ok and equal and differ:
        notes.append("hypothesis violated: equal functional values despite different laws")
    return TheoremReport(
        theorem,
        premises,
        conclusion_checked=all_hold,
        consistent=consistent,
        margins={"gap": gap, "abs_gap": abs(gap), "cdf_distance": dist, "value_1": v1, "value_2": v2},
        contrapositive=contra,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------


def verify_utility_theorem(
    Y1: DiscreteDistribution,
    Y2: DiscreteDistribution,
    U: ConvexFunctionRep,
    tol: float = EQUALITY_TOL,
) -> TheoremReport:
    """Y1 <=_cx Y2, lambda << gamma on the hull, E u(Y1) = E u(Y2)  =>  Y1 = Y2.

    A concave ``U`` (orientation flag) is handled through its convex body;
    the conclusion is the same, only the sign of the gap flips.
    """
    order = check_convex(Y1, Y2)
    report = _compare(
        "thm3.1" if U.orientation == "convex" else "cor3.1",
        Premise("convex_order", order.holds, f"margin {order.margin!r}"),
        U,
        Y1,
        Y2,
        tol,
    )
    report.margins["order_margin"] = order.margin
    return report


def verify_distortion_theorem(
    Y1: DiscreteDistribution,
    Y2: DiscreteDistribution,
    g: Distortion,
    order_mode: str = "cx",
    tol: float = EQUALITY_TOL,
) -> TheoremReport:
    """Y1 <= Y2 (convex or stop-loss), lambda << nu, rho_g equal  =>  Y1 = Y2."""
    if order_mode == "cx":
        order = check_convex(Y1, Y2)
        theorem = "thm4.1" if g.concave else "cor4.1"
    elif order_mode == "sl":
        order = check_stop_loss(Y1, Y2)
        theorem = "rem4.3"
    else:
        raise ValueError("order_mode must be 'cx' or 'sl'")
    report = _compare(
        theorem,
        Premise(f"{order_mode}_order", order.holds, f"margin {order.margin!r}"),
        g,
        Y1,
        Y2,
        tol,
    )
    report.margins["order_margin"] = order.margin
    return report


def verify_comonotonic_characterization(
    marginals: Sequence[DiscreteDistribution],
    J: JointDiscreteDistribution,
    functional: Functional,
    tol: float = EQUALITY_TOL,
) -> TheoremReport:
    """f(S) = f(S^c)  <=>  S = S^c for S the sum under J, S^c the comonotonic sum."""
    if J.dim != len(marginals):
        raise ValueError("marginal mismatch: dimension")
    for i, D in enumerate(marginals):
        if not same_distribution(J.marginal(i), D):
            raise ValueError(f"marginal mismatch at coordinate {i}")
    S = distribution_of_sum(J)
    Sc = comonotonic_sum(marginals)
    order = check_convex(S, Sc)
    theorem = "thm1.2" if isinstance(functional, Distortion) else "thm1.1"
    report = _compare(
        theorem,
        Premise("sum_below_comonotonic_sum", order.holds, f"margin {order.margin!r}"),
        functional,
        S,
        Sc,
        tol,
    )
    same = same_distribution(S, Sc)
    equal = report.premise("equal_functional").satisfied
    if same and not equal:
        report.consistent = False
        report.notes.append("INCONSISTENT: S = S^c but functional values differ")
    report.margins["order_margin"] = order.margin
    return report


def _joint_cdf_distance(JX: JointDiscreteDistribution, JY: JointDiscreteDistribution) -> float:
    grids = [sorted(set(p[i] for p in JX.points + JY.points)) for i in range(JX.dim)]
    if math.prod(len(g) for g in grids) > 20000:
        # coarse but sufficient for "differ" certification on large supports
        pts = JX.points + JY.points
        return max(abs(JX.cdf(p) - JY.cdf(p)) for p in pts)
    return max(abs(JX.cdf(p) - JY.cdf(p)) for p in itertools.product(*grids))


def verify_multivariate_theorem(
    JX: JointDiscreteDistribution,
    JY: JointDiscreteDistribution,
    functional: Functional,
    tol: float = EQUALITY_TOL,
    trials: int = 200,
    seed: int = 42,
) -> TheoremReport:
    """X <=_sm Y and f(S_X) = f(S_Y)  =>  X = Y in law (as vectors)."""
    if JX.dim != JY.dim:
        raise ValueError("dimension mismatch")
    if JX.dim == 2:
        sm = check_supermodular_bivariate(JX, JY)
        sm_premise = Premise("supermodular_order", sm.holds, f"margin {sm.margin!r}")
    else:
        sm = supermodular_falsify(JX, JY, trials=trials, seed=seed)
        sm_premise = Premise("supermodular_order", sm.holds, sm.note or "")
    SX, SY = distribution_of_sum(JX), distribution_of_sum(JY)
    moment = Premise("moment_condition", True, "finite support: all moments finite")
    report = _compare(
        "thm5.2" if isinstance(functional, Distortion) else "thm5.1",
        sm_premise,
        functional,
        SX,
        SY,
        tol,
        extra=(moment,),
    )
    joint_same = JX.allclose(JY)
    joint_dist = _joint_cdf_distance(JX, JY)
    all_hold = report.premises_hold
    report.consistent = not (all_hold and not joint_same and joint_dist >= DIFFER_TOL)
    if not report.consistent and not any(n.startswith("INCONSISTENT") for n in report.notes):
        report.notes.append("INCONSISTENT: premises hold but the joint laws differ")
    if JX.dim != 2:
        report.notes.append("supermodular premise from falsifier only (not a proof)")
    report.margins["joint_cdf_distance"] = joint_dist
    report.margins["order_margin"] = sm.margin
    return report


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def mean_preserving_spread(
    D: DiscreteDistribution,
    x: float,
    left: float,
    right: float,
    fraction: float = 1.0,
) -> DiscreteDistribution:
    """Move ``fraction`` of the mass at atom ``x`` to ``x - left`` and ``x + right``.

    The split is proportional to the opposite widths, so the mean is kept.
    """
    if left <= 0 or right <= 0:
        raise ValueError("spread widths must be positive")
    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    hits = np.nonzero(D.support == x)[0]
    if hits.size == 0:
        raise ValueError(f"{x!r} is not an atom")
    i = int(hits[0])
    m = float(D.probs[i]) * fraction
    w = left + right
    values = list(D.support) + [x - left, x + right]
    weights = list(D.probs) + [m * right / w, m * left / w]
    weights[i] = 0.0 if fraction == 1 else float(D.probs[i]) - m
    return make_discrete(values, weights)


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _random_marginal(rng: np.random.Generator, n_min: int = 1, n_max: int = 4) -> DiscreteDistribution:
    n = int(rng.integers(n_min, n_max + 1))
    values = rng.choice(np.arange(-16, 17), size=n, replace=False) / 4.0
    weights = rng.dirichlet(np.ones(n)) + 0.05
    return make_discrete(values, weights)


def gen_cx_pair(
    seed: int, steps: int = 1, base: DiscreteDistribution | None = None
) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """(Y1, Y2) with Y2 reached from Y1 by ``steps`` random mean-preserving spreads."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = _rng(seed)
    Y1 = base if base is not None else _random_marginal(rng)
    Y2 = Y1
    for _ in range(steps):
        x = float(Y2.support[rng.integers(len(Y2))])
        left = int(rng.integers(1, 9)) / 4.0
        right = int(rng.integers(1, 9)) / 4.0
        fraction = float(rng.choice([0.25, 0.5, 0.75, 1.0]))
        Y2 = mean_preserving_spread(Y2, x, left, right, fraction)
    return Y1, Y2


def gen_sl_pair(seed: int, steps: int = 1) -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """(Y1, Y2) ordered in stop-loss order with E Y1 < E Y2.

    A convex-order pair followed by one upward mass move on the larger law.
    """
    rng = _rng(seed)
    Y1, Y2 = gen_cx_pair(int(rng.integers(2**63)), steps)
    x = float(Y2.support[rng.integers(len(Y2))])
    i = int(np.nonzero(Y2.support == x)[0][0])
    moved = float(Y2.probs[i]) * float(rng.choice([0.5, 1.0]))
    up = int(rng.integers(1, 9)) / 4.0
    values = list(Y2.support) + [x + up]
    weights = list(Y2.probs) + [moved]
    weights[i] = float(Y2.probs[i]) - moved
    return Y1, make_discrete(values, weights)


def concordance_transfer(
    J: JointDiscreteDistribution, x1: float, x2: float, y1: float, y2: float, eps: float
) -> JointDiscreteDistribution:
    """Move ``eps`` from (x1, y2), (x2, y1) to (x1, y1), (x2, y2); marginals unchanged."""
    if J.dim != 2:
        raise ValueError("concordance transfer is bivariate")
    if not (x1 < x2 and y1 < y2):
        raise ValueError("need x1 < x2 and y1 < y2")
    cells = J.as_dict()
    for pt in ((x1, y2), (x2, y1)):
        have = cells.get(pt, 0.0)
        if eps > have + 1e-15:
            raise ValueError(f"not enough mass at {pt}")
        left = have - eps
        if left <= 1e-15:
            cells.pop(pt, None)
        else:
            cells[pt] = left
    for pt in ((x1, y1), (x2, y2)):
        cells[pt] = cells.get(pt, 0.0) + eps
    return make_joint(list(cells), list(cells.values()))


def _eligible_transfers(J: JointDiscreteDistribution):
    cells = J.as_dict()
    xs = sorted(set(p[0] for p in J.points))
    ys = sorted(set(p[1] for p in J.points))
    out = []
    for i, x1 in enumerate(xs):
        for x2 in xs[i + 1 :]:
            for j, y1 in enumerate(ys):
                for y2 in ys[j + 1 :]:
                    m = min(cells.get((x1, y2), 0.0), cells.get((x2, y1), 0.0))
                    if m > 0:
                        out.append((x1, x2, y1, y2, m))
    return out


def gen_sm_pair(
    seed: int, steps: int = 1, base: JointDiscreteDistribution | None = None
) -> tuple[JointDiscreteDistribution, JointDiscreteDistribution]:
    """(JX, JY) bivariate with JY reached from JX by concordance-increasing transfers.

    Stops early if the coupling becomes comonotonic; raises if no transfer
    is possible at all (e.g. a degenerate marginal).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = _rng(seed)
    JX = base if base is not None else independent_joint(
        [_random_marginal(rng, 2, 4), _random_marginal(rng, 2, 4)]
    )
    JY = JX
    for k in range(steps):
        options = _eligible_transfers(JY)
        if not options:
            if k == 0:
                raise ValueError("no valid concordance transfer (degenerate marginal?)")
            break
        x1, x2, y1, y2, m = options[int(rng.integers(len(options)))]
        fraction = float(rng.choice([0.25, 0.5, 0.75, 1.0]))
        JY = concordance_transfer(JY, x1, x2, y1, y2, m * fraction)
    return JX, JY


def random_joint(seed: int, n_max: int = 4, atoms_max: int = 6) -> JointDiscreteDistribution:
    """Random coupling: random weights on the product grid of random marginals."""
    rng = _rng(seed)
    n = int(rng.integers(2, n_max + 1))
    supports = []
    for _ in range(n):
        k = int(rng.integers(1, atoms_max + 1))
        supports.append(rng.choice(np.arange(-16, 17), size=k, replace=False) / 4.0)
    grid = list(itertools.product(*supports))
    # sparse random coupling keeps product grids small
    keep = max(1, min(len(grid), int(rng.integers(1, 13))))
    chosen = rng.choice(len(grid), size=keep, replace=False)
    weights = rng.dirichlet(np.ones(keep))
    return make_joint([grid[i] for i in chosen], weights)


# ---------------------------------------------------------------------------
# Counterexamples
# ---------------------------------------------------------------------------


@dataclass
class CounterexampleBundle:
    """Two distinct convex-ordered laws that a non-strict functional cannot tell apart.

    The functional's curvature measure is purely atomic and puts no mass
    where the laws differ: the same failure mode as a strictly convex
    utility with singular curvature.
    """

    kind: str
    y1: DiscreteDistribution
    y2: DiscreteDistribution
    functional: Functional
    certified: dict = field(default_factory=dict)
    description: str = ""

    def recheck(self) -> dict:
        order = check_convex(self.y1, self.y2)
        v1, v2 = _value(self.functional, self.y1), _value(self.functional, self.y2)
        return {
            "cx_holds": order.holds,
            "cdf_distance": cdf_distance(self.y1, self.y2),
            "functional_gap": abs(v2 - v1),
            "value_1": v1,
            "value_2": v2,
        }

    def certify(self) -> bool:
        facts = self.recheck()
        return facts["cx_holds"] and facts["cdf_distance"] >= 0.1 and facts["functional_gap"] <= EQUALITY_TOL

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "y1": dist_to_doc(self.y1),
            "y2": dist_to_doc(self.y2),
            "functional": functional_to_doc(self.functional),
            "certified": self.certified,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "CounterexampleBundle":
        from .io import dist_from_doc

        y1 = dist_from_doc(doc["y1"], "y1")
        y2 = dist_from_doc(doc["y2"], "y2")
        lo, hi = _hull(y1, y2)
        f = functional_from_doc(doc["functional"], lo, hi)
        return cls(doc["kind"], y1, y2, f, doc.get("certified", {}), doc.get("description", ""))


def gap_counterexample(kind: str) -> CounterexampleBundle:
    """Pair {-1, 1} vs {-2, 0, 1} with a kinked functional blind to their difference.

    ``utility-gap`` uses u(x) = (x - 0.5)+, ``distortion-gap`` uses
    g(q) = min(2q, 1), i.e. TVaR at level 1/2.
    """
    from .convexfn import cfn_from_piecewise_linear

    y1 = make_discrete([-1.0, 1.0], [0.5, 0.5])
    y2 = make_discrete([-2.0, 0.0, 1.0], [0.25, 0.25, 0.5])
    if kind in ("utility", "utility-gap"):
        f: Functional = cfn_from_piecewise_linear([0.5], [0.0, 1.0], (0.5, 0.0))
        kind = "utility-gap"
        desc = (
            "u(x) = (x - 0.5)+ has curvature only at 0.5, where both stop-loss "
            "transforms coincide; E u is 0.25 for both laws although they differ."
        )
    elif kind in ("distortion", "distortion-gap"):
        f = PiecewiseLinearDistortion(((0.0, 0.0), (0.5, 1.0), (1.0, 1.0)))
        kind = "distortion-gap"
        desc = (
            "g(q) = min(2q, 1) puts all of nu on w = 0.5, where both TVaR curves "
            "coincide; rho_g is 1 for both laws although they differ."
        )
    else:
        raise ValueError(f"unknown counterexample kind {kind!r}")
    bundle = CounterexampleBundle(kind, y1, y2, f, description=desc)
    bundle.certified = bundle.recheck()
    return bundle


# ---------------------------------------------------------------------------
# Corpus runner
# ---------------------------------------------------------------------------


DEFAULT_FUNCTIONALS = {
    "thm1.1": {"family": "quadratic", "orientation": "concave"},
    "thm1.2": {"family": "dual_power", "kappa": 2},
    "thm3.1": {"family": "quadratic"},
    "thm4.1": {"family": "dual_power", "kappa": 2},
    "thm5.1": {"family": "quadratic", "orientation": "concave"},
    "thm5.2": {"family": "dual_power", "kappa": 2},
    "rem4.3": {"family": "dual_power", "kappa": 2},
}


@dataclass
class CorpusSummary:
    theorem: str
    trials: int
    seed: int
    functional: dict
    consistent: bool = True
    premises_held: int = 0
    contrapositive: int = 0
    min_abs_gap: float = math.inf
    min_cdf_distance: float = math.inf
    equivalence_checked: int = 0
    equivalence_agreed: int = 0
    inconsistent: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "seed": self.seed,
            "functional": self.functional,
            "consistent": self.consistent,
            "premises_held": self.premises_held,
            "contrapositive_instances": self.contrapositive,
            "min_abs_gap": self.min_abs_gap,
            "min_cdf_distance": self.min_cdf_distance,
            "sl_tvar_equivalence": {"checked": self.equivalence_checked, "agreed": self.equivalence_agreed},
            "inconsistent_instances": self.inconsistent,
        }


def _substreams(seed: int, trials: int) -> list[int]:
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def _resolve(doc: dict, lo: float, hi: float) -> Functional:
    return functional_from_doc(doc, lo, hi)


def _audit(summary: CorpusSummary, A: DiscreteDistribution, B: DiscreteDistribution) -> None:
    for X, Y in ((A, B), (B, A)):
        summary.equivalence_checked += 1
        if check_stop_loss(X, Y).holds == check_tvar_spectrum(X, Y).holds:
            summary.equivalence_agreed += 1


def run_instance(theorem: str, seed: int, doc: dict) -> tuple[TheoremReport, dict, tuple]:
    """One corpus instance; returns (report, serialized instance, laws compared)."""
    steps = 1 + seed % 3
    if theorem in ("thm3.1", "thm4.1", "rem4.3"):
        if theorem == "rem4.3":
            Y1, Y2 = gen_sl_pair(seed, steps)
        else:
            Y1, Y2 = gen_cx_pair(seed, steps)
        f = _resolve(doc, *_hull(Y1, Y2))
        if isinstance(f, Distortion):
            rep = verify_distortion_theorem(Y1, Y2, f, "sl" if theorem == "rem4.3" else "cx")
        else:
            rep = verify_utility_theorem(Y1, Y2, f)
        return rep, {"y1": dist_to_doc(Y1), "y2": dist_to_doc(Y2)}, (Y1, Y2)
    if theorem in ("thm1.1", "thm1.2"):
        J = random_joint(seed)
        marginals = J.marginals()
        S, Sc = distribution_of_sum(J), comonotonic_sum(marginals)
        f = _resolve(doc, *_hull(S, Sc))
        rep = verify_comonotonic_characterization(marginals, J, f)
        return rep, {"joint": joint_to_doc(J)}, (S, Sc)
    if theorem in ("thm5.1", "thm5.2"):
        JX, JY = gen_sm_pair(seed, steps)
        SX, SY = distribution_of_sum(JX), distribution_of_sum(JY)
        f = _resolve(doc, *_hull(SX, SY))
        rep = verify_multivariate_theorem(JX, JY, f)
        return rep, {"jx": joint_to_doc(JX), "jy": joint_to_doc(JY)}, (SX, SY)
    raise ValueError(f"unknown theorem id {theorem!r}; expected one of {', '.join(THEOREM_IDS)}")


def run_corpus(theorem: str, trials: int = 200, seed: int = 42, functional: dict | None = None) -> CorpusSummary:
    """Run ``trials`` generated instances; each draws its own seed substream."""
    if theorem not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id {theorem!r}; expected one of {', '.join(THEOREM_IDS)}")
    doc = functional if functional is not None else DEFAULT_FUNCTIONALS[theorem]
    summary = CorpusSummary(theorem, trials, seed, doc)
    for s in _substreams(seed, trials):
        rep, instance, (A, B) = run_instance(theorem, s, doc)
        _audit(summary, A, B)
        if rep.premises_hold:
            summary.premises_held += 1
        if rep.contrapositive:
            summary.contrapositive += 1
            summary.min_abs_gap = min(summary.min_abs_gap, rep.margins["abs_gap"])
            summary.min_cdf_distance = min(summary.min_cdf_distance, rep.margins["cdf_distance"])
        if not rep.consistent:
            summary.consistent = False
            summary.inconsistent.append({"seed": s, "instance": instance, "report": rep.to_dict()})
    return summary
