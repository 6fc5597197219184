"""The ten acceptance criteria, one test each.

Every test prints a single ``AC-n PASS|FAIL`` line (shown even without
``-s``). Run this file directly to get the ten lines without pytest.
"""

from __future__ import annotations

import math
import sys
import time

import numpy as np
import pytest

from stochorder.convexfn import (
    cfn_eval,
    cfn_exp,
    cfn_from_piecewise_linear,
    cfn_quadratic,
    expected_utility,
    expected_utility_direct,
)
from stochorder.dist import distribution_of_sum, make_discrete, same_distribution
from stochorder.distortion import (
    DualPowerDistortion,
    PiecewiseLinearDistortion,
    WangDistortion,
    identity_distortion,
    mu_of,
    rho_quantile,
    rho_survival,
    rho_tvar,
    rho_tvar_uncorrected,
    tvar_distortion,
)
from stochorder.orders import check_convex, check_stop_loss, check_tvar_spectrum, comonotonic_sum
from stochorder.theorems import (
    THEOREM_IDS,
    gap_counterexample,
    gen_cx_pair,
    gen_sl_pair,
    gen_sm_pair,
    random_joint,
    run_corpus,
    verify_distortion_theorem,
    verify_multivariate_theorem,
    verify_utility_theorem,
)

SEED = 42


def _seeds(n, salt=0):
    return [int(c.generate_state(1)[0]) for c in np.random.SeedSequence([SEED, salt]).spawn(n)]


def _random_law(rng, max_atoms=12):
    n = int(rng.integers(1, max_atoms + 1))
    return make_discrete(np.round(rng.normal(0, 5, n), 4), rng.dirichlet(np.ones(n)) + 1e-4)


def _random_concave_pl(rng):
    """Concave piecewise-linear g: sorted decreasing slopes on a random partition."""
    k = int(rng.integers(1, 6))
    qs = np.sort(rng.choice(np.arange(1, 20), size=k - 1, replace=False) / 20) if k > 1 else np.array([])
    widths = np.diff(np.concatenate([[0.0], qs, [1.0]]))
    slopes = np.sort(rng.uniform(0, 3, k))[::-1]
    slopes = slopes / float(np.dot(slopes, widths))
    levels = np.concatenate([[0.0], np.cumsum(slopes * widths)])
    levels[-1] = 1.0
    return PiecewiseLinearDistortion(tuple(zip([0.0, *qs.tolist(), 1.0], levels.tolist())))


def _concave_builtins():
    return [
        identity_distortion(),
        tvar_distortion(0.5),
        tvar_distortion(0.95),
        PiecewiseLinearDistortion(((0, 0), (0.2, 0.5), (0.6, 0.9), (1, 1))),
        *[DualPowerDistortion(k) for k in (1.0, 1.25, 1.5, 2.0, 3.0, 7.5)],
    ]


def _sq(lo, hi, orientation="convex"):
    return cfn_quadratic(lo - 1, hi + 1, orientation=orientation)


# --------------------------------------------------------------------------
# criteria
# --------------------------------------------------------------------------


def ac1_three_routes():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst = worst_wang = 0.0
    for i in range(200):
        g = _random_concave_pl(rng) if i % 2 else DualPowerDistortion(float(rng.uniform(1, 6)))
        D = _random_law(rng)
        a, b, c = rho_survival(g, D), rho_quantile(g, D), rho_tvar(g, D)
        worst = max(worst, abs(a - b), abs(a - c))
        w = WangDistortion(float(rng.uniform(0.05, 2)))
        worst_wang = max(worst_wang, abs(rho_survival(w, D) - rho_quantile(w, D)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and worst_wang <= 1e-6 and elapsed < 5
    return ok, f"max route gap {worst:.2e} (<=1e-9), wang {worst_wang:.2e} (<=1e-6), {elapsed:.2f}s (<5s)"


def ac2_mean_term():
    D = make_discrete([0, 1], [1, 1])
    g = DualPowerDistortion(2.0)
    s, t, doubled = rho_survival(g, D), rho_tvar(g, D), rho_tvar_uncorrected(g, D)
    ok = abs(s - 0.75) <= 1e-12 and abs(t - 0.75) <= 1e-12 and abs(doubled - 1.75) <= 1e-12
    return ok, f"survival {s!r}, TVaR mixture {t!r}, double-counted mean {doubled!r}"


def ac3_mu_mass():
    rng = np.random.default_rng(SEED + 3)
    gs = _concave_builtins() + [_random_concave_pl(rng) for _ in range(50)]
    gs += [DualPowerDistortion(float(k)) for k in rng.uniform(1, 10, 50)]
    worst = max(abs(mu_of(g).total_mass() - 1.0) for g in gs)
    return worst <= 1e-10, f"{len(gs)} distortions, max |mu([0,1]) - 1| = {worst:.2e}"


def ac4_comonotonic_bound():
    rng = np.random.default_rng(SEED + 4)
    t0 = time.perf_counter()
    cx_fail = 0
    worst = 0.0
    for s in _seeds(500, 4):
        J = random_joint(s)
        marg = J.marginals()
        Sc = comonotonic_sum(marg)
        if not check_convex(distribution_of_sum(J), Sc).holds:
            cx_fail += 1
        g = DualPowerDistortion(float(rng.uniform(1, 4))) if s % 2 else _random_concave_pl(rng)
        worst = max(worst, abs(rho_survival(g, Sc) - math.fsum(rho_survival(g, m) for m in marg)))
    elapsed = time.perf_counter() - t0
    ok = cx_fail == 0 and worst <= 1e-9 and elapsed < 10
    return ok, f"cx failures {cx_fail}/500, additivity gap {worst:.2e} (<=1e-9), {elapsed:.2f}s (<10s)"


def _distinct_cx_pairs(n, salt):
    for s in _seeds(n, salt):
        Y1, Y2 = gen_cx_pair(s, 1 + s % 3)
        yield Y1, Y2


def ac5_utility_contrapositive():
    gaps = []
    inconsistent = skipped = 0
    for Y1, Y2 in _distinct_cx_pairs(200, 5):
        if same_distribution(Y1, Y2):
            skipped += 1
            continue
        rep = verify_utility_theorem(Y1, Y2, _sq(min(Y1.lower, Y2.lower), max(Y1.upper, Y2.upper)))
        inconsistent += not rep.consistent
        if rep.contrapositive:
            gaps.append(rep.margins["gap"])
    ok = inconsistent == 0 and len(gaps) == 200 - skipped and min(gaps) > 1e-12
    return ok, f"{len(gaps)} witnesses, min E u gap {min(gaps):.3e} (>1e-12), {skipped} identical pairs skipped"


def ac6_distortion_contrapositive():
    pairs = [p for p in _distinct_cx_pairs(200, 6) if not same_distribution(*p)]
    mins = {}
    bad = 0
    for k in (1.5, 2.0, 3.0):
        g = DualPowerDistortion(k)
        gaps = []
        for Y1, Y2 in pairs:
            rep = verify_distortion_theorem(Y1, Y2, g, "cx")
            bad += not (rep.consistent and rep.contrapositive)
            gaps.append(rep.margins["gap"])
        mins[k] = min(gaps)
    sl_gaps = []
    for s in _seeds(200, 66):
        Y1, Y2 = gen_sl_pair(s, 1 + s % 3)
        if same_distribution(Y1, Y2):
            continue
        rep = verify_distortion_theorem(Y1, Y2, DualPowerDistortion(2.0), "sl")
        bad += not (rep.consistent and rep.contrapositive)
        sl_gaps.append(rep.margins["gap"])
    ok = bad == 0 and min(mins.values()) > 0 and min(sl_gaps) > 0
    detail = ", ".join(f"kappa {k}: {v:.3e}" for k, v in mins.items())
    return ok, f"min rho gaps {detail}; sl pairs {len(sl_gaps)} min {min(sl_gaps):.3e}; failures {bad}"


def ac7_bundles():
    facts = {k: gap_counterexample(k) for k in ("utility-gap", "distortion-gap")}
    ok = all(b.certify() for b in facts.values())
    detail = "; ".join(
        f"{k}: cx {f['cx_holds']}, cdf dist {f['cdf_distance']}, gap {f['functional_gap']:.1e}"
        for k, f in ((k, b.recheck()) for k, b in facts.items())
    )
    return ok, detail


def ac8_reconstruction():
    xs = np.linspace(-10, 10, 1000)
    sq = cfn_quadratic(-10, 10)
    ramp = cfn_from_piecewise_linear([0.5], [0.0, 1.0], (0.5, 0.0))
    e_sq = max(abs(cfn_eval(sq, x) - x * x) for x in xs)
    e_ramp = max(abs(cfn_eval(ramp, x) - max(x - 0.5, 0.0)) for x in xs)
    rng = np.random.default_rng(SEED + 8)
    e_exp_u = cfn_exp(-40, 40, rate=0.1)
    worst = 0.0
    for _ in range(100):
        D = _random_law(rng)
        for U in (sq if max(abs(D.lower), abs(D.upper)) <= 10 else _sq(D.lower, D.upper), ramp, e_exp_u):
            worst = max(worst, abs(expected_utility(U, D) - expected_utility_direct(U, D)))
    ok = e_sq <= 1e-9 and e_ramp <= 1e-9 and worst <= 1e-9
    return ok, f"grid error x^2 {e_sq:.1e}, ramp {e_ramp:.1e}; measure vs direct {worst:.1e} (all <=1e-9)"


def ac9_multivariate():
    bad = 0
    gaps_u, gaps_g = [], []
    for s in _seeds(100, 9):
        JX, JY = gen_sm_pair(s, 1 + s % 3)
        SX, SY = distribution_of_sum(JX), distribution_of_sum(JY)
        if same_distribution(SX, SY):
            bad += 1
            continue
        lo, hi = min(SX.lower, SY.lower), max(SX.upper, SY.upper)
        for f, sink in ((_sq(lo, hi, "concave"), gaps_u), (DualPowerDistortion(2.0), gaps_g)):
            rep = verify_multivariate_theorem(JX, JY, f)
            bad += not (rep.consistent and rep.contrapositive)
            sink.append(rep.margins["abs_gap"])
    ok = bad == 0 and min(gaps_u) > 0 and min(gaps_g) > 0
    return ok, f"min |E u| gap {min(gaps_u):.3e}, min |rho| gap {min(gaps_g):.3e}, failures {bad}"


def ac10_equivalence():
    checked = agreed = 0
    for theorem in THEOREM_IDS:
        s = run_corpus(theorem, 200, SEED)
        checked += s.equivalence_checked
        agreed += s.equivalence_agreed
    rng = np.random.default_rng(SEED + 10)
    for _ in range(300):
        X, Y = _random_law(rng, 6), _random_law(rng, 6)
        checked += 1
        agreed += check_stop_loss(X, Y).holds == check_tvar_spectrum(X, Y).holds
    return checked == agreed, f"sl and tvar checks agree on {agreed}/{checked} ordered pairs"


CRITERIA = [
    ("AC-1", "three-route rho agreement", ac1_three_routes),
    ("AC-2", "TVaR mixture counts the mean once", ac2_mean_term),
    ("AC-3", "mu is a probability measure", ac3_mu_mass),
    ("AC-4", "comonotonic sum bounds every sum", ac4_comonotonic_bound),
    ("AC-5", "utility contrapositive gaps", ac5_utility_contrapositive),
    ("AC-6", "distortion contrapositive gaps", ac6_distortion_contrapositive),
    ("AC-7", "gap counterexamples certify", ac7_bundles),
    ("AC-8", "curvature representation reconstruction", ac8_reconstruction),
    ("AC-9", "multivariate contrapositive gaps", ac9_multivariate),
    ("AC-10", "stop-loss vs TVaR equivalence", ac10_equivalence),
]


def _line(tag, name, ok, detail):
    return f"{tag} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("tag, name, fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance(tag, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(tag, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for tag, name, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(tag, name, ok, detail))
    sys.exit(0 if all(results) else 1)
