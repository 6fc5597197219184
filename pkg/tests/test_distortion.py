import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import discrete_laws
from stochorder.dist import degenerate, make_discrete, mean, tvar
from stochorder.distortion import (
    DualPowerDistortion,
    PiecewiseLinearDistortion,
    PowerDistortion,
    UnsupportedDistortionError,
    WangDistortion,
    covers_lebesgue_nu,
    distortion_from_doc,
    dual,
    identity_distortion,
    mu_of,
    nu_of,
    rho_quantile,
    rho_survival,
    rho_tvar,
    rho_tvar_uncorrected,
    tvar_distortion,
)

STEP = PiecewiseLinearDistortion(((0.0, 0.0), (0.5, 1.0), (1.0, 1.0)))
QS = np.linspace(0, 1, 101)

CONCAVE = [
    identity_distortion(),
    STEP,
    tvar_distortion(0.9),
    PiecewiseLinearDistortion(((0, 0), (0.2, 0.5), (0.6, 0.9), (1, 1))),
    DualPowerDistortion(1.5),
    DualPowerDistortion(2.0),
    DualPowerDistortion(3.0),
]
SMOOTH = [PowerDistortion(0.5), WangDistortion(0.7)]


class TestFamilies:
    def test_boundary_values(self):
        for g in CONCAVE + SMOOTH:
            assert g(0.0) == 0.0 and g(1.0) == 1.0

    def test_concave_dominates_identity(self):
        for g in CONCAVE + SMOOTH:
            assert all(g(q) >= q - 1e-15 for q in QS)

    def test_wang_matches_normal_cdf(self):
        from scipy.stats import norm

        g = WangDistortion(0.5)
        for q in (0.01, 0.3, 0.9):
            assert g(q) == pytest.approx(norm.cdf(norm.ppf(q) + 0.5), abs=1e-12)

    def test_derivatives_against_differences(self):
        h = 1e-7
        for g in [DualPowerDistortion(2.5), PowerDistortion(0.4), WangDistortion(0.3)]:
            for q in (0.2, 0.5, 0.8):
                assert g.right_derivative(q) == pytest.approx((g(q + h) - g(q)) / h, rel=1e-5)

    def test_piecewise_linear_one_sided(self):
        assert STEP.right_derivative(0.5) == 0.0 and STEP.left_derivative(0.5) == 2.0
        assert STEP.left_derivative(1.0) == 0.0

    @pytest.mark.parametrize(
        "knots",
        [
            ((0, 0), (1, 0.9)),
            ((0, 0.1), (1, 1)),
            ((0, 0), (0.5, 0.8), (0.4, 0.9), (1, 1)),
            ((0, 0), (0.3, 0.1), (0.6, 0.9), (1, 1)),
            ((0, 0), (0.5, 1.2), (1, 1)),
        ],
    )
    def test_invalid_knots(self, knots):
        with pytest.raises(ValueError):
            PiecewiseLinearDistortion(knots)

    @pytest.mark.parametrize(
        "doc",
        [{"family": "dual_power", "kappa": 0.0}, {"family": "power", "r": -1.0}, {"family": "nope"}, {"family": "tvar", "p": 1.0}],
    )
    def test_invalid_docs(self, doc):
        with pytest.raises(ValueError):
            distortion_from_doc(doc)

    def test_doc_roundtrip(self):
        for g in CONCAVE + SMOOTH:
            assert distortion_from_doc(g.to_doc()) == g


class TestDual:
    def test_dual_power(self):
        d = dual(DualPowerDistortion(2.0))
        assert all(d(q) == pytest.approx(q * q, abs=1e-15) for q in QS)
        assert d.convex and not d.concave

    def test_identity_self_dual(self):
        assert all(dual(identity_distortion())(q) == pytest.approx(q, abs=1e-15) for q in QS)

    def test_step(self):
        d = dual(STEP)
        assert all(d(q) == pytest.approx(max(2 * q - 1, 0), abs=1e-15) for q in QS)

    def test_involution(self):
        for g in CONCAVE + SMOOTH:
            gg = dual(dual(g))
            assert all(abs(gg(q) - g(q)) <= 1e-12 for q in QS)
            assert dual(g).convex == g.concave


class TestMeasures:
    def test_step_nu(self):
        nu = nu_of(STEP)
        assert nu.atoms == ((0.5, 2.0),) and not nu.pieces
        assert mu_of(STEP).atoms == ((0.5, 1.0),)

    def test_dual_power_nu(self):
        nu = nu_of(DualPowerDistortion(2.0))
        assert not nu.atoms
        assert nu.total_mass() == pytest.approx(2.0, abs=1e-15)
        assert nu.density_at(0.3) == pytest.approx(2.0, abs=1e-15)
        mu = mu_of(DualPowerDistortion(2.0))
        assert mu.density_at(0.25) == pytest.approx(1.5, abs=1e-15)

    def test_identity_nu(self):
        assert nu_of(identity_distortion()).atoms == ((0.0, 1.0),)
        assert mu_of(identity_distortion()).atoms == ((0.0, 1.0),)

    @pytest.mark.parametrize("g", CONCAVE, ids=lambda g: repr(g)[:40])
    def test_nu_cdf_is_slope(self, g):
        nu = nu_of(g)
        assert nu.atom_mass(0.0) == pytest.approx(g.left_derivative(1.0), abs=1e-12)
        for q in np.linspace(0.013, 0.987, 40):
            assert nu.measure(0.0, q, closed_left=True) == pytest.approx(g.right_derivative(1 - q), abs=1e-10)

    @pytest.mark.parametrize("g", CONCAVE, ids=lambda g: repr(g)[:40])
    def test_mu_probability(self, g):
        assert mu_of(g).total_mass() == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("g", SMOOTH + [dual(DualPowerDistortion(2.0))])
    def test_unsupported(self, g):
        with pytest.raises(UnsupportedDistortionError):
            nu_of(g)
        with pytest.raises(UnsupportedDistortionError):
            rho_tvar(g, make_discrete([0, 1], [1, 1]))

    def test_coverage(self):
        assert covers_lebesgue_nu(DualPowerDistortion(2.0))
        assert covers_lebesgue_nu(DualPowerDistortion(1.5))
        assert not covers_lebesgue_nu(STEP)
        assert not covers_lebesgue_nu(identity_distortion())


class TestRoutes:
    def test_identity_gives_mean(self):
        D = make_discrete([-3, 0.5, 2, 9], [1, 2, 3, 4])
        g = identity_distortion()
        for f in (rho_survival, rho_quantile, rho_tvar):
            assert f(g, D) == pytest.approx(mean(D), abs=1e-12)

    def test_sqrt_uniform(self):
        assert rho_survival(PowerDistortion(0.5), make_discrete([0, 1], [1, 1])) == pytest.approx(math.sqrt(0.5), abs=1e-15)

    def test_step_examples(self):
        D3 = make_discrete([-2, 0, 1], [1, 1, 2])
        D2 = make_discrete([-1, 1], [1, 1])
        assert rho_survival(STEP, D3) == pytest.approx(1.0, abs=1e-15)
        assert rho_quantile(STEP, D2) == pytest.approx(1.0, abs=1e-15)
        assert rho_tvar(STEP, D2) == pytest.approx(tvar(D2, 0.5), abs=1e-15)

    def test_dual_power_uniform(self):
        D = make_discrete([0, 1], [1, 1])
        g = DualPowerDistortion(2.0)
        for f in (rho_survival, rho_quantile, rho_tvar):
            assert f(g, D) == pytest.approx(0.75, abs=1e-15)

    def test_double_counted_mean_overshoots(self):
        D = make_discrete([0, 1], [1, 1])
        assert rho_tvar_uncorrected(DualPowerDistortion(2.0), D) == pytest.approx(1.75, abs=1e-12)

    @pytest.mark.parametrize("g", CONCAVE + SMOOTH, ids=lambda g: repr(g)[:40])
    def test_degenerate(self, g):
        assert rho_survival(g, degenerate(-2.5)) == pytest.approx(-2.5, abs=1e-12)
        assert rho_quantile(g, degenerate(4.0)) == pytest.approx(4.0, abs=1e-12)

    @pytest.mark.parametrize("g", CONCAVE + SMOOTH, ids=lambda g: repr(g)[:40])
    def test_quadrature_oracle(self, g):
        D = make_discrete([-3, -0.5, 1, 2.25, 6], [3, 1, 4, 1, 5])
        want = oracles.rho_quad(g, D.support.tolist(), D.probs.tolist())
        assert rho_survival(g, D) == pytest.approx(want, abs=1e-9)
        assert rho_quantile(g, D) == pytest.approx(want, abs=1e-9)

    @pytest.mark.parametrize("g", [DualPowerDistortion(1.5), DualPowerDistortion(3.0), tvar_distortion(0.3)])
    def test_spectral_oracle(self, g):
        D = make_discrete([-3, -0.5, 1, 2.25, 6], [3, 1, 4, 1, 5])
        want = oracles.rho_phi_quad(g.left_derivative, D.support.tolist(), D.probs.tolist())
        assert rho_tvar(g, D) == pytest.approx(want, abs=1e-9)

    @given(discrete_laws(), st.sampled_from(CONCAVE))
    def test_three_routes_agree(self, D, g):
        a, b, c = rho_survival(g, D), rho_quantile(g, D), rho_tvar(g, D)
        assert max(a, b, c) - min(a, b, c) <= 1e-9

    @given(discrete_laws(), st.sampled_from(CONCAVE + SMOOTH))
    def test_above_mean(self, D, g):
        assert rho_survival(g, D) >= mean(D) - 1e-12

    @given(discrete_laws(), st.sampled_from(CONCAVE + SMOOTH), st.floats(0.1, 5), st.floats(-10, 10))
    @settings(max_examples=60)
    def test_translation_scaling(self, D, g, a, b):
        assert rho_survival(g, D.affine(a, b)) == pytest.approx(a * rho_survival(g, D) + b, abs=1e-10)

    def test_convex_distortion_routes(self):
        D = make_discrete([0, 1, 3], [1, 1, 2])
        g = dual(DualPowerDistortion(2.0))
        assert rho_survival(g, D) == pytest.approx(rho_quantile(g, D), abs=1e-12)
        assert rho_survival(g, D) <= mean(D)


@pytest.mark.parametrize("g", [WangDistortion(0.4), WangDistortion(2.0), PowerDistortion(0.3)])
def test_infinite_slope_coverage_matches_differences(g):
    h = 1e-5
    qs = np.linspace(1e-3, 1 - 1e-3, 2001)
    dens = [-(g.right_derivative(1 - q + h) - g.right_derivative(1 - q - h)) / (2 * h) for q in qs]
    # the infimum may sit at an endpoint the grid only approaches
    assert g._nu_density_infimum() <= min(dens) * (1 + 1e-6)
    assert g._nu_density_infimum() == pytest.approx(min(dens), rel=1e-2)
    assert covers_lebesgue_nu(g)
