"""Symbol evaluations: three routes, asymptotics, envelopes, Wronskian."""

import math

import numpy as np
import pytest
from scipy.special import jv as scipy_jv

from tricomi_lab.errors import AccuracyError, ParameterError
from tricomi_lab.geometry import phi, phi_inverse
from tricomi_lab.symbols import (
    Z_SWITCH,
    amplitude_envelope_bound,
    asymptotic_components,
    bessel_j,
    evolve_mode,
    evolve_mode_many,
    fit_upper_envelope_slope,
    kummer_M,
    symbol_matrix,
    v1_symbol,
    v2_symbol,
)


def w_to_t(m, w, lam=1.0):
    return phi_inverse(m, w / lam)


class TestBesselRoute:
    @pytest.mark.parametrize("nu", [-1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, -0.25, 1.25])
    def test_against_scipy(self, nu):
        w = np.geomspace(1e-3, 900.0, 400)
        assert np.abs(bessel_j(nu, w) - scipy_jv(nu, w)).max() < 1e-10

    def test_overlap_band(self):
        # series and asymptotics agree where both are trustworthy
        from tricomi_lab.symbols import _bessel_hankel, _bessel_series

        w = np.linspace(12.5, 20.0, 40)
        for nu in (-1.0 / 3.0, 0.25, 1.25):
            assert np.abs(_bessel_series(nu, w) - _bessel_hankel(nu, w)).max() < 1e-8

    def test_negative_argument_rejected(self):
        with pytest.raises(ParameterError):
            bessel_j(0.5, -1.0)


class TestKummer:
    def test_value_at_zero(self):
        for a, b in ((0.3, 0.9), (1.2, 2.4), (0.1, 1.7)):
            assert kummer_M(a, b, 0.0) == pytest.approx(1.0)

    def test_collapses_to_exp_when_a_eq_b(self):
        z = 2j
        assert abs(kummer_M(0.7, 0.7, z) - np.exp(z)) < 1e-12

    def test_pole_rejected(self):
        with pytest.raises(ParameterError):
            kummer_M(0.5, 0.0, 1j)
        with pytest.raises(ParameterError):
            kummer_M(0.5, -2.0, 1j)

    def test_maclaurin_accuracy_guard(self):
        # generic (a, b) Maclaurin at large imaginary z cannot reach 1e-7
        with pytest.raises(AccuracyError):
            kummer_M(0.3, 0.8, 25j, rtol=1e-9)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_overlap_band_series_vs_asymptotic(self, m):
        # |z| in [25, 40]: stabilized series (b = 2a) vs exponential asymptotics
        a = m / (2.0 * (m + 2.0))
        b = m / (m + 2.0)
        from tricomi_lab.symbols import _kummer_confluent_even

        for zabs in np.linspace(25.0, 40.0, 12):
            z = 1j * zabs
            a_plus, a_minus = asymptotic_components(a, b, z)
            asym = np.exp(z) * a_plus + a_minus
            series = _kummer_confluent_even(a, z)
            assert abs(asym - series) < 1e-8

    def test_symbol_family_matches_series_at_paper_point(self):
        # V1 = e^(-z/2) M(m/(2(m+2)), m/(m+2); z) at phi(t) lam = 0.7, m = 1
        m, lam = 1, 1.0
        t = w_to_t(m, 0.7)
        v_kummer = v1_symbol(m, t, lam, route="kummer")
        st = evolve_mode(m, lam, t, (1.0, 0.0), rtol=1e-12)
        assert abs(v_kummer.real - st.v) < 1e-8
        assert abs(v_kummer.imag) < 1e-10


class TestAsymptoticComponents:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_envelope_exponents(self, m):
        # |A_plus| ~ w^(a-b), |A_minus| ~ w^(-a) for the V1 family
        a = m / (2.0 * (m + 2.0))
        b = m / (m + 2.0)
        ws = np.geomspace(20.0, 1e3, 120)
        plus = np.array([abs(asymptotic_components(a, b, 2j * w)[0]) for w in ws])
        minus = np.array([abs(asymptotic_components(a, b, 2j * w)[1]) for w in ws])
        zs = 2.0 * ws
        slope_plus = np.polyfit(np.log(zs), np.log(plus), 1)[0]
        slope_minus = np.polyfit(np.log(zs), np.log(minus), 1)[0]
        assert slope_plus == pytest.approx(a - b, abs=0.15 * abs(a - b))
        assert slope_minus == pytest.approx(-a, abs=0.15 * a)


class TestSymbols:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_initial_values(self, m):
        assert v1_symbol(m, 0.0, 3.0) == pytest.approx(1.0)
        assert v2_symbol(m, 0.0, 3.0) == pytest.approx(0.0)

    @pytest.mark.parametrize("route", ["kummer", "bessel"])
    def test_routes_agree(self, route):
        other = "bessel" if route == "kummer" else "kummer"
        for m in (1, 2, 3):
            for w in (0.05, 1.0, 7.0, 14.9, 15.1, 29.9, 30.1, 60.0, 100.0):
                t = w_to_t(m, w)
                x = v1_symbol(m, t, 1.0, route)
                y = v1_symbol(m, t, 1.0, other)
                assert abs(x - y) < 1e-7 * max(abs(y), 1.0) + 1e-9

    def test_kummer_route_real_after_assembly(self):
        for m in (1, 2):
            for w in (0.3, 3.0, 12.0, 45.0):
                t = w_to_t(m, w)
                assert abs(v1_symbol(m, t, 1.0, "kummer").imag) < 1e-10
                assert abs(v2_symbol(m, t, 1.0, "kummer").imag) < 1e-10

    def test_m0_rejected(self):
        with pytest.raises(ParameterError):
            v1_symbol(0, 1.0, 1.0)

    def test_amplitude_envelope_fitted_constant(self):
        # fit C once on a coarse grid, then the bound holds with the same C
        m = 1
        ws = np.geomspace(0.1, 1e3, 300)
        vals = np.array([abs(v1_symbol(m, w_to_t(m, w), 1.0, "bessel")) for w in ws])
        bound = amplitude_envelope_bound(m, w_to_t(m, ws), 1.0)
        C = float((vals / bound).max()) * 1.0000001
        ws2 = np.geomspace(0.05, 2e3, 1200)
        vals2 = np.array([abs(v1_symbol(m, w_to_t(m, w), 1.0, "bessel")) for w in ws2])
        bound2 = amplitude_envelope_bound(m, w_to_t(m, ws2), 1.0)
        assert np.all(vals2 <= C * bound2 + 1e-12)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_envelope_slope(self, m):
        ws = np.geomspace(10.0, 1e3, 2500)
        vals = np.array([abs(v1_symbol(m, w_to_t(m, w), 1.0, "bessel")) for w in ws])
        slope = fit_upper_envelope_slope(ws, vals)
        target = -m / (2.0 * (m + 2.0))
        assert slope == pytest.approx(target, abs=0.15 * abs(target))


class TestModeODE:
    def test_lambda_zero_exact(self):
        st = evolve_mode(1, 0.0, 7.0, (2.0, -0.5))
        assert st.v == pytest.approx(2.0 - 0.5 * 7.0, abs=1e-14)
        assert st.v_dot == pytest.approx(-0.5, abs=1e-14)

    def test_wronskian_at_t10(self):
        m, lam = 1, 3.0
        s1 = evolve_mode(m, lam, 10.0, (1.0, 0.0), rtol=1e-12)
        s2 = evolve_mode(m, lam, 10.0, (0.0, 1.0), rtol=1e-12)
        wr = s1.v * s2.v_dot - s1.v_dot * s2.v
        assert abs(wr - 1.0) < 1e-8

    def test_self_convergence(self):
        # tightening the local tolerance stands in for halving the step
        a = evolve_mode(1, 1.0, 5.0, (1.0, 0.0), rtol=1e-10)
        b = evolve_mode(1, 1.0, 5.0, (1.0, 0.0), rtol=1e-12)
        assert abs(a.v - b.v) < 1e-9 * max(abs(b.v), 1.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ParameterError):
            evolve_mode(1, np.nan, 1.0, (1.0, 0.0))

    def test_many_requires_increasing(self):
        with pytest.raises(ParameterError):
            evolve_mode_many(1, 1.0, np.array([1.0, 1.0]), (1.0, 0.0))


class TestSymbolMatrix:
    @pytest.mark.parametrize("m", [1, 2])
    def test_wronskian_identity(self, m):
        lam = np.geomspace(0.05, 80.0, 500)
        v1, v2, v1p, v2p = symbol_matrix(m, 10.0, lam)
        assert np.abs(v1 * v2p - v1p * v2 - 1.0).max() < 1e-8

    def test_t_zero(self):
        lam = np.linspace(0.1, 5.0, 7)
        v1, v2, v1p, v2p = symbol_matrix(1, 0.0, lam)
        assert np.all(v1 == 1.0) and np.all(v2 == 0.0)
        assert np.all(v1p == 0.0) and np.all(v2p == 1.0)

    def test_matches_scalar_symbols(self):
        lam = np.array([0.3, 2.0, 9.0])
        v1, v2, _, _ = symbol_matrix(1, 4.0, lam)
        for i, l in enumerate(lam):
            assert v1[i] == pytest.approx(v1_symbol(1, 4.0, float(l), "bessel").real, abs=1e-12)
            assert v2[i] == pytest.approx(v2_symbol(1, 4.0, float(l), "bessel").real, abs=1e-12)

    def test_derivative_consistency(self):
        # central finite difference of V1, V2 in t matches V1', V2'
        lam = np.array([0.5, 3.0, 11.0])
        t, h = 6.0, 1e-5
        va = symbol_matrix(1, t - h, lam)
        vb = symbol_matrix(1, t + h, lam)
        v1, v2, v1p, v2p = symbol_matrix(1, t, lam)
        assert np.abs((vb[0] - va[0]) / (2 * h) - v1p).max() < 1e-6
        assert np.abs((vb[1] - va[1]) / (2 * h) - v2p).max() < 1e-6
