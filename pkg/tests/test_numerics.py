import math

import mpmath
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from thermobound import taylor
from thermobound.errors import BracketError, ConvergenceError
from thermobound.numerics import adaptive_simpson, bisect
from thermobound.special import hurwitz_zeta


class TestAdaptiveSimpson:
    def test_polynomial_exact(self):
        res = adaptive_simpson(lambda x: x**3 - 2 * x, 0.0, 2.0, tol=1e-12)
        assert res.value == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize(
        "f, a, b, exact",
        [
            (np.sin, 0.0, np.pi, 2.0),
            (np.exp, -1.0, 1.0, math.e - 1 / math.e),
            (lambda x: 1 / (1 + 25 * x**2), -1.0, 1.0, 2 / 5 * math.atan(5)),
            (np.sqrt, 0.0, 1.0, 2 / 3),
        ],
    )
    def test_known_integrals(self, f, a, b, exact):
        assert adaptive_simpson(f, a, b, tol=1e-11).value == pytest.approx(exact, abs=1e-10)

    def test_vector_valued(self):
        res = adaptive_simpson(lambda x: np.stack([np.cos(3 * x) ** 2, np.sin(x)]), 0, 2 * np.pi,
                               tol=1e-12, initial_intervals=32)
        np.testing.assert_allclose(res.value, [np.pi, 0.0], atol=1e-11)

    def test_reversed_limits(self):
        assert adaptive_simpson(np.exp, 1.0, 0.0).value == pytest.approx(1 - math.e, abs=1e-10)

    def test_interval_cap(self):
        with pytest.raises(ConvergenceError, match="achieved error"):
            adaptive_simpson(lambda x: np.sign(np.sin(1 / np.maximum(x, 1e-300))), 0.0, 1.0,
                             tol=1e-14, max_intervals=200)


class TestBisect:
    def test_root_width(self):
        r = bisect(lambda x: x * x - 2, 0.0, 2.0, 1e-12)
        assert abs(r - math.sqrt(2)) <= 1e-12

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            bisect(lambda x: x * x + 1, -1.0, 1.0, 1e-6)


class TestJets:
    x = sp.symbols("x")

    @pytest.mark.parametrize("c, T, sign", [(0.3, 0.3, 1), (0.45, 0.2, -1), (0.1, 1.5, 1)])
    def test_symbol_derivatives_vs_sympy(self, c, T, sign):
        x = self.x
        lam = 1 - 2 * sp.Rational(str(c)) * sp.cos(x)
        expr = lam ** sp.Rational(sign, 2) * sp.tanh(sp.sqrt(lam) / (2 * sp.Rational(str(T))))
        pts = np.array([0.0, 0.4, 1.3, 2.9, 4.0])
        X = taylor.Jet.variable(pts, 5)
        root = taylor.sqrt(1.0 - 2.0 * c * taylor.cos(X))
        th = taylor.tanh(root / (2.0 * T))
        jet = root * th if sign > 0 else th / root
        for k in range(6):
            dk = sp.lambdify(x, sp.diff(expr, x, k), "mpmath")
            expect = np.array([float(dk(p)) for p in pts])
            np.testing.assert_allclose(jet.derivative(k), expect, rtol=1e-10, atol=1e-12)

    def test_pow_exp_sin(self):
        x = self.x
        expr = sp.exp(sp.sin(x)) * (2 + sp.cos(x)) ** sp.Rational(-3, 2)
        X = taylor.Jet.variable(np.array([0.7]), 4)
        jet = taylor.exp(taylor.sin(X)) * (2.0 + taylor.cos(X)) ** -1.5
        for k in range(5):
            expect = float(sp.diff(expr, x, k).subs(x, 0.7))
            assert jet.derivative(k)[0] == pytest.approx(expect, rel=1e-11)

    def test_order_cap(self):
        with pytest.raises(ValueError):
            taylor.Jet.variable(0.0, taylor.MAX_ORDER + 1)


class TestHurwitzZeta:
    def test_basel(self):
        assert abs(hurwitz_zeta(2, 1) - math.pi**2 / 6) <= 1e-12

    def test_telescoping(self):
        assert abs(hurwitz_zeta(3, 4) - hurwitz_zeta(3, 5) - 4.0**-3) <= 1e-12

    def test_frozen_zeta_3_11(self):
        # mpmath.zeta(3, 11) at 30 digits
        assert abs(hurwitz_zeta(3, 11) - 0.0045249174854010337310518745334) <= 1e-15

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 6), st.floats(1.0, 200.0))
    def test_against_mpmath(self, s, a):
        assert abs(hurwitz_zeta(s, a) - float(mpmath.zeta(s, a))) <= 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            hurwitz_zeta(1, 2.0)
        with pytest.raises(ValueError):
            hurwitz_zeta(2, 0.5)
