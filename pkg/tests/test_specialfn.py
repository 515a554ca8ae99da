"""Special-function and quadrature layer.

Oracle constants marked "mpmath 40dps" were precomputed once with mpmath at
40 significant digits and frozen here; everything else is checked against
closed forms evaluated independently inside the test.
"""

import math
from fractions import Fraction

import pytest

from dunklosc.errors import ConvergenceError, DomainError
from dunklosc.specialfn import (
    QuadratureRule,
    bernoulli_even,
    integrate,
    integrate_even,
    kummer_m,
    laguerre,
    ln_gamma,
    pochhammer,
)

# mpmath 40dps: hyp1f1(0.5, 1.5, 0.25)
KUMMER_HALF = 1.089974208367244447


def test_ln_gamma_half():
    assert ln_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0, 2.75, 7.0, 41.5])
def test_ln_gamma_recurrence(x):
    assert ln_gamma(x + 1.0) == pytest.approx(ln_gamma(x) + math.log(x), rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, math.nan])
def test_ln_gamma_domain(x):
    with pytest.raises(DomainError):
        ln_gamma(x)


def test_bernoulli_even_table():
    assert bernoulli_even(1) == Fraction(1, 6)
    assert bernoulli_even(2) == Fraction(-1, 30)
    assert bernoulli_even(3) == Fraction(1, 42)
    for p in (0, 4, -1):
        with pytest.raises(DomainError):
            bernoulli_even(p)


def test_pochhammer_values():
    assert pochhammer(0.5, 3) == 1.875
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(-1.5, 4) == 0.5625
    assert pochhammer(2.0, 3) == 24.0
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


class TestKummer:
    def test_terminating_exact(self):
        # hand-summed rationals
        assert kummer_m(-2.0, 1.5, 1.0) == pytest.approx(-1.0 / 15.0, abs=1e-16)
        assert kummer_m(-3.0, 2.5, 2.0) == pytest.approx(-0.2317460317460317, rel=1e-15)
        assert kummer_m(-1.0, -2.0, 3.0) == 2.5  # b negative but past termination

    def test_zeroth_order(self):
        assert kummer_m(-0.0, 1.5, 7.0) == 1.0
        assert kummer_m(0.7, 1.2, 0.0) == 1.0

    def test_series_vs_exponential(self):
        # M(b, b; y) = e^y and M(1, 2; y) = (e^y - 1)/y
        assert kummer_m(2.5, 2.5, 4.0) == pytest.approx(math.exp(4.0), rel=1e-14)
        assert kummer_m(1.0, 2.0, 3.0) == pytest.approx((math.exp(3.0) - 1.0) / 3.0, rel=1e-14)

    def test_series_frozen(self):
        assert kummer_m(0.5, 1.5, 0.25) == pytest.approx(KUMMER_HALF, rel=5e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            kummer_m(-2.0, 1.5, -1.0)  # negative argument
        with pytest.raises(DomainError):
            kummer_m(-3.0, -1.0, 1.0)  # pole before termination
        with pytest.raises(DomainError):
            kummer_m(-1.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            kummer_m(0.5, -1.0, 1.0)  # non-terminating with b pole
        with pytest.raises(DomainError):
            kummer_m(math.inf, 1.0, 1.0)


def _laguerre_series(n: int, alpha: Fraction, y: Fraction) -> Fraction:
    """Independent route: L_n^(a)(y) = sum_k (-1)^k/(k!(n-k)!) prod_{j>k}(a+j) y^k."""
    total = Fraction(0)
    for k in range(n + 1):
        tail = Fraction(1)
        for j in range(k + 1, n + 1):
            tail *= alpha + j
        total += Fraction((-1) ** k, math.factorial(k) * math.factorial(n - k)) * tail * y**k
    return total


class TestLaguerre:
    def test_low_orders(self):
        assert laguerre(0, 0.5, 9.0) == 1.0
        assert laguerre(1, 0.5, 2.0) == -0.5  # 1 + a - y
        assert laguerre(2, 0.0, 3.0) == -0.5  # 1 - 2y + y^2/2

    @pytest.mark.parametrize("n", range(9))
    @pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(0), Fraction(5, 2)])
    def test_against_series(self, n, alpha):
        y = Fraction(5, 2)
        assert laguerre(n, float(alpha), float(y)) == float(_laguerre_series(n, alpha, y))

    def test_frozen_value(self):
        # mpmath 40dps: laguerre(4, 0.5, 2.5)
        assert laguerre(4, 0.5, 2.5) == pytest.approx(0.5729166666666667, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            laguerre(-1, 0.5, 1.0)
        with pytest.raises(DomainError):
            laguerre(2, -1.0, 1.0)


class TestQuadrature:
    def test_gauss_legendre_polynomial_exactness(self):
        rule = QuadratureRule.gauss_legendre(8, 0.0, 1.0)
        assert rule.kind == "gauss-legendre"
        assert rule.apply(lambda x: x**7) == pytest.approx(0.125, abs=1e-15)

    def test_half_line_exponential(self):
        rule = QuadratureRule.half_line(64)
        assert rule.kind == "half-line"
        assert rule.apply(lambda x: math.exp(-x)) == pytest.approx(1.0, rel=1e-8)

    def test_validation(self):
        with pytest.raises(DomainError):
            QuadratureRule(nodes=(0.5,), weights=(1.0,), kind="gauss-legendre")
        with pytest.raises(DomainError):
            QuadratureRule(nodes=(0.2, 0.8), weights=(1.0, -1.0), kind="gauss-legendre")
        with pytest.raises(DomainError):
            QuadratureRule(nodes=(0.2, 0.8), weights=(1.0,), kind="gauss-legendre")


class TestIntegrate:
    def test_gamma_moment(self):
        # int_0^inf x^3 e^-x dx = 3!
        val = integrate(lambda x: x**3 * math.exp(-x), 0.0, math.inf, tol=1e-12)
        assert val == pytest.approx(6.0, rel=1e-11)

    def test_pi(self):
        val = integrate(lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0, tol=1e-12)
        assert val == pytest.approx(math.pi, rel=1e-12)

    def test_zero_length(self):
        assert integrate(lambda x: x, 2.0, 2.0) == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            integrate(lambda x: x, -math.inf, math.inf)
        with pytest.raises(DomainError):
            integrate(lambda x: x, 0.0, 1.0, tol=0.0)

    def test_budget_exhaustion_reports_error(self):
        with pytest.raises(ConvergenceError) as exc:
            integrate(lambda x: math.sin(1.0 / x), 0.0, 1.0, tol=1e-14, max_intervals=8)
        assert exc.value.requested == 1e-14
        assert exc.value.achieved > exc.value.requested

    def test_even_gaussian(self):
        val = integrate_even(lambda x: math.exp(-x * x), tol=1e-12)
        assert val == pytest.approx(math.sqrt(math.pi), rel=1e-11)
