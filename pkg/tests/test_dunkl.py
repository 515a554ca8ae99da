"""Reflection-deformed operator algebra: exact identities and matrix forms.

Most assertions here are exact (== on rationals or on floats produced by a
single rounding) because the module does its arithmetic over Fraction.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from dunklosc.dunkl import (
    ParityPolynomial,
    commutator_defect_xD,
    dajc_hamiltonian,
    dunkl_apply,
    dunkl_gaussian_inner,
    fock_polynomials,
    ladder_apply,
    ladder_commutator_defect,
    ladder_matrix,
    reflection_apply,
)
from dunklosc.errors import DomainError
from dunklosc.params import OscillatorParams

MU_GRID = [0.0, 0.5, 1.25, Fraction(7, 3)]


def params_for(mu, m=1.0, omega=1.0):
    return OscillatorParams(m=m, omega=omega, mu=float(mu))


class TestParityPolynomial:
    def test_trailing_zeros_trimmed(self):
        p = ParityPolynomial([1, 2, 0, 0])
        assert p.coeffs == (Fraction(1), Fraction(2))
        assert p.degree == 1

    def test_zero(self):
        z = ParityPolynomial([0, 0])
        assert z.is_zero
        assert z.degree == -1
        assert z.mul_x().is_zero

    def test_monomial(self):
        p = ParityPolynomial.monomial(3, 2)
        assert p.coeffs == (0, 0, 0, 2)

    def test_ring_operations(self):
        p = ParityPolynomial([1, 1])       # 1 + x
        q = ParityPolynomial([0, 0, 3])    # 3 x^2
        assert (p + q).coeffs == (1, 1, 3)
        assert (p - p).is_zero
        assert p.scale(Fraction(1, 2)).coeffs == (Fraction(1, 2), Fraction(1, 2))
        assert p.mul_x().coeffs == (0, 1, 1)
        assert (p * q).coeffs == (0, 0, 3, 3)

    def test_evaluation_matches_horner(self):
        p = ParityPolynomial([2, -1, Fraction(1, 4)])
        x = 1.5
        assert p(x) == 2.0 + -1.0 * x + 0.25 * x * x

    def test_reflection(self):
        p = ParityPolynomial([1, 2, 3, 4])
        assert reflection_apply(p).coeffs == (1, -2, 3, -4)


class TestDunklOperator:
    @pytest.mark.parametrize("mu", MU_GRID)
    @pytest.mark.parametrize("k", range(9))
    def test_monomial_rule(self, mu, k):
        # D x^k = (k + mu (1 - (-1)^k)) x^{k-1}
        got = dunkl_apply(ParityPolynomial.monomial(k), mu)
        coeff = k + Fraction(mu) * (1 - (-1) ** k)
        expect = ParityPolynomial.monomial(k - 1, coeff) if k else ParityPolynomial()
        assert got.coeffs == expect.coeffs

    def test_linearity(self):
        p = ParityPolynomial([1, 0, 2, 5])
        q = ParityPolynomial([0, 3, 0, 0, 1])
        both = dunkl_apply(p + q, 0.75)
        split = dunkl_apply(p, 0.75) + dunkl_apply(q, 0.75)
        assert both.coeffs == split.coeffs

    def test_mu_domain(self):
        with pytest.raises(DomainError):
            dunkl_apply(ParityPolynomial([1, 1]), -0.5)

    @pytest.mark.parametrize("mu", MU_GRID)
    def test_position_commutator_identity(self, mu):
        rng = np.random.default_rng(20260815)
        for k in range(12):
            assert commutator_defect_xD(ParityPolynomial.monomial(k), float(mu)).is_zero
        for _ in range(25):
            coeffs = rng.integers(-9, 10, size=rng.integers(1, 9))
            assert commutator_defect_xD(ParityPolynomial(coeffs.tolist()), float(mu)).is_zero


class TestLadder:
    def test_creation_on_vacuum(self):
        params = params_for(0.5)
        up = ladder_apply("creation", ParityPolynomial([1]), params)
        # (2 m w x - D) 1 / sqrt(2 m w) = sqrt(2) x at m = w = 1
        assert up.coeffs == (0, 2 * Fraction(1.0 / math.sqrt(2.0)))

    def test_annihilation_of_x(self):
        params = params_for(0.5)
        down = ladder_apply("annihilation", ParityPolynomial([0, 1]), params)
        # D x = (1 + 2 mu); scaled by 1/sqrt(2)
        assert down.coeffs == (2 * Fraction(1.0 / math.sqrt(2.0)),)

    def test_unknown_operator(self):
        with pytest.raises(DomainError):
            ladder_apply("raise", ParityPolynomial([1]), params_for(0.5))

    @pytest.mark.parametrize("mu", MU_GRID)
    @pytest.mark.parametrize("m,omega", [(1.0, 1.0), (2.0, 0.5), (1.0, 3.0)])
    def test_ladder_commutator_identity(self, mu, m, omega):
        params = params_for(mu, m=m, omega=omega)
        rng = np.random.default_rng(7)
        for k in range(10):
            assert ladder_commutator_defect(ParityPolynomial.monomial(k), params).is_zero
        for _ in range(10):
            coeffs = rng.integers(-6, 7, size=rng.integers(1, 8))
            assert ladder_commutator_defect(ParityPolynomial(coeffs.tolist()), params).is_zero


class TestFockBasis:
    def test_first_polynomials(self):
        params = params_for(0.5)
        c0, c1, c2 = fock_polynomials(3, params)
        assert c0.coeffs == (1,)
        assert c1.coeffs == (0, 2)           # 2 m w x
        assert c2.coeffs == (-2 * (1 + 2 * Fraction(1, 2)), 0, 4)

    def test_invalid_count(self):
        with pytest.raises(DomainError):
            fock_polynomials(0, params_for(0.5))

    @pytest.mark.parametrize("mu", MU_GRID)
    def test_exact_orthogonality(self, mu):
        params = params_for(mu)
        polys = fock_polynomials(8, params)
        for i in range(8):
            for j in range(i):
                assert dunkl_gaussian_inner(polys[i], polys[j], params) == 0
            assert dunkl_gaussian_inner(polys[i], polys[i], params) > 0

    def test_reduced_moments_via_inner(self):
        # <x, x> / <1, 1> = (mu + 1/2) / (m w)
        params = params_for(1.25, m=2.0, omega=0.5)
        x = ParityPolynomial([0, 1])
        assert dunkl_gaussian_inner(x, x, params) == Fraction(7, 4)


def closed_form_lambda(k: int, mu: float) -> float:
    """Number-operator eigenvalue: 2j on even levels, 2j + 1 + 2 mu on odd."""
    if k % 2 == 0:
        return float(k)
    return float(k + 2.0 * mu)


class TestLadderMatrix:
    @pytest.mark.parametrize("mu", [0.0, 0.5, 1.25])
    def test_annihilation_superdiagonal(self, mu):
        params = params_for(mu)
        mat = ladder_matrix("annihilation", 10, params)
        assert mat.dim == 10
        assert mat.basis_tag == "parity-graded-fock-orthonormal"
        for k in range(1, 10):
            expect = math.sqrt(closed_form_lambda(k, mu))
            assert mat.entries[k - 1, k] == pytest.approx(expect, rel=1e-15)
        off = mat.entries.copy()
        off[np.arange(9), np.arange(1, 10)] = 0.0
        assert np.all(off == 0.0)  # exact zeros away from the superdiagonal

    def test_creation_is_exact_transpose(self):
        params = params_for(0.75)
        a = ladder_matrix("annihilation", 12, params).entries
        adag = ladder_matrix("creation", 12, params).entries
        assert np.array_equal(adag, a.T)

    def test_mu_zero_reduces_to_sqrt_n(self):
        a = ladder_matrix("annihilation", 9, params_for(0.0)).entries
        for k in range(1, 9):
            assert a[k - 1, k] == math.sqrt(float(k))

    def test_validation(self):
        with pytest.raises(DomainError):
            ladder_matrix("shift", 4, params_for(0.5))
        with pytest.raises(DomainError):
            ladder_matrix("creation", 0, params_for(0.5))


class TestTwoLevelHamiltonian:
    def test_block_structure_and_symmetry(self):
        params = params_for(0.5)
        h = dajc_hamiltonian(8, params)
        n = 4
        a = ladder_matrix("annihilation", n, params).entries
        g = math.sqrt(2.0)
        assert np.array_equal(h, h.T)
        assert np.array_equal(h[:n, :n], np.eye(n))
        assert np.array_equal(h[n:, n:], -np.eye(n))
        assert np.array_equal(h[n:, :n], g * a)

    def test_eigenvalues_match_closed_form(self):
        # mu = 1/2 makes levels 1 and 2 degenerate: spectrum +-{1, sqrt5, sqrt5, 3}
        h = dajc_hamiltonian(8, params_for(0.5))
        evals = np.sort(np.linalg.eigvalsh(h))
        s5 = math.sqrt(5.0)
        expect = np.array([-3.0, -s5, -s5, -1.0, 1.0, s5, s5, 3.0])
        assert np.max(np.abs(evals - expect)) < 1e-14

    @pytest.mark.parametrize("mu", [0.0, 0.3, 1.5])
    def test_eigenvalues_generic_mu(self, mu):
        params = params_for(mu)
        dim = 12
        h = dajc_hamiltonian(dim, params)
        evals = np.sort(np.linalg.eigvalsh(h))
        lam = [closed_form_lambda(k, mu) for k in range(dim // 2)]
        expect = sorted(s * math.sqrt(1.0 + 2.0 * l) for l in lam for s in (1.0, -1.0))
        assert np.max(np.abs(evals - np.array(expect))) < 1e-13

    def test_odd_dimension_rejected(self):
        with pytest.raises(DomainError):
            dajc_hamiltonian(7, params_for(0.5))
