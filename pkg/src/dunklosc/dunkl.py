"""Exact Dunkl-operator calculus on polynomials.

The Dunkl derivative D = d/dx + (mu/x)(1 - R), with R the reflection
(Rf)(x) = f(-x), maps polynomials to polynomials: the reflection term
annihilates even monomials and divides odd ones by x exactly, so no
negative powers ever appear.  Coefficients are kept as exact rationals
(floats convert losslessly), which makes the commutator identities
provable by arithmetic instead of tolerances.

Wavefunction polynomial factors carry an implicit Gaussian e^{-m w x^2/2};
the ladder operations below act on the polynomial part only, the Gaussian
having been differentiated once and for all:

    annihilation: p -> (D p) / sqrt(2 m w)
    creation:     p -> (2 m w x p - D p) / sqrt(2 m w)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import DomainError
from .params import OscillatorParams

Coeff = Fraction


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


@dataclass(frozen=True)
class ParityPolynomial:
    """Polynomial with exact rational coefficients, index k -> coeff of x^k."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, c=1) -> "ParityPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ParityPolynomial") -> "ParityPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            a[k] += c
        return ParityPolynomial(a)

    def __sub__(self, other: "ParityPolynomial") -> "ParityPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "ParityPolynomial":
        fc = _as_fraction(c)
        return ParityPolynomial([fc * ck for ck in self.coeffs])

    def mul_x(self) -> "ParityPolynomial":
        if self.is_zero:
            return self
        return ParityPolynomial((Fraction(0),) + self.coeffs)

    def __mul__(self, other: "ParityPolynomial") -> "ParityPolynomial":
        if self.is_zero or other.is_zero:
            return ParityPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ParityPolynomial(out)

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


def reflection_apply(p: ParityPolynomial) -> ParityPolynomial:
    """R p: negate odd-degree coefficients."""
    return ParityPolynomial(
        [-c if k % 2 else c for k, c in enumerate(p.coeffs)]
    )


def dunkl_apply(p: ParityPolynomial, mu: float) -> ParityPolynomial:
    """D p with D = d/dx + (mu/x)(1 - R).

    On monomials: D x^k = (k + mu (1 - (-1)^k)) x^{k-1}.
    """
    if not mu > -0.5:
        raise DomainError(f"Wigner parameter must exceed -1/2, got {mu}")
    fmu = _as_fraction(mu)
    out = [Fraction(0)] * max(len(p.coeffs) - 1, 0)
    for k, c in enumerate(p.coeffs):
        if k == 0 or c == 0:
            continue
        out[k - 1] += c * (k + 2 * fmu) if k % 2 else c * k
    return ParityPolynomial(out)


def commutator_defect_xD(p: ParityPolynomial, mu: float) -> ParityPolynomial:
    """([D, x] - (1 + 2 mu R)) p; the zero polynomial for every p."""
    fmu = _as_fraction(mu)
    lhs = dunkl_apply(p.mul_x(), mu) - dunkl_apply(p, mu).mul_x()
    rhs = p + reflection_apply(p).scale(2 * fmu)
    return lhs - rhs


def _raise_raw(p: ParityPolynomial, params: OscillatorParams) -> ParityPolynomial:
    """(2 m w x - D) p, the creation operator without its 1/sqrt(2 m w)."""
    two_mw = 2 * _as_fraction(params.m) * _as_fraction(params.omega)
    return p.mul_x().scale(two_mw) - dunkl_apply(p, params.mu)


def ladder_apply(
    which: str, p: ParityPolynomial, params: OscillatorParams
) -> ParityPolynomial:
    """Apply the creation or annihilation operator to a polynomial part."""
    scale = _as_fraction(1.0 / math.sqrt(2.0 * params.m * params.omega))
    if which == "annihilation":
        return dunkl_apply(p, params.mu).scale(scale)
    if which == "creation":
        return _raise_raw(p, params).scale(scale)
    raise DomainError(f"ladder_apply: which must be 'creation' or 'annihilation', got {which!r}")


def ladder_commutator_defect(
    p: ParityPolynomial, params: OscillatorParams
) -> ParityPolynomial:
    """([a, a^dag] - (1 + 2 mu R)) p, computed exactly.

    The raw (unscaled) operators are composed and the single rational
    factor 1/(2 m w) applied afterwards, so the result stays exact.
    """
    mu = params.mu
    two_mw = 2 * _as_fraction(params.m) * _as_fraction(params.omega)
    ad_a = dunkl_apply(_raise_raw(p, params), params.mu)
    da_a = _raise_raw(dunkl_apply(p, mu), params)
    comm = (ad_a - da_a).scale(Fraction(1) / two_mw)
    return comm - p - reflection_apply(p).scale(2 * _as_fraction(mu))


# ---------------------------------------------------------------------------
# Fock basis and matrix representations
# ---------------------------------------------------------------------------

def _reduced_moments(params: OscillatorParams, jmax: int) -> list:
    """Moments of the Gaussian Dunkl measure over even monomials.

    RM_j = integral of x^{2j} |x|^{2 mu} e^{-m w x^2} dx, divided by the
    j = 0 integral; equals the rising factorial (mu + 1/2)_j / (m w)^j,
    which is rational.  The common j = 0 constant cancels in every
    orthonormalized matrix element.
    """
    fmu = _as_fraction(params.mu)
    mw = _as_fraction(params.m) * _as_fraction(params.omega)
    out = [Fraction(1)]
    for j in range(jmax):
        out.append(out[-1] * (fmu + Fraction(1, 2) + j) / mw)
    return out


def dunkl_gaussian_inner(
    p: ParityPolynomial, q: ParityPolynomial, params: OscillatorParams
) -> Fraction:
    """<p, q> under |x|^{2 mu} e^{-m w x^2} dx, in units of the j=0 moment."""
    prod = p * q
    if prod.is_zero:
        return Fraction(0)
    moments = _reduced_moments(params, prod.degree // 2)
    acc = Fraction(0)
    for k, c in enumerate(prod.coeffs):
        if c != 0 and k % 2 == 0:
            acc += c * moments[k // 2]
    return acc


def fock_polynomials(nstates: int, params: OscillatorParams) -> list:
    """Polynomial parts of the first nstates number-operator eigenstates.

    Built by repeated raw creation from 1; exactly orthogonal under the
    Gaussian Dunkl measure because they carry distinct number eigenvalues
    (and distinct parities where those eigenvalues could cross).
    """
    if nstates < 1:
        raise DomainError(f"need at least one state, got {nstates}")
    polys = [ParityPolynomial([1])]
    for _ in range(nstates - 1):
        polys.append(_raise_raw(polys[-1], params))
    return polys


@dataclass(frozen=True)
class LadderMatrix:
    """Dense matrix of a ladder operator on the orthonormalized Fock basis."""

    dim: int
    entries: np.ndarray
    basis_tag: str


def ladder_matrix(which: str, dim: int, params: OscillatorParams) -> LadderMatrix:
    """Matrix elements <c_i, a c_k> (or a^dag) on the orthonormal basis.

    All inner products are exact rationals; the only rounding is one
    square root per entry.
    """
    if which not in ("annihilation", "creation"):
        raise DomainError(f"unknown ladder operator {which!r}")
    if dim < 1:
        raise DomainError(f"dim must be >= 1, got {dim}")
    polys = fock_polynomials(dim, params)
    norms2 = [dunkl_gaussian_inner(p, p, params) for p in polys]
    two_mw = 2 * _as_fraction(params.m) * _as_fraction(params.omega)
    if which == "annihilation":
        images = [dunkl_apply(p, params.mu) for p in polys]
    else:
        images = [_raise_raw(p, params) for p in polys]
    entries = np.zeros((dim, dim))
    for k in range(dim):
        for i in range(dim):
            raw = dunkl_gaussian_inner(polys[i], images[k], params)
            if raw == 0:
                continue
            value2 = raw * raw / (norms2[i] * norms2[k] * two_mw)
            entries[i, k] = math.copysign(math.sqrt(float(value2)), float(raw))
    return LadderMatrix(dim=dim, entries=entries, basis_tag="parity-graded-fock-orthonormal")


def dajc_hamiltonian(dim: int, params: OscillatorParams) -> np.ndarray:
    """Two-level/oscillator Hamiltonian g(sigma- A + sigma+ A^dag) + m sigma_z.

    dim is the full (spinor tensor oscillator) dimension and must be even.
    The coupling g = sqrt(2 m w) and the raising/lowering convention make
    the matrix real symmetric; its eigenvalues reproduce the closed-form
    spectrum of both parity sectors, positive and negative branches.
    """
    if dim < 2 or dim % 2:
        raise DomainError(f"dim must be even and >= 2, got {dim}")
    n = dim // 2
    a = ladder_matrix("annihilation", n, params).entries
    adag = ladder_matrix("creation", n, params).entries
    g = math.sqrt(2.0 * params.m * params.omega)
    sigma_minus = np.array([[0.0, 0.0], [1.0, 0.0]])
    sigma_plus = np.array([[0.0, 1.0], [0.0, 0.0]])
    sigma_z = np.array([[1.0, 0.0], [0.0, -1.0]])
    return (
        g * (np.kron(sigma_minus, a) + np.kron(sigma_plus, adag))
        + params.m * np.kron(sigma_z, np.eye(n))
    )
