"""Spectra, wavefunctions, spinors and probability densities.

Both relativistic oscillators share the quantization

    E_n^s / m = +- sqrt(4 n r + alpha_s),   alpha_s = 2 r (1/2 + mu)(1 - s) + 1,

with r = omega/m and s = +-1 the parity sector.  Wavefunctions are

    psi_n^s(x) = N x^{(1-s)/2} e^{-m w x^2/2} M(-n, 1 - s/2 + mu; m w x^2),

normalized to 1 under the weight |x|^{2 mu} dx, the measure that makes the
eigenbasis orthogonal.  The odd sector uses signed x (not |x|) so the state
has genuine odd parity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .dunkl import ParityPolynomial, dunkl_apply
from .errors import ConsistencyError, DomainError
from .params import EVEN, ODD, OscillatorParams, Parity
from .specialfn import integrate, kummer_m, ln_gamma
from .tables import SeriesTable


def alpha_s(params: OscillatorParams, parity: Parity) -> float:
    """Dimensionless spectral offset; identically 1 in the even sector."""
    s = Parity(parity).s
    return 2.0 * params.r * (0.5 + params.mu) * (1.0 - s) + 1.0


def energy(n: int, params: OscillatorParams, parity: Parity, branch: int = +1) -> float:
    """E_n^s = branch * m * sqrt(4 n r + alpha_s)."""
    if n < 0 or n != int(n):
        raise DomainError(f"node number must be a non-negative integer, got {n}")
    if branch not in (+1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch}")
    return branch * params.m * math.sqrt(4.0 * n * params.r + alpha_s(params, parity))


@dataclass(frozen=True)
class EigenState:
    n: int
    parity: Parity
    energy: float
    branch: int = +1


def eigenstate(n: int, params: OscillatorParams, parity: Parity, branch: int = +1) -> EigenState:
    return EigenState(n=n, parity=Parity(parity), energy=energy(n, params, parity, branch), branch=branch)


def spectrum_table(
    n_max: int,
    params: OscillatorParams,
    parities: Sequence[Parity] = (EVEN, ODD),
) -> SeriesTable:
    """Rows (n, E/m per parity) for n = 0..n_max on the positive branch."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    names = {EVEN: "E_even_over_m", ODD: "E_odd_over_m"}
    pars = [Parity(p) for p in parities]
    if len(set(pars)) != len(pars) or not pars:
        raise DomainError(f"parities must be a non-empty set without repeats, got {parities}")
    columns = ["n"] + [names[p] for p in pars]
    rows = []
    for n in range(n_max + 1):
        rows.append(
            [float(n)] + [energy(n, params, p) / params.m for p in pars]
        )
    return SeriesTable(columns, rows)


def kummer_second_argument(params: OscillatorParams, parity: Parity) -> float:
    """b = 1 - s/2 + mu: mu + 1/2 in the even sector, mu + 3/2 in the odd."""
    return 1.0 - Parity(parity).s / 2.0 + params.mu


@lru_cache(maxsize=4096)
def _normalization_checked(n: int, s: int, m: float, omega: float, mu: float) -> float:
    """Closed-form normalization with a one-time quadrature cross-check.

    N^2 = (m w)^b Gamma(n + b) / (n! Gamma(b)^2) with b the hypergeometric
    second argument of the sector; verified against the defining integral
    to 1e-8 the first time each state is requested.
    """
    params = OscillatorParams(m=m, omega=omega, mu=mu)
    parity = Parity(s)
    b = kummer_second_argument(params, parity)
    mw = m * omega
    ln_n2 = b * math.log(mw) + ln_gamma(n + b) - ln_gamma(n + 1.0) - 2.0 * ln_gamma(b)
    norm = math.exp(0.5 * ln_n2)

    def density_unnorm(x: float) -> float:
        psi = _wavefunction_unnormalized(n, params, parity, x)
        return psi * psi * abs(x) ** (2.0 * mu)

    integral = 2.0 * norm * norm * integrate(density_unnorm, 0.0, math.inf, tol=1e-10)
    if abs(integral - 1.0) > 1e-8:
        raise ConsistencyError(
            f"normalization closed form disagrees with quadrature: "
            f"integral of |psi|^2 = {integral!r} for n={n}, s={s}, m={m}, omega={omega}, mu={mu}"
        )
    return norm


def normalization_constant(n: int, params: OscillatorParams, parity: Parity) -> float:
    if n < 0 or n != int(n):
        raise DomainError(f"node number must be a non-negative integer, got {n}")
    return _normalization_checked(int(n), Parity(parity).s, params.m, params.omega, params.mu)


def _wavefunction_unnormalized(n: int, params: OscillatorParams, parity: Parity, x: float) -> float:
    y = params.m * params.omega * x * x
    poly = kummer_m(-float(n), kummer_second_argument(params, parity), y)
    prefactor = x if Parity(parity) is ODD else 1.0
    return prefactor * math.exp(-0.5 * y) * poly


def kg_wavefunction(n: int, params: OscillatorParams, parity: Parity, x: float) -> float:
    """Normalized wavefunction psi_n^s(x); exactly n zeros on x > 0."""
    return normalization_constant(n, params, parity) * _wavefunction_unnormalized(
        n, params, parity, x
    )


def probability_density(n: int, params: OscillatorParams, parity: Parity, x: float) -> float:
    """|psi|^2 |x|^{2 mu}: non-negative, even in x, integrates to 1 over R."""
    psi = kg_wavefunction(n, params, parity, x)
    return psi * psi * abs(x) ** (2.0 * params.mu)


def kg_polynomial_part(n: int, params: OscillatorParams, parity: Parity) -> ParityPolynomial:
    """P with psi(x) = P(x) e^{-m w x^2/2}, normalization included.

    The hypergeometric coefficients are assembled exactly and scaled by
    the float normalization, so Dunkl-operator applications to P stay in
    rational arithmetic.
    """
    parity = Parity(parity)
    b = Fraction(kummer_second_argument(params, parity))
    mw = Fraction(params.m) * Fraction(params.omega)
    term = Fraction(1)
    coeffs = {0: Fraction(1)}
    for k in range(n):
        # series coefficient of y^{k+1} with y = m w x^2, a = -n
        term *= Fraction(-(n - k), (k + 1)) / (b + k) * mw
        coeffs[k + 1] = term
    norm = Fraction(normalization_constant(n, params, parity))
    out = [Fraction(0)] * (2 * n + 1)
    for k, c in coeffs.items():
        out[2 * k] = c * norm
    poly = ParityPolynomial(out)
    if parity is ODD:
        poly = poly.mul_x()
    return poly


def dirac_spinor(n: int, params: OscillatorParams, parity: Parity, x: float):
    """(upper, lower) components of the Dirac oscillator spinor.

    upper is the normalized wavefunction; the physical lower component is
    -i times the returned real value, which is

        L(x) = [(D + m w x) upper](x) / (E + m) = (D P)(x) e^{-m w x^2/2} / (E + m),

    the Gaussian factor passing through D + m w x untouched.  The pair
    (upper, L) satisfies both first-order coupled equations; for the
    sector ground state (n = 0, even) L vanishes identically.
    """
    e = energy(n, params, parity, +1)
    poly = kg_polynomial_part(n, params, parity)
    dpoly = dunkl_apply(poly, params.mu)
    y = params.m * params.omega * x * x
    upper = poly(x) * math.exp(-0.5 * y)
    lower = dpoly(x) * math.exp(-0.5 * y) / (e + params.m)
    return upper, lower


def density_table(
    n_list: Sequence[int],
    params: OscillatorParams,
    parity: Parity,
    xi_min: float = -4.0,
    xi_max: float = 4.0,
    xi_steps: int = 401,
) -> SeriesTable:
    """Densities against the reduced coordinate xi = x sqrt(m w).

    The tabulated value is rho(x)/sqrt(m w), which integrates to 1 in xi.
    """
    if xi_steps < 2:
        raise DomainError(f"xi_steps must be >= 2, got {xi_steps}")
    if not xi_max > xi_min:
        raise DomainError("xi_max must exceed xi_min")
    if not n_list or len(set(n_list)) != len(n_list):
        raise DomainError(f"n_list must be non-empty without repeats, got {n_list}")
    scale = math.sqrt(params.m * params.omega)
    columns = ["xi"] + [f"rho_n{n}" for n in n_list]
    rows = []
    for i in range(xi_steps):
        xi = xi_min + (xi_max - xi_min) * i / (xi_steps - 1)
        x = xi / scale
        rows.append(
            [xi] + [probability_density(n, params, parity, x) / scale for n in n_list]
        )
    return SeriesTable(columns, rows)


# ---------------------------------------------------------------------------
# residual oracles (high-order finite differences)
# ---------------------------------------------------------------------------

_D1_WEIGHTS = (
    (-4, Fraction(1, 280)), (-3, Fraction(-4, 105)), (-2, Fraction(1, 5)),
    (-1, Fraction(-4, 5)), (1, Fraction(4, 5)), (2, Fraction(-1, 5)),
    (3, Fraction(4, 105)), (4, Fraction(-1, 280)),
)
_D2_WEIGHTS = (
    (-4, Fraction(-1, 560)), (-3, Fraction(8, 315)), (-2, Fraction(-1, 5)),
    (-1, Fraction(8, 5)), (0, Fraction(-205, 72)), (1, Fraction(8, 5)),
    (2, Fraction(-1, 5)), (3, Fraction(8, 315)), (4, Fraction(-1, 560)),
)


def _fd1(f, x: float, h: float) -> float:
    return math.fsum(float(w) * f(x + k * h) for k, w in _D1_WEIGHTS) / h


def _fd2(f, x: float, h: float) -> float:
    return math.fsum(float(w) * f(x + k * h) for k, w in _D2_WEIGHTS) / (h * h)


def _dunkl_fd(f, x: float, h: float, mu: float) -> float:
    """Numerical Dunkl derivative: FD slope plus the exact reflection term."""
    return _fd1(f, x, h) + mu * (f(x) - f(-x)) / x


def dkg_residual(
    n: int,
    params: OscillatorParams,
    parity: Parity,
    xs: Sequence[float],
    h: float = 0.04,
) -> float:
    """Max relative residual of the second-order sector equation.

    Applies psi'' + (2 mu / x) psi' - mu (1 - s) psi / x^2 - (m w x)^2 psi
    + m w (1 + 2 mu s) psi + (E^2 - m^2) psi by order-8 finite differences
    on grid points away from the origin.
    """
    s = Parity(parity).s
    m, w, mu = params.m, params.omega, params.mu

    def psi(x: float) -> float:
        return kg_wavefunction(n, params, parity, x)

    e2 = energy(n, params, parity) ** 2
    worst = 0.0
    scale = 0.0
    for x in xs:
        if abs(x) < 4 * h:
            raise DomainError(f"grid point {x} too close to the origin for h={h}")
        val = psi(x)
        res = (
            _fd2(psi, x, h)
            + 2.0 * mu / x * _fd1(psi, x, h)
            - mu * (1.0 - s) / (x * x) * val
            - (m * w * x) ** 2 * val
            + m * w * (1.0 + 2.0 * mu * s) * val
            + (e2 - m * m) * val
        )
        worst = max(worst, abs(res))
        scale = max(scale, abs(e2 * val), abs((m * w * x) ** 2 * val), 1e-30)
    return worst / scale


def dirac_residuals(
    n: int,
    params: OscillatorParams,
    parity: Parity,
    xs: Sequence[float],
    h: float = 0.04,
) -> tuple:
    """Max relative residuals of the two coupled first-order equations.

    e2: (D + m w x) upper = (E + m) lower
    e1: -(D - m w x) lower = (E - m) upper

    The Dunkl derivative is applied numerically (independent of the
    construction of the lower component).
    """
    m, w, mu = params.m, params.omega, params.mu
    e = energy(n, params, parity, +1)

    def upper(x: float) -> float:
        return dirac_spinor(n, params, parity, x)[0]

    def lower(x: float) -> float:
        return dirac_spinor(n, params, parity, x)[1]

    scale = max(
        max(abs(upper(x)) for x in xs), max(abs(lower(x)) for x in xs), 1e-30
    ) * (e + m)
    worst_e1 = 0.0
    worst_e2 = 0.0
    for x in xs:
        if abs(x) < 4 * h:
            raise DomainError(f"grid point {x} too close to the origin for h={h}")
        res2 = _dunkl_fd(upper, x, h, mu) + m * w * x * upper(x) - (e + m) * lower(x)
        res1 = -_dunkl_fd(lower, x, h, mu) + m * w * x * lower(x) - (e - m) * upper(x)
        worst_e2 = max(worst_e2, abs(res2))
        worst_e1 = max(worst_e1, abs(res1))
    return worst_e1 / scale, worst_e2 / scale
