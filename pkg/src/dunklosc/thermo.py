"""Canonical-ensemble thermodynamics of the positive-energy spectrum.

Reduced units throughout: k_B = 1, energies per unit mass, tau = T/T_0
with T_0 = m/k_B.  Three routes to the partition function coexist:

  partition_exact          ground-referenced direct sum with an analytic
                           integral tail bound,
  partition_integral_bound closed form of the convergence integral
                           int_0^inf e^{-sqrt(a x + b)/tau} dx,
  partition_em             the four-term Euler-MacLaurin closed form,

and the observables F, S, U, C are closed-form functions of the third.
The closed forms are asymptotic in 1/tau and quoted for tau >= 1; below
that a warning is issued rather than an error, since the direct sum
remains valid at any temperature.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError
from .params import EVEN, ODD, OscillatorParams, Parity
from .specialfn import bernoulli_even
from .spectrum import alpha_s
from .tables import SeriesTable

CLOSED_FORM_TAU_MIN = 1.0


def _check_tau(tau: float) -> float:
    if not tau > 0:
        raise DomainError(f"reduced temperature must be positive, got {tau}")
    return float(tau)


def _warn_if_low(tau: float, what: str) -> None:
    # static message so a sub-threshold grid warns once, not per point
    if tau < CLOSED_FORM_TAU_MIN:
        warnings.warn(
            f"{what} is an asymptotic closed form quoted for tau >= 1; "
            "the neglected orders can dominate below that",
            stacklevel=3,
        )


@dataclass(frozen=True)
class ReducedTemperature:
    """tau = k_B T / m = T / T_0."""

    tau: float

    def __post_init__(self):
        _check_tau(self.tau)


@dataclass(frozen=True)
class SummationReport:
    n_terms_used: int
    tail_bound: float
    converged: bool


@dataclass(frozen=True)
class ThermoPoint:
    tau: float
    Z: float
    F: float
    S: float
    U: float
    C: float


def _integral_from(a: float, b: float, tau: float, x0: float = 0.0) -> float:
    """Closed form of int_{x0}^inf e^{-sqrt(a x + b)/tau} dx.

    Substituting u = sqrt(a x + b) gives (2 tau / a)(tau + u0) e^{-u0/tau}
    with u0 the square root at the lower limit.
    """
    u0 = math.sqrt(a * x0 + b)
    return (2.0 * tau / a) * (tau + u0) * math.exp(-u0 / tau)


def partition_integral_bound(params: OscillatorParams, parity: Parity, tau: float) -> float:
    """Convergence-integral majorant for the Boltzmann sum, a = 4r, b = alpha_s."""
    tau = _check_tau(tau)
    return _integral_from(4.0 * params.r, alpha_s(params, parity), tau)


def partition_exact(
    params: OscillatorParams,
    parity: Parity,
    tau: float,
    tol: float = 1e-12,
    max_terms: int = 5_000_000,
):
    """Ground-referenced direct sum Z = sum_n e^{-(E_n - E_0)/(m tau)}.

    Truncated once the integral tail bound drops below tol; returns the
    value together with a SummationReport.
    """
    tau = _check_tau(tau)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    r = params.r
    alpha = alpha_s(params, parity)
    sqrt_alpha = math.sqrt(alpha)
    gs_shift = math.exp(sqrt_alpha / tau)
    chunk = 4096
    partial_sums = []
    n0 = 0
    while n0 < max_terms:
        ns = np.arange(n0, n0 + chunk, dtype=float)
        partial_sums.append(
            float(np.exp(-(np.sqrt(4.0 * r * ns + alpha) - sqrt_alpha) / tau).sum())
        )
        n0 += chunk
        # terms decrease, so the tail from n0 is below the integral from n0 - 1
        tail = gs_shift * _integral_from(4.0 * r, alpha, tau, x0=n0 - 1.0)
        if tail < tol:
            return math.fsum(partial_sums), SummationReport(
                n_terms_used=n0, tail_bound=tail, converged=True
            )
    report = SummationReport(n_terms_used=n0, tail_bound=tail, converged=False)
    err = ConvergenceError(
        "partition_exact did not reach the tail tolerance", requested=tol, achieved=tail
    )
    err.report = report
    raise err


def partition_em(params: OscillatorParams, parity: Parity, tau: float) -> float:
    """Euler-MacLaurin closed form 1/2 + sqrt(a) tau/(2r) + tau^2/(2r) + r/(6 sqrt(a) tau)."""
    tau = _check_tau(tau)
    _warn_if_low(tau, "partition_em")
    return _z_and_derivatives(params, parity, tau)[0]


# ---------------------------------------------------------------------------
# generic Euler-MacLaurin route
# ---------------------------------------------------------------------------

def euler_maclaurin_sum(
    f: Callable[[float], float],
    derivs_at_zero: Sequence[float],
    integral_value: float,
    orders: Iterable[int] = (1, 2, 3),
) -> float:
    """Euler-MacLaurin estimate of sum_{n>=0} f(n) for a smooth decaying f.

    derivs_at_zero supplies f'(0) .. f^{(5)}(0) (only odd orders enter):

        sum f(n) ~ f(0)/2 + integral - sum_p B_{2p}/(2p)! f^{(2p-1)}(0)
    """
    orders = tuple(orders)
    if not orders or any(p not in (1, 2, 3) for p in orders):
        raise DomainError(f"orders must be a non-empty subset of (1, 2, 3), got {orders}")
    if len(derivs_at_zero) < 2 * max(orders) - 1:
        raise DomainError("not enough derivative values for the requested orders")
    f0 = f(0.0)
    if not abs(f(1e8)) < 1e-3 * max(1.0, abs(f0)):
        raise DomainError("euler_maclaurin_sum requires a decaying summand")
    correction = 0.0
    for p in orders:
        correction += float(bernoulli_even(p)) / math.factorial(2 * p) * derivs_at_zero[2 * p - 2]
    return 0.5 * f0 + integral_value - correction


def boltzmann_summand(params: OscillatorParams, parity: Parity, tau: float):
    """f(x) = e^{-(sqrt(4 r x + alpha) - sqrt(alpha))/tau} as a callable."""
    tau = _check_tau(tau)
    r = params.r
    alpha = alpha_s(params, parity)
    sa = math.sqrt(alpha)

    def f(x: float) -> float:
        return math.exp(-(math.sqrt(4.0 * r * x + alpha) - sa) / tau)

    return f


def boltzmann_derivatives_at_zero(
    params: OscillatorParams, parity: Parity, tau: float
) -> list:
    """f'(0) .. f^{(5)}(0) for the Boltzmann summand, in closed form.

    With g = -(sqrt(4 r x + alpha) - sqrt(alpha))/tau and f = e^g, the
    g-derivatives at 0 alternate in sign, and f^{(k)} follows from the
    exponential composition (Faa di Bruno) with f(0) = 1.
    """
    tau = _check_tau(tau)
    r = params.r
    alpha = alpha_s(params, parity)
    sa = math.sqrt(alpha)
    g1 = -2.0 * r / (tau * sa)
    g2 = 4.0 * r**2 / (tau * alpha * sa)
    g3 = -24.0 * r**3 / (tau * alpha**2 * sa)
    g4 = 240.0 * r**4 / (tau * alpha**3 * sa)
    g5 = -3360.0 * r**5 / (tau * alpha**4 * sa)
    f1 = g1
    f2 = g2 + g1**2
    f3 = g3 + 3.0 * g2 * g1 + g1**3
    f4 = g4 + 4.0 * g3 * g1 + 3.0 * g2**2 + 6.0 * g2 * g1**2 + g1**4
    f5 = (
        g5
        + 5.0 * g4 * g1
        + 10.0 * g3 * g2
        + 10.0 * g3 * g1**2
        + 15.0 * g2**2 * g1
        + 10.0 * g2 * g1**3
        + g1**5
    )
    return [f1, f2, f3, f4, f5]


def partition_em_generic(
    params: OscillatorParams, parity: Parity, tau: float, orders: Iterable[int] = (1, 2, 3)
) -> float:
    """Partition function through the generic Euler-MacLaurin machinery.

    With orders = (1,) this reproduces partition_em exactly (the closed
    form keeps only the B_2 correction); the B_4/B_6 terms quantify what
    the four-term form drops.
    """
    tau = _check_tau(tau)
    # ground-referenced integral: e^{sqrt(alpha)/tau} times the raw bound
    sa = math.sqrt(alpha_s(params, parity))
    integral = (tau * tau + tau * sa) / (2.0 * params.r)
    return euler_maclaurin_sum(
        boltzmann_summand(params, parity, tau),
        boltzmann_derivatives_at_zero(params, parity, tau),
        integral,
        orders=orders,
    )


# ---------------------------------------------------------------------------
# closed-form observables
# ---------------------------------------------------------------------------

def _z_and_derivatives(params: OscillatorParams, parity: Parity, tau: float):
    r = params.r
    sa = math.sqrt(alpha_s(params, parity))
    z = 0.5 + sa * tau / (2.0 * r) + tau * tau / (2.0 * r) + r / (6.0 * sa * tau)
    zp = (sa + 2.0 * tau) / (2.0 * r) - r / (6.0 * sa * tau * tau)
    zpp = 1.0 / r + r / (3.0 * sa * tau**3)
    return z, zp, zpp


def helmholtz(params: OscillatorParams, parity: Parity, tau: float) -> float:
    """F = -tau ln Z, in units of m."""
    tau = _check_tau(tau)
    _warn_if_low(tau, "helmholtz")
    z, _, _ = _z_and_derivatives(params, parity, tau)
    return -tau * math.log(z)


def entropy(params: OscillatorParams, parity: Parity, tau: float) -> float:
    """S = ln Z + tau (dZ/dtau)/Z, dimensionless (k_B = 1)."""
    tau = _check_tau(tau)
    _warn_if_low(tau, "entropy")
    z, zp, _ = _z_and_derivatives(params, parity, tau)
    return math.log(z) + tau * zp / z


def mean_energy(params: OscillatorParams, parity: Parity, tau: float) -> float:
    """U = tau^2 (dZ/dtau)/Z, in units of m; U -> 2 tau at high temperature."""
    tau = _check_tau(tau)
    _warn_if_low(tau, "mean_energy")
    z, zp, _ = _z_and_derivatives(params, parity, tau)
    return tau * tau * zp / z


def heat_capacity(params: OscillatorParams, parity: Parity, tau: float) -> float:
    """C = 2 tau Z'/Z + tau^2 Z''/Z - tau^2 (Z'/Z)^2; C -> 2 at high temperature."""
    tau = _check_tau(tau)
    _warn_if_low(tau, "heat_capacity")
    z, zp, zpp = _z_and_derivatives(params, parity, tau)
    ratio = zp / z
    return 2.0 * tau * ratio + tau * tau * zpp / z - (tau * ratio) ** 2


def thermo_point(params: OscillatorParams, parity: Parity, tau: float) -> ThermoPoint:
    tau = _check_tau(tau)
    _warn_if_low(tau, "thermo_point")
    z, zp, zpp = _z_and_derivatives(params, parity, tau)
    ratio = zp / z
    return ThermoPoint(
        tau=tau,
        Z=z,
        F=-tau * math.log(z),
        S=math.log(z) + tau * ratio,
        U=tau * tau * ratio,
        C=2.0 * tau * ratio + tau * tau * zpp / z - (tau * ratio) ** 2,
    )


OBSERVABLE_KEYS = ("Z", "F", "S", "U", "C")


def r_tag(r: float) -> str:
    """Column-name-safe rendering of the frequency ratio: 1.5 -> r1p5."""
    return "r" + ("%g" % r).replace(".", "p").replace("-", "m")


def default_scan_params(mu: float = 0.5) -> list:
    """The canonical sweep: r in {1, 1.5, 2} at fixed Wigner parameter."""
    return [OscillatorParams.from_r(r, mu) for r in (1.0, 1.5, 2.0)]


def tau_grid_linear(tau_min: float, tau_max: float, tau_steps: int) -> list:
    """Inclusive linear grid; the single shared grid builder for all layers."""
    if tau_steps < 1:
        raise DomainError(f"tau_steps must be >= 1, got {tau_steps}")
    _check_tau(tau_min)
    if tau_steps == 1:
        return [float(tau_min)]
    if not tau_max > tau_min:
        raise DomainError("tau_max must exceed tau_min")
    return [
        tau_min + (tau_max - tau_min) * i / (tau_steps - 1) for i in range(tau_steps)
    ]


def thermo_scan(
    params_list: Sequence[OscillatorParams],
    parities: Sequence[Parity],
    tau_grid: Sequence[float],
    observables: Sequence[str] = OBSERVABLE_KEYS,
) -> SeriesTable:
    """Selected observables for every (tau, r, parity) combination.

    Columns: tau, then {obs}_{parity}_{rtag} grouped by observable.
    """
    if not params_list:
        raise DomainError("thermo_scan needs at least one parameter set")
    if not tau_grid:
        raise DomainError("thermo_scan needs a non-empty tau grid")
    bad = [o for o in observables if o not in OBSERVABLE_KEYS]
    if bad or not observables:
        raise DomainError(f"observables must be a non-empty subset of {OBSERVABLE_KEYS}")
    tags = [r_tag(p.r) for p in params_list]
    if len(set(tags)) != len(tags):
        raise DomainError(f"parameter sets must have distinct r values, got tags {tags}")
    taus = [_check_tau(t) for t in tau_grid]
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise DomainError("tau grid must be strictly increasing")
    pars = [Parity(p) for p in parities]
    if not pars or len(set(pars)) != len(pars):
        raise DomainError(f"parities must be a non-empty set without repeats, got {parities}")
    parity_name = {EVEN: "even", ODD: "odd"}
    configs = [(params, p) for params in params_list for p in pars]
    columns = ["tau"] + [
        f"{obs}_{parity_name[p]}_{r_tag(params.r)}"
        for obs in observables
        for params, p in configs
    ]
    rows = []
    for tau in taus:
        points = [thermo_point(params, p, tau) for params, p in configs]
        rows.append([tau] + [getattr(pt, obs) for obs in observables for pt in points])
    return SeriesTable(columns, rows)


# ---------------------------------------------------------------------------
# finite-difference oracle for the closed-form derivatives
# ---------------------------------------------------------------------------

def fd_logz_derivatives(params: OscillatorParams, parity: Parity, tau: float):
    """(d ln Z/d tau, d^2 ln Z/d tau^2) by central differences.

    Step 1e-4 tau with one Richardson extrapolation level; used to check
    the closed forms of S, U and C independently.
    """
    tau = _check_tau(tau)

    def lnz(t: float) -> float:
        z, _, _ = _z_and_derivatives(params, parity, t)
        return math.log(z)

    def d1(h: float) -> float:
        return (lnz(tau + h) - lnz(tau - h)) / (2.0 * h)

    def d2(h: float) -> float:
        return (lnz(tau + h) - 2.0 * lnz(tau) + lnz(tau - h)) / (h * h)

    h = 1e-4 * tau
    first = (4.0 * d1(h / 2.0) - d1(h)) / 3.0
    second = (4.0 * d2(h / 2.0) - d2(h)) / 3.0
    return first, second
