"""Self-contained verification suite.

Every check pits two independent routes against each other: exact rational
operator algebra against closed forms, series against recurrences, closed
forms against quadrature or finite differences, truncated sums against
asymptotic expansions.  No check needs network access or external data.

run_all returns one CheckResult per check; the front end turns the list
into a pass/fail table and an exit status.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

import numpy as np

from . import thermo
from .dunkl import (
    ParityPolynomial,
    commutator_defect_xD,
    dajc_hamiltonian,
    ladder_commutator_defect,
    ladder_matrix,
)
from .params import EVEN, ODD, OscillatorParams
from .specialfn import integrate, kummer_m, laguerre, ln_gamma, pochhammer
from .spectrum import (
    dirac_residuals,
    dkg_residual,
    energy,
    kg_polynomial_part,
    normalization_constant,
    spectrum_table,
)

_MU_SWEEP = (0.0, 0.25, 0.5, 1.25, 3.0)
_RESIDUAL_GRID = (0.35, 0.8, 1.3, 1.9, 2.6)


class CheckFailure(Exception):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed_s: float


def _configs(mu: float = 0.5):
    return [
        (OscillatorParams.from_r(r, mu), parity)
        for r in (1.0, 1.5, 2.0)
        for parity in (EVEN, ODD)
    ]


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------

def check_kummer_laguerre_identity(fast: bool) -> str:
    """M(-n, alpha+1; y) (alpha+1)_n / n! must equal L_n^alpha(y)."""
    ns = (0, 1, 2, 5, 8, 12) if fast else (0, 1, 2, 3, 5, 8, 12, 16, 20)
    worst = 0.0
    count = 0
    for n in ns:
        for alpha in (-0.3, 0.0, 0.5, 1.5):
            scale = pochhammer(alpha + 1.0, n) / math.factorial(n)
            for y in (0.0, 0.3, 1.0, 2.7, 6.0, 13.0, 30.0, 50.0):
                lhs = kummer_m(-float(n), alpha + 1.0, y) * scale
                rhs = laguerre(n, alpha, y)
                err = abs(lhs - rhs) / max(1.0, abs(rhs))
                worst = max(worst, err)
                count += 1
    if worst > 1e-12:
        raise CheckFailure(f"identity violated: rel err {worst:.3e} over {count} points")
    return f"max rel err {worst:.1e} over {count} points"


def check_lngamma_recurrence(fast: bool) -> str:
    worst = 0.0
    for i in range(60):
        x = 0.1 + 0.5 * i
        err = abs(ln_gamma(x + 1.0) - ln_gamma(x) - math.log(x))
        worst = max(worst, err / max(1.0, abs(ln_gamma(x + 1.0))))
    half = abs(ln_gamma(0.5) - 0.5 * math.log(math.pi))
    if worst > 1e-12 or half > 1e-14:
        raise CheckFailure(f"recurrence err {worst:.3e}, ln Gamma(1/2) err {half:.3e}")
    return f"recurrence max rel err {worst:.1e}"


def check_integrate_moments(fast: bool) -> str:
    worst = 0.0
    for k in range(7):
        val = integrate(lambda x, k=k: x**k * math.exp(-x), 0.0, math.inf, tol=1e-12)
        worst = max(worst, abs(val - math.factorial(k)) / math.factorial(k))
    arctan = integrate(lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0, tol=1e-12)
    worst = max(worst, abs(arctan - math.pi) / math.pi)
    if worst > 1e-10:
        raise CheckFailure(f"quadrature rel err {worst:.3e}")
    return f"half-line moments and pi to rel err {worst:.1e}"


# ---------------------------------------------------------------------------
# operator algebra
# ---------------------------------------------------------------------------

def _random_polynomials(count: int, max_degree: int):
    rng = random.Random(20240815)
    polys = []
    for _ in range(count):
        deg = rng.randint(0, max_degree)
        polys.append(ParityPolynomial([rng.randint(-9, 9) for _ in range(deg + 1)]))
    return polys


def check_commutators_exact(fast: bool) -> str:
    kmax = 12 if fast else 25
    n_random = 20 if fast else 100
    cases = [ParityPolynomial.monomial(k) for k in range(kmax + 1)]
    cases += _random_polynomials(n_random, 12)
    checked = 0
    for mu in _MU_SWEEP:
        params = OscillatorParams(m=1.0, omega=1.0, mu=mu)
        params2 = OscillatorParams(m=2.0, omega=0.75, mu=mu)
        for p in cases:
            if not commutator_defect_xD(p, mu).is_zero:
                raise CheckFailure(f"[D, x] defect nonzero for mu={mu}, p={p.coeffs}")
            for pp in (params, params2):
                if not ladder_commutator_defect(p, pp).is_zero:
                    raise CheckFailure(
                        f"[a, a^dag] defect nonzero for mu={mu}, p={p.coeffs}"
                    )
            checked += 1
    return f"both defects exactly zero over {checked} polynomial/mu cases"


def check_ladder_matrix_structure(fast: bool) -> str:
    dim = 16 if fast else 24
    for mu in (0.0, 0.5, 1.25):
        params = OscillatorParams(m=1.0, omega=1.0, mu=mu)
        a = ladder_matrix("annihilation", dim, params).entries
        c = ladder_matrix("creation", dim, params).entries
        if not np.array_equal(c, a.T):
            raise CheckFailure(f"creation is not the exact transpose at mu={mu}")
        mask = np.ones_like(a, dtype=bool)
        idx = np.arange(1, dim)
        mask[idx - 1, idx] = False
        if np.any(a[mask] != 0.0):
            raise CheckFailure(f"off-ladder entries not exactly zero at mu={mu}")
        lam = np.where(idx % 2 == 0, idx.astype(float), idx + 2.0 * mu)
        if not np.allclose(a[idx - 1, idx], np.sqrt(lam), rtol=0, atol=1e-14):
            raise CheckFailure(f"superdiagonal differs from sqrt(lambda_k) at mu={mu}")
    params0 = OscillatorParams(m=1.0, omega=1.0, mu=0.0)
    a0 = ladder_matrix("annihilation", dim, params0).entries
    ref = np.zeros((dim, dim))
    ref[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(np.arange(1.0, dim))
    if not np.array_equal(a0, ref):
        raise CheckFailure("mu=0 matrix is not bitwise the standard sqrt(n) ladder")
    return f"transpose exact, sqrt(lambda) ladder structure confirmed at dim {dim}"


def check_dajc_spectrum(fast: bool) -> str:
    n = 16 if fast else 24
    worst = 0.0
    for mu in (0.0, 0.5):
        params = OscillatorParams(m=1.0, omega=1.0, mu=mu)
        h = dajc_hamiltonian(2 * n, params)
        got = np.sort(np.linalg.eigvalsh(h))
        lam = [k if k % 2 == 0 else k + 2.0 * mu for k in range(n)]
        expect = np.sort(
            [sgn * math.sqrt(1.0 + 2.0 * lam_k) for lam_k in lam for sgn in (+1.0, -1.0)]
        )
        err = float(np.max(np.abs(got - expect) / np.abs(expect)))
        worst = max(worst, err)
        # interior levels must agree with the closed-form sector energies
        for parity in (EVEN, ODD):
            for nq in range(min(11, n // 2)):
                e = energy(nq, params, parity)
                if np.min(np.abs(got - e)) / e > 1e-8:
                    raise CheckFailure(f"level n={nq} {parity.name} missing at mu={mu}")
        if err > 1e-8:
            raise CheckFailure(f"eigenvalue mismatch {err:.3e} at mu={mu}")
    return f"full spectrum matches closed form to {worst:.1e} (dim {2 * n})"


# ---------------------------------------------------------------------------
# wavefunctions
# ---------------------------------------------------------------------------

def check_gram_orthonormality(fast: bool) -> str:
    mus = (0.5,) if fast else (0.0, 0.5, 1.5)
    worst = 0.0
    for mu in mus:
        params = OscillatorParams(m=1.0, omega=1.0, mu=mu)
        for parity in (EVEN, ODD):
            polys = [kg_polynomial_part(n, params, parity) for n in range(6)]

            def entry(i: int, j: int) -> float:
                def f(x: float) -> float:
                    return (
                        polys[i](x)
                        * polys[j](x)
                        * math.exp(-x * x)
                        * x ** (2.0 * mu)
                    )

                return 2.0 * integrate(f, 0.0, math.inf, tol=1e-11)

            for i in range(6):
                for j in range(i, 6):
                    dev = abs(entry(i, j) - (1.0 if i == j else 0.0))
                    worst = max(worst, dev)
    if worst > 1e-8:
        raise CheckFailure(f"Gram deviation {worst:.3e} exceeds 1e-8")
    return f"Gram matrix within {worst:.1e} of identity (mu in {mus})"


def check_node_counts(fast: bool) -> str:
    mus = (0.5,) if fast else (0.0, 0.5, 1.5)
    for mu in mus:
        params = OscillatorParams(m=1.0, omega=1.0, mu=mu)
        for parity in (EVEN, ODD):
            for n in range(7):
                poly = kg_polynomial_part(n, params, parity)
                x_hi = math.sqrt(4.0 * n + 2.0 * mu + 4.0) + 1.0
                xs = np.linspace(1e-9, x_hi, 4000)
                vals = np.array([poly(float(x)) for x in xs])
                signs = np.sign(vals)
                flips = int(np.sum(signs[:-1] * signs[1:] < 0))
                if flips != n:
                    raise CheckFailure(
                        f"state n={n} {parity.name} mu={mu} shows {flips} sign changes"
                    )
    return "every state n <= 6 has exactly n positive-axis sign changes"


def check_field_equation_residuals(fast: bool) -> str:
    mus = (0.5,) if fast else (0.0, 0.5, 1.2)
    worst = 0.0
    for mu in mus:
        params = OscillatorParams(m=1.0, omega=1.0, mu=mu)
        for parity in (EVEN, ODD):
            for n in range(5):
                worst = max(worst, dkg_residual(n, params, parity, _RESIDUAL_GRID))
            for n in range(4):
                r1, r2 = dirac_residuals(n, params, parity, _RESIDUAL_GRID)
                worst = max(worst, r1, r2)
    if worst > 1e-8:
        raise CheckFailure(f"field-equation residual {worst:.3e} exceeds 1e-8")
    return f"second-order and coupled first-order residuals <= {worst:.1e}"


def check_normalizations(fast: bool) -> str:
    mus = (0.5,) if fast else (0.0, 0.5, 1.5)
    count = 0
    for mu in mus:
        params = OscillatorParams(m=1.0, omega=1.0, mu=mu)
        for parity in (EVEN, ODD):
            for n in range(6):
                # raises internally if the closed form disagrees with quadrature
                normalization_constant(n, params, parity)
                count += 1
    return f"closed-form normalizations quadrature-confirmed for {count} states"


def check_even_sector_mu_independence(fast: bool) -> str:
    mus = (0.0, 0.5, 2.0)
    base = OscillatorParams.from_r(1.0, mus[0])
    energies = [energy(n, base, EVEN) for n in range(21)]
    taus = (1.0, 2.5, 7.0, 10.0)
    obs = [
        (
            thermo.partition_em(base, EVEN, t),
            thermo.helmholtz(base, EVEN, t),
            thermo.entropy(base, EVEN, t),
            thermo.mean_energy(base, EVEN, t),
            thermo.heat_capacity(base, EVEN, t),
            thermo.partition_exact(base, EVEN, t)[0],
        )
        for t in taus
    ]
    tab = spectrum_table(20, base).column("E_even_over_m")
    for mu in mus[1:]:
        params = OscillatorParams.from_r(1.0, mu)
        if [energy(n, params, EVEN) for n in range(21)] != energies:
            raise CheckFailure(f"even energies differ between mu=0 and mu={mu}")
        if spectrum_table(20, params).column("E_even_over_m") != tab:
            raise CheckFailure(f"spectrum table differs at mu={mu}")
        for t, ref in zip(taus, obs):
            got = (
                thermo.partition_em(params, EVEN, t),
                thermo.helmholtz(params, EVEN, t),
                thermo.entropy(params, EVEN, t),
                thermo.mean_energy(params, EVEN, t),
                thermo.heat_capacity(params, EVEN, t),
                thermo.partition_exact(params, EVEN, t)[0],
            )
            if got != ref:
                raise CheckFailure(f"even observables differ at mu={mu}, tau={t}")
    return "even-sector spectra and observables bit-identical for mu in {0, 0.5, 2}"


# ---------------------------------------------------------------------------
# thermodynamics
# ---------------------------------------------------------------------------

def check_partition_triangle(fast: bool) -> str:
    worst = 0.0
    for params, parity in _configs():
        for tau in (3.0, 5.0, 10.0):
            z_exact, report = thermo.partition_exact(params, parity, tau, tol=1e-10)
            if not report.converged:
                raise CheckFailure("direct sum failed to converge")
            z_em = thermo.partition_em(params, parity, tau)
            worst = max(worst, abs(z_em - z_exact) / z_exact)
    if worst > 0.02:
        raise CheckFailure(f"closed form vs direct sum rel err {worst:.3e} > 2%")
    return f"closed form within {worst:.2%} of the direct sum (18 configurations)"


def check_integral_bound_quadrature(fast: bool) -> str:
    worst = 0.0
    for params, parity in _configs():
        a = 4.0 * params.r
        b = thermo.alpha_s(params, parity)
        for tau in (2.0, 5.0):
            closed = thermo.partition_integral_bound(params, parity, tau)
            quad = integrate(
                lambda x: math.exp(-math.sqrt(a * x + b) / tau), 0.0, math.inf, tol=1e-12
            )
            worst = max(worst, abs(closed - quad) / quad)
    if worst > 1e-10:
        raise CheckFailure(f"integral closed form vs quadrature rel err {worst:.3e}")
    return f"closed-form integral matches quadrature to {worst:.1e}"


def check_em_routes(fast: bool) -> str:
    worst_b2 = 0.0
    for params, parity in _configs():
        for tau in (1.0, 2.0, 5.0, 10.0):
            via_generic = thermo.partition_em_generic(params, parity, tau, orders=(1,))
            closed = thermo.partition_em(params, parity, tau)
            worst_b2 = max(worst_b2, abs(via_generic - closed) / closed)
    if worst_b2 > 1e-9:
        raise CheckFailure(f"B2-truncated generic route differs by {worst_b2:.3e}")
    worst_full = 0.0
    for r in (1.0, 1.5, 2.0):
        params = OscillatorParams.from_r(r, 0.5)
        for tau in (3.0, 5.0, 10.0):
            z_gen = thermo.partition_em_generic(params, ODD, tau)
            z_exact, _ = thermo.partition_exact(params, ODD, tau, tol=1e-10)
            worst_full = max(worst_full, abs(z_gen - z_exact) / z_exact)
    if worst_full > 1e-3:
        raise CheckFailure(f"full-order route vs direct sum {worst_full:.3e} > 1e-3")
    return (
        f"B2 truncation reproduces closed form to {worst_b2:.1e}; "
        f"full order within {worst_full:.1e} of the sum (odd sector)"
    )


def check_observable_derivatives(fast: bool) -> str:
    worst = 0.0
    worst_f = 0.0
    taus = [1.5 + (20.0 - 1.5) * i / 14 for i in range(15)]
    for params, parity in _configs():
        for tau in taus:
            d1, d2 = thermo.fd_logz_derivatives(params, parity, tau)
            s = thermo.entropy(params, parity, tau)
            u = thermo.mean_energy(params, parity, tau)
            c = thermo.heat_capacity(params, parity, tau)
            z = thermo.partition_em(params, parity, tau)
            worst = max(
                worst,
                abs(s - (math.log(z) + tau * d1)) / abs(s),
                abs(u - tau * tau * d1) / abs(u),
                abs(c - (2.0 * tau * d1 + tau * tau * d2)) / abs(c),
            )
            f_val = thermo.helmholtz(params, parity, tau)
            worst_f = max(worst_f, abs(f_val - (u - tau * s)) / abs(f_val))
    if worst > 1e-5:
        raise CheckFailure(f"closed forms vs finite differences: {worst:.3e} > 1e-5")
    if worst_f > 1e-9:
        raise CheckFailure(f"F = U - tau S violated at {worst_f:.3e}")
    return f"S, U, C match finite differences to {worst:.1e}; F = U - tau S to {worst_f:.1e}"


def check_high_temperature_limits(fast: bool) -> str:
    worst_c = worst_u = 0.0
    for params, parity in _configs():
        worst_c = max(worst_c, abs(thermo.heat_capacity(params, parity, 100.0) - 2.0))
        worst_u = max(worst_u, abs(thermo.mean_energy(params, parity, 100.0) / 100.0 - 2.0))
    worst_z = 0.0
    for r in (1.0, 1.5, 2.0):
        params = OscillatorParams.from_r(r, 0.5)
        z, _ = thermo.partition_exact(params, EVEN, 100.0, tol=1e-8)
        worst_z = max(worst_z, abs(z / (100.0**2 / (2.0 * r)) - 1.0))
    if worst_c > 0.05 or worst_u > 0.05:
        raise CheckFailure(f"|C-2| = {worst_c:.3f}, |U/tau-2| = {worst_u:.3f}")
    if worst_z > 0.02:
        raise CheckFailure(f"even-sector leading-order gap {worst_z:.3f} > 2%")
    return (
        f"at tau=100: |C-2| <= {worst_c:.3f}, |U/tau-2| <= {worst_u:.3f}, "
        f"even-sector Z within {worst_z:.1%} of tau^2/(2r)"
    )


def check_qualitative_trends(fast: bool) -> str:
    taus = [1.0 + 0.5 * i for i in range(19)]
    rs = (1.0, 1.5, 2.0)
    for parity in (EVEN, ODD):
        for r in rs:
            params = OscillatorParams.from_r(r, 0.5)
            zs = [thermo.partition_em(params, parity, t) for t in taus]
            if any(b <= a for a, b in zip(zs, zs[1:])):
                raise CheckFailure(f"Z not increasing in tau at r={r}, {parity.name}")
        for t in taus:
            z_by_r = [thermo.partition_em(OscillatorParams.from_r(r, 0.5), parity, t) for r in rs]
            if any(b >= a for a, b in zip(z_by_r, z_by_r[1:])):
                raise CheckFailure(f"Z not decreasing in r at tau={t}, {parity.name}")
            f_by_r = [thermo.helmholtz(OscillatorParams.from_r(r, 0.5), parity, t) for r in rs]
            if any(b <= a for a, b in zip(f_by_r, f_by_r[1:])):
                raise CheckFailure(f"F not increasing in r at tau={t}, {parity.name}")
        s_by_r = [thermo.entropy(OscillatorParams.from_r(r, 0.5), parity, 10.0) for r in rs]
        if any(b >= a for a, b in zip(s_by_r, s_by_r[1:])):
            raise CheckFailure(f"S at tau=10 not decreasing in r, {parity.name}")
    for r in rs:
        params = OscillatorParams.from_r(r, 0.5)
        gaps = [energy(n, params, ODD) - energy(n, params, EVEN) for n in range(21)]
        if any(b >= a for a, b in zip(gaps, gaps[1:])):
            raise CheckFailure(f"parity gap not decreasing in n at r={r}")
    return "monotonicity in tau, r and the parity gap all hold over the preset sweep"


def check_output_roundtrip(fast: bool) -> str:
    import os
    import tempfile

    from .figures import figure_panels
    from .svgplot import BOX, emit_svg, parse_metadata, parse_polylines, render_svg
    from .tables import emit_csv

    panel = figure_panels("fig2")[0]
    table = spectrum_table(10, OscillatorParams.from_r(1.0, 0.5))
    with tempfile.TemporaryDirectory() as tmp:
        p1, p2 = os.path.join(tmp, "a.csv"), os.path.join(tmp, "b.csv")
        emit_csv(table, p1)
        emit_csv(table, p2)
        with open(p1, "rb") as fh:
            b1 = fh.read()
        with open(p2, "rb") as fh:
            b2 = fh.read()
        if b1 != b2:
            raise CheckFailure("two CSV emissions differ byte-wise")
        svg_path = os.path.join(tmp, "a.svg")
        emit_svg(table, panel.spec, svg_path)
        with open(svg_path, encoding="utf-8") as fh:
            text = fh.read()
    if text != render_svg(table, panel.spec) or "</svg>" not in text:
        raise CheckFailure("SVG file does not match its deterministic rendering")
    meta = parse_metadata(text)
    x_min, x_max = (float(v) for v in meta["x_range"].split())
    y_min, y_max = (float(v) for v in meta["y_range"].split())
    bx0, by0, bx1, by1 = BOX
    tol_x = 0.01 * (x_max - x_min) / (bx1 - bx0)
    tol_y = 0.01 * (y_max - y_min) / (by1 - by0)
    series = parse_polylines(text)
    xs = table.column(panel.spec.x_column)
    worst = 0.0
    for name in panel.spec.y_columns:
        ys = table.column(name)
        for (px, py), x, y in zip(series[name], xs, ys):
            x_back = x_min + (px - bx0) / (bx1 - bx0) * (x_max - x_min)
            y_back = y_min + (by1 - py) / (by1 - by0) * (y_max - y_min)
            if abs(x_back - x) > tol_x or abs(y_back - y) > tol_y:
                raise CheckFailure(f"vertex ({px}, {py}) off by more than one unit")
            worst = max(worst, abs(x_back - x) / tol_x, abs(y_back - y) / tol_y)
    return f"CSV deterministic; SVG vertices invert to data within {worst:.2f} units"


_CHECKS = (
    ("kummer-laguerre identity", check_kummer_laguerre_identity),
    ("log-gamma recurrence", check_lngamma_recurrence),
    ("adaptive quadrature moments", check_integrate_moments),
    ("operator commutators exact", check_commutators_exact),
    ("ladder matrix structure", check_ladder_matrix_structure),
    ("two-level model spectrum", check_dajc_spectrum),
    ("wavefunction orthonormality", check_gram_orthonormality),
    ("wavefunction node counts", check_node_counts),
    ("field-equation residuals", check_field_equation_residuals),
    ("normalization quadrature", check_normalizations),
    ("even-sector mu independence", check_even_sector_mu_independence),
    ("partition oracle triangle", check_partition_triangle),
    ("convergence integral closed form", check_integral_bound_quadrature),
    ("summation-formula routes", check_em_routes),
    ("observable derivative consistency", check_observable_derivatives),
    ("high-temperature limits", check_high_temperature_limits),
    ("qualitative trends", check_qualitative_trends),
    ("deterministic output roundtrip", check_output_roundtrip),
)


def run_all(fast: bool = False) -> list:
    results = []
    for name, fn in _CHECKS:
        start = time.perf_counter()
        try:
            detail = fn(fast)
            passed = True
        except CheckFailure as exc:
            detail, passed = str(exc), False
        except Exception as exc:  # a crash is a failure, not an abort
            detail, passed = f"{type(exc).__name__}: {exc}", False
        results.append(
            CheckResult(name=name, passed=passed, detail=detail,
                        elapsed_s=time.perf_counter() - start)
        )
    return results
