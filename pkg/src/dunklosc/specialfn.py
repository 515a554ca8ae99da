"""Special functions and quadrature used by the physics modules.

Everything here is a pure function.  Terminating hypergeometric series and
Laguerre recurrences run in exact rational arithmetic internally (every
float is a rational, so this is always possible) and round once on return;
that is what lets the operator-algebra and orthogonality layers assert
exact zeros instead of tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError

_MAX_SERIES_TERMS = 20_000


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def bernoulli_even(p: int) -> Fraction:
    """B_{2p} for p in {1, 2, 3}; higher orders are deliberately unsupported."""
    table = {1: Fraction(1, 6), 2: Fraction(-1, 30), 3: Fraction(1, 42)}
    try:
        return table[p]
    except KeyError:
        raise DomainError(f"bernoulli_even supports p in {{1,2,3}}, got {p}") from None


def pochhammer(x: float, n: int) -> float:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1), exact product."""
    if n < 0:
        raise DomainError(f"pochhammer requires n >= 0, got {n}")
    acc = Fraction(1)
    fx = Fraction(x)
    for k in range(n):
        acc *= fx + k
    return float(acc)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x) == int(x)


def kummer_m(a: float, b: float, y: float) -> float:
    """Confluent hypergeometric M(a, b; y) = sum_k (a)_k/(b)_k y^k/k!.

    For a = -n the series terminates and is summed exactly as the degree-n
    polynomial.  Otherwise forward summation with a geometric tail bound.
    """
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(y)):
        raise DomainError("kummer_m requires finite arguments")
    if y < 0:
        raise DomainError(f"kummer_m requires y >= 0, got {y}")

    if _is_nonpositive_integer(a):
        n = int(-a)
        # pole of (b)_k before the series terminates makes the sum undefined
        if _is_nonpositive_integer(b) and int(-b) < n:
            raise DomainError(f"kummer_m: b = {b} hits a pole before termination")
        fa, fb, fy = Fraction(a), Fraction(b), Fraction(y)
        term = Fraction(1)
        total = Fraction(1)
        for k in range(n):
            term *= (fa + k) * fy / ((fb + k) * (k + 1))
            total += term
        return float(total)

    if _is_nonpositive_integer(b):
        raise DomainError(f"kummer_m: b must not be a non-positive integer, got {b}")

    terms = [1.0]
    term = 1.0
    for k in range(_MAX_SERIES_TERMS):
        term *= (a + k) * y / ((b + k) * (k + 1))
        terms.append(term)
        ratio = abs((a + k + 1) * y / ((b + k + 1) * (k + 2)))
        if ratio < 0.5 and abs(term) <= 1e-17 * abs(terms[0]) + 1e-300:
            break
        if ratio < 0.5:
            partial = math.fsum(terms)
            if abs(term) * ratio / (1.0 - ratio) <= 1e-16 * abs(partial):
                break
    else:
        raise ConvergenceError(
            "kummer_m series did not converge", requested=1e-16, achieved=abs(term)
        )
    return math.fsum(terms)


def laguerre(n: int, alpha: float, y: float) -> float:
    """Generalized Laguerre polynomial L_n^{(alpha)}(y) by three-term recurrence."""
    if n < 0 or n != int(n):
        raise DomainError(f"laguerre requires integer n >= 0, got {n}")
    if not alpha > -1:
        raise DomainError(f"laguerre requires alpha > -1, got {alpha}")
    fa, fy = Fraction(alpha), Fraction(y)
    prev = Fraction(1)
    if n == 0:
        return 1.0
    cur = 1 + fa - fy
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + fa - fy) * cur - (k + fa) * prev) / (k + 1)
    return float(cur)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _leggauss(npts: int):
    nodes, weights = np.polynomial.legendre.leggauss(npts)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@dataclass(frozen=True)
class QuadratureRule:
    """A fixed set of abscissas and positive weights.

    kind is "gauss-legendre" for a finite interval or "half-line" for the
    substitution x = t/(1-t) mapping [0, inf) onto [0, 1).
    """

    nodes: tuple
    weights: tuple
    kind: str

    def __post_init__(self):
        if len(self.nodes) < 2 or len(self.nodes) != len(self.weights):
            raise DomainError("QuadratureRule needs >= 2 matching nodes and weights")
        if any(w <= 0 for w in self.weights):
            raise DomainError("QuadratureRule weights must be positive")

    @classmethod
    def gauss_legendre(cls, npts: int, a: float, b: float) -> "QuadratureRule":
        t, w = _leggauss(npts)
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        return cls(
            nodes=tuple(mid + half * t),
            weights=tuple(half * w),
            kind="gauss-legendre",
        )

    @classmethod
    def half_line(cls, npts: int) -> "QuadratureRule":
        t, w = _leggauss(npts)
        u = 0.5 * (t + 1.0)        # to (0, 1); endpoints are never nodes
        wu = 0.5 * w
        return cls(
            nodes=tuple(u / (1.0 - u)),
            weights=tuple(wu / (1.0 - u) ** 2),
            kind="half-line",
        )

    def apply(self, f: Callable[[float], float]) -> float:
        return math.fsum(w * f(x) for x, w in zip(self.nodes, self.weights))


def _panel(f, lo: float, hi: float, nodes, weights) -> float:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * math.fsum(w * f(mid + half * t) for t, w in zip(nodes, weights))


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_intervals: int = 4096,
) -> float:
    """Adaptive Gauss-Legendre integral of f over [a, b]; b may be math.inf.

    The half-line case substitutes x = a + t/(1-t) and integrates over
    [0, 1); f must decay there or the refinement budget runs out.  Error
    control compares each panel against its bisection; on budget
    exhaustion a ConvergenceError reports requested vs achieved error.
    """
    if not tol > 0:
        raise DomainError(f"integrate requires tol > 0, got {tol}")
    if math.isinf(b):
        if math.isinf(a):
            raise DomainError("doubly infinite domains are not supported")
        def g(t: float) -> float:
            return f(a + t / (1.0 - t)) / (1.0 - t) ** 2
        return _integrate_finite(g, 0.0, 1.0, tol, max_intervals)
    return _integrate_finite(f, a, b, tol, max_intervals)


def _integrate_finite(f, a: float, b: float, tol: float, max_intervals: int) -> float:
    nodes, weights = _leggauss(15)
    length = b - a
    if length == 0:
        return 0.0
    stack = [(a, b, _panel(f, a, b, nodes, weights), 0)]
    total = 0.0
    err_accepted = 0.0
    processed = 0
    while stack:
        lo, hi, whole, depth = stack.pop()
        processed += 1
        if processed > max_intervals:
            # unresolved panels only carry their value as an error bound
            pending = abs(whole) + math.fsum(abs(q[2]) for q in stack)
            raise ConvergenceError(
                "integrate exhausted its interval budget",
                requested=tol,
                achieved=err_accepted + pending,
            )
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid, nodes, weights)
        right = _panel(f, mid, hi, nodes, weights)
        err = abs(left + right - whole)
        if err <= tol * (hi - lo) / length or depth >= 52:
            total += left + right
            err_accepted += err
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    return total


def integrate_even(f: Callable[[float], float], tol: float = 1e-10) -> float:
    """Integral over the whole real line of an even integrand."""
    return 2.0 * integrate(f, 0.0, math.inf, tol=tol)
