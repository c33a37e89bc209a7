"""Exact, semi-analytic and fine-grid reference solutions for the benchmarks.

Four benchmark problems on (0, 1):

* ``planewave`` -- homogeneous equation, exact solution alpha e^{ikx} +
  beta e^{-ikx}; data derived from the coefficients.
* ``smooth`` -- manufactured u = e^{ikx} + x^4 (1-x)^4, polynomial source
  with f = f' = 0 at both endpoints.
* ``sine2`` -- source sin^2(pi x) with data g0 = 2, gL = i; solved in
  closed form by undetermined coefficients.
* ``box`` -- piecewise-constant source 50 * 1_{|x-1/2| <= 1/9}; no closed
  form, compared against a cached fine-grid solve.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial

from .errors import ResonantSource
from .grid import GridFunction
from .schemes import HelmholtzProblem, SchemeKind, solve_scheme

TWO_PI_SQ = 4.0 * math.pi**2


@dataclass(frozen=True)
class ExactSolution:
    """Closed-form solution handles u, u' and u'' on [0, L]."""

    u: Callable
    u_prime: Callable
    u_doubleprime: Callable


@dataclass(frozen=True)
class PlaneWaveCoefficients:
    """Amplitudes of the outgoing/incoming components alpha e^{ikx} + beta e^{-ikx}."""

    alpha: complex
    beta: complex

    @classmethod
    def from_impedance(cls, k: float, L: float, g0: complex, gL: complex) -> "PlaneWaveCoefficients":
        """Invert -2ik beta = g0 and 2ik e^{ikL} alpha = gL."""
        return cls(alpha=gL / (2j * k * cmath.exp(1j * k * L)), beta=-g0 / (2j * k))


def plane_wave_problem(k: float, alpha: complex, beta: complex,
                       L: float = 1.0) -> tuple[HelmholtzProblem, ExactSolution]:
    """Homogeneous problem whose exact solution is alpha e^{ikx} + beta e^{-ikx}."""
    alpha = complex(alpha)
    beta = complex(beta)
    g0 = -2j * k * beta
    gL = 2j * k * cmath.exp(1j * k * L) * alpha

    def u(x):
        return alpha * np.exp(1j * k * x) + beta * np.exp(-1j * k * x)

    def u_prime(x):
        return 1j * k * (alpha * np.exp(1j * k * x) - beta * np.exp(-1j * k * x))

    def u_doubleprime(x):
        return -k * k * u(x)

    exact = ExactSolution(u, u_prime, u_doubleprime)
    problem = HelmholtzProblem(k, L, lambda x: np.zeros_like(np.asarray(x, dtype=complex)),
                               g0, gL, name="planewave", exact=exact)
    return problem, exact


# Bump r(x) = x^4 (1-x)^4 expanded in the monomial basis.
_R_POLY = Polynomial([0.0, 0.0, 0.0, 0.0, 1.0, -4.0, 6.0, -4.0, 1.0])


def smooth_manufactured_problem(k: float) -> tuple[HelmholtzProblem, ExactSolution]:
    """Manufactured solution u = e^{ikx} + x^4 (1-x)^4 on (0, 1).

    The source f = r'' + k^2 r vanishes to first order at both endpoints,
    so the boundary data reduce to g0 = 0 and gL = 2ik e^{ik}.
    """
    r = _R_POLY
    r1 = r.deriv(1)
    r2 = r.deriv(2)
    f_poly = r2 + k * k * r

    def u(x):
        return np.exp(1j * k * np.asarray(x)) + r(np.asarray(x))

    def u_prime(x):
        x = np.asarray(x)
        return 1j * k * np.exp(1j * k * x) + r1(x)

    def u_doubleprime(x):
        x = np.asarray(x)
        return -k * k * np.exp(1j * k * x) + r2(x)

    exact = ExactSolution(u, u_prime, u_doubleprime)
    problem = HelmholtzProblem(k, 1.0, lambda x: f_poly(np.asarray(x)),
                               0.0 + 0.0j, 2j * k * cmath.exp(1j * k),
                               name="smooth", exact=exact)
    return problem, exact


def smooth_source_derivatives(k: float) -> tuple[Callable, Callable, Callable]:
    """First three derivatives of the manufactured polynomial source."""
    r = _R_POLY
    f_poly = r.deriv(2) + k * k * r
    d1, d2, d3 = f_poly.deriv(1), f_poly.deriv(2), f_poly.deriv(3)
    return (lambda x: d1(np.asarray(x)),
            lambda x: d2(np.asarray(x)),
            lambda x: d3(np.asarray(x)))


def sine_squared_problem(k: float) -> tuple[HelmholtzProblem, ExactSolution]:
    """Closed-form solution for the source sin^2(pi x) with data g0 = 2, gL = i.

    Undetermined coefficients give the particular part
        u_p = 1/(2 k^2) - cos(2 pi x) / (2 (k^2 - 4 pi^2)),
    and a 2x2 solve fixes the homogeneous amplitudes from the impedance
    data. Rejects wavenumbers resonant with the source (k^2 near 4 pi^2)
    and the degenerate limit k near 0.
    """
    if k < 1e-8:
        raise ResonantSource(f"k = {k!r} too small for the particular solution")
    denom = k * k - TWO_PI_SQ
    if abs(denom) < 1e-8 * k * k:
        raise ResonantSource(f"k^2 = {k * k!r} resonates with the source frequency 2*pi")

    g0, gL = 2.0 + 0.0j, 1j
    c_pole = 1.0 / (2.0 * denom)

    def u_p(x):
        return 1.0 / (2.0 * k * k) - np.cos(2.0 * math.pi * np.asarray(x)) * c_pole

    def u_p_prime(x):
        return math.pi * np.sin(2.0 * math.pi * np.asarray(x)) * 2.0 * c_pole

    def u_p_doubleprime(x):
        return TWO_PI_SQ * np.cos(2.0 * math.pi * np.asarray(x)) * c_pole

    # Impedance traces of the homogeneous modes e^{+-ikx} at x = 0 and x = 1.
    eik = cmath.exp(1j * k)
    emik = cmath.exp(-1j * k)
    mat = np.array([[0.0, -2j * k],
                    [2j * k * eik, 0.0]], dtype=complex)
    rhs = np.array([g0 - (u_p_prime(0.0) - 1j * k * u_p(0.0)),
                    gL - (u_p_prime(1.0) + 1j * k * u_p(1.0))], dtype=complex)
    alpha, beta = np.linalg.solve(mat, rhs)

    def u(x):
        x = np.asarray(x)
        return u_p(x) + alpha * np.exp(1j * k * x) + beta * np.exp(-1j * k * x)

    def u_prime(x):
        x = np.asarray(x)
        return u_p_prime(x) + 1j * k * (alpha * np.exp(1j * k * x) - beta * np.exp(-1j * k * x))

    def u_doubleprime(x):
        x = np.asarray(x)
        return u_p_doubleprime(x) - k * k * (alpha * np.exp(1j * k * x) + beta * np.exp(-1j * k * x))

    def f(x):
        return np.sin(math.pi * np.asarray(x)) ** 2 + 0.0j

    exact = ExactSolution(u, u_prime, u_doubleprime)
    problem = HelmholtzProblem(k, 1.0, f, g0, gL, name="sine2", exact=exact)
    return problem, exact


def sine_squared_source_derivatives() -> tuple[Callable, Callable, Callable]:
    """First three derivatives of sin^2(pi x) = 1/2 - cos(2 pi x)/2."""
    return (lambda x: math.pi * np.sin(2.0 * math.pi * np.asarray(x)),
            lambda x: 2.0 * math.pi**2 * np.cos(2.0 * math.pi * np.asarray(x)),
            lambda x: -4.0 * math.pi**3 * np.sin(2.0 * math.pi * np.asarray(x)))


def box_source_problem(k: float) -> HelmholtzProblem:
    """Piecewise-constant source 50 on |x - 1/2| <= 1/9 (endpoints included),
    data g0 = 2, gL = i; no closed-form solution is attached."""

    def f(x):
        x = np.asarray(x)
        return np.where(np.abs(x - 0.5) <= 1.0 / 9.0, 50.0, 0.0) + 0.0j

    return HelmholtzProblem(k, 1.0, f, 2.0 + 0.0j, 1j, name="box")


_BENCHMARKS = ("planewave", "smooth", "box", "sine2")


def make_benchmark(name: str, k: float) -> tuple[HelmholtzProblem, ExactSolution | None]:
    """Benchmark factory keyed by CLI name."""
    if name == "planewave":
        return plane_wave_problem(k, 2.0, 1.0)
    if name == "smooth":
        return smooth_manufactured_problem(k)
    if name == "sine2":
        return sine_squared_problem(k)
    if name == "box":
        return box_source_problem(k), None
    raise ValueError(f"unknown benchmark {name!r}; expected one of {_BENCHMARKS}")


def pde_residual_check(p: HelmholtzProblem, n_points: int = 100,
                       seed: int = 0) -> tuple[float, float, float]:
    """Max |u'' + k^2 u - f| at pseudo-random points, plus both boundary
    condition residuals, for a problem with attached exact handles."""
    if p.exact is None:
        raise ValueError("problem has no exact solution attached")
    e = p.exact
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, p.L, n_points)
    pde = np.abs(e.u_doubleprime(x) + p.k**2 * np.asarray(e.u(x)) - np.asarray(p.f(x)))
    bc0 = abs(complex(e.u_prime(0.0)) - 1j * p.k * complex(e.u(0.0)) - complex(p.g0))
    bcL = abs(complex(e.u_prime(p.L)) + 1j * p.k * complex(e.u(p.L)) - complex(p.gL))
    return float(np.max(pde)), bc0, bcL


_reference_cache: dict[tuple, GridFunction] = {}
_cache_lock = threading.Lock()


def clear_reference_cache() -> None:
    with _cache_lock:
        _reference_cache.clear()


def fine_grid_reference(p: HelmholtzProblem, n_ref: int,
                        kind: SchemeKind = SchemeKind.BPF,
                        tol: float = 1e-8) -> GridFunction:
    """Fine-grid solve used as a surrogate exact solution.

    Cached by (problem name, k, L, n_ref, scheme) for named problems;
    insert-if-absent under a lock, so concurrent callers at worst duplicate
    one solve and agree on the stored result.
    """
    if not p.name:
        return solve_scheme(p, n_ref, kind, tol)
    key = (p.name, p.k, p.L, n_ref, kind)
    with _cache_lock:
        hit = _reference_cache.get(key)
    if hit is not None:
        return hit
    sol = solve_scheme(p, n_ref, kind, tol)
    with _cache_lock:
        return _reference_cache.setdefault(key, sol)
