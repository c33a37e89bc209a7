"""Direct solution of complex tridiagonal systems.

Plain Thomas elimination (no row pivoting): the assembled Helmholtz systems
are well conditioned away from the Nyquist guard, and a pivot-magnitude
check converts genuine breakdown into SingularSystem instead of returning
garbage. The elimination runs over Python lists of native complex numbers,
which is considerably faster than per-element ndarray indexing for the
largest systems used here (2^18 + 1 unknowns).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularSystem

PIVOT_REL_TOL = 1e-14


@dataclass
class TridiagonalSystem:
    """Three complex diagonals plus right-hand side for m = n+1 unknowns.

    lower and upper have length m-1, diag and rhs length m. Row i reads
    lower[i-1]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i].
    """

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        self.lower = np.asarray(self.lower, dtype=complex)
        self.diag = np.asarray(self.diag, dtype=complex)
        self.upper = np.asarray(self.upper, dtype=complex)
        self.rhs = np.asarray(self.rhs, dtype=complex)
        m = self.diag.shape[0]
        if self.rhs.shape != (m,) or self.lower.shape != (m - 1,) or self.upper.shape != (m - 1,):
            raise ValueError(
                "inconsistent diagonal lengths: "
                f"lower {self.lower.shape}, diag {self.diag.shape}, "
                f"upper {self.upper.shape}, rhs {self.rhs.shape}"
            )

    @property
    def size(self) -> int:
        return self.diag.shape[0]

    def dense(self) -> np.ndarray:
        """Dense matrix form (test/diagnostic use only)."""
        m = self.size
        a = np.zeros((m, m), dtype=complex)
        a[np.arange(m), np.arange(m)] = self.diag
        a[np.arange(1, m), np.arange(m - 1)] = self.lower
        a[np.arange(m - 1), np.arange(1, m)] = self.upper
        return a


def solve_tridiagonal(sys: TridiagonalSystem) -> np.ndarray:
    """Thomas forward elimination / back substitution.

    Raises SingularSystem when any pivot magnitude drops below
    PIVOT_REL_TOL times the largest input coefficient magnitude.
    """
    m = sys.size
    scale = max(
        np.max(np.abs(sys.diag), initial=0.0),
        np.max(np.abs(sys.lower), initial=0.0),
        np.max(np.abs(sys.upper), initial=0.0),
    )
    if scale == 0.0:
        raise SingularSystem("all matrix coefficients are zero")
    breakdown = PIVOT_REL_TOL * scale

    lower = sys.lower.tolist()
    diag = sys.diag.tolist()
    upper = sys.upper.tolist()
    rhs = sys.rhs.tolist()

    # cprime[i] = upper[i]/pivot_i, dprime[i] = modified rhs / pivot_i
    cprime = [0j] * (m - 1)
    dprime = [0j] * m

    pivot = diag[0]
    if abs(pivot) < breakdown:
        raise SingularSystem(f"pivot {abs(pivot):.3e} below threshold at row 0")
    if m > 1:
        cprime[0] = upper[0] / pivot
    dprime[0] = rhs[0] / pivot
    for i in range(1, m):
        pivot = diag[i] - lower[i - 1] * cprime[i - 1]
        if abs(pivot) < breakdown:
            raise SingularSystem(f"pivot {abs(pivot):.3e} below threshold at row {i}")
        if i < m - 1:
            cprime[i] = upper[i] / pivot
        dprime[i] = (rhs[i] - lower[i - 1] * dprime[i - 1]) / pivot

    x = [0j] * m
    x[m - 1] = dprime[m - 1]
    for i in range(m - 2, -1, -1):
        x[i] = dprime[i] - cprime[i] * x[i + 1]
    return np.asarray(x, dtype=complex)


def residual_inf_norm(sys: TridiagonalSystem, x: np.ndarray) -> float:
    """Max-norm of A x - b for a candidate solution x."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (sys.size,):
        raise ValueError(f"solution length {x.shape} does not match system size {sys.size}")
    r = sys.diag * x - sys.rhs
    r[1:] += sys.lower * x[:-1]
    r[:-1] += sys.upper * x[1:]
    return float(np.max(np.abs(r)))
