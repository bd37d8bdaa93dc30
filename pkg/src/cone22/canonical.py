"""Third-order frame reduction on a lightlike hypersurface.

Moving ``A2`` and ``A3`` inside their isotropic planes shifts the
third-order coefficients ``h3 = (h222, h223, h233, h333)`` by a linear map
of the four fiber parameters ``(pi2_0, pi2_1, pi3_0, pi3_1)``.  The frame
can be normalized to ``h3 = 0`` exactly when that map is invertible, which
happens iff ``D = 4 (3 h22 b0 + h33 a0)(h22 b0 + 3 h33 a0)`` is nonzero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import DEFAULT_TOL

FIBER_PARAMS = ("pi2_0", "pi2_1", "pi3_0", "pi3_1")
H3_NAMES = ("h222", "h223", "h233", "h333")


@dataclass(frozen=True)
class ReductionSystem:
    """``m @ pi = rhs``; rows follow :data:`H3_NAMES`, columns :data:`FIBER_PARAMS`."""

    m: tuple
    rhs: tuple

    def as_array(self, exact=False) -> np.ndarray:
        return np.array(self.m, dtype=object if exact else float)

    def residual(self, params) -> tuple:
        return tuple(
            sum(mij * pj for mij, pj in zip(row, params)) - r
            for row, r in zip(self.m, self.rhs)
        )


def _is_exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def build_system(h22, h33, a0, b0, h3=(0, 0, 0, 0)) -> ReductionSystem:
    if len(h3) != 4:
        raise ValueError("h3 holds (h222, h223, h233, h333)")
    m = (
        (3 * h22, 2 * a0, 0 * h22, -3 * h22 * h22),
        (0 * h22, h22 * h33, -h22, 2 * a0),
        (-h33, 2 * b0, 0 * h22, 3 * h22 * h33),
        (0 * h22, -3 * h33 * h33, 3 * h33, 2 * b0),
    )
    # cancel the current third-order coefficients
    rhs = tuple(-x for x in h3)
    return ReductionSystem(m, rhs)


def determinant_factors(h22, h33, a0, b0) -> tuple:
    return 3 * h22 * b0 + h33 * a0, h22 * b0 + 3 * h33 * a0


def determinant_D(h22, h33, a0, b0):
    f1, f2 = determinant_factors(h22, h33, a0, b0)
    return 4 * f1 * f2


def _gauss(m, rhs=None):
    """Fraction Gaussian elimination.  Returns ``(det, solution or None)``."""
    n = len(m)
    a = [[Fraction(x) for x in row] + ([Fraction(rhs[i])] if rhs is not None else [])
         for i, row in enumerate(m)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0), None
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    if rhs is None:
        return det, None
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = a[r][n] - sum(a[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / a[r][r]
    return det, tuple(x)


def system_determinant(system: ReductionSystem):
    flat = [x for row in system.m for x in row]
    if _is_exact(*flat):
        return _gauss(system.m)[0]
    return float(np.linalg.det(system.as_array()))


@dataclass
class Reduction:
    feasible: bool
    D: object
    factors: tuple
    params: Optional[tuple] = None
    reason: Optional[str] = None
    condition: Optional[float] = None
    residual: Optional[float] = None
    notes: list = field(default_factory=list)


def _scale(h22, h33, a0, b0) -> float:
    h = max(abs(h22), abs(h33))
    c = max(abs(a0), abs(b0))
    return max(1.0, float(h) ** 2 * float(c) ** 2)


def reduce_to_canonical(h22, h33, a0, b0, h3=(0, 0, 0, 0),
                        tol: float = DEFAULT_TOL) -> Reduction:
    """Fiber parameters that bring ``h3`` to zero, or the reason they do not exist."""
    system = build_system(h22, h33, a0, b0, h3)
    D = determinant_D(h22, h33, a0, b0)
    factors = determinant_factors(h22, h33, a0, b0)
    exact = _is_exact(h22, h33, a0, b0, *h3)
    thresh = 0 if exact and tol == 0 else tol * _scale(h22, h33, a0, b0)

    if abs(D) <= thresh:
        if abs(h22) <= tol and abs(h33) <= tol:
            reason = "umbilical"
        elif abs(a0) <= tol and abs(b0) <= tol:
            reason = "flat"
        elif abs(factors[0]) <= abs(factors[1]):
            reason = "factor_zero:3*h22*b0+h33*a0"
        else:
            reason = "factor_zero:h22*b0+3*h33*a0"
        return Reduction(False, D, factors, reason=reason)

    if exact:
        _, params = _gauss(system.m, system.rhs)
        res = max(abs(x) for x in system.residual(params))
        return Reduction(True, D, factors, params=params, residual=float(res), condition=None)

    A = system.as_array()
    cond = float(np.linalg.cond(A))
    params = tuple(float(x) for x in np.linalg.solve(A, np.array(system.rhs, dtype=float)))
    res = max(abs(x) for x in system.residual(params))
    out = Reduction(True, D, factors, params=params, residual=float(res), condition=cond)
    if cond * np.finfo(float).eps > 1e-6:
        out.notes.append(f"ill-conditioned system (cond ~ {cond:.3g})")
    return out


def transformed_h3(system: ReductionSystem, params) -> tuple:
    """Third-order coefficients after the fiber displacement ``params``."""
    return tuple(-r + sum(mij * pj for mij, pj in zip(row, params))
                 for row, r in zip(system.m, system.rhs))


def reduced_relations(h22, h33, a0, b0, a1, b1) -> dict:
    """Right-hand sides, on ``(w1, w2, w3)``, once ``h3 = 0``."""
    return {
        "dh22": (-2 * a0, 0 * a0, 0 * a0),
        "omega_1_0": (h22 * h33, -2 * a1, -2 * b1),
        "dh33": (-2 * b0, 0 * b0, 0 * b0),
    }
