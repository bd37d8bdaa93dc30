"""Pointwise invariants of a lightlike hypersurface.

A hypersurface point is described by a :class:`HypersurfaceJet`: the
second-order coefficients ``l22, l23, l33`` of ``w1^3`` and ``w1^2`` on the
screen forms ``w2, w3``, and optionally the third-order coefficients
``h222, h223, h233, h333`` which only make sense in the harmonic frame
(``A1 = H``, so ``l23 = 0``).

Points of the isotropic geodesic ``A0 A1`` are parametrized as
``A1 - s A0``; ``A0`` itself is ``s = INF``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .core import DEFAULT_TOL, INF
from .principal import BinaryQuartic, projective_roots
from .weyl import WeylTensor, alpha_quartic, beta_quartic


class FrameError(ValueError):
    """The jet is not in the frame an operation requires."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class FundForm:
    """Quadratic form ``q22 w2^2 + 2 q23 w2 w3 + q33 w3^2``."""

    q22: object = 0
    q23: object = 0
    q33: object = 0

    def __call__(self, w2, w3):
        return self.q22 * w2 * w2 + 2 * self.q23 * w2 * w3 + self.q33 * w3 * w3

    def matrix(self):
        return ((self.q22, self.q23), (self.q23, self.q33))

    def apolar_trace(self):
        """Contraction with the inverse of the first form, ``g^ab q_ab``."""
        return 2 * self.q23

    def is_zero(self, tol=0.0):
        return all(abs(x) <= tol for x in (self.q22, self.q23, self.q33))

    def __sub__(self, other):
        return FundForm(self.q22 - other.q22, self.q23 - other.q23, self.q33 - other.q33)

    def __mul__(self, k):
        return FundForm(k * self.q22, k * self.q23, k * self.q33)

    __rmul__ = __mul__


@dataclass(frozen=True)
class HypersurfaceJet:
    l22: object = 0
    l23: object = 0
    l33: object = 0
    h3: Optional[tuple] = None
    frame_reduced: bool = False

    def __post_init__(self):
        if self.frame_reduced and self.l23 != 0:
            raise FrameError("a frame-reduced jet must have l23 = 0")
        if self.h3 is not None:
            if len(self.h3) != 4:
                raise ValueError("h3 holds (h222, h223, h233, h333)")
            object.__setattr__(self, "h3", tuple(self.h3))

    @property
    def h22(self):
        return self.l22

    @property
    def h33(self):
        return self.l33

    def reduced(self) -> "HypersurfaceJet":
        """The same point seen from the frame with ``A1`` at the harmonic pole."""
        return replace(self, l23=0 * self.l23, frame_reduced=True)

    def third_order(self) -> tuple:
        return self.h3 if self.h3 is not None else (0, 0, 0, 0)


def first_form() -> FundForm:
    """``2 w2 w3``."""
    return FundForm(0, 1, 0)


def pencil_form(j: HypersurfaceJet, x) -> FundForm:
    return FundForm(j.l22, j.l23 - x, j.l33)


def invariant_second_form(j: HypersurfaceJet) -> FundForm:
    """The member of the pencil apolar to the first form."""
    return pencil_form(j, j.l23)


TWO_REAL = "two_real"
COMPLEX_CONJUGATE = "complex_conjugate"
COINCIDENT = "coincident"


def _exact_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class SingularPair:
    """Roots of ``s^2 - 2 center s + (center^2 - radicand) = 0``.

    Stored algebraically as ``center`` and ``radicand`` so that the symmetric
    functions stay exact for rational input.  ``s1`` takes the ``+`` branch.
    For a complex pair ``s1 = re + i im`` is reported as ``(re, im)`` with
    ``im >= 0``.
    """

    kind: str
    center: object
    radicand: object
    root_radicand: object = field(default=None, compare=False)

    @property
    def _r(self):
        if self.root_radicand is not None:
            return self.root_radicand
        return math.sqrt(abs(float(self.radicand)))

    @property
    def s1(self):
        if self.kind == COMPLEX_CONJUGATE:
            return (self.center, self._r)
        return self.center + self._r

    @property
    def s2(self):
        if self.kind == COMPLEX_CONJUGATE:
            return (self.center, self._r)
        return self.center - self._r

    def as_complex(self) -> tuple[complex, complex]:
        r = self._r
        c = float(self.center)
        if self.kind == COMPLEX_CONJUGATE:
            return complex(c, float(r)), complex(c, -float(r))
        return complex(c + float(r)), complex(c - float(r))

    def unordered(self) -> frozenset:
        return frozenset(self.as_complex())

    def root_sum(self):
        return 2 * self.center

    def root_product(self):
        return self.center * self.center - self.radicand


def singular_points(j: HypersurfaceJet, tol: float = 0.0) -> SingularPair:
    """Singular points ``F = A1 - s A0`` of the isotropic geodesic."""
    d = j.l22 * j.l33
    root = None
    if isinstance(d, (int, Fraction)):
        root = _exact_sqrt(Fraction(-d if d < 0 else d))
    if abs(d) <= tol:
        kind = COINCIDENT
    elif d > 0:
        kind = TWO_REAL
    else:
        kind = COMPLEX_CONJUGATE
    return SingularPair(kind, j.l23, d, root)


def cross_ratio(a, b, c, d):
    """``(a, b; c, d) = ((c - a)(d - b)) / ((c - b)(d - a))``, ``INF`` allowed."""
    def diff(x, y):
        return None if x is INF or y is INF else x - y

    num = [diff(c, a), diff(d, b)]
    den = [diff(c, b), diff(d, a)]
    # factors containing INF cancel pairwise (one in num, one in den)
    num_f = [x for x in num if x is not None]
    den_f = [x for x in den if x is not None]
    if len(num_f) != len(den_f):
        raise ValueError("cross ratio undefined for this configuration")
    top = math.prod(num_f) if num_f else 1
    bot = math.prod(den_f) if den_f else 1
    return top / bot


def harmonic_pole(j: HypersurfaceJet):
    """Line parameter of ``H``, the harmonic conjugate of ``A0`` w.r.t. F1, F2."""
    return j.l23


def harmonic_cross_ratio(j: HypersurfaceJet) -> complex:
    """``(A0, H; F1, F2)``; ``-1`` whenever the singular points differ."""
    f1, f2 = singular_points(j).as_complex()
    if f1 == f2:
        raise ValueError("singular points coincide; the harmonic conjugate is degenerate")
    h = harmonic_pole(j)
    return cross_ratio(INF, complex(float(h)), f1, f2)


DEFINITE_TWO_REAL = "definite_two_real"
INDEFINITE_COMPLEX = "indefinite_complex"
DEGENERATE_COINCIDENT = "degenerate_coincident"


def classify_second_form(j: HypersurfaceJet, tol: float = 0.0) -> str:
    """Sign of the invariant second form decides the singular-point type."""
    ii = invariant_second_form(j)
    d = ii.q22 * ii.q33
    if abs(d) <= tol:
        return DEGENERATE_COINCIDENT
    return DEFINITE_TWO_REAL if d > 0 else INDEFINITE_COMPLEX


def second_form_rank(j: HypersurfaceJet, tol: float = 0.0) -> int:
    ii = invariant_second_form(j)
    return sum(1 for x in (ii.q22, ii.q33) if abs(x) > tol)


def degeneracy(j: HypersurfaceJet, tol: float = 0.0) -> str:
    """``"rank2"``, ``"rank1"`` or ``"umbilical"``."""
    return {2: "rank2", 1: "rank1", 0: "umbilical"}[second_form_rank(j, tol)]


def integrability(j: HypersurfaceJet, tol: float = 0.0) -> tuple[bool, bool]:
    """``(alpha, beta)``: whether ``w3 = 0`` and ``w2 = 0`` are integrable."""
    if not j.frame_reduced:
        raise FrameError("integrability needs the harmonic frame (call .reduced())")
    return abs(j.h22) <= tol, abs(j.h33) <= tol


def is_totally_umbilical(j: HypersurfaceJet, tol: float = 0.0) -> bool:
    return invariant_second_form(j).is_zero(tol)


@dataclass
class UmbilicalReport:
    omega_1_0: tuple
    dH_along_A0: tuple
    dH_along_A2: tuple
    dH_along_A3: tuple
    violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations


def _require_umbilical(j, tol):
    if not is_totally_umbilical(j, tol):
        raise PreconditionError("hypersurface point is not totally umbilical")


def umbilical_consequences(j: HypersurfaceJet, W: WeylTensor,
                           tol: float = DEFAULT_TOL) -> UmbilicalReport:
    """Check curvature and third-order data against total umbilicity.

    ``omega_1_0`` and the ``dH`` components are coefficient triples on
    ``(w1, w2, w3)`` computed from the Cartan-lemma expansion; for a
    consistent input they reduce to ``(0, -2 a1, -2 b1)`` and zeros.
    """
    _require_umbilical(j, tol)
    a0, a1 = W.a[0], W.a[1]
    b0, b1 = W.b[0], W.b[1]
    h222, h223, h233, h333 = j.third_order()
    h22, h33 = j.l22, j.l33
    omega = (h22 * h33, -(h223 + 2 * a1), -(h233 + 2 * b1))
    expected = (0, -2 * a1, -2 * b1)
    violations = []
    if abs(a0) > tol:
        violations.append("a0 = 0 (alpha-distribution must be principal)")
    if abs(b0) > tol:
        violations.append("b0 = 0 (beta-distribution must be principal)")
    for name, v in zip(("h222", "h223", "h233", "h333"), (h222, h223, h233, h333)):
        if abs(v) > tol:
            violations.append(f"{name} = 0")
    if any(abs(x - y) > tol for x, y in zip(omega, expected)):
        violations.append("w1^0 = -2(a1 w2 + b1 w3)")
    along_a2 = (0, 0, h33)   # w1^2 = h33 w3
    along_a3 = (0, h22, 0)   # w1^3 = h22 w2
    if any(abs(x) > tol for x in along_a2 + along_a3):
        violations.append("dH has no A2, A3 components")
    return UmbilicalReport(omega, omega, along_a2, along_a3, violations)


def cone_detection(j: HypersurfaceJet, W: WeylTensor, tol: float = DEFAULT_TOL,
                   tol_mult: float | None = None) -> bool:
    """Whether the umbilical hypersurface is an isotropic cone with vertex H.

    When it is, both parameters at infinity are certified as multiple roots
    of the principal quartics.
    """
    report = umbilical_consequences(j, W, tol)
    if not report.clean:
        raise PreconditionError("inconsistent umbilical data: " + "; ".join(report.violations))
    a1, b1 = W.a[1], W.b[1]
    is_cone = abs(a1) <= tol and abs(b1) <= tol
    if is_cone:
        for q in (alpha_quartic(W), beta_quartic(W)):
            m = _infinity_multiplicity(q, tol, tol_mult)
            assert m >= 2, f"infinity should be a multiple root, got multiplicity {m}"
    return is_cone


def _infinity_multiplicity(q: BinaryQuartic, tol, tol_mult) -> int:
    if q.is_zero(tol):
        return 4
    kw = {} if tol_mult is None else {"tol_mult": tol_mult}
    return projective_roots(q, **kw).infinity_multiplicity


__all__ = [
    "FundForm", "HypersurfaceJet", "SingularPair", "UmbilicalReport",
    "FrameError", "PreconditionError", "first_form", "pencil_form",
    "invariant_second_form", "singular_points", "harmonic_pole",
    "harmonic_cross_ratio", "cross_ratio", "classify_second_form",
    "second_form_rank", "degeneracy", "integrability", "is_totally_umbilical",
    "umbilical_consequences", "cone_detection",
]
