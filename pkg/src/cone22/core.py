"""Isotropic-frame algebra for a CO(2,2) structure.

Vectors are plain 4-tuples ``(x1, x2, x3, x4)`` of ints, floats or
:class:`fractions.Fraction`; every function here is generic over the scalar
type, so feeding rationals gives exact answers and feeding floats gives the
float answer.  Indices in docstrings are 1-based, storage is 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Sequence, Union

import numpy as np

DEFAULT_TOL = 1e-10

Scalar = Union[int, float, Fraction]
Vector4 = tuple


class ProjectiveInfinity:
    """The point at infinity of a real projective line.

    There is exactly one instance, :data:`INF`.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (ProjectiveInfinity, ())


INF = ProjectiveInfinity()

ProjectiveParam = Union[Scalar, ProjectiveInfinity]


def is_infinite(x) -> bool:
    return x is INF


def is_zero(x, tol=0.0) -> bool:
    return abs(x) <= tol


def basis(i: int) -> Vector4:
    """Frame vector ``e_i`` for 1-based ``i``."""
    if not 1 <= i <= 4:
        raise ValueError(f"basis index must be in 1..4, got {i}")
    return tuple(1 if k == i - 1 else 0 for k in range(4))


E1, E2, E3, E4 = (basis(i) for i in range(1, 5))


class Metric22:
    """Coefficients of the fundamental form ``2(x2 x3 - x1 x4)``.

    The matrix is its own inverse.
    """

    g = np.array(
        [[0, 0, 0, -1],
         [0, 0, 1, 0],
         [0, 1, 0, 0],
         [-1, 0, 0, 0]],
        dtype=int,
    )
    g_inv = g.copy()

    @classmethod
    def entry(cls, i: int, j: int) -> int:
        return int(cls.g[i - 1, j - 1])

    @classmethod
    def inverse_entry(cls, i: int, j: int) -> int:
        return int(cls.g_inv[i - 1, j - 1])


def _check4(v):
    if len(v) != 4:
        raise ValueError(f"expected 4 components, got {len(v)}")


def quadratic_form(v: Sequence) -> Scalar:
    _check4(v)
    return 2 * (v[1] * v[2] - v[0] * v[3])


def scalar_product(v: Sequence, w: Sequence) -> Scalar:
    _check4(v)
    _check4(w)
    return v[1] * w[2] + v[2] * w[1] - v[0] * w[3] - v[3] * w[0]


def is_isotropic(v: Sequence, tol: float = DEFAULT_TOL) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return abs(quadratic_form(v)) <= tol


def _combine(a, u, b, w):
    return tuple(a * x + b * y for x, y in zip(u, w))


def alpha_generator(lam: ProjectiveParam) -> tuple[Vector4, Vector4]:
    """Spanning pair of the alpha-plane ``x1 + lam x3 = x2 + lam x4 = 0``.

    ``lam = INF`` gives the plane ``x3 = x4 = 0``.
    """
    if lam is INF:
        return E1, E2
    return _combine(1, E3, -lam, E1), _combine(1, E4, -lam, E2)


def beta_generator(mu: ProjectiveParam) -> tuple[Vector4, Vector4]:
    """Spanning pair of the beta-plane ``x1 + mu x2 = x3 + mu x4 = 0``."""
    if mu is INF:
        return E1, E3
    return _combine(1, E2, -mu, E1), _combine(1, E4, -mu, E3)


def _require_finite(*params):
    for p in params:
        if p is INF:
            raise ValueError(
                "parameter at infinity: specialize the frame instead "
                "(the isotropic 3-space is then x4 = 0)"
            )
        if not isinstance(p, Number):
            raise TypeError(f"expected a number, got {type(p).__name__}")


def intersection_point_B(lam: Scalar, mu: Scalar) -> Vector4:
    """Direction of the common isotropic line of the alpha(lam) and beta(mu) planes."""
    _require_finite(lam, mu)
    return (lam * mu, -lam, -mu, 1)


def tangent_3space_normal(lam: Scalar, mu: Scalar) -> Vector4:
    """Covector of the isotropic 3-space tangent to the cone along ``B(lam, mu)``."""
    _require_finite(lam, mu)
    return (1, mu, lam, lam * mu)


def pair(covector: Sequence, v: Sequence) -> Scalar:
    return sum(c * x for c, x in zip(covector, v))


_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class Bivector:
    """A 2-vector stored as ``(p12, p13, p14, p23, p24, p34)``."""

    p: tuple

    PAIRS = _PAIRS

    def __post_init__(self):
        if len(self.p) != 6:
            raise ValueError(f"bivector needs 6 components, got {len(self.p)}")
        object.__setattr__(self, "p", tuple(self.p))

    def __call__(self, i: int, j: int) -> Scalar:
        if i == j:
            return 0
        if i < j:
            return self.p[_PAIRS.index((i, j))]
        return -self.p[_PAIRS.index((j, i))]

    def as_matrix(self) -> np.ndarray:
        """Full antisymmetric 4x4 array (object dtype, keeps exact scalars)."""
        m = np.zeros((4, 4), dtype=object)
        for (i, j), x in zip(_PAIRS, self.p):
            m[i - 1, j - 1] = x
            m[j - 1, i - 1] = -x
        return m

    def __neg__(self):
        return Bivector(tuple(-x for x in self.p))

    def __iter__(self):
        return iter(self.p)


def bivector_from_vectors(v: Sequence, w: Sequence) -> Bivector:
    """``p(i, j) = v^i w^j - v^j w^i`` (no 1/2 factor)."""
    _check4(v)
    _check4(w)
    return Bivector(tuple(v[i - 1] * w[j - 1] - v[j - 1] * w[i - 1] for i, j in _PAIRS))


def alpha_bivector(lam: ProjectiveParam) -> Bivector:
    return bivector_from_vectors(*alpha_generator(lam))


def beta_bivector(mu: ProjectiveParam) -> Bivector:
    return bivector_from_vectors(*beta_generator(mu))


@dataclass(frozen=True)
class FramePoint:
    """A point of the projective model, in the frame ``A0, A1, ..., A5``.

    ``index`` names the frame vertex the point is anchored to (5 is the
    point at infinity ``A_{n+1}``); ``coords`` are its six homogeneous
    coordinates.
    """

    index: int
    coords: tuple

    def __post_init__(self):
        if self.index not in range(6):
            raise ValueError("frame index must be in 0..5")
        if len(self.coords) != 6:
            raise ValueError("projective model points need 6 coordinates")


def frame_scalar_product(x: Sequence, y: Sequence) -> Scalar:
    """Scalar product of points of P^5: ``g_ij x^i y^j - x^0 y^5 - x^5 y^0``."""
    inner = scalar_product(x[1:5], y[1:5])
    return inner - x[0] * y[5] - x[5] * y[0]


def vertex(index: int) -> FramePoint:
    return FramePoint(index, tuple(1 if k == index else 0 for k in range(6)))


def line_point(s: ProjectiveParam) -> FramePoint:
    """The point ``A1 - s A0`` of the isotropic geodesic; ``s = INF`` is ``A0``."""
    if s is INF:
        return vertex(0)
    return FramePoint(1, (-s, 1, 0, 0, 0, 0))
