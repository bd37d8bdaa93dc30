"""Conformal (Weyl) curvature of a CO(2,2) structure in an isotropic frame.

The curvature tensor ``C_ijkl`` has ten independent components, split into
the self-dual block ``a = (a0..a4)`` and the anti-self-dual block
``b = (b0..b4)``.  :func:`reconstruct_full` expands the ten numbers to all
256 entries and :func:`extract` goes back; :func:`validate_full` checks an
arbitrary 4x4x4x4 array against every algebraic identity a Weyl tensor of
this signature must satisfy.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import DEFAULT_TOL, Bivector, Metric22, alpha_bivector, beta_bivector

_IDX = range(4)

# (i, j, k, l) 1-based -> component name or linear rule, filled in
# closure order: independent components, derived entries, zeros.
_INDEPENDENT = {
    (1, 2, 1, 2): ("a", 0), (1, 2, 1, 4): ("a", 1), (1, 2, 3, 4): ("a", 2),
    (1, 4, 3, 4): ("a", 3), (3, 4, 3, 4): ("a", 4),
    (1, 3, 1, 3): ("b", 0), (1, 3, 1, 4): ("b", 1), (1, 3, 2, 4): ("b", 2),
    (1, 4, 2, 4): ("b", 3), (2, 4, 2, 4): ("b", 4),
}
_ZEROS = ((1, 2, 2, 4), (1, 3, 3, 4), (1, 2, 1, 3), (2, 4, 3, 4))


def _derived(a, b):
    return {
        (1, 3, 2, 3): b[1],
        (2, 3, 2, 4): b[3],
        (1, 2, 2, 3): -a[1],
        (2, 3, 3, 4): -a[3],
        (1, 4, 2, 3): b[2] - a[2],
        (1, 4, 1, 4): a[2] + b[2],
        (2, 3, 2, 3): a[2] + b[2],
    }


class InvalidWeylError(ValueError):
    """An array that is not a Weyl tensor of the isotropic frame."""

    def __init__(self, violations):
        self.violations = list(violations)
        shown = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"not a valid Weyl tensor: {shown}{more}")


def _uses_fractions(values) -> bool:
    return any(isinstance(x, Fraction) for x in values)


@dataclass(frozen=True)
class WeylTensor:
    """The ten independent components ``a0..a4``, ``b0..b4``."""

    a: tuple = (0, 0, 0, 0, 0)
    b: tuple = (0, 0, 0, 0, 0)

    def __post_init__(self):
        if len(self.a) != 5 or len(self.b) != 5:
            raise ValueError("a and b must each have 5 components")
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))

    @classmethod
    def zero(cls):
        return cls()

    @property
    def components(self) -> tuple:
        return self.a + self.b

    def scale(self):
        return max((abs(x) for x in self.components), default=0)

    def with_a(self, a: Sequence) -> "WeylTensor":
        return WeylTensor(tuple(a), self.b)

    def with_b(self, b: Sequence) -> "WeylTensor":
        return WeylTensor(self.a, tuple(b))


@dataclass(frozen=True)
class FullWeyl:
    """All 256 entries ``C_ijkl`` with lowered indices (0-based storage)."""

    c: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.c)
        if arr.shape != (4, 4, 4, 4):
            raise ValueError(f"expected shape (4, 4, 4, 4), got {arr.shape}")
        object.__setattr__(self, "c", arr)

    def __getitem__(self, idx):
        """1-based component access: ``F[1, 2, 1, 2]``."""
        i, j, k, l = idx
        return self.c[i - 1, j - 1, k - 1, l - 1]

    @classmethod
    def zeros(cls, exact=False):
        return cls(np.zeros((4, 4, 4, 4), dtype=object if exact else float))

    @classmethod
    def from_entries(cls, entries: dict, exact=False) -> "FullWeyl":
        """Build from ``{(i, j, k, l): value}`` (1-based) closed under the
        pair antisymmetries and the pair exchange."""
        c = np.zeros((4, 4, 4, 4), dtype=object if exact else float)
        for (i, j, k, l), v in entries.items():
            _set_with_symmetries(c, i - 1, j - 1, k - 1, l - 1, v)
        return cls(c)

    def to_nested(self) -> list:
        return self.c.tolist()


def _set_with_symmetries(c, i, j, k, l, v):
    for p, q, s1 in ((i, j, 1), (j, i, -1)):
        for r, t, s2 in ((k, l, 1), (l, k, -1)):
            c[p, q, r, t] = s1 * s2 * v
            c[r, t, p, q] = s1 * s2 * v


def _label(i, j, k, l):
    return f"C{i + 1}{j + 1}{k + 1}{l + 1}"


def _constraint_table():
    """The eleven linear conditions cutting 21 essential entries down to 10."""
    C = lambda s: tuple(int(ch) for ch in s)  # noqa: E731
    return [
        ("C1234 - C1324 + C1423 = 0", [(1, C("1234")), (-1, C("1324")), (1, C("1423"))]),
        ("C1224 = 0", [(1, C("1224"))]),
        ("C1334 = 0", [(1, C("1334"))]),
        ("C1213 = 0", [(1, C("1213"))]),
        ("C2434 = 0", [(1, C("2434"))]),
        ("C1314 - C1323 = 0", [(1, C("1314")), (-1, C("1323"))]),
        ("C1424 - C2324 = 0", [(1, C("1424")), (-1, C("2324"))]),
        ("C1214 + C1223 = 0", [(1, C("1214")), (1, C("1223"))]),
        ("C1434 + C2334 = 0", [(1, C("1434")), (1, C("2334"))]),
        ("C1414 = C1234 + C1324",
         [(1, C("1414")), (-1, C("1234")), (-1, C("1324"))]),
        ("C2323 = C1234 + C1324",
         [(1, C("2323")), (-1, C("1234")), (-1, C("1324"))]),
    ]


FRAME_CONSTRAINTS = _constraint_table()


def validate_full(F: FullWeyl, tol: float = DEFAULT_TOL) -> list[str]:
    """Names of every violated identity; empty for a genuine Weyl tensor."""
    c = F.c if isinstance(F, FullWeyl) else np.asarray(F)
    out: list[str] = []
    seen = set()

    def bad(x):
        return abs(x) > tol

    for i, j, k, l in itertools.product(_IDX, repeat=4):
        v = c[i, j, k, l]
        if bad(v + c[j, i, k, l]):
            key = ("anti12",) + tuple(sorted((i, j))) + (k, l)
            if key not in seen:
                seen.add(key)
                out.append(f"antisymmetry C_ijkl = -C_jikl at {_label(i, j, k, l)}")
        if bad(v + c[i, j, l, k]):
            key = ("anti34", i, j) + tuple(sorted((k, l)))
            if key not in seen:
                seen.add(key)
                out.append(f"antisymmetry C_ijkl = -C_ijlk at {_label(i, j, k, l)}")
        if bad(v - c[k, l, i, j]):
            key = ("pair",) + tuple(sorted(((i, j), (k, l))))
            if key not in seen:
                seen.add(key)
                out.append(f"pair symmetry C_ijkl = C_klij at {_label(i, j, k, l)}")
        if bad(v + c[i, k, l, j] + c[i, l, j, k]):
            key = ("bianchi", i) + tuple(sorted((j, k, l)))
            if key not in seen:
                seen.add(key)
                out.append(f"first Bianchi identity at {_label(i, j, k, l)}")

    g_inv = Metric22.g_inv
    for j, k in itertools.product(_IDX, repeat=2):
        tr = 0
        for i, m in itertools.product(_IDX, repeat=2):
            if g_inv[i, m]:
                tr = tr + int(g_inv[i, m]) * c[m, j, k, i]
        if bad(tr):
            out.append(f"trace-free C^i_jki = 0 at (j, k) = ({j + 1}, {k + 1})")

    for label, terms in FRAME_CONSTRAINTS:
        val = sum(s * c[i - 1, j - 1, k - 1, l - 1] for s, (i, j, k, l) in terms)
        if bad(val):
            out.append(label)
    return out


def reconstruct_full(W: WeylTensor) -> FullWeyl:
    """Expand the ten components to the full tensor."""
    exact = _uses_fractions(W.components)
    c = np.zeros((4, 4, 4, 4), dtype=object if exact else float)
    if exact:
        c[...] = 0
    filled = {}

    def put(idx, v):
        if idx in filled:
            assert filled[idx] == v, f"closure conflict at {idx}"
        filled[idx] = v

    for idx in _ZEROS:
        put(idx, 0)
    for idx, v in _derived(W.a, W.b).items():
        put(idx, v)
    for idx, (block, u) in _INDEPENDENT.items():
        put(idx, (W.a if block == "a" else W.b)[u])
    for (i, j, k, l), v in filled.items():
        _set_with_symmetries(c, i - 1, j - 1, k - 1, l - 1, v)
    return FullWeyl(c)


def extract(F: FullWeyl, tol: float = DEFAULT_TOL) -> WeylTensor:
    violations = validate_full(F, tol)
    if violations:
        raise InvalidWeylError(violations)
    a = tuple(F[idx] for idx, (blk, _) in _INDEPENDENT.items() if blk == "a")
    b = tuple(F[idx] for idx, (blk, _) in _INDEPENDENT.items() if blk == "b")
    return WeylTensor(a, b)


def relative_curvature(W: WeylTensor, p: Bivector) -> object:
    """Double contraction ``C_ijkl p^ij p^kl`` over all ordered index pairs."""
    C = reconstruct_full(W).c.reshape(16, 16)
    v = p.as_matrix().reshape(16)
    if C.dtype != object:
        v = v.astype(float)
    return v @ C @ v


def alpha_quartic(W: WeylTensor):
    from .principal import BinaryQuartic

    a0, a1, a2, a3, a4 = W.a
    return BinaryQuartic((a0, -4 * a1, 6 * a2, -4 * a3, a4))


def beta_quartic(W: WeylTensor):
    from .principal import BinaryQuartic

    b0, b1, b2, b3, b4 = W.b
    return BinaryQuartic((b0, -4 * b1, 6 * b2, -4 * b3, b4))


def alpha_curvature(W: WeylTensor, lam) -> object:
    return relative_curvature(W, alpha_bivector(lam))


def beta_curvature(W: WeylTensor, mu) -> object:
    return relative_curvature(W, beta_bivector(mu))


FLAT = "flat"
SEMIFLAT_ALPHA_ZERO = "semiflat_alpha_zero"
SEMIFLAT_BETA_ZERO = "semiflat_beta_zero"
GENERIC = "generic"


def classify_structure(W: WeylTensor, tol: float = DEFAULT_TOL) -> str:
    a_zero = all(abs(x) <= tol for x in W.a)
    b_zero = all(abs(x) <= tol for x in W.b)
    if a_zero and b_zero:
        return FLAT
    if a_zero:
        return SEMIFLAT_ALPHA_ZERO
    if b_zero:
        return SEMIFLAT_BETA_ZERO
    return GENERIC


# Coefficient order on w^i ^ w^j, i < j.
WEDGE_BASIS = ("w1^w2", "w1^w3", "w1^w4", "w2^w3", "w2^w4", "w3^w4")
CURVATURE_FORM_NAMES = (
    "Omega1^3", "Omega1^1+Omega2^2", "Omega3^1",
    "Omega1^2", "Omega1^1-Omega2^2", "Omega2^1",
)


def curvature_forms(W: WeylTensor) -> dict[str, tuple]:
    """Curvature 2-forms of the alpha and beta twistor bundles.

    Each value is the 6-tuple of coefficients on :data:`WEDGE_BASIS`.
    The b1 term of ``Omega1^1-Omega2^2`` sits on ``w1^w3``, as forced by
    contracting the tensor (see :func:`curvature_forms_from_tensor`).
    """
    a0, a1, a2, a3, a4 = W.a
    b0, b1, b2, b3, b4 = W.b
    return {
        "Omega1^3": (-2 * a0, 0, -2 * a1, 2 * a1, 0, -2 * a2),
        "Omega1^1+Omega2^2": (4 * a1, 0, 4 * a2, -4 * a2, 0, 4 * a3),
        "Omega3^1": (2 * a2, 0, 2 * a3, -2 * a3, 0, 2 * a4),
        "Omega1^2": (0, -2 * b0, -2 * b1, -2 * b1, -2 * b2, 0),
        "Omega1^1-Omega2^2": (0, 4 * b1, 4 * b2, 4 * b2, 4 * b3, 0),
        "Omega2^1": (0, 2 * b2, 2 * b3, 2 * b3, 2 * b4, 0),
    }


def _curvature_form(C, up, down):
    """Coefficients of ``Omega^up_down = C^up_{down k l} w^k ^ w^l``."""
    g_inv = Metric22.g_inv
    out = []
    for k, l in Bivector.PAIRS:
        s = 0
        for m in _IDX:
            if g_inv[up - 1, m]:
                s = s + int(g_inv[up - 1, m]) * C[m, down - 1, k - 1, l - 1]
        out.append(2 * s)
    return tuple(out)


def curvature_forms_from_tensor(W: WeylTensor) -> dict[str, tuple]:
    """Same forms as :func:`curvature_forms`, computed by raising an index
    of the reconstructed tensor instead of from the closed formulas."""
    C = reconstruct_full(W).c
    f = lambda up, down: _curvature_form(C, up, down)  # noqa: E731
    add = lambda x, y, s=1: tuple(p + s * q for p, q in zip(x, y))  # noqa: E731
    return {
        "Omega1^3": f(3, 1),
        "Omega1^1+Omega2^2": add(f(1, 1), f(2, 2)),
        "Omega3^1": f(1, 3),
        "Omega1^2": f(2, 1),
        "Omega1^1-Omega2^2": add(f(1, 1), f(2, 2), -1),
        "Omega2^1": f(1, 2),
    }
