"""Principal isotropic directions: roots of binary quartics with multiplicity.

A :class:`BinaryQuartic` ``(c4, c3, c2, c1, c0)`` is the homogeneous form
``c4 l1^4 + c3 l1^3 l0 + ... + c0 l0^4`` in the projective parameter
``lam = l1 / l0``.  The point ``lam = INF`` is a root of multiplicity ``k``
exactly when the top ``k`` coefficients vanish.

Two root finders share one result type:

* exact (``Fraction``/``int`` coefficients): square-free decomposition over
  Q gives certified multiplicities, Sturm sequences give the number of real
  roots of each factor;
* float: companion-matrix eigenvalues, grouped into clusters; a cluster of
  size ``m`` is accepted as an ``m``-fold root when the first ``m`` Taylor
  coefficients at its centroid vanish to ``tol_mult`` relative to the
  coefficient scale.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import _poly
from .core import INF

DEFAULT_TOL_MULT = 1e-7


class NotARootError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryQuartic:
    """Coefficients ``(c4, c3, c2, c1, c0)`` in descending powers of lam."""

    c: tuple

    def __post_init__(self):
        if len(self.c) != 5:
            raise ValueError(f"a binary quartic has 5 coefficients, got {len(self.c)}")
        object.__setattr__(self, "c", tuple(self.c))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in self.c)

    def is_zero(self, tol=0.0) -> bool:
        return all(abs(x) <= tol for x in self.c)

    def scale(self):
        return max(abs(x) for x in self.c)

    def __call__(self, lam):
        """Affine value at ``lam``; at ``INF`` the leading coefficient."""
        if lam is INF:
            return self.c[0]
        return _poly.evaluate(self.c, lam)

    def homogeneous(self, l1, l0):
        return sum(ck * l1 ** (4 - k) * l0 ** k for k, ck in enumerate(self.c))

    def as_fractions(self) -> "BinaryQuartic":
        return BinaryQuartic(tuple(Fraction(x) for x in self.c))

    def as_floats(self) -> "BinaryQuartic":
        return BinaryQuartic(tuple(float(x) for x in self.c))

    @classmethod
    def from_roots(cls, roots: Sequence[tuple], lead=1) -> "BinaryQuartic":
        """Quartic with the given ``(root, multiplicity)`` pairs; ``INF``
        roots lower the affine degree.  Multiplicities must sum to 4."""
        if sum(m for _, m in roots) != 4:
            raise ValueError("multiplicities must sum to 4")
        poly = [lead]
        n_inf = 0
        for r, m in roots:
            if r is INF:
                n_inf += m
                continue
            for _ in range(m):
                poly = _mul(poly, [1, -r])
        return cls(tuple([0] * n_inf + poly))


def _mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


@dataclass(frozen=True)
class RootSet:
    """Projective roots of a binary quartic.

    ``roots`` lists real roots (numbers, or ``INF``) with multiplicities;
    ``complex_pairs`` lists one representative (positive imaginary part) of
    each conjugate pair with its multiplicity.  ``all_principal`` marks the
    identically-zero quartic, for which every direction is a root.
    """

    roots: tuple = ()
    complex_pairs: tuple = ()
    all_principal: bool = False
    exact: bool = False

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots) + 2 * sum(m for _, m in self.complex_pairs)

    def multiplicity_pattern(self) -> tuple:
        """Sorted multiset of multiplicities over all complex-projective roots."""
        ms = [m for _, m in self.roots]
        for _, m in self.complex_pairs:
            ms += [m, m]
        return tuple(sorted(ms, reverse=True))

    def multiplicity(self, root, tol: float = 1e-9) -> int:
        """Multiplicity of a real projective root, 0 if it is not a root."""
        if self.all_principal:
            return 4
        for r, m in self.roots:
            if _same_point(r, root, tol):
                return m
        return 0

    def real_roots(self) -> list:
        return [r for r, _ in self.roots]

    @property
    def infinity_multiplicity(self) -> int:
        return self.multiplicity(INF)


def _same_point(r, s, tol):
    if r is INF or s is INF:
        return r is s
    return abs(r - s) <= tol * max(1.0, abs(r), abs(s))


def projective_roots(q: BinaryQuartic, tol_mult: float = DEFAULT_TOL_MULT,
                     exact: bool | None = None) -> RootSet:
    if exact is None:
        exact = q.is_exact
    if exact:
        return _roots_exact(q.as_fractions())
    return _roots_float(q.as_floats(), tol_mult)


def _roots_exact(q: BinaryQuartic) -> RootSet:
    if q.is_zero():
        return RootSet(all_principal=True, exact=True)
    c = list(q.c)
    n_inf = 0
    while c[0] == 0:
        c.pop(0)
        n_inf += 1
    roots = [(INF, n_inf)] if n_inf else []
    pairs = []
    if len(c) > 1:
        for m, f in sorted(_poly.squarefree_decomposition(c).items()):
            real, cplx = _split_squarefree(f)
            roots += [(r, m) for r in real]
            pairs += [(z, m) for z in cplx]
    finite = sorted((r for r in roots if r[0] is not INF), key=lambda t: float(t[0]))
    roots = [r for r in roots if r[0] is INF] + finite
    pairs.sort(key=lambda t: (t[0].real, t[0].imag))
    return RootSet(tuple(roots), tuple(pairs), exact=True)


def _split_squarefree(f):
    """Real and upper-half-plane roots of a square-free monic factor."""
    deg = _poly.degree(f)
    if deg == 1:
        return [-f[1] / f[0]], []
    n_real = _poly.count_real_roots(f)
    z = np.roots([float(x) for x in f])
    z = sorted(z, key=lambda w: abs(w.imag))
    real = []
    for w in z[:n_real]:
        x = _polish(f, float(w.real))
        guess = Fraction(x).limit_denominator(10**6)
        real.append(guess if _poly.evaluate(f, guess) == 0 else x)
    real.sort(key=float)
    cplx = [complex(w.real, abs(w.imag)) for w in z[n_real:] if w.imag > 0]
    if len(cplx) * 2 != deg - n_real:
        # eigenvalue solver lost conjugate symmetry; rebuild from |imag|
        rest = z[n_real:]
        cplx = [complex(w.real, abs(w.imag)) for w in rest[::2]]
    return real, cplx


def _polish(f, x, steps=3):
    ff = [float(c) for c in f]
    df = [float(c) for c in _poly.derivative(f)]
    for _ in range(steps):
        d = _poly.evaluate(df, x)
        if d == 0:
            break
        x = x - _poly.evaluate(ff, x) / d
    return x


def _companion_eigenvalues(p):
    p = np.asarray(p, dtype=float)
    n = len(p) - 1
    if n < 1:
        return np.array([], dtype=complex)
    comp = np.zeros((n, n))
    comp[0, :] = -p[1:] / p[0]
    comp[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(comp)


def _taylor_residuals(p, c, m):
    """Normalized ``|p^(j)(c) / j!|`` for ``j < m``."""
    n = len(p) - 1
    out = []
    for j in range(m):
        val = 0j
        bound = 0.0
        for k, coef in enumerate(p):
            power = n - k
            if power < j:
                continue
            term = coef * comb(power, j)
            val += term * c ** (power - j)
            bound += abs(term) * abs(c) ** (power - j)
        out.append(abs(val) / bound if bound else 0.0)
    return out


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _cluster(p, eig, tol):
    best = None
    for part in _set_partitions(list(range(len(eig)))):
        blocks = []
        worst = 0.0
        ok = True
        for block in part:
            c = complex(np.mean([eig[i] for i in block]))
            m = len(block)
            if m > 1:
                # an m-fold root splits by about tol**(1/m); farther points
                # can only be distinct roots straddling some other root
                radius = 10 * tol ** (1 / m) * max(1.0, abs(c))
                if max(abs(eig[i] - c) for i in block) > radius:
                    ok = False
                    break
                res = max(_taylor_residuals(p, c, m))
                if res > tol:
                    ok = False
                    break
                worst = max(worst, res)
            blocks.append((c, m))
        if not ok:
            continue
        key = (len(blocks), worst)
        if best is None or key < best[0]:
            best = (key, blocks)
    return best[1]


def _classify_blocks(blocks, tol):
    real, upper, lower = [], [], []
    for z, m in blocks:
        if abs(z.imag) <= tol * max(1.0, abs(z)):
            real.append((float(z.real), m))
        elif z.imag > 0:
            upper.append((z, m))
        else:
            lower.append((z.conjugate(), m))
    if sorted(m for _, m in upper) != sorted(m for _, m in lower):
        return None, None
    return real, upper


def _roots_float(q: BinaryQuartic, tol: float) -> RootSet:
    scale = q.scale()
    if scale == 0:
        return RootSet(all_principal=True)
    c = [x / scale for x in q.c]
    n_inf = 0
    while abs(c[0]) <= tol:
        c.pop(0)
        n_inf += 1
    roots = [(INF, n_inf)] if n_inf else []
    eig = list(_companion_eigenvalues(c))
    real, upper = _classify_blocks(_cluster(c, eig, tol), tol)
    if real is None:
        # conjugate blocks failed to pair up: report every eigenvalue as simple
        real, upper = _classify_blocks([(z, 1) for z in eig], tol)
    real.sort()
    upper.sort(key=lambda t: (t[0].real, t[0].imag))
    return RootSet(tuple(roots + real), tuple(upper))


def is_integrable_principal(r: RootSet, root, tol: float = 1e-9) -> bool:
    """A principal distribution is integrable iff its root is multiple."""
    m = r.multiplicity(root, tol)
    if m == 0:
        raise NotARootError(f"{root!r} is not a root")
    return m >= 2


def _binform_pow_mul(forms):
    out = [1]
    for f in forms:
        out = _mul(out, f)
    return out


def mobius_transform(q: BinaryQuartic, m) -> BinaryQuartic:
    """Pull back along ``(l1, l0) -> m @ (l1, l0)``.

    Roots move by the inverse map: if ``q`` vanishes at ``r`` then the
    result vanishes at ``m^{-1} r``, with the same multiplicity.
    """
    (p, r), (s, t) = m[0], m[1]
    det = p * t - r * s
    if det == 0:
        raise ValueError("singular Mobius matrix")
    X = [p, r]  # p l1 + r l0
    Y = [s, t]
    out = [0] * 5
    for k, ck in enumerate(q.c):
        if ck == 0:
            continue
        term = _binform_pow_mul([X] * (4 - k) + [Y] * k)
        for i, v in enumerate(term):
            out[i] = out[i] + ck * v
    return BinaryQuartic(tuple(out))


def mobius_apply(m, x):
    """Image of a projective point under ``lam -> (p lam + r) / (s lam + t)``."""
    (p, r), (s, t) = m[0], m[1]
    if x is INF:
        num, den = p, s
    else:
        num, den = p * x + r, s * x + t
    if den == 0:
        return INF
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


def mobius_inverse(m):
    (p, r), (s, t) = m[0], m[1]
    return ((t, -r), (-s, p))


def infinity_sending_matrix(rho):
    """A matrix whose transform moves the root ``rho`` to ``INF``."""
    if rho is INF:
        return ((1, 0), (0, 1))
    return ((rho, 1), (1, 0))


def send_root_to_infinity(q: BinaryQuartic, rho) -> BinaryQuartic:
    return mobius_transform(q, infinity_sending_matrix(rho))


def discriminant(q: BinaryQuartic):
    """Discriminant of the binary quartic; zero iff some projective root
    (``INF`` included) is multiple."""
    if q.is_zero():
        raise ValueError("discriminant of the zero quartic is undefined")
    a, b, c, d, e = q.c
    return (
        256 * a**3 * e**3 - 192 * a**2 * b * d * e**2 - 128 * a**2 * c**2 * e**2
        + 144 * a**2 * c * d**2 * e - 27 * a**2 * d**4 + 144 * a * b**2 * c * e**2
        - 6 * a * b**2 * d**2 * e - 80 * a * b * c**2 * d * e + 18 * a * b * c * d**3
        + 16 * a * c**4 * e - 4 * a * c**3 * d**2 - 27 * b**4 * e**2
        + 18 * b**3 * c * d * e - 4 * b**3 * d**3 - 4 * b**2 * c**3 * e
        + b**2 * c**2 * d**2
    )


def root_check_values(q: BinaryQuartic, r: RootSet) -> list:
    """``q`` evaluated at each real root, for residual checks."""
    return [q(x) for x in r.real_roots()]


__all__ = [
    "BinaryQuartic", "RootSet", "NotARootError", "DEFAULT_TOL_MULT",
    "projective_roots", "is_integrable_principal", "mobius_transform",
    "mobius_apply", "mobius_inverse", "infinity_sending_matrix",
    "send_root_to_infinity", "discriminant",
]
