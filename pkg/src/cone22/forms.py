"""Pointwise exterior algebra over named 1-form symbols.

Only the algebraic side of the moving-frame computations lives here: wedge
products, substitution of Cartan-lemma solutions into exterior quadratic
equations, and the residual 2-forms that certify them.  There is no
exterior derivative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


def _clean(d):
    return {k: v for k, v in d.items() if v != 0}


@dataclass(frozen=True)
class OneForm:
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(dict(self.coeffs)))

    @classmethod
    def symbol(cls, name: str, coeff=1) -> "OneForm":
        return cls({name: coeff})

    def __getitem__(self, name):
        return self.coeffs.get(name, 0)

    def __add__(self, other: "OneForm") -> "OneForm":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return OneForm(out)

    def __neg__(self):
        return OneForm({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return OneForm({s: k * v for s, v in self.coeffs.items()})

    __rmul__ = __mul__

    def support(self) -> set:
        return set(self.coeffs)

    def is_zero(self, tol=0.0) -> bool:
        return all(abs(v) <= tol for v in self.coeffs.values())

    def __xor__(self, other):
        return wedge(self, other)


@dataclass(frozen=True)
class TwoForm:
    """Coefficients on ``a ^ b`` with ``a < b`` lexicographically."""

    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        norm = {}
        for (a, b), v in dict(self.coeffs).items():
            if a == b:
                continue
            key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            norm[key] = norm.get(key, 0) + sign * v
        object.__setattr__(self, "coeffs", _clean(norm))

    def coeff(self, a, b):
        if a == b:
            return 0
        if a < b:
            return self.coeffs.get((a, b), 0)
        return -self.coeffs.get((b, a), 0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TwoForm(out)

    def __neg__(self):
        return TwoForm({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return TwoForm({s: k * v for s, v in self.coeffs.items()})

    __rmul__ = __mul__

    def is_zero(self, tol=0.0) -> bool:
        return all(abs(v) <= tol for v in self.coeffs.values())


def wedge(f: OneForm, g: OneForm) -> TwoForm:
    out = {}
    for a, x in f.coeffs.items():
        for b, y in g.coeffs.items():
            if a == b:
                continue
            key, sign = ((a, b), 1) if a < b else ((b, a), -1)
            out[key] = out.get(key, 0) + sign * x * y
    return TwoForm(out)


def w(name: str, coeff=1) -> OneForm:
    return OneForm.symbol(name, coeff)


W1, W2, W3, W4 = (w(f"w{i}") for i in range(1, 5))


def total(forms: Iterable):
    forms = list(forms)
    acc = forms[0]
    for f in forms[1:]:
        acc = acc + f
    return acc


def check_cartan_substitution(l22, l23, l32, l33) -> TwoForm:
    """Residual of ``w2 ^ w1_3 + w3 ^ w1_2`` after ``w1_3 = l22 w2 + l23 w3``,
    ``w1_2 = l32 w2 + l33 w3``; it equals ``(l23 - l32) w2 ^ w3``."""
    w1_3 = l22 * W2 + l23 * W3
    w1_2 = l32 * W2 + l33 * W3
    return wedge(W2, w1_3) + wedge(W3, w1_2)


class CartanInconsistent(ValueError):
    """``sum w^a ^ theta_a = 0`` has no Cartan-lemma solution."""


def cartan_lemma_solve(equation: Sequence[tuple], tol=0.0) -> dict:
    """Solve ``sum_a w^a ^ theta_a = 0`` for ``theta_a = lam_ab w^b``.

    ``equation`` is a list of ``(basis symbol, theta)``; the basis symbols are
    taken to be independent.  Returns ``{(a, b): lam_ab}`` over all ordered
    pairs of basis symbols, symmetric by construction.  Raises
    :class:`CartanInconsistent` if some ``theta`` leaves the basis span or
    the coefficient matrix is not symmetric.
    """
    names = [a for a, _ in equation]
    if len(set(names)) != len(names):
        raise ValueError("basis symbols must be distinct")
    for a, theta in equation:
        if not isinstance(theta, OneForm):
            raise TypeError(f"theta for {a!r} is not a OneForm")
        extra = theta.support() - set(names)
        if extra:
            raise CartanInconsistent(
                f"theta_{a} involves {sorted(extra)} outside the basis"
            )
    lam = {(a, b): theta[b] for a, theta in equation for b in names}
    for a in names:
        for b in names:
            if abs(lam[a, b] - lam[b, a]) > tol:
                raise CartanInconsistent(
                    f"lam[{a},{b}] = {lam[a, b]} differs from lam[{b},{a}] = {lam[b, a]}"
                )
    return lam


def cartan_residual(equation: Sequence[tuple]) -> TwoForm:
    return total(wedge(w(a), theta) for a, theta in equation)


def resubstitute(names: Sequence[str], lam: Mapping) -> list:
    """``[(a, sum_b lam_ab w^b)]`` for the given basis."""
    return [(a, total(lam[a, b] * w(b) for b in names)) for a in names]


@dataclass(frozen=True)
class ThirdOrderForms:
    """``Dh22``, ``Dh33`` and ``w1_0`` expanded on the basis ``w1, w2, w3``."""

    dh22: OneForm
    dh33: OneForm
    omega_1_0: OneForm


def third_order_expansion(h22, h33, a1, b1, h3) -> ThirdOrderForms:
    """Cartan-lemma solution for the differentiated harmonic-frame relations."""
    h222, h223, h233, h333 = h3
    return ThirdOrderForms(
        dh22=h222 * W2 + h223 * W3,
        dh33=h233 * W2 + h333 * W3,
        omega_1_0=(h22 * h33) * W1 - (h223 + 2 * a1) * W2 - (h233 + 2 * b1) * W3,
    )


def harmonic_frame_residuals(h22, h33, a1, b1, forms: ThirdOrderForms) -> tuple:
    """Both exterior quadratic equations obtained by differentiating
    ``w1_3 = h22 w2``, ``w1_2 = h33 w3``, with the supplied forms substituted.
    Zero residuals certify ``forms`` as a solution."""
    bracket = -forms.omega_1_0 + (h22 * h33) * W1 - (2 * a1) * W2 - (2 * b1) * W3
    first = wedge(forms.dh22, W2) + wedge(bracket, W3)
    second = wedge(bracket, W2) + wedge(forms.dh33, W3)
    return first, second
