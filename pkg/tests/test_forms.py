from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cone22.forms import (
    CartanInconsistent, OneForm, TwoForm, W1, W2, W3, cartan_lemma_solve, cartan_residual,
    check_cartan_substitution, harmonic_frame_residuals, resubstitute, third_order_expansion,
    w, wedge,
)

q = st.fractions(min_value=-9, max_value=9, max_denominator=6)
NAMES = ("w1", "w2", "w3", "w4")


def vec(f):
    return np.array([float(f[n]) for n in NAMES])


def as_matrix(t):
    m = np.zeros((4, 4))
    for i, a in enumerate(NAMES):
        for j, b in enumerate(NAMES):
            m[i, j] = float(t.coeff(a, b))
    return m


def one_forms():
    return st.builds(lambda cs: OneForm(dict(zip(NAMES, cs))), st.lists(q, min_size=4, max_size=4))


def test_wedge_examples():
    assert wedge(W1, W1).is_zero()
    assert wedge(W1, W2).coeff("w1", "w2") == 1
    assert wedge(W2, W1).coeff("w1", "w2") == -1
    a, b = Fraction(2), Fraction(-3)
    assert wedge(a * W1 + b * W2, W2) == TwoForm({("w1", "w2"): a})


@given(one_forms(), one_forms())
def test_wedge_matches_antisymmetric_outer_product(f, g):
    u, v = vec(f), vec(g)
    assert np.allclose(as_matrix(wedge(f, g)), np.outer(u, v) - np.outer(v, u))


@given(one_forms(), one_forms(), one_forms(), q)
def test_wedge_bilinear(f, g, h, k):
    assert wedge(f, g) == -wedge(g, f)
    assert wedge(k * f + h, g) == k * wedge(f, g) + wedge(h, g)


def test_two_form_normalizes_order():
    t = TwoForm({("w3", "w2"): 5})
    assert t.coeffs == {("w2", "w3"): -5}


@pytest.mark.parametrize("l23, l32, coeff", [(5, 5, 0), (1, 0, 1), (0, 0, 0), (0, 2, -2)])
def test_cartan_substitution(l23, l32, coeff):
    res = check_cartan_substitution(3, l23, l32, 4)
    assert res.coeff("w2", "w3") == coeff
    assert res.coeff("w3", "w2") == -coeff
    assert len(res.coeffs) == (1 if coeff else 0)


def test_cartan_lemma_recovers_symmetry():
    eq = [("w2", 3 * W2 + 5 * W3), ("w3", 5 * W2 + 4 * W3)]
    lam = cartan_lemma_solve(eq)
    assert lam[("w2", "w3")] == lam[("w3", "w2")] == 5
    assert cartan_residual(eq).is_zero()
    with pytest.raises(CartanInconsistent):
        cartan_lemma_solve([("w2", 3 * W2 + 1 * W3), ("w3", 0 * W2 + 4 * W3)])


def test_cartan_lemma_single_term():
    assert cartan_lemma_solve([("w1", W1)]) == {("w1", "w1"): 1}


def test_cartan_lemma_rejects_bad_input():
    with pytest.raises(CartanInconsistent):
        cartan_lemma_solve([("w2", W2 + w("w9"))])
    with pytest.raises(ValueError):
        cartan_lemma_solve([("w2", W2), ("w2", W2)])
    with pytest.raises(TypeError):
        cartan_lemma_solve([("w2", 3)])


@given(st.lists(q, min_size=6, max_size=6))
def test_cartan_resubstitution_round_trip(c):
    names = ("w1", "w2", "w3")
    m = [[c[0], c[1], c[2]], [c[1], c[3], c[4]], [c[2], c[4], c[5]]]
    lam = {(a, b): m[i][j] for i, a in enumerate(names) for j, b in enumerate(names)}
    eq = resubstitute(names, lam)
    assert cartan_residual(eq).is_zero()
    assert cartan_lemma_solve(eq) == lam


@given(q, q, q, q, st.lists(q, min_size=4, max_size=4))
def test_harmonic_frame_residuals_vanish(h22, h33, a1, b1, h3):
    forms = third_order_expansion(h22, h33, a1, b1, h3)
    first, second = harmonic_frame_residuals(h22, h33, a1, b1, forms)
    assert first.is_zero() and second.is_zero()


def test_harmonic_frame_residual_detects_inconsistency():
    h3 = (1, 2, 3, 4)
    forms = third_order_expansion(1, 2, 3, 4, h3)
    broken = type(forms)(forms.dh22, forms.dh33, forms.omega_1_0 + W2)
    first, second = harmonic_frame_residuals(1, 2, 3, 4, broken)
    assert not (first.is_zero() and second.is_zero())


def test_harmonic_frame_residuals_zero_data():
    forms = third_order_expansion(0, 0, 0, 0, (0, 0, 0, 0))
    assert all(r.is_zero() for r in harmonic_frame_residuals(0, 0, 0, 0, forms))
