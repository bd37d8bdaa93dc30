import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cone22.core import INF
from cone22.principal import (
    BinaryQuartic, NotARootError, discriminant, infinity_sending_matrix,
    is_integrable_principal, mobius_apply, mobius_inverse, mobius_transform,
    projective_roots, send_root_to_infinity,
)

q_small = st.fractions(min_value=-6, max_value=6, max_denominator=5)
ints = st.integers(-6, 6)


def substitute(q, m, lam):
    """Direct evaluation of the pullback at an affine point."""
    (p, r), (s, t) = m
    return q.homogeneous(p * lam + r, s * lam + t)


def root_product_discriminant(c):
    a = c[0]
    rs = np.roots(c)
    prod = 1
    for i, j in itertools.combinations(range(4), 2):
        prod *= (rs[i] - rs[j]) ** 2
    return (a**6 * prod).real


def test_quadruple_root_at_zero():
    r = projective_roots(BinaryQuartic((1, 0, 0, 0, 0)))
    assert r.roots == ((0, 4),)
    assert r.exact


def test_quadruple_root_at_one():
    r = projective_roots(BinaryQuartic((1, -4, 6, -4, 1)))
    assert r.roots == ((1, 4),)
    assert is_integrable_principal(r, 1)


def test_root_at_infinity_plus_cubic():
    r = projective_roots(BinaryQuartic((0, -4, 6, -4, 1)))
    assert r.infinity_multiplicity == 1
    finite = sorted(np.roots([-4, 6, -4, 1]), key=lambda z: (z.real, z.imag))
    assert r.total_multiplicity() == 4
    real = [x for x in r.real_roots() if x is not INF]
    assert len(real) == 1 and len(r.complex_pairs) == 1
    real_oracle = [z.real for z in finite if abs(z.imag) < 1e-9]
    assert real[0] == pytest.approx(real_oracle[0], abs=1e-12)
    pair = r.complex_pairs[0][0]
    assert any(abs(pair - z) < 1e-12 for z in finite)


def test_zero_quartic_all_principal():
    r = projective_roots(BinaryQuartic((0, 0, 0, 0, 0)))
    assert r.all_principal
    assert r.multiplicity(Fraction(7, 3)) == 4


@pytest.mark.parametrize("roots", [
    [(Fraction(1, 2), 2), (-3, 2)],
    [(INF, 2), (2, 1), (5, 1)],
    [(INF, 4)],
    [(0, 3), (INF, 1)],
    [(Fraction(-7, 3), 1), (1, 1), (2, 1), (3, 1)],
])
def test_exact_multiplicities_from_roots(roots):
    q = BinaryQuartic.from_roots(roots, lead=3)
    r = projective_roots(q)
    for root, m in roots:
        assert r.multiplicity(root) == m
    assert r.multiplicity_pattern() == tuple(sorted((m for _, m in roots), reverse=True))


def test_float_quadruple_root():
    r = projective_roots(BinaryQuartic((1.0, -4.0, 6.0, -4.0, 1.0)))
    assert r.multiplicity_pattern() == (4,)
    assert r.roots[0][0] == pytest.approx(1.0, abs=1e-6)


def test_float_complex_double_pair():
    # (lam^2 + 1)^2
    r = projective_roots(BinaryQuartic((1.0, 0.0, 2.0, 0.0, 1.0)))
    assert r.roots == ()
    assert len(r.complex_pairs) == 1
    z, m = r.complex_pairs[0]
    assert m == 2 and abs(z - 1j) < 1e-6


def test_exact_complex_double_pair():
    r = projective_roots(BinaryQuartic((1, 0, 2, 0, 1)))
    assert r.roots == ()
    assert r.multiplicity_pattern() == (2, 2)


def test_integrability_flags():
    r = projective_roots(BinaryQuartic.from_roots([(1, 2), (2, 1), (3, 1)]))
    assert is_integrable_principal(r, 1)
    assert not is_integrable_principal(r, 2)
    with pytest.raises(NotARootError):
        is_integrable_principal(r, 4)


def test_leading_zero_gives_multiple_infinity():
    q = BinaryQuartic((0, 0, 6, -4, 1))
    r = projective_roots(q)
    assert r.infinity_multiplicity == 2
    assert is_integrable_principal(r, INF)


@given(st.lists(st.sampled_from([-2, -1, 0, Fraction(1, 2), 1, 3, INF]), min_size=4, max_size=4),
       st.sampled_from([1, -2, Fraction(3, 4)]))
def test_exact_roots_recover_construction(rts, lead):
    counts = {}
    for x in rts:
        counts[x] = counts.get(x, 0) + 1
    q = BinaryQuartic.from_roots(list(counts.items()), lead)
    r = projective_roots(q)
    for x, m in counts.items():
        assert r.multiplicity(x) == m
    assert r.total_multiplicity() == 4


@given(st.lists(st.sampled_from([-2.0, -1.0, 0.0, 0.5, 1.0, 3.0]), min_size=4, max_size=4))
def test_float_roots_recover_construction(rts):
    counts = {}
    for x in rts:
        counts[x] = counts.get(x, 0) + 1
    q = BinaryQuartic.from_roots(list(counts.items())).as_floats()
    r = projective_roots(q)
    for x, m in counts.items():
        assert r.multiplicity(x, 1e-5) == m


def test_mobius_identity():
    q = BinaryQuartic((1, 2, 3, 4, 5))
    assert mobius_transform(q, ((1, 0), (0, 1))) == q


def test_mobius_swap_reverses():
    q = BinaryQuartic((1, 2, 3, 4, 5))
    assert mobius_transform(q, ((0, 1), (1, 0))).c == (5, 4, 3, 2, 1)


def test_mobius_singular_rejected():
    with pytest.raises(ValueError):
        mobius_transform(BinaryQuartic((1, 0, 0, 0, 1)), ((1, 2), (2, 4)))


@given(st.lists(ints, min_size=5, max_size=5), st.lists(ints, min_size=4, max_size=4), q_small)
def test_mobius_matches_substitution(c, mm, lam):
    m = ((mm[0], mm[1]), (mm[2], mm[3]))
    assume(mm[0] * mm[3] - mm[1] * mm[2] != 0)
    q = BinaryQuartic(tuple(c))
    assert mobius_transform(q, m)(lam) == substitute(q, m, lam)


@given(q_small)
def test_send_root_to_infinity_kills_leading_coefficient(rho):
    q = BinaryQuartic.from_roots([(rho, 1), (7, 1), (8, 1), (9, 1)])
    out = send_root_to_infinity(q, rho)
    assert out.c[0] == 0 and out.c[1] != 0
    assert projective_roots(out).infinity_multiplicity == 1


def test_mobius_moves_roots_by_inverse():
    q = BinaryQuartic.from_roots([(1, 2), (3, 1), (-1, 1)])
    m = ((2, 1), (1, 1))
    out = projective_roots(mobius_transform(q, m))
    inv = mobius_inverse(m)
    assert out.multiplicity(mobius_apply(inv, 1)) == 2
    assert out.multiplicity(mobius_apply(inv, 3)) == 1
    assert mobius_apply(((1, 0), (1, 0)), 0) is INF
    assert mobius_apply(((2, 0), (1, 1)), INF) == 2
    assert infinity_sending_matrix(INF) == ((1, 0), (0, 1))


def test_discriminant_examples():
    assert discriminant(BinaryQuartic((1, -4, 6, -4, 1))) == 0
    assert discriminant(BinaryQuartic((1, 0, 0, 0, -1))) == -256
    assert root_product_discriminant([1, 0, 0, 0, -1]) == pytest.approx(-256)
    with pytest.raises(ValueError):
        discriminant(BinaryQuartic((0, 0, 0, 0, 0)))


def test_discriminant_matches_root_products(rng):
    for _ in range(30):
        c = [rng.randint(1, 5)] + [rng.randint(-5, 5) for _ in range(4)]
        d = discriminant(BinaryQuartic(tuple(c)))
        assert d == pytest.approx(root_product_discriminant(c), rel=1e-6, abs=1e-6)


def test_discriminant_zero_iff_multiple_root_on_grid():
    vals = range(-2, 3)
    for c in itertools.product(vals, repeat=5):
        if not any(c):
            continue
        q = BinaryQuartic(c)
        multiple = max(projective_roots(q).multiplicity_pattern()) >= 2
        assert (discriminant(q) == 0) == multiple, c
