import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from cone22.canonical import (
    build_system, determinant_D, determinant_factors, reduce_to_canonical,
    reduced_relations, system_determinant, transformed_h3,
)

q = st.fractions(min_value=-8, max_value=8, max_denominator=7)


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def test_printed_matrix_unit_values():
    s = build_system(1, 1, 1, 1)
    assert s.m == ((3, 2, 0, -3), (0, 1, -1, 2), (-1, 2, 0, 3), (0, -3, 3, 2))
    assert s.rhs == (0, 0, 0, 0)


def test_umbilical_matrix_singular():
    s = build_system(0, 0, 5, 7)
    assert all(s.m[r][c] == 0 for r, c in [(0, 0), (0, 3), (1, 1), (1, 2), (2, 0), (2, 3),
                                          (3, 1), (3, 2)])
    assert system_determinant(s) == 0


@pytest.mark.parametrize("args, D", [((1, 1, 1, 1), 64), ((0, 0, 1, 1), 0), ((1, 1, 0, 0), 0)])
def test_determinant_examples(args, D):
    assert determinant_D(*args) == D
    assert leibniz_det(build_system(*args).m) == D


def test_determinant_identity_symbolic():
    h22, h33, a0, b0 = sympy.symbols("h22 h33 a0 b0")
    m = sympy.Matrix(build_system(h22, h33, a0, b0).m)
    assert sympy.expand(m.det() - determinant_D(h22, h33, a0, b0)) == 0


@given(q, q, q, q)
def test_determinant_identity_rational(h22, h33, a0, b0):
    s = build_system(h22, h33, a0, b0)
    assert leibniz_det(s.m) == system_determinant(s) == determinant_D(h22, h33, a0, b0)


def test_factors():
    assert determinant_factors(1, 2, 3, 4) == (3 * 1 * 4 + 2 * 3, 1 * 4 + 3 * 2 * 3)


def test_reduce_already_canonical():
    r = reduce_to_canonical(1, 1, 1, 1)
    assert r.feasible and r.params == (0, 0, 0, 0)


@given(q.filter(lambda x: x != 0), q, q.filter(lambda x: x != 0), q,
       st.lists(q, min_size=4, max_size=4))
def test_reduce_exact_zeroes_h3(h22, h33, a0, b0, h3):
    r = reduce_to_canonical(h22, h33, a0, b0, tuple(h3), tol=0)
    s = build_system(h22, h33, a0, b0, tuple(h3))
    if determinant_D(h22, h33, a0, b0) == 0:
        assert not r.feasible
        return
    assert r.feasible and r.residual == 0
    assert transformed_h3(s, r.params) == (0, 0, 0, 0)


def test_reduce_float_residual(rng):
    for _ in range(50):
        h22, h33, a0, b0 = (rng.uniform(0.5, 2) for _ in range(4))
        h3 = tuple(rng.uniform(-3, 3) for _ in range(4))
        r = reduce_to_canonical(h22, h33, a0, b0, h3)
        scale = max(1.0, max(map(abs, h3)))
        assert r.feasible and r.residual <= 1e-9 * scale
        assert r.condition is not None


@pytest.mark.parametrize("args, reason", [
    ((0, 0, 1, 1), "umbilical"),
    ((1, 1, 0, 0), "flat"),
    ((1, 3, 1, -1), "factor_zero:3*h22*b0+h33*a0"),
    ((3, 1, -1, 1), "factor_zero:h22*b0+3*h33*a0"),
])
def test_reduce_infeasible(args, reason):
    r = reduce_to_canonical(*args)
    assert not r.feasible and r.reason == reason and r.D == 0


def test_reduce_accepts_fractions():
    r = reduce_to_canonical(Fraction(1, 2), 2, 3, Fraction(-1, 3), (1, 2, 3, 4), tol=0)
    assert all(isinstance(x, Fraction) for x in r.params)


def test_reduced_relations():
    rel = reduced_relations(2, 3, 0, 0, 0, 0)
    assert rel["omega_1_0"] == (6, 0, 0)
    assert reduced_relations(1, 1, 1, 0, 0, 0)["dh22"][0] == -2
    assert reduced_relations(0, 0, 0, 0, 5, 7)["omega_1_0"] == (0, -10, -14)
