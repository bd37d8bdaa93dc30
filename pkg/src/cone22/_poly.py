"""Dense univariate polynomials over Q, coefficients in descending order."""
from __future__ import annotations

from fractions import Fraction


def trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:]) if p else [Fraction(0)]


def degree(p):
    p = trim(p)
    return -1 if p == [0] else len(p) - 1


def derivative(p):
    n = len(p) - 1
    if n <= 0:
        return [Fraction(0)]
    return [c * (n - k) for k, c in enumerate(p[:-1])]


def divmod_poly(num, den):
    num = [Fraction(c) for c in trim(num)]
    den = [Fraction(c) for c in trim(den)]
    if degree(den) < 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    r = list(num)
    for k in range(len(q)):
        coef = r[k] / den[0]
        q[k] = coef
        for m, d in enumerate(den):
            r[k + m] -= coef * d
    return trim(q), trim(r[len(q):] or [Fraction(0)])


def monic(p):
    p = trim(p)
    return [c / p[0] for c in p]


def gcd(p, q):
    p, q = trim(p), trim(q)
    while degree(q) >= 0:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p) if degree(p) >= 0 else [Fraction(0)]


def exact_div(p, q):
    quo, rem = divmod_poly(p, q)
    assert degree(rem) < 0, "inexact polynomial division"
    return quo


def squarefree_decomposition(p):
    """Yun's algorithm: ``{multiplicity: squarefree monic factor}`` for a
    nonconstant polynomial over Q (constant factors dropped)."""
    p = monic([Fraction(c) for c in p])
    out = {}
    dp = derivative(p)
    a = gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out[i] = a
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def _pad(p, n):
    p = trim(p)
    return [Fraction(0)] * (n - len(p)) + list(p) if n > len(p) else list(p)


def sub(p, q):
    n = max(len(p), len(q))
    return trim([x - y for x, y in zip(_pad(p, n), _pad(q, n))])


def evaluate(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def _sign_changes(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_sequence(p):
    seq = [trim(p), trim(derivative(p))]
    while degree(seq[-1]) > 0:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if degree(r) < 0:
            break
        seq.append([-c for c in r])
    return seq


def count_real_roots(p):
    """Number of distinct real roots of ``p`` (Sturm's theorem)."""
    if degree(p) <= 0:
        return 0
    seq = sturm_sequence(p)
    at_neg = [c[0] * (-1) ** degree(c) for c in seq]
    at_pos = [c[0] for c in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)
