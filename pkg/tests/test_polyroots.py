"""Tests for sul.polyroots: exact positive-root isolation."""

import math
from fractions import Fraction

import numpy as np
import pytest

from sul.polyroots import IsolatedRoot, cauchy_bound, positive_roots


def _poly_from_roots(roots_with_mults):
    p = [Fraction(1)]
    for root, mult in roots_with_mults:
        for _ in range(mult):
            # multiply by (x - root)
            p = [Fraction(0)] + p
            for k in range(len(p) - 1):
                p[k] -= Fraction(root) * p[k + 1]
    return p


@pytest.mark.parametrize("spec", [
    [(2, 1)],
    [(Fraction(1, 3), 1), (5, 1)],
    [(1, 2), (4, 1)],
    [(3, 3)],
    [(Fraction(1, 2), 1), (2, 2), (7, 1)],
    [(-1, 2), (2, 1)],  # negative root ignored
])
def test_constructed_roots_recovered_with_multiplicity(spec):
    p = _poly_from_roots(spec)
    found = positive_roots(p, rel_tol=1e-13)
    expected = sorted((float(r), m) for r, m in spec if r > 0)
    assert len(found) == len(expected)
    for got, (root, mult) in zip(found, expected):
        assert got.lo <= root <= got.hi or abs(got.lo - root) < 1e-10
        assert got.multiplicity == mult
        assert got.sign_change == (mult % 2 == 1)


def test_roots_at_zero_are_dropped():
    # x^2 (x - 3)
    found = positive_roots([0.0, 0.0, -3.0, 1.0])
    assert len(found) == 1
    assert found[0].lo == pytest.approx(3.0, abs=1e-10)


@pytest.mark.parametrize("seed", range(8))
def test_matches_numpy_roots_on_random_polynomials(seed):
    rng = np.random.default_rng(seed)
    deg = int(rng.integers(2, 11))
    coeffs = rng.standard_normal(deg + 1)
    coeffs[-1] += math.copysign(0.2, coeffs[-1])  # keep the leading term honest
    mine = positive_roots(list(coeffs), rel_tol=1e-13)
    ref = np.roots(coeffs[::-1])
    ref_pos = sorted(
        float(z.real) for z in ref if abs(z.imag) < 1e-9 and z.real > 1e-12
    )
    assert len(mine) == len(ref_pos)
    for got, expect in zip(mine, ref_pos):
        assert 0.5 * (got.lo + got.hi) == pytest.approx(expect, abs=1e-7)


def test_cauchy_bound_contains_all_roots():
    p = [Fraction(-105), Fraction(176), Fraction(-86), Fraction(16), Fraction(-1)]
    bound = cauchy_bound(p)
    for root in positive_roots(p):
        assert root.hi < float(bound)


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError, match="zero"):
        positive_roots([0.0, 0.0])


def test_no_positive_roots():
    assert positive_roots([1.0, 0.0, 1.0]) == []
    assert positive_roots([1.0, 2.0, 1.0]) == []  # (x+1)^2


def test_tiny_root_is_isolated():
    # (x - 1e-6)(x - 1): well separated but near the origin
    p = _poly_from_roots([(Fraction(1, 10**6), 1), (1, 1)])
    found = positive_roots(p, rel_tol=1e-10)
    assert len(found) == 2
    assert found[0].lo <= 1e-6 <= found[0].hi
    assert found[0].hi - found[0].lo <= 1e-10


def test_close_pair_is_separated():
    p = _poly_from_roots([(Fraction(1), 1), (Fraction(1) + Fraction(1, 10**7), 1)])
    found = positive_roots(p, rel_tol=1e-13)
    assert len(found) == 2
    assert found[0].hi < found[1].lo
    assert found[0].lo == pytest.approx(1.0, abs=1e-9)
    assert found[1].hi == pytest.approx(1.0 + 1e-7, abs=1e-9)


def test_isolated_root_is_frozen_value_object():
    r = IsolatedRoot(1.0, 1.0, 2)
    assert not r.sign_change
    with pytest.raises(AttributeError):
        r.lo = 2.0  # type: ignore[misc]
