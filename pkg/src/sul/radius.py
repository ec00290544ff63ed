"""Last-sign-change radii of weighted eigenfunction profiles.

For f = H u(|.|) and a weight P carrying the same harmonic factor, the
product P f has the sign of u(|x|) away from a null set: the harmonic
enters as H^2 (plain weights) or |H| (sign-wrapped weights) and the radial
power r^{gamma_r} is positive for r > 0.  So the last sign change of P f
is a one-dimensional question about u.

Two certified routes, one per representation:

  * Gaussian mixtures.  Beyond an explicit radius the slowest-decaying
    term dominates the sum of all the others with a factor-2 margin, so
    the tail sign is the sign of its coefficient.  The remaining compact
    interval is scanned on a fixed panel grid and each bracketed crossing
    is bisected to tolerance.

  * Laguerre functions.  u(r) = p(2 pi r^2) exp(-pi r^2) with p a real
    polynomial, so sign changes are polynomial roots of odd multiplicity.
    p is expanded exactly over the rationals and its positive roots are
    isolated by Descartes/bisection (sul.polyroots); the tail sign is the
    sign of the leading coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polyroots import positive_roots, root_magnitude_bound
from .reps import GaussianMixture, LaguerreFunction, _same_harmonic
from .weights import Weight

__all__ = ["RadiusResult", "last_sign_change", "scaled_radius_product"]

_INITIAL_PANELS = 4096
_MAX_PANELS = 65536


@dataclass(frozen=True)
class RadiusResult:
    """Where a weighted profile last changes sign.

    r is the largest radius at which the sign flips (0.0 when the sign is
    constant on (0, inf)).  For profiles that are eventually nonnegative
    this is the infimum radius beyond which P f >= 0.  The profile
    provably keeps a constant sign on [certified_tail_from, inf), and that
    sign is sign_at_infinity.  bracketing_interval encloses the last
    crossing with width at most the requested tolerance.
    """

    r: float
    certified_tail_from: float
    bracketing_interval: tuple[float, float]
    sign_at_infinity: int


def _check_pairing(f, weight: Weight) -> None:
    if f.dim != weight.dim:
        raise ValueError("weight and function live in different dimensions")
    if not _same_harmonic(f.harmonic, weight.harmonic):
        raise ValueError(
            "weight and function carry different harmonic factors; "
            "the weighted profile is not radially signed"
        )


# ---------------------------------------------------------------------------
# Gaussian route
# ---------------------------------------------------------------------------


def _gaussian_tail(terms: list[tuple[float, float]]) -> tuple[float, int]:
    """Radius beyond which the slowest term dominates, and the tail sign.

    Sufficient condition per competing term j: at radius r,
    |c_j| exp(-a_j pi r^2) <= |c_min| exp(-a_min pi r^2) / (2 n_other),
    which holds once pi r^2 (a_j - a_min) >= log(2 n_other |c_j| / |c_min|).
    Summing leaves the dominant term a factor-2 margin.
    """
    lead = min(terms, key=lambda t: t[1])
    c_min, a_min = lead
    others = [t for t in terms if t[1] != a_min]
    n_other = len(others)
    r2 = 0.0
    for c, a in others:
        need = math.log(2.0 * n_other * abs(c) / abs(c_min)) / (math.pi * (a - a_min))
        r2 = max(r2, need)
    sign = 1 if c_min > 0.0 else -1
    return math.sqrt(r2), sign


def _bisect_crossing(profile, lo: float, hi: float, sign_lo: int, tol: float):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        v = float(profile(mid))
        if v == 0.0:
            return mid, mid
        if (v > 0.0) == (sign_lo > 0):
            lo = mid
        else:
            hi = mid
    return lo, hi


def _gaussian_radius(f: GaussianMixture, tol: float) -> RadiusResult:
    terms = [(c, a) for c, a in f.terms if c != 0.0]
    if len(terms) == 1:
        sign = 1 if terms[0][0] > 0.0 else -1
        return RadiusResult(0.0, 0.0, (0.0, 0.0), sign)
    tail, sign_inf = _gaussian_tail(terms)
    if tail == 0.0:
        return RadiusResult(0.0, 0.0, (0.0, 0.0), sign_inf)

    panels = _INITIAL_PANELS
    while True:
        xs = np.linspace(0.0, tail, panels + 1)
        signs = np.sign(f.radial_profile(xs))
        nz = np.nonzero(signs)[0]
        if nz.size and signs[nz[-1]] == sign_inf:
            break
        if panels >= _MAX_PANELS:
            raise RuntimeError("scan grid is inconsistent with the certified tail sign")
        panels *= 4

    bracket = None
    for i, j in zip(nz[:-1], nz[1:]):
        if signs[i] != signs[j]:
            bracket = (float(xs[i]), float(xs[j]), int(signs[i]))
    if bracket is None:
        return RadiusResult(0.0, tail, (0.0, 0.0), sign_inf)
    lo, hi = _bisect_crossing(f.radial_profile, bracket[0], bracket[1], bracket[2], tol)
    return RadiusResult(0.5 * (lo + hi), tail, (lo, hi), sign_inf)


# ---------------------------------------------------------------------------
# Laguerre route
# ---------------------------------------------------------------------------


def _laguerre_monomial_coeffs(f: LaguerreFunction) -> list[Fraction]:
    """Exact monomial coefficients of p(u) = sum_k c_k L_k^{(alpha)}(u)."""
    alpha = Fraction(f.dim, 2) + f.ell - 1
    total = [Fraction(0)] * len(f.coeffs)
    prev: list[Fraction] = []
    cur = [Fraction(1)]
    for k, c in enumerate(f.coeffs):
        if k > 0:
            # (k) L_k = (2k - 1 + alpha - u) L_{k-1} - (k - 1 + alpha) L_{k-2}
            nxt = [Fraction(0)] * (k + 1)
            for j, q in enumerate(cur):
                nxt[j] += (2 * k - 1 + alpha) * q
                nxt[j + 1] -= q
            for j, q in enumerate(prev):
                nxt[j] -= (k - 1 + alpha) * q
            prev, cur = cur, [q / k for q in nxt]
        if c != 0.0:
            fc = Fraction(c)
            for j, q in enumerate(cur):
                total[j] += fc * q
    while total and total[-1] == 0:
        total.pop()
    return total


def _laguerre_radius(f: LaguerreFunction, tol: float) -> RadiusResult:
    poly = _laguerre_monomial_coeffs(f)
    if not poly:
        raise ValueError("zero function has no sign-change radius")
    sign_inf = 1 if poly[-1] > 0 else -1
    if len(poly) == 1:
        return RadiusResult(0.0, 0.0, (0.0, 0.0), sign_inf)
    tail = math.sqrt(float(root_magnitude_bound(poly)) / (2.0 * math.pi))
    rel = tol / 100.0
    while True:
        roots = [root for root in positive_roots(poly, rel_tol=rel) if root.sign_change]
        if not roots:
            return RadiusResult(0.0, tail, (0.0, 0.0), sign_inf)
        last = roots[-1]
        lo = math.sqrt(last.lo / (2.0 * math.pi))
        hi = math.sqrt(last.hi / (2.0 * math.pi))
        if hi - lo <= tol or last.lo == last.hi:
            return RadiusResult(0.5 * (lo + hi), tail, (lo, hi), sign_inf)
        # a root at tiny radius: the sqrt map stretches the bracket, so
        # re-isolate with a tolerance small enough after the mapping
        rel *= 0.5 * tol / (hi - lo)


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def last_sign_change(f, weight: Weight, tol: float = 1e-10) -> RadiusResult:
    """Last sign change of P f along the radial direction.

    f must carry the same harmonic factor as the weight (up to the
    x_1 alias), otherwise P f is not a signed radial profile and a
    ValueError is raised.  tol bounds the width of the returned bracket.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if not isinstance(f, (GaussianMixture, LaguerreFunction)):
        raise TypeError(f"unsupported representation: {type(f).__name__}")
    _check_pairing(f, weight)
    if isinstance(f, GaussianMixture):
        return _gaussian_radius(f, tol)
    return _laguerre_radius(f, tol)


def scaled_radius_product(f, fhat_side, weight: Weight, tol: float = 1e-10) -> float:
    """sqrt(r(P f) * r(P g)) for a function and its transform-side partner.

    fhat_side is the real function on the transform side (for an
    eigenfunction it is f itself, so the product collapses to r(P f)).
    The geometric mean is invariant under dilation of the pair.  Raises
    if either profile is eventually negative, since the one-sided radius
    is then infinite.
    """
    res_f = last_sign_change(f, weight, tol)
    res_g = last_sign_change(fhat_side, weight, tol)
    for res, name in ((res_f, "f"), (res_g, "fhat_side")):
        if res.sign_at_infinity < 0:
            raise ValueError(f"{name} is eventually negative; its radius is infinite")
    return math.sqrt(res_f.r * res_g.r)
