"""Closed-form Fourier eigenfunction representations and their integrals.

Two representations cover everything downstream:

  * GaussianMixture: f(x) = H(x) * sum_j c_j exp(-a_j pi |x|^2), the form of
    all explicit three- and four-term constructions.  Its Fourier transform
    is again a mixture, exactly, by the single-Gaussian rule

        F[H exp(-a pi |.|^2)] = (-i)^ell a^{-(d+2 ell)/2} H exp(-pi |.|^2 / a).

  * LaguerreFunction: f(x) = H(x) * sum_k c_k L_k^{(alpha)}(2 pi |x|^2)
    exp(-pi |x|^2) with alpha = d/2 + ell - 1.  Each k-term is an
    eigenfunction with eigenvalue (-i)^ell (-1)^k, which is what the
    optimizer's search space is built from.

Weighted integrals against the weights of `sul.weights` reduce to a sphere
factor times a one-dimensional radial integral with effective dimension
D = d + ell + gamma_tot; for Gaussians the radial part is a Gamma factor in
closed form, for Laguerre functions it is evaluated exactly by generalized
Gauss-Laguerre quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence, Union

import numpy as np

from .specialfn import gauss_laguerre_rule, laguerre_eval, log_gamma
from .weights import HarmonicFactor, HarmonicKind, Weight

__all__ = [
    "GaussianMixture",
    "LaguerreFunction",
    "TransformResult",
    "EigenStatus",
    "fourier_transform",
    "eigen_status",
    "build_f0",
    "build_g1",
    "build_g1_h1_f1",
    "build_psi_t",
    "weighted_integral",
]

_MATCH_RTOL = 1e-12


def _is_plane_alias(a: HarmonicFactor, b: HarmonicFactor) -> bool:
    # x_1 appears both as COORDINATE_PRODUCT(1) and PLANE_HARMONIC(1)
    kinds = {a.kind, b.kind}
    return (
        a.degree == 1
        and b.degree == 1
        and kinds == {HarmonicKind.COORDINATE_PRODUCT, HarmonicKind.PLANE_HARMONIC}
    )


def _same_harmonic(a: HarmonicFactor, b: HarmonicFactor) -> bool:
    return a == b or _is_plane_alias(a, b)


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianMixture:
    """f(x) = H(x) * sum_j c_j exp(-a_j pi |x|^2) on R^dim.

    terms is a sequence of (c_j, a_j) pairs with distinct positive a_j.
    """

    dim: int
    harmonic: HarmonicFactor
    terms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if self.dim < self.harmonic.min_dimension:
            raise ValueError("harmonic factor does not fit the dimension")
        terms = tuple((float(c), float(a)) for c, a in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("mixture needs at least one term")
        widths = [a for _, a in terms]
        if any(a <= 0.0 for a in widths):
            raise ValueError("widths a_j must be positive")
        if len(set(widths)) != len(widths):
            raise ValueError("widths a_j must be distinct")
        if all(c == 0.0 for c, _ in terms):
            raise ValueError("at least one coefficient must be nonzero")

    @property
    def ell(self) -> int:
        return self.harmonic.degree

    def radial_profile(self, r) -> np.ndarray:
        """u(r) with f = H * u(|.|)."""
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for c, a in self.terms:
            out = out + c * np.exp(-a * math.pi * r * r)
        return out

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = np.sqrt(np.sum(x * x, axis=-1))
        return self.harmonic.evaluate(x) * self.radial_profile(r)

    def dilate(self, delta: float) -> "GaussianMixture":
        """The mixture representing x |-> f(delta x)."""
        if delta <= 0.0:
            raise ValueError("delta must be positive")
        scale = delta**self.ell
        terms = tuple((scale * c, a * delta * delta) for c, a in self.terms)
        return GaussianMixture(self.dim, self.harmonic, terms)

    def scaled(self, factor: float) -> "GaussianMixture":
        return GaussianMixture(
            self.dim, self.harmonic, tuple((factor * c, a) for c, a in self.terms)
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "gaussian",
            "d": self.dim,
            "ell": self.ell,
            "harmonic_kind": self.harmonic.kind.value,
            "terms": [[c, a] for c, a in self.terms],
        }

    @staticmethod
    def from_dict(data: dict[str, Any]) -> "GaussianMixture":
        h = HarmonicFactor(HarmonicKind(data["harmonic_kind"]), int(data["ell"]))
        return GaussianMixture(int(data["d"]), h, tuple((c, a) for c, a in data["terms"]))


@dataclass(frozen=True)
class LaguerreFunction:
    """f(x) = H(x) * sum_k c_k L_k^{(alpha)}(2 pi |x|^2) exp(-pi |x|^2).

    alpha = dim/2 + ell - 1.  The k-th term is a Fourier eigenfunction with
    eigenvalue (-i)^ell (-1)^k.
    """

    dim: int
    harmonic: HarmonicFactor
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.dim < self.harmonic.min_dimension:
            raise ValueError("harmonic factor does not fit the dimension")
        coeffs = tuple(float(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")

    @property
    def ell(self) -> int:
        return self.harmonic.degree

    @property
    def alpha(self) -> float:
        return self.dim / 2.0 + self.ell - 1.0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def polynomial_values(self, u) -> np.ndarray:
        """p(u) = sum_k c_k L_k^{(alpha)}(u), evaluated by the recurrence."""
        u = np.asarray(u, dtype=float)
        acc = np.zeros_like(u)
        prev = np.zeros_like(u)
        cur = np.ones_like(u)
        for k, c in enumerate(self.coeffs):
            if k > 0:
                prev, cur = cur, (
                    (2 * (k - 1) + 1 + self.alpha - u) * cur - ((k - 1) + self.alpha) * prev
                ) / k
            if c != 0.0:
                acc = acc + c * cur
        return acc

    def radial_profile(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        u = 2.0 * math.pi * r * r
        return self.polynomial_values(u) * np.exp(-math.pi * r * r)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = np.sqrt(np.sum(x * x, axis=-1))
        return self.harmonic.evaluate(x) * self.radial_profile(r)

    def transformed_coeffs(self) -> tuple[float, ...]:
        """Coefficients of the transform, up to the global phase (-i)^ell."""
        return tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "laguerre",
            "d": self.dim,
            "ell": self.ell,
            "harmonic_kind": self.harmonic.kind.value,
            "coeffs": list(self.coeffs),
        }

    @staticmethod
    def from_dict(data: dict[str, Any]) -> "LaguerreFunction":
        h = HarmonicFactor(HarmonicKind(data["harmonic_kind"]), int(data["ell"]))
        return LaguerreFunction(int(data["d"]), h, tuple(data["coeffs"]))


EigenCandidate = Union[GaussianMixture, LaguerreFunction]


class TransformResult(NamedTuple):
    """Fourier transform of a mixture: a unit phase times a real mixture."""

    phase: complex
    mixture: GaussianMixture


@dataclass(frozen=True)
class EigenStatus:
    is_eigen: bool
    eigenvalue: complex | None


# ---------------------------------------------------------------------------
# transform and eigen structure
# ---------------------------------------------------------------------------


def fourier_transform(f: GaussianMixture) -> TransformResult:
    """Exact Fourier transform, term by term.

    Each H exp(-a pi |.|^2) maps to (-i)^ell a^{-(d+2 ell)/2} H
    exp(-pi |.|^2 / a); the phase is returned separately so the mixture
    stays real.
    """
    expo = (f.dim + 2 * f.ell) / 2.0
    terms = tuple((c * a**-expo, 1.0 / a) for c, a in f.terms)
    phase = (-1j) ** f.ell
    return TransformResult(phase, GaussianMixture(f.dim, f.harmonic, terms))


def eigen_status(f: GaussianMixture) -> EigenStatus:
    """Report whether f is a Fourier eigenfunction and its eigenvalue.

    The transform is compared with f term by term after matching widths
    1/a_j against a_j; the common real ratio t must be +-1 and the
    eigenvalue is then (-i)^ell * t.
    """
    tr = fourier_transform(f)
    orig = sorted(f.terms, key=lambda t: t[1])
    tran = sorted(tr.mixture.terms, key=lambda t: t[1])
    ratio = None
    for (c0, a0), (c1, a1) in zip(orig, tran):
        if not math.isclose(a0, a1, rel_tol=_MATCH_RTOL):
            return EigenStatus(False, None)
        if c0 == 0.0 and c1 == 0.0:
            continue
        if c0 == 0.0 or c1 == 0.0:
            return EigenStatus(False, None)
        t = c1 / c0
        if ratio is None:
            ratio = t
        elif not math.isclose(ratio, t, rel_tol=1e-10):
            return EigenStatus(False, None)
    if ratio is None or not math.isclose(abs(ratio), 1.0, rel_tol=1e-10):
        return EigenStatus(False, None)
    t = 1.0 if ratio > 0 else -1.0
    return EigenStatus(True, tr.phase * t)


# ---------------------------------------------------------------------------
# explicit constructions
# ---------------------------------------------------------------------------


def _construction_exponents(w: Weight) -> tuple[float, float]:
    """The two homogeneity exponents (d + ell + gamma)/2 and (ell - gamma)/2
    controlling every weighted Gaussian integral, with gamma the full
    homogeneity degree of the weight."""
    gamma = w.homogeneity_degree
    d, ell = w.dim, w.ell
    return (d + ell + gamma) / 2.0, (ell - gamma) / 2.0


def build_f0(w: Weight, a0: float) -> GaussianMixture:
    """Three-term eigenfunction with eigenvalue (-i)^ell and zero weighted
    integral against w:

        f0 = H (exp(-pi|x|^2/a0) + a0^{(d+2 ell)/2} exp(-a0 pi|x|^2)
              - A0 exp(-pi|x|^2)),

    where A0 = a0^{(d+ell+gamma)/2} + a0^{(ell-gamma)/2} makes the integral
    vanish.  The first two terms map to each other under the transform, so
    the eigen structure is exact.
    """
    if a0 <= 1.0:
        raise ValueError("a0 must exceed 1")
    e_plus, e_minus = _construction_exponents(w)
    big_a0 = a0**e_plus + a0**e_minus
    mirror = a0 ** ((w.dim + 2 * w.ell) / 2.0)
    terms = ((1.0, 1.0 / a0), (mirror, a0), (-big_a0, 1.0))
    return GaussianMixture(w.dim, w.harmonic, terms)


def build_g1(w: Weight, a1: float) -> GaussianMixture:
    """Antisymmetric pair g1 = H (exp(-pi|x|^2/a1) - a1^{(d+2 ell)/2}
    exp(-a1 pi|x|^2)), an eigenfunction with eigenvalue -(-i)^ell.

    Its weighted integral is K (a1^{e+} - a1^{e-}), nonpositive exactly
    when gamma <= -d/2, and identically zero at gamma = -d/2.  That
    critical case is the regime where g1 alone is the near-extremal
    witness (its sign-change radius shrinks to zero as a1 grows).
    """
    if a1 <= 1.0:
        raise ValueError("a1 must exceed 1")
    d2l = (w.dim + 2 * w.ell) / 2.0
    return GaussianMixture(w.dim, w.harmonic, ((1.0, 1.0 / a1), (-(a1**d2l), a1)))


def build_g1_h1_f1(
    w: Weight, a1: float, b1: float
) -> tuple[GaussianMixture, GaussianMixture, GaussianMixture]:
    """Antisymmetric pairs with eigenvalue -(-i)^ell, and the combination
    f1 = g1 - A1 h1 with zero weighted integral:

        g1 = H (exp(-pi|x|^2/a1) - a1^{(d+2 ell)/2} exp(-a1 pi|x|^2)),
        h1 = same with b1,
        A1 = (a1^{e+} - a1^{e-}) / (b1^{e+} - b1^{e-}),

    with e+ = (d+ell+gamma)/2 and e- = (ell-gamma)/2.  Requires
    1 < b1 < a1.  At gamma = -d/2 the two exponents coincide, every
    weighted integral of this antisymmetric form vanishes identically,
    and A1 is undefined; that regime uses g1 alone.
    """
    if not (1.0 < b1 < a1):
        raise ValueError("need 1 < b1 < a1")
    e_plus, e_minus = _construction_exponents(w)
    d2l = (w.dim + 2 * w.ell) / 2.0
    g1 = build_g1(w, a1)
    h1 = build_g1(w, b1)
    denom = b1**e_plus - b1**e_minus
    if denom == 0.0:
        raise ValueError(
            "critical homogeneity degree -d/2: combination constant undefined, use build_g1"
        )
    big_a1 = (a1**e_plus - a1**e_minus) / denom
    f1_terms = (
        (1.0, 1.0 / a1),
        (-(a1**d2l), a1),
        (-big_a1, 1.0 / b1),
        (big_a1 * b1**d2l, b1),
    )
    f1 = GaussianMixture(w.dim, w.harmonic, f1_terms)
    return g1, h1, f1


def build_psi_t(w: Weight, t: float) -> tuple[GaussianMixture, TransformResult]:
    """Two-term function with positive weighted integral whose transform has
    zero weighted integral:

        psi_t = H (exp(-t pi|x|^2) - 2^{-(gamma-ell)/2} exp(-2t pi|x|^2)),

    valid for gamma >= ell (gamma the homogeneity degree of w).  Returns
    psi_t and its exact transform.
    """
    if t <= 0.0:
        raise ValueError("t must be positive")
    gamma = w.homogeneity_degree
    if gamma < w.ell:
        raise ValueError("needs homogeneity degree >= harmonic degree")
    c2 = -(2.0 ** (-(gamma - w.ell) / 2.0))
    psi = GaussianMixture(w.dim, w.harmonic, ((1.0, t), (c2, 2.0 * t)))
    return psi, fourier_transform(psi)


# ---------------------------------------------------------------------------
# weighted integrals
# ---------------------------------------------------------------------------


def _pairing_sphere_factor(w: Weight, harmonic: HarmonicFactor) -> float:
    """Sphere factor of int P f for f = H_f * u: the integral of
    H_P H_f (plain) or |H_P| (sign-wrapped, matching H) over the sphere.
    Mismatched harmonic factors of our families are orthogonal."""
    if w.sign_wrapped:
        if not _same_harmonic(w.harmonic, harmonic):
            raise ValueError("sign-wrapped weights need a matching harmonic factor")
        return w.sphere_abs_moment()
    if _same_harmonic(w.harmonic, harmonic):
        return w.sphere_moment()
    return 0.0


def _effective_dimension(w: Weight, harmonic: HarmonicFactor) -> float:
    """Exponent D with int P f = S * int_0^inf u(r) r^{D-1} dr."""
    ell_weight = 0 if w.sign_wrapped else w.ell
    return w.dim + harmonic.degree + ell_weight + w.radial_power


def weighted_integral(f: EigenCandidate, w: Weight) -> float:
    """int_{R^d} P(x) f(x) dx, in closed form.

    Polar factorization gives a sphere factor times a radial integral with
    effective dimension D.  Gaussian terms use the Gamma closed form
    Gamma(D/2) / (2 (a pi)^{D/2}); Laguerre functions use generalized
    Gauss-Laguerre quadrature with parameter D/2 - 1, exact for the
    polynomial part.
    """
    if w.dim != f.dim:
        raise ValueError("weight and function live in different dimensions")
    dim_eff = _effective_dimension(w, f.harmonic)
    if dim_eff <= 0.0:
        raise ValueError(f"divergent integral: effective dimension {dim_eff} <= 0")
    sphere = _pairing_sphere_factor(w, f.harmonic)
    if sphere == 0.0:
        return 0.0
    if isinstance(f, GaussianMixture):
        acc = 0.0
        for c, a in f.terms:
            acc += c * math.exp(
                log_gamma(dim_eff / 2.0) - (dim_eff / 2.0) * math.log(a * math.pi)
            )
        return sphere * acc / 2.0
    # Laguerre route: substitute u = 2 pi r^2 and then u = 2v, leaving
    # int_0^inf p(2v) e^{-v} v^{D/2-1} dv, exact by quadrature.
    n_nodes = f.degree // 2 + 1
    rule = gauss_laguerre_rule(max(n_nodes, 1), dim_eff / 2.0 - 1.0)
    radial = rule.integrate_values(f.polynomial_values(2.0 * rule.nodes))
    return sphere * radial / (2.0 * math.pi ** (dim_eff / 2.0))


def evaluate_function(f: EigenCandidate, x: np.ndarray) -> np.ndarray:
    """Pointwise value f(x); x has shape (..., d)."""
    return f.evaluate(x)


def evaluate_radial_profile(f: EigenCandidate, r) -> np.ndarray:
    """The radial factor u(r) with f = H * u(|.|)."""
    return f.radial_profile(r)
