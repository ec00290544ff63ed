"""Dimension-shift maps between radial functions and harmonic multiples.

A radial profile u can live in any dimension.  Dropping sends the radial
function u(|.|) on R^{d+2 ell} to H(x) u(|x|) on R^d for a harmonic factor
H of degree ell; lifting strips a coordinate-product factor and raises the
dimension back.  Both act on the stored coefficients only, so a round trip
is exact.  The transform eigenvalue picks up the factor (-i)^ell under a
drop, which flips the two-sided class sign by (-1)^{(ell + parity)/2};
class_sign_flip exposes that integer law and ShiftRecord carries it in
reports.

The maps come with weight counterparts: a radial weight |y|^g in the high
dimension pairs with H(x)|x|^g (plain) for weighted integrals, where the
integral scales by exactly (2 pi)^ell, and with sgn(H(x))|x|^{g+ell}
(sign-wrapped) for the class statements; both have homogeneity g + ell and
both leave the last-sign-change radius unchanged, since the extra factors
are positive off the zero set of H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .reps import (
    EigenCandidate,
    GaussianMixture,
    LaguerreFunction,
    eigen_status,
)
from .weights import HarmonicFactor, HarmonicKind, Weight

__all__ = [
    "ShiftRecord",
    "class_sign_flip",
    "class_sign_of",
    "drop",
    "drop_weight",
    "lift",
    "lift_weight",
    "radialize_check",
    "record_for",
    "symmetrize_odd",
]

_ONE = HarmonicFactor(HarmonicKind.ONE)


def class_sign_flip(ell: int) -> int:
    """(-1)^{(ell + ell mod 2)/2}: how the class sign changes across a
    shift by a degree-ell harmonic factor.  Involutive, period 4 in ell
    with pattern +, -, -, +."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    parity = ell % 2
    return -1 if ((ell + parity) // 2) % 2 else 1


def class_sign_of(f: EigenCandidate) -> int | None:
    """Two-sided class sign of an eigenfunction, or None.

    An eigenfunction H u with eigenvalue sigma (-i)^ell (sigma = +-1)
    belongs to the class of sign sigma * class_sign_flip(ell); for ell = 0
    that is the plain transform sign.  Non-eigenfunctions have no class.
    """
    ell = f.harmonic.degree
    if isinstance(f, LaguerreFunction):
        live = {k % 2 for k, c in enumerate(f.coeffs) if c != 0.0}
        if len(live) != 1:
            return None
        sigma = 1 if live == {0} else -1
        return sigma * class_sign_flip(ell)
    status = eigen_status(f)
    if not status.is_eigen:
        return None
    ratio = status.eigenvalue * 1j**ell
    if abs(ratio - 1.0) < 1e-9:
        sigma = 1
    elif abs(ratio + 1.0) < 1e-9:
        sigma = -1
    else:
        return None
    return sigma * class_sign_flip(ell)


@dataclass(frozen=True)
class ShiftRecord:
    """One drop or lift, with the dimensions and the class-sign law.

    sign_in and sign_out are the class signs of the source and result when
    both are eigenfunctions, None otherwise; when present they must be
    related by class_sign_flip(ell).
    """

    source_dim: int
    target_dim: int
    ell: int
    sign_in: int | None
    sign_out: int | None
    direction: str

    def __post_init__(self) -> None:
        if self.direction not in ("drop", "lift"):
            raise ValueError("direction must be 'drop' or 'lift'")
        if self.ell < 0:
            raise ValueError("ell must be nonnegative")
        diff = self.source_dim - self.target_dim
        want = 2 * self.ell if self.direction == "drop" else -2 * self.ell
        if diff != want:
            raise ValueError(
                f"{self.direction} by ell={self.ell} cannot map dimension "
                f"{self.source_dim} to {self.target_dim}"
            )
        if (self.sign_in is None) != (self.sign_out is None):
            raise ValueError("sign_in and sign_out must be set together")
        if self.sign_in is not None:
            if self.sign_in not in (1, -1) or self.sign_out not in (1, -1):
                raise ValueError("class signs must be +1 or -1")
            if self.sign_out != self.sign_in * class_sign_flip(self.ell):
                raise ValueError("class signs violate the shift sign law")

    def to_dict(self) -> dict[str, Any]:
        return {
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "ell": self.ell,
            "sign_in": self.sign_in,
            "sign_out": self.sign_out,
            "direction": self.direction,
        }


def record_for(
    source: EigenCandidate, result: EigenCandidate, direction: str
) -> ShiftRecord:
    """Build the ShiftRecord for a performed drop or lift."""
    ell = max(source.harmonic.degree, result.harmonic.degree)
    return ShiftRecord(
        source_dim=source.dim,
        target_dim=result.dim,
        ell=ell,
        sign_in=class_sign_of(source),
        sign_out=class_sign_of(result),
        direction=direction,
    )


def drop(f: EigenCandidate, harmonic: HarmonicFactor) -> EigenCandidate:
    """Multiply a radial function by a harmonic factor, 2 ell dimensions
    down: u(|.|) on R^{d + 2 ell} becomes H u(|.|) on R^d.

    The radial coefficients carry over unchanged; for Laguerre functions
    the polynomial parameter dim/2 + ell - 1 is invariant under the move,
    so the same coefficients denote the same radial profile.  A degree-0
    factor makes this the identity.
    """
    if f.harmonic.kind is not HarmonicKind.ONE:
        raise ValueError("can only drop a radial function (harmonic factor 1)")
    ell = harmonic.degree
    if ell == 0:
        return f
    target_dim = f.dim - 2 * ell
    if target_dim < harmonic.min_dimension:
        raise ValueError(
            f"dropping by ell={ell} from dimension {f.dim} lands in "
            f"dimension {target_dim}, too small for {harmonic.kind.value}"
        )
    if isinstance(f, GaussianMixture):
        return GaussianMixture(target_dim, harmonic, f.terms)
    return LaguerreFunction(target_dim, harmonic, f.coeffs)


def lift(f: GaussianMixture) -> GaussianMixture:
    """Strip a coordinate-product factor and move 2 ell dimensions up.

    x_1 ... x_ell u(|x|) on R^d becomes the radial u(|.|) on R^{d+2 ell}.
    Only closed-form mixtures are accepted: there the division by the
    factor is exact on the stored terms.  Inverse of drop on its image.
    """
    if not isinstance(f, GaussianMixture):
        raise TypeError("lift needs a GaussianMixture")
    if f.harmonic.kind is not HarmonicKind.COORDINATE_PRODUCT:
        raise ValueError("lift needs a coordinate-product harmonic factor")
    return GaussianMixture(f.dim + 2 * f.harmonic.degree, _ONE, f.terms)


def drop_weight(
    w: Weight, harmonic: HarmonicFactor, sign_wrapped: bool = True
) -> Weight:
    """Weight on R^{d} paired with drop from R^{d + 2 ell}.

    The radial weight |y|^g downstairs becomes sgn(H(x)) |x|^{g + ell}
    (sign-wrapped, the class-statement form) or H(x) |x|^g (plain, the
    integral-transport form); both are homogeneous of degree g + ell.
    """
    if w.harmonic.kind is not HarmonicKind.ONE:
        raise ValueError("can only drop a radial weight")
    ell = harmonic.degree
    if ell == 0:
        return w
    target_dim = w.dim - 2 * ell
    if target_dim < harmonic.min_dimension:
        raise ValueError(
            f"dropping by ell={ell} from dimension {w.dim} lands in "
            f"dimension {target_dim}, too small for {harmonic.kind.value}"
        )
    if sign_wrapped:
        return Weight(
            target_dim,
            harmonic,
            radial_power=w.radial_power + ell,
            sign_wrapped=True,
        )
    return Weight(target_dim, harmonic, radial_power=w.radial_power)


def lift_weight(w: Weight) -> Weight:
    """Radial weight on R^{d + 2 ell} paired with lift: |y|^{gamma - ell}
    where gamma is the homogeneity degree of w.  Inverse of drop_weight
    for both its forms."""
    ell = w.ell
    if ell == 0:
        return w
    return Weight(w.dim + 2 * ell, _ONE, radial_power=w.homogeneity_degree - ell)


def _odd_axes(f: EigenCandidate) -> frozenset[int]:
    """1-based axes in which the function is odd."""
    h = f.harmonic
    if h.kind is HarmonicKind.ONE:
        return frozenset()
    if h.kind is HarmonicKind.COORDINATE_PRODUCT:
        return frozenset(range(1, h.degree + 1))
    # Re((x1 + i x2)^m) picks up (-1)^m under x1 -> -x1 and is even in x2
    return frozenset({1} if h.degree % 2 else set())


def symmetrize_odd(f: GaussianMixture, axis: int) -> GaussianMixture | None:
    """Odd part along one axis, times two: f(x) - f(x with axis flipped).

    The stored representations are products of a harmonic factor and a
    radial part, so each axis is either odd (the result is 2 f) or even
    (the odd part vanishes identically; None flags the zero function).
    """
    if not isinstance(f, GaussianMixture):
        raise TypeError("symmetrize_odd needs a GaussianMixture")
    if not 1 <= axis <= f.dim:
        raise ValueError(f"axis must lie in 1..{f.dim}")
    if axis not in _odd_axes(f):
        return None
    doubled = tuple((2.0 * c, a) for c, a in f.terms)
    return GaussianMixture(f.dim, f.harmonic, doubled)


def radialize_check(f: EigenCandidate) -> bool:
    """Whether f is already radial.

    Spherical averaging fixes radial functions and annihilates every
    harmonic-factored one (the factor integrates to zero over spheres),
    so the average is either f itself or the zero function; the boolean
    says which.
    """
    return f.harmonic.kind is HarmonicKind.ONE
