"""Homogeneous weights built from a harmonic factor and a radial power.

A weight has the form

    P(x) = H(x) * |x|**gamma_r          (plain)
    P(x) = sgn(H(x)) * |x|**gamma_r     (sign-wrapped)

where H is one of a small family of explicit harmonic polynomials on R^d.
Sign-wrapping keeps the sign pattern of H but drops its magnitude, which
lowers the homogeneity degree from gamma_r + deg(H) to gamma_r.

The module exposes closed-form sphere integrals of H^2 and |H| and the
Lebesgue volume of the sublevel set {x : |P(x)| <= lam}.  Everything here
reduces to Gamma and Beta factors; tests cross-check the formulas against
direct spherical quadrature.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .specialfn import log_gamma, sphere_surface

__all__ = [
    "HarmonicKind",
    "HarmonicFactor",
    "Weight",
    "power_weight",
]


class HarmonicKind(enum.Enum):
    """Shape of the harmonic polynomial factor."""

    ONE = "one"
    COORDINATE_PRODUCT = "coordinate_product"
    PLANE_HARMONIC = "plane_harmonic"


@dataclass(frozen=True)
class HarmonicFactor:
    """Explicit harmonic polynomial H on R^d, homogeneous of degree `degree`.

    ONE                      H(x) = 1                       degree 0
    COORDINATE_PRODUCT       H(x) = x_1 x_2 ... x_ell       degree ell
    PLANE_HARMONIC           H(x) = Re((x_1 + i x_2)^ell)   degree ell

    Each is harmonic in every dimension large enough to contain the
    coordinates it uses (`min_dimension`).
    """

    kind: HarmonicKind
    degree: int = 0

    def __post_init__(self) -> None:
        if self.kind is HarmonicKind.ONE:
            if self.degree != 0:
                raise ValueError("ONE factor must have degree 0")
        else:
            if self.degree < 1:
                raise ValueError(f"{self.kind.value} needs degree >= 1")

    @property
    def min_dimension(self) -> int:
        if self.kind is HarmonicKind.ONE:
            return 1
        if self.kind is HarmonicKind.COORDINATE_PRODUCT:
            return self.degree
        return 2

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """H(x) for points x with shape (..., d)."""
        x = np.asarray(x, dtype=float)
        if self.kind is HarmonicKind.ONE:
            return np.ones(x.shape[:-1])
        if self.kind is HarmonicKind.COORDINATE_PRODUCT:
            return np.prod(x[..., : self.degree], axis=-1)
        z = x[..., 0] + 1j * x[..., 1]
        return (z**self.degree).real

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "degree": self.degree}

    @staticmethod
    def from_dict(data: dict[str, Any]) -> "HarmonicFactor":
        return HarmonicFactor(HarmonicKind(data["kind"]), int(data["degree"]))


@dataclass(frozen=True)
class Weight:
    """Weight P(x) = [sgn] H(x) * |x|**radial_power on R^dim."""

    dim: int
    harmonic: HarmonicFactor
    radial_power: float = 0.0
    sign_wrapped: bool = False

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.dim < self.harmonic.min_dimension:
            raise ValueError(
                f"{self.harmonic.kind.value} of degree {self.harmonic.degree} "
                f"needs dimension >= {self.harmonic.min_dimension}, got {self.dim}"
            )
        if self.sign_wrapped and self.harmonic.kind is HarmonicKind.ONE:
            raise ValueError("sign-wrapping a constant factor is a no-op; use plain form")

    # -- basic structure ----------------------------------------------------

    @property
    def ell(self) -> int:
        """Degree of the harmonic factor."""
        return self.harmonic.degree

    @property
    def parity(self) -> int:
        """0 if P is even, 1 if odd.  sgn(H) has the same parity as H."""
        return self.ell % 2

    @property
    def homogeneity_degree(self) -> float:
        """gamma_tot with P(t x) = t**gamma_tot P(x) for t > 0."""
        if self.sign_wrapped:
            return self.radial_power
        return self.radial_power + self.ell

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """P(x) for points x with shape (..., d).

        At x = 0 with radial_power < 0 the value is nan (the weight blows
        up there); with radial_power == 0 the radial part is taken as 1.
        """
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValueError(f"expected last axis {self.dim}, got {x.shape[-1]}")
        r = np.sqrt(np.sum(x * x, axis=-1))
        h = self.harmonic.evaluate(x)
        if self.sign_wrapped:
            h = np.sign(h)
        if self.radial_power == 0.0:
            radial = np.ones_like(r)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                radial = np.where(r > 0.0, r**self.radial_power, 0.0)
            if self.radial_power < 0.0:
                radial = np.where(r > 0.0, radial, np.nan)
        out = h * radial
        return out

    # -- closed-form sphere integrals ----------------------------------------

    def sphere_moment(self) -> float:
        """Integral of H(w)^2 over the unit sphere S^{d-1}."""
        d, ell = self.dim, self.ell
        kind = self.harmonic.kind
        if kind is HarmonicKind.ONE:
            return sphere_surface(d)
        if kind is HarmonicKind.COORDINATE_PRODUCT:
            # prod of ell squared coordinates: 2 Gamma(3/2)^ell pi^{(d-ell)/2}
            # over Gamma((d+2ell)/2), which simplifies to the power of two below.
            return 2.0 * math.pi ** (d / 2.0) / (2.0**ell * math.exp(log_gamma((d + 2 * ell) / 2.0)))
        return math.exp(log_gamma(ell + 1.0)) * math.pi ** (d / 2.0) / math.exp(
            log_gamma((d + 2 * ell) / 2.0)
        )

    def sphere_abs_moment(self) -> float:
        """Integral of |H(w)| over the unit sphere S^{d-1}."""
        d, ell = self.dim, self.ell
        kind = self.harmonic.kind
        if kind is HarmonicKind.ONE:
            return sphere_surface(d)
        if kind is HarmonicKind.COORDINATE_PRODUCT:
            return 2.0 * math.pi ** ((d - ell) / 2.0) / math.exp(log_gamma((d + ell) / 2.0))
        # |Re (w1 + i w2)^ell| integrates like rho^ell |cos(ell theta)|;
        # the angular part gives 4 regardless of ell, the in-plane radius a
        # Beta factor that collapses to the expression below for every d >= 2.
        return 4.0 * math.pi ** ((d - 2) / 2.0) * math.exp(
            log_gamma((ell + 2) / 2.0) - log_gamma((d + ell) / 2.0)
        )

    def pairing_sphere_factor(self) -> float:
        """Sphere factor in integrals of P times an eigenfunction with the
        same harmonic factor: H^2 appears for plain weights, |H| for
        sign-wrapped ones."""
        if self.sign_wrapped:
            return self.sphere_abs_moment()
        return self.sphere_moment()

    # -- sublevel volume ------------------------------------------------------

    def sublevel_volume(self, lam: float) -> float:
        """Lebesgue volume of {x in R^d : |P(x)| <= lam}.

        Homogeneity gives volume(lam) = lam**(d/gamma_tot) * volume(1) when
        gamma_tot > 0, with volume(1) an explicit Gamma/Beta expression.
        The value is inf when the defining sphere integral diverges.  For
        gamma_tot == 0 the set is a cone: volume 0 or inf.  gamma_tot < 0
        always gives an infinite-volume set and is rejected.
        """
        if lam < 0.0:
            raise ValueError("lam must be >= 0")
        d = self.dim
        gamma_tot = self.homogeneity_degree
        if gamma_tot < 0.0:
            raise ValueError("sublevel volume is infinite for negative homogeneity")
        if gamma_tot == 0.0:
            return self._conical_sublevel_volume(lam)
        if lam == 0.0:
            return 0.0
        unit = self._unit_sublevel_volume()
        if math.isinf(unit):
            return math.inf
        return lam ** (d / gamma_tot) * unit

    def _conical_sublevel_volume(self, lam: float) -> float:
        # |P(w)| on the sphere is identically 1 for ONE and for sign-wrapped
        # factors; otherwise it is |H(w)|, which fills a positive-measure
        # sublevel set for every lam > 0.
        if self.harmonic.kind is HarmonicKind.ONE or self.sign_wrapped:
            return math.inf if lam >= 1.0 else 0.0
        return math.inf if lam > 0.0 else 0.0

    def _unit_sublevel_volume(self) -> float:
        """Volume of {|P| <= 1}, via (1/d) int_S |H(w)|**(-d/gamma_tot) dsigma."""
        d, ell = self.dim, self.ell
        gamma_tot = self.homogeneity_degree
        p = -d / gamma_tot
        kind = self.harmonic.kind
        if kind is HarmonicKind.ONE or self.sign_wrapped:
            return sphere_surface(d) / d
        if kind is HarmonicKind.COORDINATE_PRODUCT:
            if p <= -1.0:
                return math.inf
            val = (
                math.log(2.0)
                + ell * log_gamma((p + 1.0) / 2.0)
                + (d - ell) / 2.0 * math.log(math.pi)
                - log_gamma((d + ell * p) / 2.0)
            )
            return math.exp(val) / d
        # PLANE_HARMONIC: split into the in-plane angle and radius.
        if p <= -1.0 or ell * p + 2.0 <= 0.0:
            return math.inf
        angular = 2.0 * math.sqrt(math.pi) * math.exp(
            log_gamma((p + 1.0) / 2.0) - log_gamma(p / 2.0 + 1.0)
        )
        if d == 2:
            return angular / d
        radial = math.exp(
            log_gamma((ell * p + 2.0) / 2.0)
            + log_gamma((d - 2.0) / 2.0)
            - log_gamma((ell * p + d) / 2.0)
        )
        omega = sphere_surface(d - 2)  # surface of S^{d-3} in R^{d-2}
        return angular * omega * 0.5 * radial / d

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "harmonic": self.harmonic.to_dict(),
            "radial_power": self.radial_power,
            "sign_wrapped": self.sign_wrapped,
        }

    @staticmethod
    def from_dict(data: dict[str, Any]) -> "Weight":
        return Weight(
            dim=int(data["dim"]),
            harmonic=HarmonicFactor.from_dict(data["harmonic"]),
            radial_power=float(data["radial_power"]),
            sign_wrapped=bool(data["sign_wrapped"]),
        )


def power_weight(dim: int, gamma: float) -> Weight:
    """The purely radial weight |x|**gamma on R^dim."""
    return Weight(dim=dim, harmonic=HarmonicFactor(HarmonicKind.ONE), radial_power=gamma)
