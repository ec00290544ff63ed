"""Special functions and quadrature rules used throughout the package.

Everything here is self-contained: log-gamma is a Lanczos approximation with
fixed published coefficients, and the Gaussian quadrature rules are built by
the Golub-Welsch method with an in-repo implicit-QL tridiagonal eigensolver.
The test suite cross-checks both against stdlib/scipy oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureRule",
    "log_gamma",
    "gamma",
    "ball_volume",
    "sphere_surface",
    "laguerre_eval",
    "gauss_laguerre_rule",
    "gauss_legendre_rule",
]

MAX_LAGUERRE_DEGREE = 200
MAX_QUADRATURE_NODES = 256

# Lanczos approximation, g = 7, 9 coefficients.  This is the widely
# published double-precision set (relative error below 1e-13 on the
# positive real axis).
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0 (Lanczos approximation)."""
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    if x < 0.5:
        # Reflection keeps the Lanczos series in its accurate range.
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def gamma(x: float) -> float:
    """Gamma(x) for real x > 0, via exp(log_gamma); overflows past x ~ 171."""
    return math.exp(log_gamma(x))


def ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d: pi^(d/2) / Gamma(d/2 + 1)."""
    if d < 1:
        raise ValueError(f"ball_volume requires d >= 1, got {d}")
    return math.exp(0.5 * d * math.log(math.pi) - log_gamma(0.5 * d + 1.0))


def sphere_surface(d: int) -> float:
    """Surface measure of the unit sphere S^(d-1) in R^d: 2 pi^(d/2) / Gamma(d/2)."""
    if d < 1:
        raise ValueError(f"sphere_surface requires d >= 1, got {d}")
    return math.exp(math.log(2.0) + 0.5 * d * math.log(math.pi) - log_gamma(0.5 * d))


def laguerre_eval(k: int, alpha: float, u):
    """Generalized Laguerre polynomial L_k^(alpha)(u), standard normalization.

    Three-term recurrence, stable for the k <= 200 range this package uses.
    `u` may be a float or an ndarray; the return type matches.
    """
    if k < 0:
        raise ValueError(f"laguerre_eval requires k >= 0, got {k}")
    if k > MAX_LAGUERRE_DEGREE:
        raise ValueError(f"laguerre_eval supports k <= {MAX_LAGUERRE_DEGREE}, got {k}")
    if alpha <= -1.0:
        raise ValueError(f"laguerre_eval requires alpha > -1, got {alpha}")
    u = np.asarray(u, dtype=float)
    prev = np.ones_like(u)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - u
    for n in range(1, k):
        prev, cur = cur, ((2.0 * n + 1.0 + alpha - u) * cur - (n + alpha) * prev) / (n + 1.0)
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights defining the linear functional f -> sum_i w_i f(x_i).

    `alpha` records the exponent parameter of the weight the rule integrates
    against (u^alpha e^-u for Gauss-Laguerre; 0 where not applicable).
    """

    nodes: np.ndarray
    weights: np.ndarray
    alpha: float = 0.0
    kind: str = "custom"

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Apply the rule to a callable evaluated on the nodes."""
        return float(np.dot(self.weights, np.asarray(f(self.nodes), dtype=float)))

    def integrate_values(self, values) -> float:
        """Apply the rule to values already evaluated on the nodes."""
        return float(np.dot(self.weights, np.asarray(values, dtype=float)))


def _tridiag_eigen_ql(diag: np.ndarray, offdiag: np.ndarray, z: np.ndarray,
                      max_sweeps: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Implicit-QL eigensolver for a symmetric tridiagonal matrix.

    Returns (eigenvalues, transformed z) where z accumulates the same
    orthogonal rotations applied to the matrix.  Seeding z with e_1 yields
    the first components of the normalized eigenvectors, which is what
    Golub-Welsch needs for quadrature weights.
    """
    n = diag.size
    d = diag.copy()
    e = np.zeros(n)
    e[: n - 1] = offdiag
    z = z.copy()
    for l in range(n):
        for sweep in range(max_sweeps + 1):
            # Find a small off-diagonal element marking a deflation point.
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= np.finfo(float).eps * dd:
                    break
                m += 1
            if m == l:
                break
            if sweep == max_sweeps:
                raise RuntimeError("tridiagonal QL failed to converge")
            # Implicit shift from the 2x2 block at l.
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s, c = 1.0, 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                # Rotate the accumulated vector.
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
                continue
            continue
    order = np.argsort(d, kind="stable")
    return d[order], z[order]


def _golub_welsch(diag: np.ndarray, offdiag: np.ndarray, mu0: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights from a Jacobi matrix and the zeroth moment mu0."""
    z = np.zeros(diag.size)
    z[0] = 1.0
    nodes, first = _tridiag_eigen_ql(diag, offdiag, z)
    weights = mu0 * first**2
    return nodes, weights


def gauss_laguerre_rule(n: int, alpha: float = 0.0) -> QuadratureRule:
    """Gauss-Laguerre rule: integrates f(u) u^alpha e^(-u) du on (0, inf).

    Exact for polynomial f of degree <= 2n - 1.  Requires alpha > -1 and
    1 <= n <= 256.
    """
    if not 1 <= n <= MAX_QUADRATURE_NODES:
        raise ValueError(f"gauss_laguerre_rule requires 1 <= n <= {MAX_QUADRATURE_NODES}, got {n}")
    if alpha <= -1.0:
        raise ValueError(f"gauss_laguerre_rule requires alpha > -1, got {alpha}")
    k = np.arange(n, dtype=float)
    diag = 2.0 * k + alpha + 1.0
    j = np.arange(1, n, dtype=float)
    offdiag = np.sqrt(j * (j + alpha))
    mu0 = gamma(alpha + 1.0)
    nodes, weights = _golub_welsch(diag, offdiag, mu0)
    return QuadratureRule(nodes, weights, alpha=alpha, kind="gauss_laguerre")


def gauss_legendre_rule(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """Gauss-Legendre rule on [a, b], exact for polynomials of degree <= 2n - 1."""
    if not 1 <= n <= MAX_QUADRATURE_NODES:
        raise ValueError(f"gauss_legendre_rule requires 1 <= n <= {MAX_QUADRATURE_NODES}, got {n}")
    if not b > a:
        raise ValueError("gauss_legendre_rule requires b > a")
    diag = np.zeros(n)
    j = np.arange(1, n, dtype=float)
    offdiag = j / np.sqrt(4.0 * j**2 - 1.0)
    nodes, weights = _golub_welsch(diag, offdiag, 2.0)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return QuadratureRule(mid + half * nodes, half * weights, alpha=0.0, kind="gauss_legendre")
