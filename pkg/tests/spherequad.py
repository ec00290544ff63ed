"""Shared test oracle: composite Gauss-Legendre quadrature over S^{d-1}.

Kept independent of the package's own quadrature (numpy's leggauss) so
closed-form sphere factors are checked against a second implementation.
"""

import math

import numpy as np


def composite_gl(a, b, panels, nodes=24):
    base_x, base_w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(a, b, panels + 1)
    xs, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        xs.append(0.5 * (hi - lo) * base_x + 0.5 * (hi + lo))
        ws.append(0.5 * (hi - lo) * base_w)
    return np.concatenate(xs), np.concatenate(ws)


def sphere_integrate(d, f, phi_panels=4, polar_panels=2):
    """Integrate f over the unit sphere S^{d-1}, d in {1,2,3,4}.

    f maps an (..., d) array of points to values.  phi_panels controls the
    composite split of the in-plane angle (use 4*ell for |cos(ell phi)|
    kinks), polar_panels the split of each polar angle.
    """
    if d == 1:
        pts = np.array([[1.0], [-1.0]])
        return float(np.sum(f(pts)))
    phi, wphi = composite_gl(0.0, 2.0 * math.pi, phi_panels)
    if d == 2:
        pts = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return float(np.sum(wphi * f(pts)))
    theta, wtheta = composite_gl(0.0, math.pi, polar_panels)
    if d == 3:
        T, P = np.meshgrid(theta, phi, indexing="ij")
        pts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1)
        jac = np.sin(T)
        w = np.outer(wtheta, wphi)
        return float(np.sum(w * jac * f(pts)))
    chi, wchi = composite_gl(0.0, math.pi, polar_panels)
    C, T, P = np.meshgrid(chi, theta, phi, indexing="ij")
    pts = np.stack(
        [
            np.sin(C) * np.sin(T) * np.cos(P),
            np.sin(C) * np.sin(T) * np.sin(P),
            np.sin(C) * np.cos(T),
            np.cos(C),
        ],
        axis=-1,
    )
    jac = np.sin(C) ** 2 * np.sin(T)
    w = wchi[:, None, None] * wtheta[None, :, None] * wphi[None, None, :]
    return float(np.sum(w * jac * f(pts)))
