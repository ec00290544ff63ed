"""Direct numerical Fourier transforms in 1 and 2 dimensions.

Brute-force oracle used by the dimension-shift tests: tensor
Gauss-Legendre quadrature of f(x) exp(-2 pi i <x, xi>) over a box large
enough that the Gaussian tails are below 1e-12.  Independent of every
closed-form route in the package.
"""

import numpy as np

from sul.reps import evaluate_function


def _gl_nodes(n, half_width):
    x, w = np.polynomial.legendre.leggauss(n)
    return x * half_width, w * half_width


def numeric_transform(f, xis, half_width=8.0, n=360):
    """f-hat at the rows of xis (shape (m, d)), d in {1, 2}."""
    xis = np.asarray(xis, dtype=float)
    d = xis.shape[1]
    if d == 1:
        x, w = _gl_nodes(4 * n, half_width)
        pts = x[:, None]
        weights = w
    elif d == 2:
        x, w = _gl_nodes(n, half_width)
        gx, gy = np.meshgrid(x, x, indexing="ij")
        pts = np.stack([gx.ravel(), gy.ravel()], axis=-1)
        weights = np.outer(w, w).ravel()
    else:
        raise ValueError("only d = 1 and d = 2 are supported")
    vals = evaluate_function(f, pts) * weights
    phases = np.exp(-2j * np.pi * (pts @ xis.T))
    return vals @ phases
