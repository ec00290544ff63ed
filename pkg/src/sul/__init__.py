"""sul: a numerical laboratory for sign uncertainty principles of the Fourier transform.

The package constructs explicit Fourier eigenfunctions (Gaussian mixtures
and Laguerre-basis expansions with harmonic prefactors), measures weighted
last-sign-change radii, evaluates closed-form lower and upper bounds for the
associated extremal problems, applies dimension-shift maps, and searches for
near-extremal eigenfunctions by LP bisection, validated against known sharp
constants.
"""

__version__ = "0.1.0"
