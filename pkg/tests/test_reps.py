"""Tests for eigenfunction representations and weighted integrals.

Oracle routes:
  - closed-form transforms against direct Hankel-type quadrature (scipy
    Bessel functions), and one direct 2-D tensor quadrature;
  - closed-form weighted integrals against sphere quadrature times a
    radial scipy quad;
  - the Gaussian/Laguerre dual representation of the same function via
    the generating identity, which checks both pointwise values and the
    quadrature-based integral route against the Gamma-based route.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import jv

from spherequad import sphere_integrate
from sul.reps import (
    EigenStatus,
    GaussianMixture,
    LaguerreFunction,
    build_f0,
    build_g1,
    build_g1_h1_f1,
    build_psi_t,
    eigen_status,
    evaluate_function,
    evaluate_radial_profile,
    fourier_transform,
    weighted_integral,
)
from sul.weights import HarmonicFactor, HarmonicKind, Weight, power_weight

RNG = np.random.default_rng(7151)

ONE = HarmonicFactor(HarmonicKind.ONE)


def _mix(d, harmonic, terms):
    return GaussianMixture(d, harmonic, tuple(terms))


def _random_mixture(d, harmonic, n_terms=3):
    widths = RNG.uniform(0.3, 4.0, size=n_terms)
    while len(set(widths)) < n_terms:
        widths = RNG.uniform(0.3, 4.0, size=n_terms)
    coeffs = RNG.normal(size=n_terms)
    return _mix(d, harmonic, zip(coeffs, widths))


def _weight_grid():
    out = []
    for d, gamma_r in [(1, 0.0), (2, 0.5), (3, -0.5), (12, 0.0)]:
        out.append(power_weight(d, gamma_r))
    out.append(Weight(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), radial_power=0.5))
    out.append(Weight(3, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 2), radial_power=-1.0))
    out.append(Weight(3, HarmonicFactor(HarmonicKind.PLANE_HARMONIC, 2), radial_power=0.0))
    out.append(
        Weight(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), radial_power=1.0, sign_wrapped=True)
    )
    out.append(
        Weight(4, HarmonicFactor(HarmonicKind.PLANE_HARMONIC, 3), radial_power=-0.5, sign_wrapped=True)
    )
    return out


# ---------------------------------------------------------------------------
# fourier_transform
# ---------------------------------------------------------------------------


def test_transform_self_dual_gaussian():
    for d in (1, 2, 7):
        tr = fourier_transform(_mix(d, ONE, [(1.0, 1.0)]))
        assert tr.phase == 1
        assert tr.mixture.terms == ((1.0, 1.0),)


def test_transform_odd_self_reciprocal():
    h = HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1)
    tr = fourier_transform(_mix(1, h, [(1.0, 1.0)]))
    assert tr.phase == -1j
    assert tr.mixture.terms == ((1.0, 1.0),)


def test_transform_width_four_d2():
    tr = fourier_transform(_mix(2, ONE, [(1.0, 4.0)]))
    assert tr.phase == 1
    (c, a) = tr.mixture.terms[0]
    assert c == pytest.approx(0.25, rel=1e-15)
    assert a == pytest.approx(0.25, rel=1e-15)
    # direct 2-D quadrature of the transform integral at one frequency
    xi = np.array([0.3, 0.7])
    g_x, g_w = np.polynomial.legendre.leggauss(120)
    g_x = 3.0 * g_x
    g_w = 3.0 * g_w
    X, Y = np.meshgrid(g_x, g_x, indexing="ij")
    W = np.outer(g_w, g_w)
    integrand = np.exp(-4.0 * math.pi * (X**2 + Y**2)) * np.cos(
        -2.0 * math.pi * (X * xi[0] + Y * xi[1])
    )
    direct = float(np.sum(W * integrand))
    closed = c * math.exp(-a * math.pi * float(xi @ xi))
    assert direct == pytest.approx(closed, abs=1e-12)


def test_double_transform_is_reflection():
    for harmonic in (ONE, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 2),
                     HarmonicFactor(HarmonicKind.PLANE_HARMONIC, 3)):
        d = max(2, harmonic.min_dimension)
        f = _random_mixture(d, harmonic)
        t1 = fourier_transform(f)
        t2 = fourier_transform(t1.mixture)
        assert t1.phase * t2.phase == pytest.approx((-1.0) ** harmonic.degree)
        got = sorted(t2.mixture.terms, key=lambda t: t[1])
        ref = sorted(f.terms, key=lambda t: t[1])
        for (c1, a1), (c0, a0) in zip(got, ref):
            assert a1 == pytest.approx(a0, rel=1e-12)
            assert c1 == pytest.approx(c0, rel=1e-12)


@pytest.mark.parametrize("d,ell", [(1, 0), (2, 1), (3, 2)])
def test_transform_matches_hankel_quadrature(d, ell):
    # Direct numerical transform through the Bessel reduction: for
    # f = H u(|.|), the transform's radial profile is
    #   2 pi rho^{-nu} int_0^inf u(r) J_nu(2 pi r rho) r^{nu+1} dr,
    # nu = d/2 + ell - 1, up to the global phase (-i)^ell.
    harmonic = ONE if ell == 0 else HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, ell)
    nu = d / 2.0 + ell - 1.0
    for _ in range(7):
        f = _random_mixture(d, harmonic)
        tr = fourier_transform(f)
        a_min = min(a for _, a in f.terms)
        r_max = math.sqrt(34.0 / (a_min * math.pi))
        for rho in np.linspace(0.15, 1.8, 10):
            val, err = quad(
                lambda r: float(f.radial_profile(r)) * jv(nu, 2.0 * math.pi * r * rho) * r ** (nu + 1.0),
                0.0,
                r_max,
                limit=300,
                epsabs=1e-11,
                epsrel=1e-11,
            )
            assert err < 1e-9
            numeric = 2.0 * math.pi * rho ** (-nu) * val
            closed = float(tr.mixture.radial_profile(rho))
            assert numeric == pytest.approx(closed, abs=1e-7)


# ---------------------------------------------------------------------------
# eigen_status
# ---------------------------------------------------------------------------


def test_eigen_status_single_gaussian_not_eigen():
    st = eigen_status(_mix(1, ONE, [(1.0, 2.0)]))
    assert st == EigenStatus(False, None)


def test_eigen_status_g1_antisymmetric():
    g1, _, _ = build_g1_h1_f1(power_weight(1, 0.0), 2.0, 1.5)
    st = eigen_status(g1)
    assert st.is_eigen and st.eigenvalue == -1


def test_eigen_status_of_constructions():
    for w in _weight_grid():
        f0 = build_f0(w, 1.0 + 1.0 / math.sqrt(max(w.dim, 2)))
        st = eigen_status(f0)
        assert st.is_eigen
        assert st.eigenvalue == pytest.approx((-1j) ** w.ell)
        g1, h1, _ = build_g1_h1_f1(w, 3.0, 2.0)
        for g in (g1, h1):
            st = eigen_status(g)
            assert st.is_eigen
            assert st.eigenvalue == pytest.approx(-((-1j) ** w.ell))


def test_eigen_status_plus_transform_symmetrization():
    f = _random_mixture(2, ONE)
    tr = fourier_transform(f)
    sym = _mix(2, ONE, tuple(f.terms) + tuple(tr.mixture.terms))
    st = eigen_status(sym)
    assert st.is_eigen and st.eigenvalue == 1


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def test_f0_pinned_constant():
    f0 = build_f0(power_weight(12, 0.0), 2.0)
    coeff_unit = [c for c, a in f0.terms if a == 1.0]
    assert coeff_unit == [pytest.approx(-65.0, rel=1e-14)]


def test_f0_constant_near_one():
    f0 = build_f0(power_weight(5, 0.0), 1.0 + 1e-9)
    coeff_unit = [c for c, a in f0.terms if a == 1.0][0]
    assert coeff_unit == pytest.approx(-2.0, rel=1e-8)


def test_f0_zero_integral_across_weights():
    for w in _weight_grid():
        f0 = build_f0(w, 1.0 + 1.0 / math.sqrt(max(w.dim + w.ell, 2)))
        scale = abs(weighted_integral(_mix(w.dim, w.harmonic, [(1.0, 1.0)]), w))
        assert abs(weighted_integral(f0, w)) <= 1e-10 * scale


def test_f0_rejects_bad_width():
    with pytest.raises(ValueError):
        build_f0(power_weight(2, 0.0), 1.0)


def test_f1_pinned_combination_constant():
    # exponents (d+ell+gamma)/2 = 1/2 and (ell-gamma)/2 = 0 give
    # A1 = (2 - 1) / (sqrt(2) - 1) = 1 + sqrt(2)
    _, _, f1 = build_g1_h1_f1(power_weight(1, 0.0), 4.0, 2.0)
    coeff = [c for c, a in f1.terms if a == 0.5][0]
    assert coeff == pytest.approx(-(1.0 + math.sqrt(2.0)), rel=1e-13)


def test_f1_zero_integral_across_weights():
    for w in _weight_grid():
        if w.homogeneity_degree == -w.dim / 2.0:
            continue
        _, _, f1 = build_g1_h1_f1(w, 1.9, 1.4)
        scale = abs(weighted_integral(_mix(w.dim, w.harmonic, [(1.0, 1.0)]), w))
        assert abs(weighted_integral(f1, w)) <= 1e-10 * scale


def test_g1_integral_sign_in_low_degree_regime():
    # once gamma <= -d/2 the first exponent drops below the second and the
    # antisymmetric pair has nonpositive weighted integral
    for d, gamma in [(1, -0.8), (2, -1.5), (3, -1.7), (4, -2.9)]:
        w = power_weight(d, gamma)
        for a1 in (1.5, 4.0, 30.0):
            assert weighted_integral(build_g1(w, a1), w) <= 1e-12


def test_g1_integral_vanishes_at_critical_degree():
    for d in (2, 4, 6):
        w = power_weight(d, -d / 2.0)
        assert weighted_integral(build_g1(w, 5.0), w) == pytest.approx(0.0, abs=1e-14)
        with pytest.raises(ValueError):
            build_g1_h1_f1(w, 5.0, 2.0)


def test_f1_combination_constant_bounds():
    # 1 <= A1 <= (a1/b1)^{rho/2} log(a1)/log(b1) at the canonical choice
    # a1 = 1 + 2 alpha, b1 = 1 + alpha, alpha = 1/sqrt(rho)
    for d, ell, gamma_r in [(1, 0, 0.0), (2, 1, -0.4), (3, 0, 1.3), (8, 2, 0.0)]:
        h = ONE if ell == 0 else HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, ell)
        w = Weight(d, h, radial_power=gamma_r)
        rho = d + ell + w.homogeneity_degree
        alpha = 1.0 / math.sqrt(rho)
        a1, b1 = 1.0 + 2.0 * alpha, 1.0 + alpha
        _, _, f1 = build_g1_h1_f1(w, a1, b1)
        big_a1 = -[c for c, a in f1.terms if a == 1.0 / b1][0]
        assert 1.0 - 1e-12 <= big_a1
        assert big_a1 <= (a1 / b1) ** (rho / 2.0) * math.log(a1) / math.log(b1) + 1e-12


def test_g1_rejects_bad_ordering():
    with pytest.raises(ValueError):
        build_g1_h1_f1(power_weight(1, 0.0), 2.0, 2.0)
    with pytest.raises(ValueError):
        build_g1_h1_f1(power_weight(1, 0.0), 2.0, 0.5)


def test_psi_t_integrals():
    for w in [power_weight(1, 0.0), power_weight(3, 2.5),
              Weight(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), radial_power=0.5)]:
        for t in (0.5, 1.0, 3.0):
            psi, tr = build_psi_t(w, t)
            assert weighted_integral(psi, w) > 0.0
            scale = abs(weighted_integral(_mix(w.dim, w.harmonic, [(1.0, 1.0)]), w))
            assert abs(weighted_integral(tr.mixture, w)) <= 1e-10 * scale


def test_psi_t_equal_degree_coefficients():
    w = Weight(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1))
    psi, _ = build_psi_t(w, 1.0)
    coeffs = sorted(c for c, _ in psi.terms)
    assert coeffs == [pytest.approx(-1.0), pytest.approx(1.0)]


def test_psi_t_rejects_low_degree():
    with pytest.raises(ValueError):
        build_psi_t(Weight(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), radial_power=-0.5), 1.0)


# ---------------------------------------------------------------------------
# weighted_integral
# ---------------------------------------------------------------------------


def test_weighted_integral_unit_gaussian_closed_form():
    for w in _weight_grid():
        if w.sign_wrapped:
            continue
        f = _mix(w.dim, w.harmonic, [(1.0, 1.0)])
        deff = w.dim + 2 * w.ell + w.radial_power
        expected = (
            w.sphere_moment()
            * math.exp(math.lgamma(deff / 2.0))
            / (2.0 * math.pi ** (deff / 2.0))
        )
        assert weighted_integral(f, w) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("w", _weight_grid(), ids=lambda w: f"{w.harmonic.kind.value}-l{w.ell}-d{w.dim}-g{w.radial_power}-{'sgn' if w.sign_wrapped else 'plain'}")
def test_weighted_integral_matches_brute_quadrature(w):
    if w.dim > 4:
        pytest.skip("brute sphere quadrature oracle only implemented for d <= 4")
    f = _random_mixture(w.dim, w.harmonic)
    if w.sign_wrapped:
        sphere = sphere_integrate(
            w.dim, lambda x: np.abs(w.harmonic.evaluate(x)), phi_panels=4 * max(w.ell, 1)
        )
        deff = w.dim + w.ell + w.radial_power
    else:
        sphere = sphere_integrate(w.dim, lambda x: w.harmonic.evaluate(x) ** 2)
        deff = w.dim + 2 * w.ell + w.radial_power
    a_min = min(a for _, a in f.terms)
    r_max = math.sqrt(40.0 / (a_min * math.pi))
    radial, err = quad(
        lambda r: float(f.radial_profile(r)) * r ** (deff - 1.0),
        0.0,
        r_max,
        limit=400,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    ref = sphere * radial
    got = weighted_integral(f, w)
    assert got == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_weighted_integral_laguerre_route_vs_brute():
    h = HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1)
    w = Weight(3, h, radial_power=0.5)
    f = LaguerreFunction(3, h, (0.7, -0.3, 0.0, 1.1, 0.25))
    deff = 3 + 2 * 1 + 0.5
    radial, err = quad(
        lambda r: float(f.radial_profile(r)) * r ** (deff - 1.0),
        0.0,
        12.0,
        limit=400,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    ref = w.sphere_moment() * radial
    assert weighted_integral(f, w) == pytest.approx(ref, rel=1e-11)


def test_weighted_integral_orthogonal_harmonics_vanish():
    f = _random_mixture(3, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 2))
    assert weighted_integral(f, power_weight(3, 0.5)) == 0.0
    w = Weight(3, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), radial_power=0.5)
    assert weighted_integral(f, w) == 0.0


def test_weighted_integral_plane_alias_matches():
    # x_1 written as a coordinate product and as a plane harmonic is the
    # same function, so the pairing must agree
    f_cp = _mix(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), [(1.0, 1.0)])
    w_ph = Weight(2, HarmonicFactor(HarmonicKind.PLANE_HARMONIC, 1), radial_power=0.5)
    w_cp = Weight(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), radial_power=0.5)
    assert weighted_integral(f_cp, w_ph) == pytest.approx(weighted_integral(f_cp, w_cp), rel=1e-13)


def test_weighted_integral_divergent_raises():
    f = _mix(2, ONE, [(1.0, 1.0)])
    with pytest.raises(ValueError):
        weighted_integral(f, power_weight(2, -2.0))
    with pytest.raises(ValueError):
        weighted_integral(f, power_weight(2, -2.5))


def test_weighted_integral_wrapped_mismatch_raises():
    f = _random_mixture(3, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 2))
    w = Weight(3, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1), sign_wrapped=True)
    with pytest.raises(ValueError):
        weighted_integral(f, w)


def test_weighted_integral_dimension_mismatch_raises():
    f = _mix(2, ONE, [(1.0, 1.0)])
    with pytest.raises(ValueError):
        weighted_integral(f, power_weight(3, 0.0))


def test_scaling_covariance():
    for w in _weight_grid():
        f = _random_mixture(w.dim, w.harmonic)
        base = weighted_integral(f, w)
        for delta in (0.5, 2.0, 7.3):
            scaled = weighted_integral(f.dilate(delta), w)
            expected = delta ** -(w.dim + w.homogeneity_degree) * base
            assert scaled == pytest.approx(expected, rel=1e-10)


def test_riesz_identity_for_eigenfunction_mixtures():
    for d, gamma in [(2, -1.0), (3, -1.5), (4, -2.5)]:
        for _ in range(7):
            m = _mix(
                d,
                ONE,
                zip(RNG.normal(size=2), RNG.uniform(1.1, 5.0, size=2)),
            )
            tr = fourier_transform(m)
            f = _mix(d, ONE, tuple(m.terms) + tuple(tr.mixture.terms))
            fhat = fourier_transform(f).mixture
            lhs = (
                math.exp(math.lgamma((d + gamma) / 2.0))
                * math.pi ** (-(d + gamma) / 2.0)
                * weighted_integral(fhat, power_weight(d, -d - gamma))
            )
            rhs = (
                math.exp(math.lgamma(-gamma / 2.0))
                * math.pi ** (gamma / 2.0)
                * weighted_integral(f, power_weight(d, gamma))
            )
            assert lhs == pytest.approx(rhs, rel=1e-9)


# ---------------------------------------------------------------------------
# Gaussian/Laguerre dual representation
# ---------------------------------------------------------------------------


def _laguerre_expansion_of_gaussian(d, harmonic, t, n_terms):
    # exp(-t pi r^2) = (1-z)^{alpha+1} sum_k z^k L_k^{(alpha)}(2 pi r^2)
    # exp(-pi r^2) with z = (t-1)/(t+1)
    z = (t - 1.0) / (t + 1.0)
    alpha = d / 2.0 + harmonic.degree - 1.0
    pref = (1.0 - z) ** (alpha + 1.0)
    coeffs = tuple(pref * z**k for k in range(n_terms))
    return LaguerreFunction(d, harmonic, coeffs)


def test_laguerre_expansion_matches_gaussian_pointwise():
    h = HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1)
    t = 1.5
    lag = _laguerre_expansion_of_gaussian(2, h, t, 45)
    r = np.linspace(0.0, 3.0, 40)
    np.testing.assert_allclose(
        lag.radial_profile(r), np.exp(-t * math.pi * r * r), rtol=1e-12, atol=1e-12
    )


def test_laguerre_term_eigenvalues_via_generating_identity():
    # the transform of the t-Gaussian is t^{-(alpha+1)} times the
    # 1/t-Gaussian; flipping the sign of every odd Laguerre coefficient
    # must reproduce exactly that profile
    h = HarmonicFactor(HarmonicKind.PLANE_HARMONIC, 2)
    d, t = 3, 1.4
    alpha = d / 2.0 + 2 - 1.0
    lag = _laguerre_expansion_of_gaussian(d, h, t, 50)
    flipped = LaguerreFunction(d, h, lag.transformed_coeffs())
    r = np.linspace(0.0, 2.5, 30)
    expected = t ** -(alpha + 1.0) * np.exp(-math.pi * r * r / t)
    np.testing.assert_allclose(flipped.radial_profile(r), expected, rtol=1e-11, atol=1e-13)


def test_laguerre_and_gamma_integral_routes_agree():
    for w in _weight_grid():
        if w.dim > 4:
            continue
        t = 1.35
        gauss = _mix(w.dim, w.harmonic, [(1.0, t)])
        lag = _laguerre_expansion_of_gaussian(w.dim, w.harmonic, t, 60)
        assert weighted_integral(lag, w) == pytest.approx(
            weighted_integral(gauss, w), rel=1e-10
        )


# ---------------------------------------------------------------------------
# evaluation helpers and serialization
# ---------------------------------------------------------------------------


def test_evaluate_f0_at_origin_with_harmonic():
    w = Weight(2, HarmonicFactor(HarmonicKind.COORDINATE_PRODUCT, 1))
    f0 = build_f0(w, 2.0)
    assert evaluate_function(f0, np.zeros(2)) == 0.0


def test_f0_radial_profile_vanishes_at_zero_when_balanced():
    f0 = build_f0(power_weight(12, 0.0), 2.0)
    assert evaluate_radial_profile(f0, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_radial_profile_unit_gaussian():
    f = _mix(1, ONE, [(1.0, 1.0)])
    assert evaluate_radial_profile(f, 1.0) == pytest.approx(math.exp(-math.pi), rel=1e-15)


def test_mixture_validation():
    with pytest.raises(ValueError):
        _mix(2, ONE, [(1.0, 1.0), (2.0, 1.0)])
    with pytest.raises(ValueError):
        _mix(2, ONE, [(1.0, -1.0)])
    with pytest.raises(ValueError):
        _mix(2, ONE, [(0.0, 1.0), (0.0, 2.0)])
    with pytest.raises(ValueError):
        _mix(1, HarmonicFactor(HarmonicKind.PLANE_HARMONIC, 2), [(1.0, 1.0)])


def test_serialization_round_trips():
    f = _random_mixture(3, HarmonicFactor(HarmonicKind.PLANE_HARMONIC, 2))
    assert GaussianMixture.from_dict(f.to_dict()) == f
    lag = LaguerreFunction(2, ONE, (1.0, 0.0, -0.5))
    assert LaguerreFunction.from_dict(lag.to_dict()) == lag
    assert f.to_dict()["kind"] == "gaussian"
    assert lag.to_dict()["kind"] == "laguerre"
