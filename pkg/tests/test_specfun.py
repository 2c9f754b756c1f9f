"""Series evaluators: hypergeometric oracles and the local Heun function."""

import math

import numpy as np
import pytest

from monopole_spectra import specfun


def test_1f1_polynomial_degree_one():
    for z in (-2.0, 0.3, 5.0):
        assert specfun.kummer_1f1(-1, 2, z) == pytest.approx(1 - z / 2, abs=1e-15)


def test_1f1_at_zero():
    assert specfun.kummer_1f1(0.7, 1.9, 0.0) == 1.0


def test_1f1_exponential_identity():
    # 1F1(1; 1; z) = e^z
    for z in (0.5, -1.2, 3.0):
        assert specfun.kummer_1f1(1, 1, z) == pytest.approx(math.exp(z), rel=1e-13)


def test_1f1_rejects_bad_denominator():
    with pytest.raises(specfun.SeriesError):
        specfun.kummer_1f1(0.5, -2, 0.3)
    # polynomial case shorter than the pole is fine: 1F1(-1; -2; z) = 1 + z/2
    assert specfun.kummer_1f1(-1, -2, 0.6) == pytest.approx(1.3, abs=1e-15)


def test_2f1_binomial_identity():
    # 2F1(a, b; b; z) = (1-z)^(-a)
    for (a, z) in [(0.7, 0.4), (2.0, -0.8), (1.3, 0.05)]:
        assert specfun.gauss_2f1(a, 2.2, 2.2, z) == pytest.approx((1 - z) ** (-a), rel=1e-12)


def test_2f1_polynomial_by_finite_sum():
    # 2F1(-2, 3; 2; 0.4) = 1 + (-2*3/2)*0.4 + ((-2)(-1)(3)(4)/(2*3*2!))*0.16 = 0.12
    assert specfun.gauss_2f1(-2, 3, 2, 0.4) == pytest.approx(0.12, abs=1e-14)
    assert specfun.gauss_2f1(-2, 3, 2, 0.0) == 1.0


def test_2f1_terminates_on_second_parameter():
    assert specfun.gauss_2f1(3, -2, 2, 0.4) == pytest.approx(0.12, abs=1e-14)


def test_2f1_domain_error_outside_disc():
    with pytest.raises(specfun.SeriesError):
        specfun.gauss_2f1(0.5, 0.7, 1.9, 1.2)
    # polynomial case is valid anywhere
    assert specfun.gauss_2f1(-2, 3, 2, 4.0) == pytest.approx(1 - 12.0 + 32.0, abs=1e-12)


def test_ode_residuals_on_disc():
    zs = np.linspace(-0.8, 0.8, 17)
    for z in zs:
        if z == 0.0:
            continue
        assert specfun.ode_residual_1f1(0.7, 1.3, float(z)) <= 1e-9
        assert specfun.ode_residual_2f1(0.4, 1.1, 2.3, float(z)) <= 1e-9


def test_polynomial_and_series_modes_agree():
    # independent plain term-by-term sum (runs past the terminating index,
    # where every further term is exactly zero) vs the polynomial shortcut
    def plain_2f1(a, b, c, z, terms=60):
        tot = term = 1.0
        for k in range(terms):
            term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
            tot += term
        return tot

    def plain_1f1(a, b, z, terms=60):
        tot = term = 1.0
        for k in range(terms):
            term *= (a + k) / ((b + k) * (k + 1.0)) * z
            tot += term
        return tot

    assert specfun.gauss_2f1(-3, 1.4, 2.6, 0.5) == pytest.approx(plain_2f1(-3, 1.4, 2.6, 0.5), abs=1e-12)
    assert specfun.kummer_1f1(-4, 2.5, 1.7) == pytest.approx(plain_1f1(-4, 2.5, 1.7), abs=1e-12)


def test_heun_params_fuchs_enforced():
    with pytest.raises(specfun.SeriesError):
        specfun.HeunParams(gamma=1.0, delta=1.0, eps=1.0, lam=0.5, beta=0.5, q=0.0)


def test_heun_normalization_and_first_coefficient():
    p = specfun.HeunParams(gamma=1.3, delta=0.7, eps=0.5, lam=0.9, beta=0.6, q=0.37)
    h0, h1, _ = specfun.heun_local_derivatives(p, 0.0)
    assert h0 == 1.0
    assert h1 == pytest.approx(-p.q / p.gamma, abs=1e-15)
    # H'(0) = -q/gamma against a small finite difference
    eps_fd = 1e-6
    hp = specfun.heun_local(p, eps_fd)
    hm = specfun.heun_local(p, -eps_fd)
    assert (hp - hm) / (2 * eps_fd) == pytest.approx(-p.q / p.gamma, abs=1e-6)


def test_heun_coefficients_recurrence_start():
    p = specfun.HeunParams(gamma=2.0, delta=1.1, eps=0.4, lam=1.5, beta=1.0, q=-0.3)
    c = specfun.heun_coefficients(p, 3)
    assert c[0] == 1.0 and c[1] == pytest.approx(-p.q / p.gamma, abs=1e-15)
    # k = 1 balance: 2(1+gamma) c2 = (delta - eps - q) c1 + lam*beta c0
    lhs = 2.0 * (1.0 + p.gamma) * c[2]
    rhs = (p.delta - p.eps - p.q) * c[1] + p.lam * p.beta * c[0]
    assert lhs == pytest.approx(rhs, abs=1e-14)


def test_heun_degenerate_gamma_rejected():
    p = specfun.HeunParams(gamma=0.0, delta=1.0, eps=0.5, lam=0.3, beta=0.2, q=0.1)
    with pytest.raises(specfun.SeriesError):
        specfun.heun_local(p, 0.2)


def test_heun_outside_disc_rejected():
    p = specfun.HeunParams(gamma=1.3, delta=0.7, eps=0.5, lam=0.9, beta=0.6, q=0.37)
    with pytest.raises(specfun.SeriesError):
        specfun.heun_local(p, 1.0)


def test_heun_ode_residual_random_params():
    rng = np.random.default_rng(7)
    for _ in range(12):
        gamma = 0.5 + 2.0 * rng.random()
        delta = -1.0 + 2.0 * rng.random()
        eps = -1.0 + 2.0 * rng.random()
        lam = -2.0 + 4.0 * rng.random()
        beta = gamma + delta + eps - lam - 1.0
        q = -1.0 + 2.0 * rng.random()
        p = specfun.HeunParams(gamma=gamma, delta=delta, eps=eps, lam=lam, beta=beta, q=q)
        for z in (-0.7, 0.35, 0.8):
            assert specfun.heun_ode_residual(p, z) <= 1e-9


def test_heun_degenerates_to_2f1_when_third_singularity_removable():
    # eps = 0 and q = -lam*beta make z = -1 ordinary: H = 2F1(lam, beta; gamma; z)
    lam, beta, gamma = 0.8, 0.6, 1.1
    p = specfun.HeunParams(gamma=gamma, delta=lam + beta + 1 - gamma, eps=0.0,
                           lam=lam, beta=beta, q=-lam * beta)
    for z in (-0.6, 0.25, 0.7):
        assert specfun.heun_local(p, z) == pytest.approx(
            specfun.gauss_2f1(lam, beta, gamma, z), abs=1e-10
        )


def test_heun_compensated_path_matches_double_path():
    p = specfun.HeunParams(gamma=1.3, delta=0.7, eps=0.5, lam=0.9, beta=0.6, q=0.37)
    for z in (-0.5, 0.3, 0.75):
        hd = specfun.heun_local(p, z)
        ha = specfun.heun_local_accurate(p, z)[0]
        assert hd == pytest.approx(ha, rel=1e-12)
