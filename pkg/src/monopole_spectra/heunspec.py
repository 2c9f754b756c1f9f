"""Heun parameter sets for the curved-space even-parity channels.

Both Coulomb and oscillator even channels reduce, after pulling out the
singular-point exponents (A, B, C) at z = 0, 1, -1, to the general Heun
equation handled by `specfun`. The termination condition on one of the
exponents at infinity (beta = -n) is formal: it is one of the two necessary
polynomial conditions, the accessory-parameter condition being left open, so
levels derived this way are labelled accordingly and compared against the
finite-difference oracle without being asserted.
"""

from __future__ import annotations

import math

import numpy as np

from .core import HalfInt, as_half_integer
from .spectra import CH_EVEN_1, CH_EVEN_2, SpectrumError
from .specfun import HeunParams, heun_ode_residual


class HeunDomainError(ValueError):
    """A substitution-exponent radicand went negative."""


def _sqrt_or_raise(radicand: float, label: str) -> float:
    if radicand < 0.0:
        raise HeunDomainError(f"negative radicand in {label}: {radicand:.6g}")
    return math.sqrt(radicand)


def _even_channel_a_coulomb(j: float, channel: str, bound_branch: bool) -> float:
    # z = 0 exponents: {j+2, -(j+1)} for channel 1, {j, 1-j} for channel 2
    if channel == CH_EVEN_1:
        return j + 2.0 if bound_branch else -(j + 1.0)
    if channel == CH_EVEN_2:
        return j if bound_branch else 1.0 - j
    raise SpectrumError(f"unknown even channel {channel!r}")


def coulomb_exponents(energy: float, alpha: float, mass: float, j: HalfInt, channel: str,
                      branch_override: tuple[bool, int, int] | None = None) -> tuple[float, float, float]:
    """Bound-branch substitution exponents (A, B, C) for the Coulomb channels:

        A = j+2 (channel 1) or j (channel 2),
        B = 1/2 + sqrt(-2M(E+alpha)),  C = 1/2 - sqrt(-2M(E-alpha)).

    Needs E + alpha < 0 and E - alpha < 0. branch_override = (a_bound, b_sign,
    c_sign) exposes the rejected exponent branches for exploration only.
    """
    jf = float(as_half_integer(j, "j"))
    a_bound, b_sign, c_sign = branch_override if branch_override is not None else (True, +1, -1)
    u = _sqrt_or_raise(-2.0 * mass * (energy + alpha), "B: -2M(E+alpha)")
    v = _sqrt_or_raise(-2.0 * mass * (energy - alpha), "C: -2M(E-alpha)")
    a_exp = _even_channel_a_coulomb(jf, channel, a_bound)
    return a_exp, 0.5 + b_sign * u, 0.5 + c_sign * v


def heun_params_coulomb(energy: float, alpha: float, mass: float, j: HalfInt, channel: str,
                        branch_override: tuple[bool, int, int] | None = None) -> HeunParams:
    """Heun parameters of the transformed Coulomb channel in z = tanh(r/2):

        gamma = 2A, delta = 2B, eps = 2C, q = 4 M alpha - 2A(B - C),
        lam = -j - 1 + (A+B+C), beta = j + (A+B+C).

    The Fuchs relation holds identically (2A + 2B + 2C = 2(A+B+C) + 1 - 1).
    """
    jf = float(as_half_integer(j, "j"))
    a_exp, b_exp, c_exp = coulomb_exponents(energy, alpha, mass, j, channel, branch_override)
    s = a_exp + b_exp + c_exp
    return HeunParams(
        gamma=2.0 * a_exp,
        delta=2.0 * b_exp,
        eps=2.0 * c_exp,
        lam=-jf - 1.0 + s,
        beta=jf + s,
        q=4.0 * mass * alpha - 2.0 * a_exp * (b_exp - c_exp),
    )


def solve_coulomb_beta_condition(alpha: float, mass: float, j: HalfInt, n: int, channel: str) -> float:
    """Energy for which beta = -n in the Coulomb channel:
    E = -M alpha^2/(2 N^2) - N^2/(2M), N = j + 3/2 + n/2 (channel 1) or
    j + 1/2 + n/2 (channel 2)."""
    jf = float(as_half_integer(j, "j"))
    big_n = jf + 1.5 + 0.5 * n if channel == CH_EVEN_1 else jf + 0.5 + 0.5 * n
    if channel not in (CH_EVEN_1, CH_EVEN_2):
        raise SpectrumError(f"unknown even channel {channel!r}")
    return -mass * alpha * alpha / (2.0 * big_n * big_n) - big_n * big_n / (2.0 * mass)


def oscillator_exponents(k_osc: float, mass: float, j: HalfInt, channel: str,
                         branch_override: tuple[int, bool, bool] | None = None) -> tuple[float, float, float]:
    """Bound-branch exponents (A, B, C) for the oscillator channels in x = cosh r:

        A = (1 - sqrt(1 + 4MK))/2,
        B = 1 + j/2 (channel 1) or j/2 (channel 2),
        C = 1/2 + j/2 (channel 1) or (1+j)/2 (channel 2).
    """
    jf = float(as_half_integer(j, "j"))
    a_sign, b_bound, c_bound = branch_override if branch_override is not None else (-1, True, True)
    a_exp = 0.5 + a_sign * 0.5 * _sqrt_or_raise(1.0 + 4.0 * mass * k_osc, "A: 1+4MK")
    if channel == CH_EVEN_1:
        b_exp = 1.0 + jf / 2.0 if b_bound else -0.5 - jf / 2.0
        c_exp = 0.5 + jf / 2.0 if c_bound else -jf / 2.0
    elif channel == CH_EVEN_2:
        b_exp = jf / 2.0 if b_bound else (1.0 - jf) / 2.0
        c_exp = (1.0 + jf) / 2.0 if c_bound else -jf / 2.0
    else:
        raise SpectrumError(f"unknown even channel {channel!r}")
    return a_exp, b_exp, c_exp


def heun_params_oscillator(energy: float, k_osc: float, mass: float, j: HalfInt, channel: str,
                           branch_override: tuple[int, bool, bool] | None = None) -> HeunParams:
    """Heun parameters of the transformed oscillator channel in x = cosh r:

        gamma = 2A, delta = 2B + 1/2, eps = 2C + 1/2, q = -2A(B - C),
        lam/beta = A + B + C +- sqrt(-M(2E - K)).

    Needs E <= K/2 (below the continuum edge) for real lam, beta.
    """
    a_exp, b_exp, c_exp = oscillator_exponents(k_osc, mass, j, channel, branch_override)
    w = _sqrt_or_raise(-mass * (2.0 * energy - k_osc), "lam/beta: -M(2E-K)")
    s = a_exp + b_exp + c_exp
    return HeunParams(
        gamma=2.0 * a_exp,
        delta=2.0 * b_exp + 0.5,
        eps=2.0 * c_exp + 0.5,
        lam=s + w,
        beta=s - w,
        q=-2.0 * a_exp * (b_exp - c_exp),
    )


def solve_oscillator_beta_condition(k_osc: float, mass: float, j: HalfInt, n: int, channel: str) -> float:
    """Energy for which one exponent at infinity equals -n in the oscillator
    channel: E = N sqrt(K/M + (1/2M)^2) - (N^2 + 1/4)/(2M) with N = 2 + j + n
    (channel 1) or 1 + j + n (channel 2).

    The termination root is lam or beta depending on the sign of
    A + B + C + n; the spectrum formula is the same either way.
    """
    jf = float(as_half_integer(j, "j"))
    if channel == CH_EVEN_1:
        big_n = 2.0 + jf + n
    elif channel == CH_EVEN_2:
        big_n = 1.0 + jf + n
    else:
        raise SpectrumError(f"unknown even channel {channel!r}")
    return big_n * math.sqrt(k_osc / mass + 0.25 / (mass * mass)) - (big_n**2 + 0.25) / (2.0 * mass)


def termination_defect(params: HeunParams, n: int) -> float:
    """How far the parameter set is from having a terminating exponent:
    min(|lam + n|, |beta + n|)."""
    return min(abs(params.lam + n), abs(params.beta + n))


def heun_residual_on_disc(params: HeunParams, z_grid=None) -> float:
    """Max relative ODE residual of the local Heun series over the grid
    (default 60 points on [-0.8, 0.8] avoiding 0)."""
    if z_grid is None:
        z_grid = np.concatenate([np.linspace(-0.8, -0.02, 30), np.linspace(0.02, 0.8, 30)])
    worst = 0.0
    for z in np.asarray(z_grid, dtype=float):
        if abs(z) > 0.8 + 1e-12:
            raise SpectrumError("residual disc restricted to |z| <= 0.8")
        if z == 0.0:
            continue
        worst = max(worst, heun_ode_residual(params, float(z)))
    return worst
