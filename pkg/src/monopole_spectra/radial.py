"""Effective one-dimensional radial problems and analytic wavefunctions.

Every channel reduces to Liouville normal form u'' + (2 M w E - V_eff(r)) u = 0
(the flat channels after u = r f), except the curved minimum-j Coulomb channel
which is quadratic in the relativistic energy:
u'' + ((eps + alpha/tanh r)^2 - M^2) u = 0. Analytic solutions are assembled
from the closed-form substitutions and validated pointwise by finite-difference
residuals on their own samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import ivp
from .core import (
    GEOMETRY_FLAT,
    GEOMETRY_LOBACHEVSKY,
    POTENTIAL_COULOMB,
    POTENTIAL_NONE,
    POTENTIAL_OSCILLATOR,
    HalfInt,
    Scenario,
    as_half_integer,
)
from .spectra import (
    CH_BRANCH,
    CH_EVEN_1,
    CH_EVEN_2,
    CH_MIN_J,
    CH_PARITY_ODD,
    EnergyLevel,
)

LINEAR_IN_E = "linear-in-E"
QUADRATIC_IN_EPSILON = "quadratic-in-epsilon"


class RadialError(ValueError):
    pass


@dataclass(frozen=True)
class RadialProblem:
    """A radial eigenproblem in normal form on (0, infinity).

    For linearity == 'linear-in-E' the equation is
        u'' + (2 * mass * weight * E - v_eff(r)) u = 0,
    and `continuum_edge` (set for curved geometries) is the E value of
    lim_{r->inf} v_eff/(2 M w); eigenvalues below it are genuine bound states.
    For 'quadratic-in-epsilon' the equation is u'' + quad_coeff(r, eps) u = 0.
    """

    tag: str
    scenario: Scenario
    channel: str
    j: Fraction
    mass: float
    weight: float = 1.0
    v_eff: Optional[Callable] = None
    quad_coeff: Optional[Callable] = None
    linearity: str = LINEAR_IN_E
    origin_exponent: float = 1.0
    continuum_edge: Optional[float] = None
    peculiar_origin: bool = False  # u(0) != 0 admitted (reduced free channel)

    def energy_from_eigenvalue(self, mu: float) -> float:
        return mu / (2.0 * self.mass * self.weight)

    def eigenvalue_from_energy(self, energy: float) -> float:
        return 2.0 * self.mass * self.weight * energy


def _coth(r):
    return np.cosh(r) / np.sinh(r)


def build_problem(scenario: Scenario, channel: str, j: HalfInt) -> RadialProblem:
    """Effective radial problem for (scenario, channel, j).

    Flat channels carry V = L(L+1)/r^2 plus -2 M alpha / r or M K r^2; curved
    channels are built from j(j+1)/sinh^2 r, +-(1+cosh r)/sinh^2 r couplings,
    -2 M alpha / tanh r, and M K tanh^2 r.
    """
    jf = as_half_integer(j, "j")
    m = scenario.mass
    al = scenario.alpha
    ko = scenario.k_osc
    tag = f"{scenario.geometry}/{scenario.potential}/{channel}[j={jf},k={scenario.charge}]"
    common = dict(tag=tag, scenario=scenario, channel=channel, j=jf, mass=m)

    if scenario.geometry == GEOMETRY_FLAT:
        lval = _flat_channel_l(scenario, channel, jf)
        if scenario.potential == POTENTIAL_COULOMB:
            vr = lambda r, L=lval: L * (L + 1.0) / r**2 - 2.0 * m * al / r
        elif scenario.potential == POTENTIAL_OSCILLATOR:
            vr = lambda r, L=lval: L * (L + 1.0) / r**2 + m * ko * r**2
        else:
            vr = lambda r, L=lval: L * (L + 1.0) / r**2
        return RadialProblem(
            **common,
            v_eff=vr,
            origin_exponent=lval + 1.0,
            peculiar_origin=(channel == CH_MIN_J and scenario.potential == POTENTIAL_NONE),
        )

    # Lobachevsky geometry
    if channel == CH_MIN_J:
        if scenario.no_monopole:
            raise RadialError("minimum-j channel needs a monopole charge |k| >= 1")
        if scenario.potential == POTENTIAL_COULOMB:
            a_exp = (1.0 + math.sqrt(1.0 - 4.0 * al * al)) / 2.0
            return RadialProblem(
                **common,
                quad_coeff=lambda r, eps: (eps + al * _coth(r)) ** 2 - m * m,
                linearity=QUADRATIC_IN_EPSILON,
                origin_exponent=a_exp,
            )
        if scenario.potential == POTENTIAL_OSCILLATOR:
            return RadialProblem(
                **common,
                v_eff=lambda r: m * ko * np.tanh(r) ** 2,
                origin_exponent=1.0,
                continuum_edge=ko / 2.0,
            )
        raise RadialError("free curved minimum-j channel: use the relativistic reduction")

    if not scenario.no_monopole:
        raise RadialError("curved channels beyond minimum j do not decouple in a monopole field")

    jj1 = float(jf * (jf + 1))
    if channel == CH_PARITY_ODD:
        angular = lambda r: jj1 / np.sinh(r) ** 2
        exponent = float(jf) + 1.0
    elif channel == CH_EVEN_1:
        angular = lambda r: (jj1 + (float(jf) + 1.0) * (1.0 + np.cosh(r))) / np.sinh(r) ** 2
        exponent = float(jf) + 2.0
    elif channel == CH_EVEN_2:
        angular = lambda r: (jj1 - float(jf) * (1.0 + np.cosh(r))) / np.sinh(r) ** 2
        exponent = max(float(jf), 1.0 - float(jf))
    else:
        raise RadialError(f"unknown channel {channel!r} for {scenario.geometry}")

    if scenario.potential == POTENTIAL_COULOMB:
        vr = lambda r: angular(r) - 2.0 * m * al / np.tanh(r)
        edge = -al
    elif scenario.potential == POTENTIAL_OSCILLATOR:
        vr = lambda r: angular(r) + m * ko * np.tanh(r) ** 2
        edge = ko / 2.0
    else:
        vr = angular
        edge = 0.0
    return RadialProblem(**common, v_eff=vr, origin_exponent=exponent, continuum_edge=edge)


def _flat_channel_l(scenario: Scenario, channel: str, j: Fraction) -> float:
    from .core import channel_kind
    from .mixing import mixing_roots

    if channel == CH_MIN_J:
        if scenario.charge == 0 or channel_kind(j, scenario.charge) != "min-j":
            raise RadialError(f"min-j channel invalid at (j, k) = ({j}, {scenario.charge})")
        return 0.0
    if channel in CH_BRANCH:
        return mixing_roots(j, scenario.charge).l[CH_BRANCH.index(channel)]
    raise RadialError(f"unknown flat channel {channel!r}")


# --- analytic solutions -------------------------------------------------------


@dataclass(frozen=True)
class RadialSolution:
    """Sampled closed-form solution u(r) with its construction tag."""

    grid: np.ndarray
    values: np.ndarray
    closed_form: str
    norm: Optional[float] = None
    auxiliary: dict = field(default_factory=dict)

    def node_count(self, skip_fraction: float = 0.0) -> int:
        v = self.values
        n0 = int(len(v) * skip_fraction)
        v = v[n0:]
        signs = np.sign(v[np.abs(v) > 1e-12 * np.max(np.abs(v))])
        return int(np.sum(signs[1:] != signs[:-1]))


def uniform_grid(r0: float, r1: float, n: int) -> np.ndarray:
    if not (0.0 < r0 < r1) or n < 2:
        raise RadialError("grid needs 0 < r0 < r1 and at least two points")
    return np.linspace(r0, r1, n)


def _terminating_series(n: int, ratio, x: np.ndarray) -> np.ndarray:
    """Polynomial sum_{k=0}^{n} t_k x^k with t_{k+1}/t_k = ratio(k)."""
    tot = np.ones_like(x)
    term = np.ones_like(x)
    for k in range(n):
        term = term * ratio(k) * x
        tot = tot + term
    return tot


def _poly_1f1(n: int, b: float, x: np.ndarray) -> np.ndarray:
    return _terminating_series(n, lambda k: (-n + k) / ((b + k) * (k + 1.0)), x)


def _poly_2f1(n: int, beta: float, gamma: float, x: np.ndarray) -> np.ndarray:
    return _terminating_series(n, lambda k: (-n + k) * (beta + k) / ((gamma + k) * (k + 1.0)), x)


def _origin_start(problem: RadialProblem, r0_base: float, h: float) -> float:
    """Push the sampling start away from the origin when the Frobenius exponent
    is non-integer: u ~ r^p then has a singular sixth derivative r^(p-6), and
    the 4th-order stencil truncation h^4 u''''''/90 must stay below ~3e-10.
    Analytic (integer-exponent) solutions keep the nominal start."""
    p = problem.origin_exponent
    if abs(p - round(p)) < 1e-9 or p >= 5.5:
        return r0_base
    bound = 1.5 * (h**4 / (90.0 * 3e-10)) ** (1.0 / (6.0 - p))
    return max(r0_base, bound)


def default_solution_grid(problem: RadialProblem, level: EnergyLevel, h: float = 1e-3) -> np.ndarray:
    """Uniform sampling grid with spacing <= h, spanning the decay region."""
    e_ref = abs(level.energy) if level.energy and not math.isnan(level.energy) else 1.0
    if problem.scenario.geometry == GEOMETRY_FLAT:
        r0 = _origin_start(problem, 1e-4, h)
        if problem.scenario.potential == POTENTIAL_OSCILLATOR:
            om = math.sqrt(problem.scenario.k_osc / problem.mass)
            r1 = max(3.0 * math.sqrt(2.0 * max(level.energy, om) / om**2 / problem.mass), 6.0 / math.sqrt(problem.mass * om))
        else:
            kappa = math.sqrt(2.0 * problem.mass * e_ref)
            r1 = min(12.0 / kappa + 10.0, 400.0)
    else:
        r0 = _origin_start(problem, 1e-3, h)
        edge = problem.continuum_edge if problem.continuum_edge is not None else 0.0
        gap = max(edge - level.energy, 0.05) if level.energy is not None else 1.0
        kappa = math.sqrt(2.0 * problem.mass * gap)
        r1 = min(12.0 / kappa + 8.0, 60.0)
    n = max(int((r1 - r0) / h) + 1, 1001)
    return uniform_grid(r0, r1, n)


def analytic_solution(problem: RadialProblem, level: EnergyLevel, grid: Optional[np.ndarray] = None) -> RadialSolution:
    """Closed-form bound-state solution sampled on the grid.

    Raises for inadmissible levels and for channels whose closed form is only
    a local series off the physical domain (curved oscillator even channels).
    """
    if not level.admissible:
        raise RadialError(f"level is not a bound state: {level.reason}")
    scen = problem.scenario
    if grid is None:
        grid = default_solution_grid(problem, level)
    r = np.asarray(grid, dtype=float)

    if scen.geometry == GEOMETRY_FLAT:
        u, form = _flat_solution(problem, level, r)
    else:
        u, form = _curved_solution(problem, level, r)
    scale = np.max(np.abs(u))
    if not np.isfinite(scale) or scale == 0.0:
        raise RadialError("analytic solution degenerate on this grid")
    u = u / scale
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    norm = float(np.sqrt(trapezoid(u * u, r)))
    return RadialSolution(grid=r, values=u, closed_form=form, norm=norm)


def _flat_solution(problem: RadialProblem, level: EnergyLevel, r: np.ndarray):
    scen = problem.scenario
    m = problem.mass
    n = level.n
    if scen.potential == POTENTIAL_COULOMB:
        lval = level.extras["L"]
        kappa = math.sqrt(-2.0 * m * level.energy)
        z = 2.0 * kappa * r
        u = r * z**lval * np.exp(-z / 2.0) * _poly_1f1(n, 2.0 * lval + 2.0, z)
        return u, f"u = r z^L e^(-z/2) 1F1(-n; 2L+2; z), z = 2 sqrt(-2ME) r, L = {lval:.12g}"
    if scen.potential == POTENTIAL_OSCILLATOR:
        lval = level.extras["L"]
        x = math.sqrt(m * scen.k_osc) * r**2
        u = r * x ** (lval / 2.0) * np.exp(-x / 2.0) * _poly_1f1(n, lval + 1.5, x)
        return u, f"u = r x^(L/2) e^(-x/2) 1F1(-n; L+3/2; x), x = sqrt(MK) r^2, L = {lval:.12g}"
    # free reduced channel: the peculiar bound-type profile psi = e^(-kappa r)/r
    if level.energy >= 0:
        raise RadialError("the reduced free channel bound profile needs E < 0")
    kappa = math.sqrt(-2.0 * m * level.energy)
    u = np.exp(-kappa * r)
    return u, f"u = e^(-kappa r) (psi = u/r), kappa = sqrt(-2ME) = {kappa:.12g}"


def _curved_solution(problem: RadialProblem, level: EnergyLevel, r: np.ndarray):
    scen = problem.scenario
    m = problem.mass
    n = level.n
    ch = problem.channel
    if ch == CH_MIN_J and scen.potential == POTENTIAL_COULOMB:
        al = scen.alpha
        a_exp = (1.0 + math.sqrt(1.0 - 4.0 * al * al)) / 2.0
        b_exp = level.extras["b"]
        x = 1.0 - np.exp(-2.0 * r)
        beta = 2.0 * (a_exp + b_exp) + n
        # (1-x)^B = e^(-2Br) exactly; the direct form avoids the total loss of
        # the tail once x rounds to 1 (r beyond ~18)
        u = x**a_exp * np.exp(-2.0 * b_exp * r) * _poly_2f1(n, beta, 2.0 * a_exp, x)
        return u, (
            f"F = x^A (1-x)^B 2F1(-n, {beta:.12g}; {2*a_exp:.12g}; x), "
            f"x = 1 - e^(-2r), A = {a_exp:.12g}, B = {b_exp:.12g}"
        )
    if ch in (CH_MIN_J, CH_PARITY_ODD) and scen.potential == POTENTIAL_OSCILLATOR:
        jf = 0.0 if ch == CH_MIN_J else float(level.j)
        a_exp = (1.0 - math.sqrt(1.0 + 4.0 * scen.k_osc * m)) / 4.0
        b2 = 1.0 + jf  # 2b
        y = np.cosh(r) ** 2
        gamma = 2.0 * a_exp + 0.5
        beta = 2.0 * (a_exp + b2 / 2.0) + n
        u = y**a_exp * np.sinh(r) ** b2 * _poly_2f1(n, beta, gamma, y)
        return u, (
            f"F = y^a sinh(r)^(2b) 2F1(-n, {beta:.12g}; {gamma:.12g}; y), "
            f"y = cosh^2 r, a = {a_exp:.12g}, 2b = {b2:.12g}"
        )
    if ch == CH_PARITY_ODD and scen.potential == POTENTIAL_COULOMB:
        jf = float(level.j)
        b_exp = level.extras["b"]
        x = 1.0 - np.exp(-2.0 * r)
        gamma = 2.0 * (jf + 1.0)
        beta = 2.0 * (jf + 1.0 + b_exp) + n
        u = x ** (jf + 1.0) * np.exp(-2.0 * b_exp * r) * _poly_2f1(n, beta, gamma, x)
        return u, (
            f"F = x^(j+1) (1-x)^b 2F1(-n, {beta:.12g}; {gamma:.12g}; x), "
            f"x = 1 - e^(-2r), b = {b_exp:.12g}"
        )
    if ch in (CH_EVEN_1, CH_EVEN_2) and scen.potential == POTENTIAL_COULOMB:
        return _even_coulomb_solution(problem, level, r)
    raise RadialError(
        f"no closed-form sampler for channel {ch!r} with potential {scen.potential!r}; "
        "even-channel oscillator solutions exist only as local series off the physical domain"
    )


def _even_coulomb_solution(problem: RadialProblem, level: EnergyLevel, r: np.ndarray):
    """Local Heun construction F = z^A (1-z)^(B-1/2) (1+z)^(C-1/2) H(z),
    z = tanh(r/2), valid on the series disc (z <= 0.8)."""
    from .heunspec import coulomb_exponents, heun_params_coulomb
    from .specfun import heun_local

    scen = problem.scenario
    z = np.tanh(r / 2.0)
    if np.any(z > 0.8):
        raise RadialError("even-channel Coulomb sampling restricted to tanh(r/2) <= 0.8")
    params = heun_params_coulomb(level.energy, scen.alpha, problem.mass, level.j, problem.channel)
    a_exp, b_exp, c_exp = coulomb_exponents(level.energy, scen.alpha, problem.mass, level.j, problem.channel)
    h = np.array([heun_local(params, zz) for zz in np.atleast_1d(z)])
    u = z**a_exp * (1.0 - z) ** (b_exp - 0.5) * (1.0 + z) ** (c_exp - 0.5) * h
    return u, (
        f"F = z^A (1-z)^(B-1/2) (1+z)^(C-1/2) H(z), z = tanh(r/2), "
        f"A = {a_exp:.12g}, B = {b_exp:.12g}, C = {c_exp:.12g}"
    )


# --- pointwise ODE residual ---------------------------------------------------

_STENCIL_MIN_POINTS = 200


def second_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """4th-order central second derivative on the interior (clips 2 points each end)."""
    u = values
    return (-u[:-4] + 16.0 * u[1:-3] - 30.0 * u[2:-2] + 16.0 * u[3:-1] - u[4:]) / (12.0 * h * h)


def residual(problem: RadialProblem, solution: RadialSolution, level: EnergyLevel) -> float:
    """Max relative pointwise residual of the radial ODE on the sample grid."""
    r = solution.grid
    if len(r) < _STENCIL_MIN_POINTS + 4:
        raise RadialError(f"residual grid too coarse: {len(r)} points < {_STENCIL_MIN_POINTS}")
    h = r[1] - r[0]
    if np.max(np.abs(np.diff(r) - h)) > 1e-9 * h:
        raise RadialError("residual check needs a uniform grid")
    u = solution.values
    d2 = second_derivative(u, h)
    ri = r[2:-2]
    ui = u[2:-2]
    if problem.linearity == QUADRATIC_IN_EPSILON:
        if level.epsilon is None:
            raise RadialError("quadratic problem needs the relativistic energy on the level")
        coeff = problem.quad_coeff(ri, level.epsilon)
    else:
        coeff = problem.eigenvalue_from_energy(level.energy) - problem.v_eff(ri)
    res = d2 + coeff * ui
    scale = np.max(np.abs(d2) + np.abs(coeff * ui))
    return float(np.max(np.abs(res)) / max(scale, 1e-300))


# --- free curved particle: regular solution and standing-wave envelope ---------


def _free_rhs(problem: RadialProblem, energy: float):
    mu = problem.eigenvalue_from_energy(energy)
    v = problem.v_eff

    def f(r, y):
        return np.array([y[1], (v(r) - mu) * y[0]])

    return f


def regular_free_solution(j: HalfInt, energy: float, mass: float, sample_points) -> RadialSolution:
    """Regular solution of the free curved parity-odd channel, u ~ r^{j+1} at the
    origin, continued outward by adaptive RK4 from a series start."""
    jf = as_half_integer(j, "j")
    scen = Scenario(GEOMETRY_LOBACHEVSKY, POTENTIAL_NONE, Fraction(0), mass)
    problem = build_problem(scen, CH_PARITY_ODD, jf)
    pts = np.asarray(sample_points, dtype=float)
    if pts.ndim != 1 or np.any(np.diff(pts) <= 0):
        raise RadialError("sample points must be strictly increasing")
    r0 = min(1e-4, pts[0] / 2.0)
    jj1 = float(jf * (jf + 1))
    # u = r^{j+1} (1 + c2 r^2 + O(r^4)); 1/sinh^2 = 1/r^2 - 1/3 + O(r^2)
    c2 = -(2.0 * mass * energy + jj1 / 3.0) / (4.0 * float(jf) + 6.0)
    u0 = r0 ** (float(jf) + 1.0) * (1.0 + c2 * r0 * r0)
    du0 = (float(jf) + 1.0) * r0 ** float(jf) * (1.0 + c2 * r0 * r0) + r0 ** (float(jf) + 1.0) * 2.0 * c2 * r0
    f = _free_rhs(problem, energy)
    _, _, recs = ivp.integrate(f, r0, float(pts[-1]), [u0, du0], rtol=1e-11, max_step=0.02, record_at=pts)
    vals = np.array([rec[0] for rec in recs])
    ders = np.array([rec[1] for rec in recs])
    scale = np.max(np.abs(vals))
    return RadialSolution(
        grid=pts,
        values=vals / scale,
        closed_form=f"regular free curved solution, origin exponent j+1 = {float(jf)+1:.12g}",
        auxiliary={"derivatives": ders / scale},
    )


def standing_wave_check(j: HalfInt, energy: float, mass: float = 1.0,
                        window: tuple[float, float] = (8.0, 12.0), n_window: int = 81) -> float:
    """Envelope flatness ratio max/min of sqrt(u^2 + (u'/omega)^2) over the far
    window; a value near 1 indicates a pure standing wave."""
    if energy <= 0.0:
        raise RadialError("standing-wave check needs E > 0")
    if window[0] < 5.0:
        raise RadialError("window too close to origin; start at r >= 5")
    pts = np.linspace(window[0], window[1], n_window)
    sol = regular_free_solution(j, energy, mass, pts)
    omega = math.sqrt(2.0 * mass * energy)
    env = np.sqrt(sol.values**2 + (sol.auxiliary["derivatives"] / omega) ** 2)
    return float(np.max(env) / np.min(env))


def origin_exponent_fit(j: HalfInt, energy: float, mass: float = 1.0,
                        fit_range: tuple[float, float] = (1e-3, 1e-2), n_fit: int = 25) -> float:
    """Log-log slope of the regular free curved solution near the origin."""
    pts = np.geomspace(fit_range[0], fit_range[1], n_fit)
    sol = regular_free_solution(j, energy, mass, pts)
    slope = np.polyfit(np.log(pts), np.log(np.abs(sol.values)), 1)[0]
    return float(slope)


# --- relativistic reduced channel ----------------------------------------------


def relativistic_minj(epsilon: float, mass: float, k_sign: int = 1,
                      geometry: str = GEOMETRY_FLAT, grid: Optional[np.ndarray] = None) -> RadialSolution:
    """Solutions of F'' + (eps^2 - M^2) F = 0 for the reduced j = |k|-1 channel.

    eps^2 > M^2: oscillatory sin(p r); eps^2 = M^2: linear in r; 0 < eps < M:
    the decaying exponential that plays the role of a bound-type state. In the
    curved geometry the physical component carries the extra factor
    (1 + cosh r)/(2 sinh r), returned in auxiliary['f2'].
    """
    if mass <= 0:
        raise RadialError("mass must be positive")
    if grid is None:
        grid = uniform_grid(1e-3, 20.0, 4001)
    r = np.asarray(grid, dtype=float)
    w2 = epsilon * epsilon - mass * mass
    if w2 > 0:
        p = math.sqrt(w2)
        vals = np.sin(p * r)
        form = f"F = sin(p r), p = sqrt(eps^2 - M^2) = {p:.12g}"
    elif w2 == 0.0:
        vals = r.copy()
        form = "F = r (eps^2 = M^2)"
    else:
        kappa = math.sqrt(-w2)
        vals = np.exp(-kappa * r)
        form = f"F = e^(-kappa r), kappa = sqrt(M^2 - eps^2) = {kappa:.12g} (bound-type)"
    aux = {}
    if geometry == GEOMETRY_LOBACHEVSKY:
        aux["f2"] = (1.0 + np.cosh(r)) / (2.0 * np.sinh(r)) * vals
    return RadialSolution(grid=r, values=vals, closed_form=form, auxiliary=aux)


def relativistic_minj_residual(epsilon: float, mass: float, sol: RadialSolution) -> float:
    """Residual of F'' + (eps^2 - M^2) F = 0 along the solution's grid.

    The samples are regenerated in extended precision before differencing:
    double-rounded samples through a 1/h^2 stencil would floor the residual
    near 1e-9, above the 1e-10 this check asserts.
    """
    ld = np.longdouble
    # regenerate an exactly uniform extended-precision grid over the same span;
    # double-rounded linspace abscissae carry ~1 ulp jitter that the 1/h^2
    # stencil would amplify to ~1e-9
    n_pts = len(sol.grid)
    h_ld = (ld(sol.grid[-1]) - ld(sol.grid[0])) / ld(n_pts - 1)
    r = ld(sol.grid[0]) + np.arange(n_pts, dtype=ld) * h_ld
    w2 = ld(epsilon) * ld(epsilon) - ld(mass) * ld(mass)
    if w2 > 0:
        vals = np.sin(np.sqrt(w2) * r)
    elif w2 == 0:
        vals = r.copy()
    else:
        vals = np.exp(-np.sqrt(-w2) * r)
    h = r[1] - r[0]
    d2 = (-vals[:-4] + 16.0 * vals[1:-3] - 30.0 * vals[2:-2] + 16.0 * vals[3:-1] - vals[4:]) / (
        12.0 * h * h
    )
    res = d2 + w2 * vals[2:-2]
    scale = np.max(np.abs(d2) + np.abs(w2 * vals[2:-2]))
    return float(np.max(np.abs(res)) / max(scale, ld(1e-300)))
