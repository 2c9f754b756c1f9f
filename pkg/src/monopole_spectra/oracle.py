"""Independent numerical eigenvalue machinery used to validate every spectrum.

The discretization is the plain 3-point stencil on a uniform Dirichlet grid,
turning u'' + (2MwE - V)u = 0 into a symmetric tridiagonal eigenproblem whose
selected eigenvalues come from bisection on Sturm sequences (LAPACK *stebz via
scipy); an explicit Sturm counter provides exact bound-state counts below a
continuum edge. The quadratic-in-energy problem is handled by two-sided
shooting with log-derivative matching instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import ivp
from .core import GEOMETRY_FLAT, POTENTIAL_OSCILLATOR
from .radial import LINEAR_IN_E, QUADRATIC_IN_EPSILON, RadialProblem
from .spectra import EnergyLevel, oscillator_candidates


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class Grid:
    """Uniform Dirichlet box: unknowns at r_i = r_min + i h, i = 1..n,
    h = (r_max - r_min)/(n + 1); u vanishes at both walls."""

    r_max: float
    n: int
    r_min: float = 0.0

    def __post_init__(self) -> None:
        if self.r_max <= self.r_min or self.r_min < 0.0:
            raise OracleError("grid needs 0 <= r_min < r_max")
        if self.n < 16:
            raise OracleError("grid too small")

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.n + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.r_min + np.arange(1, self.n + 1) * self.h


MIN_VALIDATION_POINTS = 2000
RESOLUTION_LIMIT = 0.05


def default_grid(problem: RadialProblem, e_target: Optional[float] = None) -> Grid:
    """Default validation grids: flat r_max = 80/sqrt(2M|E_target|) capped at
    400 with n = 16000; curved r_max = 40 (curvature units) with n = 20000."""
    if problem.scenario.geometry == GEOMETRY_FLAT:
        e_ref = abs(e_target) if e_target else 1.0
        r_max = min(80.0 / math.sqrt(2.0 * problem.mass * e_ref), 400.0)
        return Grid(r_max=r_max, n=16000)
    return Grid(r_max=40.0, n=20000)


def check_resolution(problem: RadialProblem, grid: Grid) -> None:
    """h sqrt(max|V|) <= 0.05 on the outer half of the grid (the inner
    centrifugal/Coulomb core diverges but is sampled where u is suppressed)."""
    if grid.n < MIN_VALIDATION_POINTS:
        raise OracleError(f"validation grids need n >= {MIN_VALIDATION_POINTS}, got {grid.n}")
    nodes = grid.nodes
    vmax = float(np.max(np.abs(problem.v_eff(nodes[len(nodes) // 2 :]))))
    if grid.h * math.sqrt(vmax) > RESOLUTION_LIMIT:
        raise OracleError(
            f"resolution heuristic violated: h sqrt(max|V|) = {grid.h * math.sqrt(vmax):.3g} > {RESOLUTION_LIMIT}"
        )


def _tridiagonal(problem: RadialProblem, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    h = grid.h
    diag = 2.0 / (h * h) + problem.v_eff(grid.nodes)
    off = np.full(grid.n - 1, -1.0 / (h * h))
    return diag, off


def sturm_count_below(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix strictly
    below x, by the Sturm sign-agreement count of the shifted LDL^T pivots."""
    count = 0
    d = diag[0] - x
    if d < 0:
        count += 1
    tiny = 1e-300
    for i in range(1, len(diag)):
        if d == 0.0:
            d = tiny
        d = (diag[i] - x) - off[i - 1] * off[i - 1] / d
        if d < 0:
            count += 1
    return count


def fd_eigen(problem: RadialProblem, grid: Optional[Grid] = None, count: int = 4,
             e_target: Optional[float] = None) -> np.ndarray:
    """Lowest `count` energies of a linear-in-E problem on the Dirichlet grid.

    For curved problems, eigenvalues at or above the continuum edge are box
    artifacts; requesting more levels than exist below the edge is an error.
    """
    if problem.linearity != LINEAR_IN_E:
        raise OracleError("fd_eigen handles linear-in-E problems; use shoot_decay for the quadratic one")
    if grid is None:
        grid = default_grid(problem, e_target)
    check_resolution(problem, grid)
    diag, off = _tridiagonal(problem, grid)
    if problem.continuum_edge is not None:
        mu_edge = problem.eigenvalue_from_energy(problem.continuum_edge)
        available = sturm_count_below(diag, off, mu_edge)
        if count > available:
            raise OracleError(
                f"requested {count} levels but only {available} lie below the continuum edge "
                f"E = {problem.continuum_edge:.6g}"
            )
    mu = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1), eigvals_only=True)
    return mu / (2.0 * problem.mass * problem.weight)


def count_bound_states(problem: RadialProblem, grid: Optional[Grid] = None,
                       continuum_edge: Optional[float] = None) -> int:
    """Number of FD eigenvalues strictly below the continuum edge, stabilized
    against the box size (recomputed at 1.5 r_max; counts must agree)."""
    edge = continuum_edge if continuum_edge is not None else problem.continuum_edge
    if edge is None:
        raise OracleError(
            "bound-state counting needs a finite continuum edge (curved potentials only); "
            "flat Coulomb-like spectra accumulate infinitely many levels"
        )
    if grid is None:
        grid = default_grid(problem)
    check_resolution(problem, grid)
    mu_edge = problem.eigenvalue_from_energy(edge)
    counts = []
    for scale in (1.0, 1.5):
        g = Grid(r_max=grid.r_max * scale, n=int(round((grid.n + 1) * scale)) - 1, r_min=grid.r_min)
        diag, off = _tridiagonal(problem, g)
        counts.append(sturm_count_below(diag, off, mu_edge))
    if counts[0] != counts[1]:
        raise OracleError(
            f"bound-state count unstable against box size ({counts[0]} vs {counts[1]}); enlarge r_max"
        )
    return counts[0]


# --- two-sided shooting for the quadratic-in-epsilon channel -------------------


@dataclass(frozen=True)
class ShootResult:
    mismatch: float  # signed, normalized log-derivative defect at the match point
    matching_radius: float
    far_decay_rate: float


def shoot_decay(problem: RadialProblem, epsilon: float, r_max: float = 35.0,
                r_start: float = 1e-6, rtol: float = 1e-11) -> ShootResult:
    """Log-derivative mismatch of the regular and decaying solutions of the
    quadratic channel u'' + ((eps + alpha/tanh r)^2 - M^2) u = 0.

    A true eigenvalue gives |mismatch| at integration accuracy, and the
    mismatch changes sign across it. Non-decaying far fields
    ((eps + alpha)^2 >= M^2) are rejected.
    """
    if problem.linearity != QUADRATIC_IN_EPSILON:
        raise OracleError("shoot_decay expects the quadratic-in-epsilon problem")
    scen = problem.scenario
    alpha, m = scen.alpha, problem.mass
    kap2 = m * m - (epsilon + alpha) ** 2
    if kap2 <= 0.0:
        raise OracleError(
            f"non-decaying far field: (eps + alpha)^2 >= M^2 at eps = {epsilon:.9g}"
        )
    kappa = math.sqrt(kap2)

    # Frobenius start u = r^A (1 + a1 r + a2 r^2) from the Laurent expansion
    # (eps + alpha coth r)^2 - M^2 = alpha^2/r^2 + 2 eps alpha / r + W0 + O(r)
    a_exp = problem.origin_exponent
    q_lin = 2.0 * epsilon * alpha
    w0 = epsilon * epsilon + 2.0 * alpha * alpha / 3.0 - m * m
    a1 = -q_lin / (2.0 * a_exp)
    a2 = -(q_lin * a1 + w0) / (2.0 * (2.0 * a_exp + 1.0))
    u0 = r_start**a_exp * (1.0 + a1 * r_start + a2 * r_start**2)
    du0 = (
        a_exp * r_start ** (a_exp - 1.0) * (1.0 + a1 * r_start + a2 * r_start**2)
        + r_start**a_exp * (a1 + 2.0 * a2 * r_start)
    )

    # match at the outer classical turning point when one exists
    c_turn = (m - epsilon) / alpha
    if c_turn > 1.0:
        r_match = 0.5 * math.log((c_turn + 1.0) / (c_turn - 1.0))
    else:
        r_match = 1.0
    r_match = min(max(r_match, 0.05), r_max / 2.0)

    def rhs(r, y):
        w = (epsilon + alpha / math.tanh(r)) ** 2 - m * m
        return np.array([y[1], -w * y[0]])

    y_out, _ = ivp.integrate(rhs, r_start, r_match, [u0, du0], rtol=rtol, max_step=0.05)
    y_in, _ = ivp.integrate(rhs, r_max, r_match, [1.0, -kappa], rtol=rtol, max_step=0.05)
    lam_out = y_out[1] / y_out[0]
    lam_in = y_in[1] / y_in[0]
    mismatch = (lam_out - lam_in) / (1.0 + abs(lam_out) + abs(lam_in))
    return ShootResult(mismatch=float(mismatch), matching_radius=r_match, far_decay_rate=kappa)


# --- reports and arbitration ----------------------------------------------------


@dataclass
class OracleReport:
    """Deterministic record of analytic-vs-numeric comparisons."""

    tag: str
    entries: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add_comparison(self, label: str, analytic: float, numeric: float) -> dict:
        dev = abs(numeric - analytic)
        rel = dev / max(abs(analytic), 1e-300)
        entry = {"label": label, "analytic": analytic, "numeric": numeric,
                 "abs_dev": dev, "rel_dev": rel}
        self.entries.append(entry)
        return entry

    def to_json_dict(self) -> dict:
        return {
            "tag": self.tag,
            "entries": self.entries,
            "counts": self.counts,
            "verdicts": self.verdicts,
            "notes": self.notes,
        }

    def text_table(self) -> str:
        lines = [f"== {self.tag} =="]
        for e in self.entries:
            lines.append(
                f"  {e['label']:<44s} analytic {e['analytic']: .9e}  "
                f"numeric {e['numeric']: .9e}  rel {e['rel_dev']:.2e}"
            )
        for key, val in self.counts.items():
            lines.append(f"  count {key}: {val}")
        for v in self.verdicts:
            lines.append(f"  verdict: {v}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def compare_levels(problem: RadialProblem, levels: Sequence[EnergyLevel],
                   grid: Optional[Grid] = None, report: Optional[OracleReport] = None) -> OracleReport:
    """FD-eigensolve the problem and compare against analytic levels ordered
    by n (index n maps to the n-th Dirichlet eigenvalue)."""
    if report is None:
        report = OracleReport(tag=problem.tag)
    levels = sorted(levels, key=lambda lv: lv.n)
    if not levels:
        return report
    count = levels[-1].n + 1
    e_target = levels[-1].energy
    numeric = fd_eigen(problem, grid=grid, count=count, e_target=e_target)
    for lv in levels:
        report.add_comparison(
            f"{problem.tag} n={lv.n}", analytic=lv.energy, numeric=float(numeric[lv.n])
        )
    return report


@dataclass(frozen=True)
class ArbitrationVerdict:
    l_value: float
    confirmed: str            # 'quantization' (prefactor 1) or 'printed' (prefactor 1/2)
    matched_rel_dev: float    # worst deviation of the confirmed candidate
    rejected_rel_dev: float   # best deviation of the other one
    stable: bool              # same verdict on the refined grid


ARBITRATION_TOL = 1e-4


def _match_candidates(numeric: np.ndarray, l_value: float, k_osc: float, mass: float) -> dict[str, float]:
    devs = {"printed": 0.0, "quantization": 0.0}
    for n, e_num in enumerate(numeric):
        cands = oscillator_candidates(l_value, n, k_osc, mass)
        for name in devs:
            devs[name] = max(devs[name], abs(e_num - cands[name]) / abs(cands[name]))
    return devs


def arbitrate_oscillator_prefactor(k_osc: float, mass: float, l_values: Sequence[float],
                                   n_max: int = 3, report: Optional[OracleReport] = None) -> list[ArbitrationVerdict]:
    """Decide which flat-oscillator closed form the FD oracle confirms.

    For each effective L, the lowest n_max+1 FD eigenvalues are compared with
    both candidates; exactly one must match within 1e-4 relative, with the
    verdict stable across two grids. Both candidates failing is a hard error.
    """
    from .core import Scenario

    verdicts = []
    omega = math.sqrt(k_osc / mass)
    for lval in l_values:
        scen = Scenario(GEOMETRY_FLAT, POTENTIAL_OSCILLATOR, 0, mass, k_osc=k_osc)
        problem = RadialProblem(
            tag=f"flat/oscillator/L={lval:.6g}",
            scenario=scen, channel="arbitration", j=0, mass=mass,
            v_eff=lambda r, L=lval: L * (L + 1.0) / r**2 + mass * k_osc * r**2,
            origin_exponent=lval + 1.0,
        )
        e_top = omega * (1.5 + lval + 2.0 * n_max)
        per_grid = []
        for n_pts in (16000, 22000):
            grid = Grid(r_max=min(80.0 / math.sqrt(2.0 * mass * e_top), 60.0), n=n_pts)
            numeric = fd_eigen(problem, grid=grid, count=n_max + 1)
            devs = _match_candidates(numeric, lval, k_osc, mass)
            matches = [name for name, dev in devs.items() if dev <= ARBITRATION_TOL]
            if len(matches) != 1:
                raise OracleError(
                    f"oscillator arbitration at L = {lval}: candidates matching within "
                    f"{ARBITRATION_TOL}: {matches or 'none'} (deviations {devs})"
                )
            per_grid.append((matches[0], devs))
        stable = per_grid[0][0] == per_grid[1][0]
        name = per_grid[0][0]
        other = "printed" if name == "quantization" else "quantization"
        verdict = ArbitrationVerdict(
            l_value=float(lval),
            confirmed=name,
            matched_rel_dev=per_grid[0][1][name],
            rejected_rel_dev=per_grid[0][1][other],
            stable=stable,
        )
        verdicts.append(verdict)
        if report is not None:
            report.verdicts.append(
                f"flat oscillator L = {lval:.6g}: '{name}' form confirmed "
                f"(rel dev {verdict.matched_rel_dev:.2e}; rejected '{other}' off by "
                f"{verdict.rejected_rel_dev:.2e}; stable across grids: {stable})"
            )
    return verdicts
