"""Closed-form energy spectra with branch labels, admissibility, and units.

Natural units: hbar = 1 everywhere; Lobachevsky problems additionally use the
curvature radius as the length unit, so the dimensionless mass is
M = m*c*R/hbar and one energy unit equals hbar*c/R. Energies are
nonrelativistic (rest energy excluded) except the explicitly relativistic
`epsilon` carried by the curved minimum-j Coulomb level.

Flat-space oscillator levels are subject to a prefactor arbitration: the
closed form circulates both with and without a 1/2 prefactor, and only one
variant is consistent with the series-termination condition it derives from
(termination implies prefactor 1). Both candidates are recorded on every
level; the default `energy` is the termination-condition value, which the
finite-difference oracle confirms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .core import (
    GEOMETRY_FLAT,
    GEOMETRY_LOBACHEVSKY,
    POTENTIAL_COULOMB,
    POTENTIAL_OSCILLATOR,
    HalfInt,
    Scenario,
    as_half_integer,
    channel_kind,
    min_allowed_j,
)
from .mixing import mixing_roots

# channel labels
CH_MIN_J = "min-j"
CH_BRANCH = ("branch-1", "branch-2", "branch-3")
CH_PARITY_ODD = "parity-odd"
CH_EVEN_1 = "even-1"
CH_EVEN_2 = "even-2"

# derivation labels
DERIV_HYPERGEOMETRIC = "hypergeometric-polynomial"
DERIV_HEUN_FORMAL = "heun-formal-beta"

REASON_EXHAUSTED = "finite spectrum exhausted"


class SpectrumError(ValueError):
    """Inadmissible channel request or invalid physical parameters."""


@dataclass(frozen=True)
class EnergyLevel:
    """One analytic eigenvalue with its channel label and admissibility."""

    scenario: Scenario
    channel: str
    j: Fraction
    n: int
    energy: float
    derivation: str
    admissible: bool = True
    reason: str = ""
    formula: str = ""
    epsilon: Optional[float] = None  # relativistic energy, where one exists
    extras: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        rec = {
            "scenario": self.scenario.to_record(),
            "channel": self.channel,
            "j2": int(self.j * 2),
            "n": self.n,
            "E": self.energy,
            "derivation": self.derivation,
            "admissible": self.admissible,
            "reason": self.reason,
            "formula": self.formula,
        }
        if self.epsilon is not None:
            rec["epsilon"] = self.epsilon
        return rec


def _branch_index(branch: str) -> int:
    if branch not in CH_BRANCH:
        raise SpectrumError(f"unknown branch {branch!r}; expected one of {CH_BRANCH} or {CH_MIN_J!r}")
    return CH_BRANCH.index(branch)


def _branch_l(j: HalfInt, k: HalfInt, branch: str) -> tuple[float, float]:
    from .mixing import MixingError

    try:
        triple = mixing_roots(j, k)
    except MixingError as exc:
        # j = k = 0 leaves a single physical channel (A = 1) and a doubly
        # degenerate spurious root, outside the three-branch structure
        raise SpectrumError(f"no three-branch mixing at (j, k) = ({j}, {k}): {exc}") from exc
    i = _branch_index(branch)
    return triple.l[i], triple.a[i]


# --- flat space --------------------------------------------------------------


def flat_coulomb(alpha: float, mass: float, j: HalfInt, k: HalfInt, n: int, branch: str) -> EnergyLevel:
    """Flat-space Coulomb level E = -alpha^2 M / (2 (n + L + 1)^2).

    branch 'min-j' uses L = 0 (valid only at j = |k| - 1); branches 1..3 use
    the effective L of the corresponding mixing root.
    """
    jf = as_half_integer(j, "j")
    kf = as_half_integer(k, "k")
    scen = Scenario(GEOMETRY_FLAT, POTENTIAL_COULOMB, kf, mass, alpha=alpha)
    kind = channel_kind(jf, kf)
    extras: dict = {}
    if branch == CH_MIN_J:
        if kind != "min-j":
            raise SpectrumError(f"min-j channel requires j = |k| - 1, got (j, k) = ({jf}, {kf})")
        lval = 0.0
    else:
        if kind == "min-j":
            raise SpectrumError(f"(j, k) = ({jf}, {kf}) is the reduced channel; use branch 'min-j'")
        lval, aval = _branch_l(jf, kf, branch)
        extras["A"] = aval
        if kind == "j-equals-k":
            extras["caution"] = "j = |k|: one mixing root is exactly zero; channel decouples"
    extras["L"] = lval
    energy = -0.5 * alpha * alpha * mass / (n + lval + 1.0) ** 2
    return EnergyLevel(
        scenario=scen,
        channel=branch,
        j=jf,
        n=n,
        energy=energy,
        derivation=DERIV_HYPERGEOMETRIC,
        formula="E = -alpha^2 M / (2 (n+L+1)^2)",
        extras=extras,
    )


def oscillator_candidates(l_value: float, n: int, k_osc: float, mass: float) -> dict[str, float]:
    """Both closed-form candidates for the flat oscillator level.

    'printed':       E = (1/2) sqrt(K/M) (3/2 + L + 2n), the variant
                     quoted with an extra 1/2 prefactor
    'quantization':  E = sqrt(K/M) (3/2 + L + 2n), from terminating the
                     confluent series at a = -n in
                     a = (1/2)(3/2 + L - E sqrt(M/K)).
    """
    omega = math.sqrt(k_osc / mass)
    base = 1.5 + l_value + 2.0 * n
    return {"printed": 0.5 * omega * base, "quantization": omega * base}


def flat_oscillator(k_osc: float, mass: float, j: HalfInt, k: HalfInt, n: int, branch: str) -> EnergyLevel:
    """Flat-space oscillator level, default value from the termination
    condition (prefactor 1); the 1/2-prefactor candidate is retained in
    extras['candidates'] and the two are arbitrated by the oracle."""
    jf = as_half_integer(j, "j")
    kf = as_half_integer(k, "k")
    scen = Scenario(GEOMETRY_FLAT, POTENTIAL_OSCILLATOR, kf, mass, k_osc=k_osc)
    kind = channel_kind(jf, kf)
    extras: dict = {}
    if branch == CH_MIN_J:
        if kind != "min-j":
            raise SpectrumError(f"min-j channel requires j = |k| - 1, got (j, k) = ({jf}, {kf})")
        lval = 0.0
    else:
        if kind == "min-j":
            raise SpectrumError(f"(j, k) = ({jf}, {kf}) is the reduced channel; use branch 'min-j'")
        lval, aval = _branch_l(jf, kf, branch)
        extras["A"] = aval
        if kind == "j-equals-k":
            extras["caution"] = "j = |k|: one mixing root is exactly zero; channel decouples"
    cands = oscillator_candidates(lval, n, k_osc, mass)
    extras["L"] = lval
    extras["candidates"] = cands
    return EnergyLevel(
        scenario=scen,
        channel=branch,
        j=jf,
        n=n,
        energy=cands["quantization"],
        derivation=DERIV_HYPERGEOMETRIC,
        formula="E = sqrt(K/M) (3/2 + L + 2n)  [1/2-prefactor variant kept as metadata]",
        extras=extras,
    )


def peculiar_flat_level(energy: float, scenario: Scenario) -> EnergyLevel:
    """Record for the reduced-channel bound-type profile psi = e^(-kappa r)/r,
    which exists at any E < 0 without quantization. Its normalizability at the
    origin is ambiguous (psi diverges there while the L2(r^2 dr) norm stays
    finite); the record reports it rather than classifying it."""
    if energy >= 0.0:
        raise SpectrumError("the bound-type reduced-channel profile needs E < 0")
    if scenario.charge == 0 or abs(scenario.charge) < 1:
        raise SpectrumError("the reduced channel needs a monopole charge |k| >= 1")
    return EnergyLevel(
        scenario=scenario,
        channel=CH_MIN_J,
        j=abs(scenario.charge) - 1,
        n=0,
        energy=energy,
        derivation=DERIV_HYPERGEOMETRIC,
        formula="psi = e^(-sqrt(-2EM) r)/r (any E < 0; origin regularity ambiguous)",
        extras={"L": 0.0},
    )


# --- Lobachevsky, minimum j (monopole present) -------------------------------


def lob_minj_coulomb(alpha: float, mass: float, n: int, charge: HalfInt = 1) -> EnergyLevel:
    """Curved minimum-j Coulomb level (relativistic form).

        epsilon = M / sqrt(1 + alpha^2/nu^2) * sqrt(1 - (alpha^2 + nu^2)/M^2),
        nu = n + (1 + sqrt(1 - 4 alpha^2))/2,  E = epsilon - M.

    Admissible only while the energy radicand stays positive (the spectrum is
    finite) AND the far-field exponent b = (eps*alpha - nu^2)/(2 nu) is
    positive; b <= 0 means the regular solution grows at infinity, so the
    formula value is formal rather than a bound state there.
    """
    if not 0.0 < alpha < 0.5:
        raise SpectrumError(f"curved minimum-j Coulomb needs 0 < alpha < 1/2, got {alpha}")
    kf = as_half_integer(charge, "charge")
    if abs(kf) < 1:
        raise SpectrumError("minimum-j channel needs |k| >= 1")
    jf = abs(kf) - 1
    scen = Scenario(GEOMETRY_LOBACHEVSKY, POTENTIAL_COULOMB, kf, mass, alpha=alpha)
    nu = n + (1.0 + math.sqrt(1.0 - 4.0 * alpha * alpha)) / 2.0
    extras = {"nu": nu}
    formula = "eps = M sqrt(1 - (alpha^2+nu^2)/M^2)/sqrt(1 + alpha^2/nu^2); E = eps - M"
    rad = 1.0 - (alpha * alpha + nu * nu) / (mass * mass)
    if rad < 0.0:
        return EnergyLevel(
            scenario=scen, channel=CH_MIN_J, j=jf, n=n, energy=math.nan,
            derivation=DERIV_HYPERGEOMETRIC, admissible=False,
            reason=f"{REASON_EXHAUSTED}: alpha^2 + nu^2 > M^2", formula=formula, extras=extras,
        )
    eps = mass / math.sqrt(1.0 + alpha * alpha / (nu * nu)) * math.sqrt(rad)
    b = (eps * alpha - nu * nu) / (2.0 * nu)
    extras["b"] = b
    admissible = b > 0.0
    reason = "" if admissible else (
        f"far-field exponent b = {b:.6g} <= 0: regular solution is non-decaying, formal level only"
    )
    return EnergyLevel(
        scenario=scen, channel=CH_MIN_J, j=jf, n=n, energy=eps - mass,
        derivation=DERIV_HYPERGEOMETRIC, admissible=admissible, reason=reason,
        formula=formula, epsilon=eps, extras=extras,
    )


def lob_minj_oscillator(k_osc: float, mass: float, n: int, charge: HalfInt = 1) -> EnergyLevel:
    """Curved minimum-j oscillator level

        E = N sqrt(K/M + (1/2M)^2) - (N^2 + 1/4)/(2M),  N = 2n + 3/2,

    equivalent to the odd levels of the sech^2 well: with s(s+1) = M K,
    E = K/2 - (s - (2n+1))^2 / (2M); bound states need 2n + 1 < s.
    """
    kf = as_half_integer(charge, "charge")
    if abs(kf) < 1:
        raise SpectrumError("minimum-j channel needs |k| >= 1")
    jf = abs(kf) - 1
    scen = Scenario(GEOMETRY_LOBACHEVSKY, POTENTIAL_OSCILLATOR, kf, mass, k_osc=k_osc)
    big_n = 2.0 * n + 1.5
    s_well = (-1.0 + math.sqrt(1.0 + 4.0 * mass * k_osc)) / 2.0
    energy = big_n * math.sqrt(k_osc / mass + 0.25 / (mass * mass)) - (big_n**2 + 0.25) / (2.0 * mass)
    admissible = 2 * n + 1 < s_well
    reason = "" if admissible else (
        f"{REASON_EXHAUSTED}: decaying-well condition 2n+1 < s fails (s = {s_well:.6g})"
    )
    return EnergyLevel(
        scenario=scen, channel=CH_MIN_J, j=jf, n=n, energy=energy,
        derivation=DERIV_HYPERGEOMETRIC, admissible=admissible, reason=reason,
        formula="E = N sqrt(K/M + 1/(2M)^2) - (N^2 + 1/4)/(2M), N = 2n + 3/2",
        extras={"N": big_n, "s": s_well},
    )


# --- Lobachevsky, no monopole -------------------------------------------------


def _nomonopole_channel_n_coulomb(j: Fraction, n: int, channel: str) -> float:
    if channel == CH_PARITY_ODD:
        return float(j) + 1.0 + n
    if channel == CH_EVEN_1:
        return float(j) + 1.5 + 0.5 * n
    if channel == CH_EVEN_2:
        return float(j) + 0.5 + 0.5 * n
    raise SpectrumError(f"unknown no-monopole channel {channel!r}")


def lob_nomonopole_coulomb(alpha: float, mass: float, j: HalfInt, n: int, channel: str) -> EnergyLevel:
    """No-monopole curved Coulomb level E = -M alpha^2/(2 N^2) - N^2/(2M).

    N is channel specific: parity-odd N = j+1+n (hypergeometric polynomial);
    even-1 N = j+3/2+n/2 and even-2 N = j+1/2+n/2 come from the formal Heun
    termination condition beta = -n and are flagged as such. Bound-state
    admissibility needs the substitution exponent b = (M alpha - N^2)/(2N)
    to be positive, i.e. M alpha > N^2 (finite spectrum).
    """
    jf = as_half_integer(j, "j")
    if jf < 0 or jf.denominator != 1:
        raise SpectrumError(f"no-monopole channels need integer j >= 0, got {jf}")
    scen = Scenario(GEOMETRY_LOBACHEVSKY, POTENTIAL_COULOMB, Fraction(0), mass, alpha=alpha)
    big_n = _nomonopole_channel_n_coulomb(jf, n, channel)
    energy = -mass * alpha * alpha / (2.0 * big_n * big_n) - big_n * big_n / (2.0 * mass)
    b = (mass * alpha - big_n * big_n) / (2.0 * big_n)
    admissible = b > 0.0
    reason = "" if admissible else f"{REASON_EXHAUSTED}: M alpha <= N^2 (b = {b:.6g})"
    deriv = DERIV_HYPERGEOMETRIC if channel == CH_PARITY_ODD else DERIV_HEUN_FORMAL
    return EnergyLevel(
        scenario=scen, channel=channel, j=jf, n=n, energy=energy,
        derivation=deriv, admissible=admissible, reason=reason,
        formula="E = -M alpha^2/(2 N^2) - N^2/(2M)",
        extras={"N": big_n, "b": b},
    )


def _nomonopole_channel_n_oscillator(j: Fraction, n: int, channel: str) -> float:
    if channel == CH_PARITY_ODD:
        return 2.0 * n + float(j) + 1.5
    if channel == CH_EVEN_1:
        return 2.0 + float(j) + n
    if channel == CH_EVEN_2:
        return 1.0 + float(j) + n
    raise SpectrumError(f"unknown no-monopole channel {channel!r}")


def lob_nomonopole_oscillator(k_osc: float, mass: float, j: HalfInt, n: int, channel: str) -> EnergyLevel:
    """No-monopole curved oscillator level

        E = N sqrt(K/M + (1/2M)^2) - (N^2 + 1/4)/(2M)

    with parity-odd N = 2n+j+3/2 (restriction N < sqrt(1+4KM)/2 bounds the
    level count) and formal even-channel values N = 2+j+n, N = 1+j+n."""
    jf = as_half_integer(j, "j")
    if jf < 0 or jf.denominator != 1:
        raise SpectrumError(f"no-monopole channels need integer j >= 0, got {jf}")
    scen = Scenario(GEOMETRY_LOBACHEVSKY, POTENTIAL_OSCILLATOR, Fraction(0), mass, k_osc=k_osc)
    big_n = _nomonopole_channel_n_oscillator(jf, n, channel)
    energy = big_n * math.sqrt(k_osc / mass + 0.25 / (mass * mass)) - (big_n**2 + 0.25) / (2.0 * mass)
    limit = math.sqrt(1.0 + 4.0 * k_osc * mass) / 2.0
    admissible = big_n < limit
    reason = "" if admissible else (
        f"{REASON_EXHAUSTED}: restriction N < sqrt(1 + 4 K M)/2 = {limit:.6g} violated"
    )
    deriv = DERIV_HYPERGEOMETRIC if channel == CH_PARITY_ODD else DERIV_HEUN_FORMAL
    return EnergyLevel(
        scenario=scen, channel=channel, j=jf, n=n, energy=energy,
        derivation=deriv, admissible=admissible, reason=reason,
        formula="E = N sqrt(K/M + 1/(2M)^2) - (N^2 + 1/4)/(2M)",
        extras={"N": big_n, "N_limit": limit},
    )


# --- unit conversion ----------------------------------------------------------


FINE_STRUCTURE = 0.0072973525693  # e^2/(hbar c)


@dataclass(frozen=True)
class UnitSystem:
    """Physical constants defining the natural <-> physical map.

    Natural mass M = m*c*R/hbar, natural energy unit hbar*c/R, natural
    oscillator constant K = k_phys R^3/(hbar c). For flat scenarios R is an
    arbitrary reference length that drops out of physical observables and may
    stay unset; Lobachevsky conversions require it. alpha_fs is the physical
    Coulomb coupling e^2/(hbar c), carried for the usual-units expressions.
    """

    hbar: float = 1.0
    c: float = 1.0
    mass: float = 1.0
    radius: Optional[float] = None
    alpha_fs: float = FINE_STRUCTURE

    def __post_init__(self) -> None:
        if min(self.hbar, self.c, self.mass) <= 0:
            raise ValueError("unit-system constants must be positive")
        if self.radius is not None and self.radius <= 0:
            raise ValueError("curvature radius must be positive when set")

    @property
    def reference_radius(self) -> float:
        return 1.0 if self.radius is None else self.radius

    @property
    def natural_mass(self) -> float:
        return self.mass * self.c * self.reference_radius / self.hbar

    @property
    def energy_unit(self) -> float:
        return self.hbar * self.c / self.reference_radius

    def natural_oscillator_constant(self, k_phys: float) -> float:
        return k_phys * self.reference_radius**3 / (self.hbar * self.c)

    def to_physical_energy(self, e_natural: float) -> float:
        return e_natural * self.energy_unit

    def from_physical_energy(self, e_physical: float) -> float:
        return e_physical / self.energy_unit


def to_physical_units(level: EnergyLevel, units: UnitSystem) -> EnergyLevel:
    """Convert a natural-unit level to physical units (multiplicative map;
    involutive with from_physical_units). Lobachevsky scenarios require the
    curvature radius to be set on the unit system."""
    if level.scenario.geometry == GEOMETRY_LOBACHEVSKY and units.radius is None:
        raise SpectrumError("Lobachevsky conversion needs the curvature radius")
    extras = dict(level.extras)
    extras["units"] = "physical"
    return replace(
        level,
        energy=units.to_physical_energy(level.energy),
        epsilon=None if level.epsilon is None else units.to_physical_energy(level.epsilon),
        extras=extras,
    )


def from_physical_units(level: EnergyLevel, units: UnitSystem) -> EnergyLevel:
    extras = dict(level.extras)
    extras.pop("units", None)
    return replace(
        level,
        energy=units.from_physical_energy(level.energy),
        epsilon=None if level.epsilon is None else units.from_physical_energy(level.epsilon),
        extras=extras,
    )


def usual_units_coulomb_energy(units: UnitSystem, alpha: Optional[float] = None, big_n: float = 1.0) -> float:
    """Physical form of the no-monopole curved Coulomb level:
    eps = -m c^2 alpha^2/(2 N^2) - (hbar^2/(m R^2)) N^2/2, alpha = e^2/(hbar c)
    by default."""
    alpha = units.alpha_fs if alpha is None else alpha
    m, c, hb, r = units.mass, units.c, units.hbar, units.reference_radius
    return -m * c * c * alpha * alpha / (2.0 * big_n**2) - (hb * hb / (m * r * r)) * big_n**2 / 2.0


def usual_units_oscillator_energy(units: UnitSystem, k_phys: float, big_n: float) -> float:
    """Physical form of the curved oscillator level:
    eps = hbar (N sqrt(k/m + hbar^2/(4 m^2 R^4)) - hbar (N^2 + 1/4)/(2 m R^2))."""
    m, hb, r = units.mass, units.hbar, units.reference_radius
    return hb * (
        big_n * math.sqrt(k_phys / m + hb * hb / (4.0 * m * m * r**4))
        - hb / (2.0 * m * r * r) * (big_n**2 + 0.25)
    )


def usual_units_minj_coulomb_epsilon(units: UnitSystem, alpha: float, nu: float) -> float:
    """Physical form of the curved minimum-j Coulomb level:
    E = m c^2 / sqrt(1 + alpha^2/nu^2) sqrt(1 - hbar^2 (alpha^2+nu^2)/(m^2 c^2 R^2))."""
    m, c, hb, r = units.mass, units.c, units.hbar, units.reference_radius
    return (
        m * c * c / math.sqrt(1.0 + alpha * alpha / (nu * nu))
        * math.sqrt(1.0 - hb * hb * (alpha * alpha + nu * nu) / (m * m * c * c * r * r))
    )


# --- scenario-level driver ----------------------------------------------------


def default_channels(scenario: Scenario, j: HalfInt) -> list[str]:
    """Channels that produce closed-form levels for this scenario and j."""
    jf = as_half_integer(j, "j")
    if scenario.geometry == GEOMETRY_FLAT:
        if scenario.charge != 0 and jf == min_allowed_j(scenario.charge) and abs(scenario.charge) >= 1:
            return [CH_MIN_J]
        return list(CH_BRANCH)
    if scenario.no_monopole:
        return [CH_PARITY_ODD, CH_EVEN_1, CH_EVEN_2]
    return [CH_MIN_J]


def spectrum_levels(
    scenario: Scenario,
    j: HalfInt,
    n_values,
    channels: Optional[list[str]] = None,
    include_inadmissible: bool = False,
) -> list[EnergyLevel]:
    """All levels for one (scenario, j) over the given radial indices,
    sorted by (channel, j, n)."""
    jf = as_half_integer(j, "j")
    chans = channels if channels is not None else default_channels(scenario, jf)
    out: list[EnergyLevel] = []
    for ch in chans:
        for n in n_values:
            out.append(single_level(scenario, jf, int(n), ch))
    if not include_inadmissible:
        out = [lv for lv in out if lv.admissible]
    out.sort(key=lambda lv: (lv.channel, lv.j, lv.n))
    return out


def single_level(scenario: Scenario, j: HalfInt, n: int, channel: str) -> EnergyLevel:
    """Dispatch one (scenario, j, n, channel) to its closed-form constructor."""
    j = as_half_integer(j, "j")
    geom, pot = scenario.geometry, scenario.potential
    if geom == GEOMETRY_FLAT:
        if pot == POTENTIAL_COULOMB:
            return flat_coulomb(scenario.alpha, scenario.mass, j, scenario.charge, n, channel)
        if pot == POTENTIAL_OSCILLATOR:
            return flat_oscillator(scenario.k_osc, scenario.mass, j, scenario.charge, n, channel)
        raise SpectrumError("flat free-particle scenarios have a continuum, not discrete levels")
    if scenario.no_monopole:
        if pot == POTENTIAL_COULOMB:
            return lob_nomonopole_coulomb(scenario.alpha, scenario.mass, j, n, channel)
        if pot == POTENTIAL_OSCILLATOR:
            return lob_nomonopole_oscillator(scenario.k_osc, scenario.mass, j, n, channel)
        raise SpectrumError("free curved scenarios have a continuum, not discrete levels")
    if channel != CH_MIN_J:
        raise SpectrumError(
            "curved monopole channels beyond minimum j have no closed form; only 'min-j' is available"
        )
    if j != min_allowed_j(scenario.charge):
        raise SpectrumError(
            f"curved monopole levels exist only at j = |k| - 1 = {min_allowed_j(scenario.charge)}, got j = {j}"
        )
    if pot == POTENTIAL_COULOMB:
        return lob_minj_coulomb(scenario.alpha, scenario.mass, n, scenario.charge)
    if pot == POTENTIAL_OSCILLATOR:
        return lob_minj_oscillator(scenario.k_osc, scenario.mass, n, scenario.charge)
    raise SpectrumError("the free curved minimum-j channel has no discrete levels")
