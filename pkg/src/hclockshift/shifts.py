"""Clock shifts of the ESR transitions a->d and b->c and the Δa extraction.

A transition i -> f in a gas with densities n shifts by
``hbar * dω = mu_f - mu_i``.  At fixed drive frequency the resonance field
moves by ``dB = -dω / (dω_if/dB)``, and ``C = dB/dn`` for a spectator
density.  With the symmetrized couplings at high field this gives::

    C = 2 pi hbar (a_t - a_s) / (gamma_e m)

which is positive for a_t > a_s.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .constants import CM3_GAUSS_PER_M3_TESLA, PM
from .hyperfine import (LABELS, HyperfineParams, high_field_states, solve_states,
                        transition_field_slope)
from .interaction import (DensitySet, InteractionModel, Pseudopotential,
                          chemical_potential_exact, coupling_table)

THEORY_BAND = (42 * PM, 55 * PM)
REPORTED_DELTA_A = (30 * PM, 5 * PM)

UNIT_CONVENTIONS = {
    "cm3-gauss": 1 / CM3_GAUSS_PER_M3_TESLA,
    "m3-tesla": 1.0,
}


@dataclass(frozen=True)
class Transition:
    initial: str
    final: str
    bath: str

    def __post_init__(self):
        for lab in (self.initial, self.final, self.bath):
            if lab not in LABELS:
                raise ValueError(f"unknown hyperfine label {lab!r}")
        if self.initial == self.final:
            raise ValueError("initial and final states must differ")

    @property
    def name(self) -> str:
        return self.initial + self.final

    @property
    def self_species(self) -> str:
        return self.initial

    def reversed(self) -> "Transition":
        return Transition(self.final, self.initial, self.bath)


AD = Transition("a", "d", "b")
BC = Transition("b", "c", "a")
TRANSITIONS = {"ad": AD, "bc": BC}


def get_transition(name) -> Transition:
    if isinstance(name, Transition):
        return name
    try:
        return TRANSITIONS[name]
    except KeyError:
        raise ValueError(f"unknown transition {name!r}; expected 'ad' or 'bc'") from None


def _shift_exact(model, transition: Transition, n: DensitySet, pp: Pseudopotential, states) -> Fraction:
    table = coupling_table(model, states, pp)
    dmu = (chemical_potential_exact(table, n, transition.final)
           - chemical_potential_exact(table, n, transition.initial))
    return dmu / Fraction(pp.hbar)


def clock_shift(model, transition, n: DensitySet, pp: Pseudopotential, states=None) -> float:
    """Density shift dω (rad/s) of the transition frequency."""
    transition = get_transition(transition)
    states = high_field_states() if states is None else states
    return float(_shift_exact(model, transition, n, pp, states))


def model_ratio(transition, n: DensitySet, pp: Pseudopotential, states=None) -> float | None:
    """Symmetrized / distinguishable shift ratio; None when both shifts vanish."""
    transition = get_transition(transition)
    states = high_field_states() if states is None else states
    sym = _shift_exact(InteractionModel.SYMMETRIZED, transition, n, pp, states)
    dist = _shift_exact(InteractionModel.DISTINGUISHABLE, transition, n, pp, states)
    if dist == 0:
        return None
    return float(sym / dist)


@dataclass(frozen=True)
class ShiftResult:
    """One transition's shift at a density set, plus its field-shift coefficients.

    ``C_*_m3_per_T`` are in T m^3 (dB in tesla per m^-3); ``C_*_cm3_gauss``
    are in G cm^3 (dB in gauss per cm^-3).  ``field_T`` is None for the
    high-field limit.
    """

    transition: str
    model: str
    field_T: float | None
    slope_rad_s_T: float
    delta_omega_rad_s: float
    delta_B_T: float
    C_m3_per_T: float
    C_cm3_gauss: float
    C_self_m3_per_T: float
    C_self_cm3_gauss: float

    def as_record(self) -> dict:
        return asdict(self)


def field_shift_coefficient(transition, model, pp: Pseudopotential, params: HyperfineParams,
                            B: float | None = None, densities: DensitySet | None = None) -> ShiftResult:
    """Resonance-field shift coefficients of a transition.

    With ``B=None`` the high-field states are used and the transition slope
    is taken as gamma_e; otherwise states and slope come from the solved
    levels at field B.
    """
    transition = get_transition(transition)
    model = InteractionModel.parse(model)
    if B is None:
        states = high_field_states()
        slope = params.gamma_e
    else:
        states = solve_states(params, B)
        slope = transition_field_slope(params, (transition.initial, transition.final), B)
    n = densities or DensitySet()
    per_bath = _shift_exact(model, transition, DensitySet.of(**{transition.bath: 1.0}), pp, states)
    per_self = _shift_exact(model, transition, DensitySet.of(**{transition.self_species: 1.0}), pp, states)
    dw = _shift_exact(model, transition, n, pp, states)
    slope_q = Fraction(slope)
    C = -per_bath / slope_q
    C_self = -per_self / slope_q
    return ShiftResult(
        transition=transition.name,
        model=model.value,
        field_T=B,
        slope_rad_s_T=slope,
        delta_omega_rad_s=float(dw),
        delta_B_T=float(-dw / slope_q),
        C_m3_per_T=float(C),
        C_cm3_gauss=float(C * Fraction(CM3_GAUSS_PER_M3_TESLA)),
        C_self_m3_per_T=float(C_self),
        C_self_cm3_gauss=float(C_self * Fraction(CM3_GAUSS_PER_M3_TESLA)),
    )


@dataclass(frozen=True)
class DeltaA:
    """Scattering-length difference a_t - a_s (m) with its standard uncertainty."""

    value: float
    sigma: float

    @property
    def interval_2sigma(self) -> tuple[float, float]:
        return self.value - 2 * self.sigma, self.value + 2 * self.sigma


def extract_delta_a(C: float, units: str | None, params: HyperfineParams, sigma: float = 0.0) -> DeltaA:
    """Invert the high-field symmetrized coefficient: Δa = C gamma_e m / (2 pi hbar).

    ``units`` must be ``"cm3-gauss"`` or ``"m3-tesla"``; there is no default.
    """
    if units not in UNIT_CONVENTIONS:
        raise ValueError(f"unit convention required: one of {', '.join(UNIT_CONVENTIONS)} (got {units!r})")
    if not math.isfinite(C):
        raise ValueError("C must be finite")
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    to_si = UNIT_CONVENTIONS[units]
    k = params.gamma_e * params.mass / (2 * math.pi * params.hbar)
    return DeltaA(C * to_si * k, sigma * to_si * k)


@dataclass(frozen=True)
class TheoryComparison:
    delta_a: float
    band: tuple[float, float]
    position: str  # "below", "within" or "above"

    @property
    def within_range(self) -> bool:
        return self.position == "within"


def compare_to_theory(delta_a: float, band: tuple[float, float] = THEORY_BAND) -> TheoryComparison:
    lo, hi = band
    if delta_a < lo:
        pos = "below"
    elif delta_a > hi:
        pos = "above"
    else:
        pos = "within"
    return TheoryComparison(delta_a, band, pos)


def consistent_with_reported(da: DeltaA, reported: tuple[float, float] = REPORTED_DELTA_A) -> bool:
    """True if the 2-sigma interval of ``da`` overlaps the reported value's 1-sigma interval."""
    lo, hi = da.interval_2sigma
    ref, ref_sigma = reported
    return lo <= ref + ref_sigma and hi >= ref - ref_sigma
