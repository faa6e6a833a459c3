"""Hyperfine + Zeeman levels of a hydrogen-like atom (spin 1/2 electron and nucleus).

Hamiltonian in angular-frequency units::

    H = A (I.S) + gamma_e B S_z - gamma_n B I_z

The four eigenstates are labeled by their m_F sector: ``b = |↓⇓>`` and
``d = |↑⇑>`` are pure at every field, while ``a`` (lower) and ``c`` (upper)
mix ``|↓⇑>`` and ``|↑⇓>``::

    a = cos(eps) |↓⇑> - sin(eps) |↑⇓>
    c = sin(eps) |↓⇑> + cos(eps) |↑⇓>,     tan(2 eps) = A / ((gamma_e + gamma_n) B)

Below ~16.7 T this coincides with ascending energy order a < b < c < d (with
the B = 0 triplet ordered by m_F = -1, 0, +1).  Above it the c and d levels
cross; the labels follow the states, not the energy order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constants import A_OVER_2PI, GAMMA_E_OVER_2PI, GAMMA_N_OVER_2PI, HBAR, M_H
from .spinalg import (DOWN_DOWN, DOWN_UP, ONE, SINGLE_BASIS, UP_DOWN, UP_UP,
                      Amplitude, SpinKet)

LABELS = ("a", "b", "c", "d")


@dataclass(frozen=True)
class HyperfineParams:
    """A, gamma_e, gamma_n in rad/s (per tesla for the gammas); mass in kg."""

    A: float
    gamma_e: float
    gamma_n: float
    mass: float
    hbar: float = HBAR

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError("A must be positive")
        if not self.gamma_e > 0:
            raise ValueError("gamma_e must be positive")
        if not self.mass > 0:
            raise ValueError("mass must be positive")

    @classmethod
    def hydrogen(cls) -> "HyperfineParams":
        return cls(A=2 * math.pi * A_OVER_2PI,
                   gamma_e=2 * math.pi * GAMMA_E_OVER_2PI,
                   gamma_n=2 * math.pi * GAMMA_N_OVER_2PI,
                   mass=M_H)


@dataclass(frozen=True)
class HyperfineState:
    label: str
    energy: float | None  # rad/s; None in the high-field limit
    ket: SpinKet
    epsilon: float


def _check_field(B: float):
    if not B >= 0:
        raise ValueError("field must be ≥ 0")


def _check_label(label: str):
    if label not in LABELS:
        raise ValueError(f"unknown hyperfine label {label!r}; expected one of a, b, c, d")


def hamiltonian(params: HyperfineParams, B: float) -> np.ndarray:
    """4x4 Hamiltonian (rad/s) over ``SINGLE_BASIS``."""
    sp = np.array([[0.0, 1.0], [0.0, 0.0]])
    sz = np.diag([0.5, -0.5])
    sx = 0.5 * (sp + sp.T)
    sy_im = 0.5 * (sp - sp.T)  # sy = -i * sy_im; sy (x) sy = -(sy_im (x) sy_im)
    eye = np.eye(2)
    # kron order (electron, nuclear) with index 0 = up
    idots = (np.kron(sx, sx) - np.kron(sy_im, sy_im) + np.kron(sz, sz))
    H = (params.A * idots + params.gamma_e * B * np.kron(sz, eye)
         - params.gamma_n * B * np.kron(eye, sz))
    # reorder rows/cols from (↑⇑, ↑⇓, ↓⇑, ↓⇓) to SINGLE_BASIS
    kron_order = [UP_UP, UP_DOWN, DOWN_UP, DOWN_DOWN]
    perm = [kron_order.index(lab) for lab in SINGLE_BASIS]
    return H[np.ix_(perm, perm)]


def breit_rabi_energies(params: HyperfineParams, B: float) -> dict[str, float]:
    """Closed-form energies (rad/s) by label; valid for any real B."""
    A, ge, gn = params.A, params.gamma_e, params.gamma_n
    root = math.hypot(A / 2, (ge + gn) * B / 2)
    return {
        "a": -A / 4 - root,
        "b": A / 4 - (ge - gn) * B / 2,
        "c": -A / 4 + root,
        "d": A / 4 + (ge - gn) * B / 2,
    }


def mixing_angle(params: HyperfineParams, B: float) -> float:
    """Closed-form admixture angle eps; pi/4 at zero field, 0 as B -> infinity."""
    return 0.5 * math.atan2(params.A, (params.gamma_e + params.gamma_n) * B)


def _mixed_pair(cos_eps: float, sin_eps: float) -> tuple[SpinKet, SpinKet]:
    # r is the exact square of the float cosine; 1 - r keeps the norm exactly 1
    r = Fraction(cos_eps) ** 2
    s = 1 - r
    a = SpinKet(4, {DOWN_UP: Amplitude(1, r, exact=False),
                    UP_DOWN: Amplitude(-1, s, exact=False)})
    c = SpinKet(4, {DOWN_UP: Amplitude(1, s, exact=False),
                    UP_DOWN: Amplitude(1, r, exact=False)})
    return a, c


def solve_states(params: HyperfineParams, B: float) -> tuple[HyperfineState, ...]:
    """Diagonalize the hyperfine + Zeeman Hamiltonian at field B (tesla).

    Returns the states in label order a, b, c, d.
    """
    _check_field(B)
    H = hamiltonian(params, B)
    idx = {lab: i for i, lab in enumerate(SINGLE_BASIS)}
    block_ix = [idx[DOWN_UP], idx[UP_DOWN]]
    block = H[np.ix_(block_ix, block_ix)]
    evals, evecs = np.linalg.eigh(block)
    lower = evecs[:, 0]
    if lower[0] < 0:
        lower = -lower
    eps = math.atan2(-lower[1], lower[0])
    a_ket, c_ket = _mixed_pair(math.cos(eps), math.sin(eps))
    return (
        HyperfineState("a", float(evals[0]), a_ket, eps),
        HyperfineState("b", float(H[idx[DOWN_DOWN], idx[DOWN_DOWN]]), SpinKet(4, {DOWN_DOWN: ONE}), 0.0),
        HyperfineState("c", float(evals[1]), c_ket, eps),
        HyperfineState("d", float(H[idx[UP_UP], idx[UP_UP]]), SpinKet(4, {UP_UP: ONE}), 0.0),
    )


def high_field_states() -> tuple[HyperfineState, ...]:
    """Pure product states of the B -> infinity limit; energies are unset."""
    return tuple(HyperfineState(lab, None, SpinKet(4, {basis: ONE}), 0.0)
                 for lab, basis in zip(LABELS, (DOWN_UP, DOWN_DOWN, UP_DOWN, UP_UP)))


def states_by_label(states) -> dict[str, HyperfineState]:
    out = {s.label: s for s in states}
    if sorted(out) != list(LABELS):
        raise ValueError("need exactly one state for each of a, b, c, d")
    return out


def _parse_transition(transition) -> tuple[str, str]:
    if isinstance(transition, str):
        if len(transition) != 2:
            raise ValueError(f"transition must name two states, got {transition!r}")
        transition = (transition[0], transition[1])
    initial, final = transition
    _check_label(initial)
    _check_label(final)
    if initial == final:
        raise ValueError("transition needs two different states")
    return initial, final


def transition_frequency(params: HyperfineParams, transition, B: float) -> float:
    initial, final = _parse_transition(transition)
    E = breit_rabi_energies(params, B)
    return E[final] - E[initial]


def transition_field_slope(params: HyperfineParams, transition, B: float) -> float:
    """d(omega_final - omega_initial)/dB in rad s^-1 T^-1 by central difference."""
    _parse_transition(transition)
    _check_field(B)
    h = 1e-6 * max(B, 1.0)
    return (transition_frequency(params, transition, B + h)
            - transition_frequency(params, transition, B - h)) / (2 * h)
