"""Contact-pseudopotential couplings and mean-field interaction energies.

The interaction ``lambda * delta(r2 - r1)`` takes the value ``lambda_s`` in the
electron-singlet channel and ``lambda_t`` in the electron-triplet channel,
independent of the nuclear spins.  Two treatments of a heterostate pair are
available:

``SYMMETRIZED``
    The pair is exchange-symmetrized.  The antisymmetric spatial part has no
    contact density, and the symmetric spatial part has twice the
    distinguishable-particle contact density, so the spin part enters as
    ``|αβ>_+`` with full weight.
``DISTINGUISHABLE``
    The unsymmetrized product ``|αβ>`` is used and the ``e_t n_s`` and
    ``e_s n_t`` components are dropped.  Same-state pairs are treated as in
    ``SYMMETRIZED``.

All coupling arithmetic is carried out on exact rationals built from the
float inputs, so identities like the factor-of-two model ratio hold exactly.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .constants import HBAR
from .hyperfine import LABELS, HyperfineState, states_by_label
from .spinalg import ChannelWeights, channel_weights, symmetrize, tensor


class InteractionModel(enum.Enum):
    SYMMETRIZED = "sym"
    DISTINGUISHABLE = "dist"

    @classmethod
    def parse(cls, name) -> "InteractionModel":
        if isinstance(name, cls):
            return name
        for m in cls:
            if name in (m.value, m.name, m.name.lower()):
                return m
        raise ValueError(f"unknown interaction model {name!r}; expected 'sym' or 'dist'")


def lambda_from_scattering_length(a: float, mass: float, hbar: float = HBAR) -> float:
    """Contact coupling ``4 pi hbar^2 a / m`` (J m^3)."""
    if not mass > 0:
        raise ValueError("mass must be positive")
    return 4 * math.pi * hbar ** 2 * a / mass


def scattering_length_from_lambda(lam: float, mass: float, hbar: float = HBAR) -> float:
    if not mass > 0:
        raise ValueError("mass must be positive")
    return lam * mass / (4 * math.pi * hbar ** 2)


@dataclass(frozen=True)
class Pseudopotential:
    a_s: float
    a_t: float
    mass: float
    hbar: float = HBAR

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("mass must be positive")

    @property
    def lambda_s(self) -> float:
        return lambda_from_scattering_length(self.a_s, self.mass, self.hbar)

    @property
    def lambda_t(self) -> float:
        return lambda_from_scattering_length(self.a_t, self.mass, self.hbar)

    @property
    def delta_a(self) -> float:
        return self.a_t - self.a_s


def pair_weights(model, alpha: HyperfineState, beta: HyperfineState) -> ChannelWeights:
    """Electron-channel weights entering the coupling of the pair (alpha, beta)."""
    model = InteractionModel.parse(model)
    if model is InteractionModel.SYMMETRIZED or alpha.label == beta.label:
        pair = symmetrize(alpha.ket, beta.ket)
        if pair.is_zero:
            raise RuntimeError(f"symmetrized pair ({alpha.label},{beta.label}) vanished")
        return channel_weights(pair)
    return channel_weights(tensor(alpha.ket, beta.ket), restricted=True)


def _lambda_exact(w: ChannelWeights, lambda_s: float, lambda_t: float) -> Fraction:
    return w.w_es * Fraction(lambda_s) + w.w_et * Fraction(lambda_t)


def pair_lambda(model, alpha: HyperfineState, beta: HyperfineState, pp: Pseudopotential) -> float:
    """Effective coupling lambda_αβ (J m^3) of a pair under the given model."""
    return float(_lambda_exact(pair_weights(model, alpha, beta), pp.lambda_s, pp.lambda_t))


@dataclass(frozen=True)
class CouplingTable:
    """Symmetric table of pair couplings keyed by label pairs."""

    model: InteractionModel
    lambda_s: float
    lambda_t: float
    weights: Mapping[tuple[str, str], ChannelWeights]

    def weight(self, alpha: str, beta: str) -> ChannelWeights:
        key = (alpha, beta) if (alpha, beta) in self.weights else (beta, alpha)
        try:
            return self.weights[key]
        except KeyError:
            raise ValueError(f"no coupling for pair ({alpha},{beta})") from None

    def exact(self, alpha: str, beta: str) -> Fraction:
        return _lambda_exact(self.weight(alpha, beta), self.lambda_s, self.lambda_t)

    def __getitem__(self, pair: tuple[str, str]) -> float:
        return float(self.exact(*pair))

    @property
    def entries(self) -> dict[tuple[str, str], float]:
        return {(x, y): self[x, y] for x in LABELS for y in LABELS}

    def matrix(self) -> list[list[float]]:
        return [[self[x, y] for y in LABELS] for x in LABELS]


@functools.lru_cache(maxsize=256)
def _table_weights(model: InteractionModel, kets: tuple) -> MappingProxyType:
    states = {lab: HyperfineState(lab, None, k, 0.0) for lab, k in zip(LABELS, kets)}
    weights = {}
    for i, x in enumerate(LABELS):
        for y in LABELS[i:]:
            weights[(x, y)] = pair_weights(model, states[x], states[y])
    return MappingProxyType(weights)


def coupling_table(model, states, pp: Pseudopotential) -> CouplingTable:
    model = InteractionModel.parse(model)
    by_label = states_by_label(states)
    weights = _table_weights(model, tuple(by_label[lab].ket for lab in LABELS))
    return CouplingTable(model, pp.lambda_s, pp.lambda_t, weights)


@dataclass(frozen=True)
class DensitySet:
    """Number densities of the four hyperfine states (m^-3)."""

    n_a: float = 0.0
    n_b: float = 0.0
    n_c: float = 0.0
    n_d: float = 0.0

    def __post_init__(self):
        for lab in LABELS:
            v = self[lab]
            if not (v >= 0 and math.isfinite(v)):
                raise ValueError(f"density n_{lab} must be non-negative, got {v}")

    def __getitem__(self, label: str) -> float:
        if label not in LABELS:
            raise ValueError(f"unknown hyperfine label {label!r}")
        return getattr(self, f"n_{label}")

    @classmethod
    def of(cls, **by_label: float) -> "DensitySet":
        return cls(**{f"n_{k}": v for k, v in by_label.items()})


def _energy_exact(table: CouplingTable, n: DensitySet) -> Fraction:
    dens = {lab: Fraction(n[lab]) for lab in LABELS}
    total = Fraction(0)
    for i, x in enumerate(LABELS):
        # same-state pairs carry 1/2; heterostate pairs have no 1/2 (exchange doubling)
        total += table.exact(x, x) * dens[x] ** 2 / 2
        for y in LABELS[i + 1:]:
            total += table.exact(x, y) * dens[x] * dens[y]
    return total


def interaction_energy_density(table: CouplingTable, n: DensitySet) -> float:
    """Mean-field interaction energy per volume (J m^-3)."""
    return float(_energy_exact(table, n))


def chemical_potential_exact(table: CouplingTable, n: DensitySet, species: str) -> Fraction:
    if species not in LABELS:
        raise ValueError(f"unknown hyperfine label {species!r}")
    return sum((table.exact(species, y) * Fraction(n[y]) for y in LABELS), Fraction(0))


def chemical_potential(table: CouplingTable, n: DensitySet, species: str) -> float:
    """dE/dn_species (J)."""
    return float(chemical_potential_exact(table, n, species))
