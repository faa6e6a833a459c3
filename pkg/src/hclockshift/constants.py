"""Physical constants for atomic hydrogen and the ``key = value`` constants file.

Recognized keys (SI, frequencies in Hz)::

    hbar              reduced Planck constant, J s
    m_H               atomic mass, kg
    gamma_e_over_2pi  electron gyromagnetic ratio / 2pi, Hz/T
    gamma_n_over_2pi  proton gyromagnetic ratio / 2pi, Hz/T
    A_over_2pi        zero-field hyperfine splitting / 2pi, Hz

Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

HBAR = 1.054571817e-34
M_H = 1.6735575e-27
GAMMA_E_OVER_2PI = 28.0249514e9
GAMMA_N_OVER_2PI = 42.5774785e6
A_OVER_2PI = 1.4204057518e9

# 1 T m^3 expressed in G cm^3
CM3_GAUSS_PER_M3_TESLA = 1e4 * 1e6
CM3_PER_M3 = 1e6
PM = 1e-12


@dataclass(frozen=True)
class Constants:
    hbar: float = HBAR
    m_H: float = M_H
    gamma_e_over_2pi: float = GAMMA_E_OVER_2PI
    gamma_n_over_2pi: float = GAMMA_N_OVER_2PI
    A_over_2pi: float = A_OVER_2PI

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{f.name} must be positive and finite, got {v}")

    def hyperfine_params(self):
        from .hyperfine import HyperfineParams

        return HyperfineParams(
            A=2 * math.pi * self.A_over_2pi,
            gamma_e=2 * math.pi * self.gamma_e_over_2pi,
            gamma_n=2 * math.pi * self.gamma_n_over_2pi,
            mass=self.m_H,
            hbar=self.hbar,
        )


def parse_constants(text: str, base: Constants | None = None) -> Constants:
    known = {f.name for f in fields(Constants)}
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ValueError(f"line {lineno}: unknown constant {key!r} (known: {', '.join(sorted(known))})")
        try:
            updates[key] = float(value)
        except ValueError:
            raise ValueError(f"line {lineno}: {key} is not a number: {value!r}") from None
    return replace(base or Constants(), **updates)


def load_constants(path: str | Path) -> Constants:
    return parse_constants(Path(path).read_text())
