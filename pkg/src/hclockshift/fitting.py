"""Weighted linear fit of resonance-field shifts against spectator densities.

For a transition the model is ``delta_B = C_cross * n_bath + C_self * n_self``
(a->d: bath b, self a; b->c: bath a, self b).  Units follow the measurement
tables: densities in cm^-3, fields in gauss, coefficients in G cm^3.

CSV schema, exact header::

    transition,n_a,n_b,delta_B,sigma_B

``#`` lines are comments.  Row numbers in error messages count data rows
from 1.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

HEADER = ("transition", "n_a", "n_b", "delta_B", "sigma_B")
ROLES = {"ad": ("n_b", "n_a"), "bc": ("n_a", "n_b")}  # (bath, self)

# relative determinant below which the 2x2 normal matrix counts as singular
_SINGULAR_TOL = 1e-12
_NOMINAL_SIGMA_B = 1e-4  # G; reported uncertainty for noiseless synthetic rows


class MeasurementParseError(ValueError):
    pass


class FitError(ValueError):
    pass


class InsufficientDataError(FitError):
    pass


class SingularFitError(FitError):
    pass


@dataclass(frozen=True)
class MeasurementRow:
    transition: str
    n_a: float
    n_b: float
    delta_B: float
    sigma_B: float
    row: int | None = None

    def __post_init__(self):
        if self.transition not in ROLES:
            raise ValueError(f"transition must be 'ad' or 'bc', got {self.transition!r}")
        if self.n_a < 0 or self.n_b < 0:
            raise ValueError("densities must be non-negative")
        if not self.sigma_B > 0:
            raise ValueError("sigma_B must be positive")

    @property
    def n_bath(self) -> float:
        return getattr(self, ROLES[self.transition][0])

    @property
    def n_self(self) -> float:
        return getattr(self, ROLES[self.transition][1])


@dataclass(frozen=True)
class FitResult:
    transition: str
    C_cross: float
    C_self: float
    covariance: tuple[tuple[float, float], tuple[float, float]]
    chi2: float
    dof: int

    @property
    def sigma_cross(self) -> float:
        return math.sqrt(self.covariance[0][0])

    @property
    def sigma_self(self) -> float:
        return math.sqrt(self.covariance[1][1])

    @property
    def reduced_chi2(self) -> float:
        return self.chi2 / self.dof

    def as_record(self) -> dict:
        return {
            "transition": self.transition,
            "C_cross_cm3_gauss": self.C_cross,
            "sigma_C_cross_cm3_gauss": self.sigma_cross,
            "C_self_cm3_gauss": self.C_self,
            "sigma_C_self_cm3_gauss": self.sigma_self,
            "cov_cross_self": self.covariance[0][1],
            "chi2": self.chi2,
            "dof": self.dof,
            "chi2_per_dof": self.reduced_chi2,
        }


def parse_measurements(text: str) -> list[MeasurementRow]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MeasurementParseError("missing header")
    reader = csv.reader(io.StringIO("\n".join(lines)))
    header = tuple(h.strip() for h in next(reader))
    if header != HEADER:
        missing = [c for c in HEADER if c not in header]
        detail = f"missing column(s) {', '.join(missing)}" if missing else f"got {','.join(header)}"
        raise MeasurementParseError(f"header must be {','.join(HEADER)}: {detail}")
    rows = []
    for i, fields in enumerate(reader, 1):
        if len(fields) != len(HEADER):
            raise MeasurementParseError(f"row {i}: expected {len(HEADER)} fields, got {len(fields)}")
        rec = dict(zip(HEADER, (f.strip() for f in fields)))
        if rec["transition"] not in ROLES:
            raise MeasurementParseError(f"row {i}: transition must be 'ad' or 'bc'")
        values = {}
        for col in HEADER[1:]:
            try:
                values[col] = float(rec[col])
            except ValueError:
                raise MeasurementParseError(f"row {i}: {col} is not a number: {rec[col]!r}") from None
            if not math.isfinite(values[col]):
                raise MeasurementParseError(f"row {i}: {col} must be finite")
        if values["sigma_B"] <= 0:
            raise MeasurementParseError(f"row {i}: sigma_B must be positive")
        for col in ("n_a", "n_b"):
            if values[col] < 0:
                raise MeasurementParseError(f"row {i}: {col} must be non-negative")
        rows.append(MeasurementRow(rec["transition"], row=i, **values))
    if not rows:
        raise MeasurementParseError("no measurements")
    return rows


def load_measurements(path: str | Path) -> list[MeasurementRow]:
    return parse_measurements(Path(path).read_text())


def format_measurements(rows: Iterable[MeasurementRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow([r.transition] + [repr(float(getattr(r, c))) for c in HEADER[1:]])
    return buf.getvalue()


def write_measurements(rows: Iterable[MeasurementRow], path: str | Path) -> None:
    Path(path).write_text(format_measurements(rows))


def fit_coefficients(rows: Sequence[MeasurementRow]) -> FitResult:
    """Weighted least squares for (C_cross, C_self) with weights 1/sigma_B^2."""
    rows = list(rows)
    if len(rows) < 3:
        raise InsufficientDataError(f"need at least 3 measurements, got {len(rows)}")
    transitions = {r.transition for r in rows}
    if len(transitions) != 1:
        raise FitError("rows mix transitions; fit one transition at a time")
    transition = transitions.pop()
    bath_col, self_col = ROLES[transition]

    x = np.array([[r.n_bath, r.n_self] for r in rows], dtype=float)
    y = np.array([r.delta_B for r in rows], dtype=float)
    w = 1.0 / np.array([r.sigma_B for r in rows], dtype=float) ** 2

    for j, col in enumerate((bath_col, self_col)):
        if not np.any(x[:, j]):
            name = "C_cross" if j == 0 else "C_self"
            raise SingularFitError(f"singular fit: {col} is zero in every row, so {name} is unidentifiable")
    # column scaling keeps the 2x2 normal matrix well conditioned
    scale = np.array([math.sqrt(math.fsum(x[:, j] ** 2) / len(rows)) for j in range(2)])
    xs = x / scale
    m00 = math.fsum(w * xs[:, 0] ** 2)
    m11 = math.fsum(w * xs[:, 1] ** 2)
    m01 = math.fsum(w * xs[:, 0] * xs[:, 1])
    det = m00 * m11 - m01 * m01
    if det <= _SINGULAR_TOL * m00 * m11:
        raise SingularFitError(f"singular fit: {bath_col} and {self_col} are collinear across the measurements")
    inv00, inv11, inv01 = m11 / det, m00 / det, -m01 / det
    b0 = math.fsum(w * xs[:, 0] * y)
    b1 = math.fsum(w * xs[:, 1] * y)
    p0 = (inv00 * b0 + inv01 * b1) / scale[0]
    p1 = (inv01 * b0 + inv11 * b1) / scale[1]
    c01 = float(inv01 / (scale[0] * scale[1]))
    cov = ((float(inv00 / scale[0] ** 2), c01), (c01, float(inv11 / scale[1] ** 2)))
    resid = y - (p0 * x[:, 0] + p1 * x[:, 1])
    chi2 = math.fsum(w * resid ** 2)
    return FitResult(transition, float(p0), float(p1), cov, chi2, len(rows) - 2)


def density_grid(n_max: float, steps: int = 5) -> list[tuple[float, float]]:
    """Product grid of (n_bath, n_self) from 0 to n_max, skipping the origin."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    values = np.linspace(0.0, n_max, steps)
    return [(float(u), float(v)) for u in values for v in values if u or v]


def synthesize_dataset(C_cross: float, C_self: float, grid: Iterable[tuple[float, float]],
                       noise: float = 0.0, seed: int = 0, transition: str = "ad",
                       sigma_B: float | None = None) -> list[MeasurementRow]:
    """Rows ``delta_B = C_cross n_bath + C_self n_self + N(0, noise)``.

    ``grid`` holds (n_bath, n_self) pairs in cm^-3.  Noise comes from
    ``numpy.random.default_rng(seed)`` (PCG64), so equal seeds give equal
    datasets.  The recorded ``sigma_B`` defaults to ``noise``, or to 1e-4 G
    when ``noise`` is 0.
    """
    grid = list(grid)
    if not grid:
        raise ValueError("density grid is empty")
    if noise < 0:
        raise ValueError("noise sigma must be non-negative")
    if transition not in ROLES:
        raise ValueError(f"transition must be 'ad' or 'bc', got {transition!r}")
    rng = np.random.default_rng(seed)
    eps = rng.normal(0.0, noise, size=len(grid)) if noise > 0 else np.zeros(len(grid))
    sig = sigma_B if sigma_B is not None else (noise if noise > 0 else _NOMINAL_SIGMA_B)
    bath_col, self_col = ROLES[transition]
    rows = []
    for i, ((n_bath, n_self), e) in enumerate(zip(grid, eps), 1):
        dens = {bath_col: n_bath, self_col: n_self}
        rows.append(MeasurementRow(transition, dens["n_a"], dens["n_b"],
                                   C_cross * n_bath + C_self * n_self + float(e), sig, row=i))
    return rows
