"""Exact algebra of one- and two-atom spin states.

A single atom is an electron spin 1/2 and a nuclear spin 1/2, so its product
basis has four labels and a pair of atoms has sixteen.  Amplitudes are stored
as signed square roots of rationals, which covers every amplitude that occurs
in the high-field limit (0, +-1/2, +-1/sqrt(2), +-1) and keeps normalization,
exchange parity and channel weights exactly checkable.

Phase convention for both the electron and the nuclear pair::

    singlet    = (|up,down> - |down,up>) / sqrt(2)
    triplet(0) = (|up,down> + |down,up>) / sqrt(2)

with the first-listed atom as atom 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]

HALF = Fraction(1, 2)
UP = HALF
DOWN = -HALF

_NORM_TOL = 1e-12


class ZeroKetError(ValueError):
    """Raised when a quantity is undefined for the zero ket."""


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _rational_sqrt(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


# ---------------------------------------------------------------------------
# amplitudes


@dataclass(frozen=True)
class Amplitude:
    """Real amplitude ``sign * sqrt(radicand)`` with a rational radicand.

    ``exact`` is False only for amplitudes that came from floating point
    (finite-field mixing) or from sums that are not a single surd; for those
    the radicand is the exact square of the float value.
    """

    sign: int
    radicand: Fraction
    exact: bool = True

    def __post_init__(self):
        r = Fraction(self.radicand)
        if r < 0:
            raise ValueError("radicand must be non-negative")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "radicand", r)
        if r == 0:
            object.__setattr__(self, "sign", 1)

    @classmethod
    def sqrt(cls, q: Rational, sign: int = 1) -> "Amplitude":
        return cls(sign, Fraction(q))

    @classmethod
    def rational(cls, q: Rational) -> "Amplitude":
        q = Fraction(q)
        return cls(-1 if q < 0 else 1, q * q)

    @classmethod
    def from_float(cls, x: float) -> "Amplitude":
        f = Fraction(float(x))
        return cls(-1 if f < 0 else 1, f * f, exact=False)

    @cached_property
    def value(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def __float__(self) -> float:
        return self.value

    @property
    def is_zero(self) -> bool:
        return self.radicand == 0

    def square(self) -> Fraction:
        return self.radicand

    def __neg__(self) -> "Amplitude":
        return Amplitude(-self.sign, self.radicand, self.exact)

    def __mul__(self, other) -> "Amplitude":
        if isinstance(other, Amplitude):
            return Amplitude(self.sign * other.sign, self.radicand * other.radicand,
                             self.exact and other.exact)
        if isinstance(other, (int, Fraction)):
            return self * Amplitude.rational(other)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.exact:
            return f"≈{self.value:+.16g}"
        s = "-" if self.sign < 0 else "+"
        r = self.radicand
        body = f"√{r.numerator}" if r.denominator == 1 else f"√({r.numerator}/{r.denominator})"
        return s + body


ZERO = Amplitude(1, Fraction(0))
ONE = Amplitude(1, Fraction(1))
INV_SQRT2 = Amplitude.sqrt(HALF)


def amp_sum(terms: Iterable[Amplitude]) -> Amplitude:
    """Sum amplitudes, staying exact whenever the result is a single surd.

    Terms are grouped by square class (``p ~ q`` iff ``p/q`` is a rational
    square); surds from distinct classes are linearly independent over the
    rationals, so more than one surviving class means the sum is not of the
    form ``+-sqrt(rational)`` and a float amplitude is returned.
    """
    terms = [t for t in terms if not t.is_zero]
    if not terms:
        return ZERO
    if not all(t.exact for t in terms):
        return Amplitude.from_float(math.fsum(t.value for t in terms))
    groups: list[list] = []  # [base radicand, rational coefficient]
    for t in terms:
        for g in groups:
            ratio = t.radicand / g[0]
            if _is_rational_square(ratio):
                g[1] += t.sign * _rational_sqrt(ratio)
                break
        else:
            groups.append([t.radicand, Fraction(t.sign)])
    groups = [g for g in groups if g[1] != 0]
    if not groups:
        return ZERO
    if len(groups) == 1:
        base, coeff = groups[0]
        return Amplitude(-1 if coeff < 0 else 1, coeff * coeff * base)
    return Amplitude.from_float(math.fsum(float(c) * math.sqrt(b) for b, c in groups))


# ---------------------------------------------------------------------------
# labels


def _arrow(m: Fraction, nuclear: bool) -> str:
    if nuclear:
        return "⇑" if m > 0 else "⇓"
    return "↑" if m > 0 else "↓"


@dataclass(frozen=True, order=True)
class BasisLabel:
    """Single-atom product label ``|m_S, m_I>``."""

    electron: Fraction
    nuclear: Fraction

    def __post_init__(self):
        for m in (self.electron, self.nuclear):
            if m not in (UP, DOWN):
                raise ValueError(f"spin projection must be +-1/2, got {m}")
        object.__setattr__(self, "electron", Fraction(self.electron))
        object.__setattr__(self, "nuclear", Fraction(self.nuclear))

    def __str__(self) -> str:
        return _arrow(self.electron, False) + _arrow(self.nuclear, True)


@dataclass(frozen=True, order=True)
class PairLabel:
    """Ordered pair of single-atom labels; ``first`` is atom 1."""

    first: BasisLabel
    second: BasisLabel

    def swapped(self) -> "PairLabel":
        return PairLabel(self.second, self.first)

    def __str__(self) -> str:
        return f"{self.first},{self.second}"


SINGLE_BASIS: tuple[BasisLabel, ...] = tuple(
    sorted(BasisLabel(e, n) for e in (UP, DOWN) for n in (UP, DOWN)))
PAIR_BASIS: tuple[PairLabel, ...] = tuple(
    PairLabel(p, q) for p in SINGLE_BASIS for q in SINGLE_BASIS)

# named single-atom labels; the high-field hyperfine states are a, b, c, d
DOWN_UP = BasisLabel(DOWN, UP)      # a
DOWN_DOWN = BasisLabel(DOWN, DOWN)  # b
UP_DOWN = BasisLabel(UP, DOWN)      # c
UP_UP = BasisLabel(UP, UP)          # d


@dataclass(frozen=True, order=True)
class Channel:
    """Two-spin channel: ``spin`` 0 is the singlet, 1 the triplet with projection ``m``."""

    spin: int
    m: int = 0

    def __post_init__(self):
        if self.spin not in (0, 1) or abs(self.m) > self.spin:
            raise ValueError(f"invalid channel S={self.spin}, m={self.m}")

    @property
    def is_singlet(self) -> bool:
        return self.spin == 0

    def __str__(self) -> str:
        return "s" if self.spin == 0 else f"t({self.m:+d})".replace("+0", "0")


SINGLET = Channel(0)
TRIPLET = {m: Channel(1, m) for m in (-1, 0, 1)}
CHANNELS: tuple[Channel, ...] = (SINGLET, TRIPLET[-1], TRIPLET[0], TRIPLET[1])


@dataclass(frozen=True, order=True)
class CoupledPairLabel:
    """Pair label in the electron/nuclear singlet-triplet basis, ``|e_X n_Y>``."""

    electron: Channel
    nuclear: Channel

    @property
    def exchange_symmetric(self) -> bool:
        # full exchange parity is the product of the electron and nuclear parities
        return self.electron.spin == self.nuclear.spin

    def __str__(self) -> str:
        return f"e_{self.electron} n_{self.nuclear}"


COUPLED_BASIS: tuple[CoupledPairLabel, ...] = tuple(
    CoupledPairLabel(e, n) for e in CHANNELS for n in CHANNELS)


def _channel_components(ch: Channel) -> dict[tuple[Fraction, Fraction], Amplitude]:
    if ch.is_singlet:
        return {(UP, DOWN): INV_SQRT2, (DOWN, UP): -INV_SQRT2}
    if ch.m == 1:
        return {(UP, UP): ONE}
    if ch.m == -1:
        return {(DOWN, DOWN): ONE}
    return {(UP, DOWN): INV_SQRT2, (DOWN, UP): INV_SQRT2}


def _coupled_in_product(label: CoupledPairLabel) -> dict[PairLabel, Amplitude]:
    out = {}
    for (e1, e2), ae in _channel_components(label.electron).items():
        for (n1, n2), an in _channel_components(label.nuclear).items():
            out[PairLabel(BasisLabel(e1, n1), BasisLabel(e2, n2))] = ae * an
    return out


# rows: coupled label -> {product label: <product|coupled>}
_TRANSFORM: dict[CoupledPairLabel, dict[PairLabel, Amplitude]] = {
    k: _coupled_in_product(k) for k in COUPLED_BASIS}


def change_of_basis() -> dict[CoupledPairLabel, dict[PairLabel, Amplitude]]:
    """Product-basis components of every coupled unit ket (a copy)."""
    return {k: dict(v) for k, v in _TRANSFORM.items()}


# ---------------------------------------------------------------------------
# kets


@dataclass(frozen=True, eq=False)
class SpinKet:
    """Real state vector over the single-atom (dim 4) or pair (dim 16) basis.

    Only nonzero amplitudes are kept.  A zero ket must be requested with
    ``is_zero=True``; any other ket has to be normalized.
    """

    dimension: int
    amplitudes: Mapping
    is_zero: bool = False

    def __post_init__(self):
        if self.dimension == 4:
            label_type = BasisLabel
        elif self.dimension == 16:
            label_type = PairLabel
        else:
            raise ValueError(f"dimension must be 4 or 16, got {self.dimension}")
        amps = {}
        for label, amp in self.amplitudes.items():
            if not isinstance(label, label_type):
                raise ValueError(f"label {label!r} does not belong to a {self.dimension}-dim basis")
            if not isinstance(amp, Amplitude):
                raise TypeError("amplitudes must be Amplitude instances")
            if not amp.is_zero:
                amps[label] = amp
        amps = dict(sorted(amps.items()))
        object.__setattr__(self, "amplitudes", MappingProxyType(amps))
        if self.is_zero:
            if amps:
                raise ValueError("zero ket carries nonzero amplitudes")
        elif not self.is_normalized():
            raise ValueError(f"ket is not normalized (norm^2 = {float(self.norm_squared())})")

    @classmethod
    def zero(cls, dimension: int = 16) -> "SpinKet":
        return cls(dimension, {}, is_zero=True)

    @classmethod
    def basis(cls, label) -> "SpinKet":
        return cls(4 if isinstance(label, BasisLabel) else 16, {label: ONE})

    @property
    def exact(self) -> bool:
        return all(a.exact for a in self.amplitudes.values())

    def amplitude(self, label) -> Amplitude:
        return self.amplitudes.get(label, ZERO)

    def norm_squared(self) -> Fraction:
        return sum((a.radicand for a in self.amplitudes.values()), Fraction(0))

    def is_normalized(self) -> bool:
        n2 = self.norm_squared()
        if self.exact:
            return n2 == 1
        return abs(float(n2) - 1.0) < _NORM_TOL

    def swap(self) -> "SpinKet":
        """Exchange atoms 1 and 2 (pair kets only)."""
        if self.dimension != 16:
            raise ValueError("swap needs a pair ket")
        if self.is_zero:
            return self
        return SpinKet(16, {k.swapped(): a for k, a in self.amplitudes.items()})

    def __neg__(self) -> "SpinKet":
        if self.is_zero:
            return self
        return SpinKet(self.dimension, {k: -a for k, a in self.amplitudes.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpinKet):
            return NotImplemented
        return (self.dimension == other.dimension and self.is_zero == other.is_zero
                and dict(self.amplitudes) == dict(other.amplitudes))

    def __hash__(self) -> int:
        return hash((self.dimension, self.is_zero, tuple(self.amplitudes.items())))

    def isclose(self, other: "SpinKet", tol: float = 1e-12) -> bool:
        if self.dimension != other.dimension or self.is_zero != other.is_zero:
            return False
        labels = set(self.amplitudes) | set(other.amplitudes)
        return all(abs(self.amplitude(k).value - other.amplitude(k).value) <= tol for k in labels)

    def __str__(self) -> str:
        return format_terms(self.amplitudes)


def format_terms(terms: Mapping) -> str:
    """Render ``{label: amplitude}`` as ``+√(p/q)·|label⟩`` terms in label order."""
    parts = [f"{amp}·|{label}⟩" for label, amp in sorted(terms.items()) if not amp.is_zero]
    return " ".join(parts) if parts else "0"


def ket(amplitudes: Mapping) -> SpinKet:
    """Build a single-atom or pair ket, inferring the dimension from the labels."""
    labels = list(amplitudes)
    if not labels:
        raise ValueError("use SpinKet.zero() for the zero ket")
    return SpinKet(4 if isinstance(labels[0], BasisLabel) else 16, amplitudes)


def inner(left: SpinKet, right: SpinKet) -> Amplitude:
    """Real inner product <left|right>."""
    if left.dimension != right.dimension:
        raise ValueError("dimension mismatch")
    return amp_sum(a * right.amplitude(k) for k, a in left.amplitudes.items())


def _require_single(k: SpinKet, name: str):
    if k.dimension != 4:
        raise ValueError(f"{name} must be a single-atom (4-dim) ket, got dimension {k.dimension}")
    if k.is_zero:
        raise ZeroKetError(f"{name} is the zero ket")


def tensor(left: SpinKet, right: SpinKet) -> SpinKet:
    """Product pair ket ``|left>_1 |right>_2``."""
    _require_single(left, "left")
    _require_single(right, "right")
    return SpinKet(16, {PairLabel(p, q): ap * aq
                        for p, ap in left.amplitudes.items()
                        for q, aq in right.amplitudes.items()})


def _exchange_combination(left: SpinKet, right: SpinKet, parity: int) -> SpinKet:
    _require_single(left, "left")
    _require_single(right, "right")
    direct = tensor(left, right)
    exchanged = tensor(right, left)
    combined = {}
    for label in PAIR_BASIS:
        terms = [direct.amplitude(label)]
        b = exchanged.amplitude(label)
        terms.append(b if parity > 0 else -b)
        combined[label] = amp_sum(terms)
    norm2 = sum((a.radicand for a in combined.values()), Fraction(0))
    exact = all(a.exact for a in combined.values())
    if norm2 == 0 or (not exact and float(norm2) < _NORM_TOL):
        return SpinKet.zero(16)
    scale = Amplitude.sqrt(1 / norm2) if exact else Amplitude.from_float(1 / math.sqrt(norm2))
    return SpinKet(16, {k: a * scale for k, a in combined.items()})


def symmetrize(left: SpinKet, right: SpinKet) -> SpinKet:
    """Normalized ``|ij>_+ ∝ |ij> + |ji>``; identical inputs give ``|ii>``."""
    return _exchange_combination(left, right, +1)


def antisymmetrize(left: SpinKet, right: SpinKet) -> SpinKet:
    """Normalized ``|ij>_- ∝ |ij> - |ji>``, or the flagged zero ket."""
    return _exchange_combination(left, right, -1)


def to_coupled(pair: SpinKet) -> dict[CoupledPairLabel, Amplitude]:
    """Coefficients of a pair ket on all 16 coupled labels (zeros included)."""
    if pair.dimension != 16:
        raise ValueError("to_coupled needs a pair (16-dim) ket")
    return {k: amp_sum(c * pair.amplitude(p) for p, c in _TRANSFORM[k].items())
            for k in COUPLED_BASIS}


def from_coupled(coeffs: Mapping[CoupledPairLabel, Amplitude]) -> SpinKet:
    """Inverse of :func:`to_coupled`."""
    if all(a.is_zero for a in coeffs.values()):
        return SpinKet.zero(16)
    out = {}
    for p in PAIR_BASIS:
        out[p] = amp_sum(coeffs[k] * row[p] for k, row in _TRANSFORM.items()
                         if k in coeffs and p in row)
    return SpinKet(16, out)


@dataclass(frozen=True)
class ChannelWeights:
    """Squared weight of a pair ket in the electron-singlet and electron-triplet channels."""

    w_es: Fraction
    w_et: Fraction


def channel_weights(pair: SpinKet, restricted: bool = False) -> ChannelWeights:
    """Electron singlet/triplet weights of a pair ket.

    With ``restricted=True`` only exchange-symmetric components
    (``e_t n_t`` and ``e_s n_s``) are counted, so the weights sum to the
    symmetric-subspace probability instead of 1.
    """
    if pair.is_zero:
        raise ZeroKetError("channel weights are undefined for the zero ket")
    w_es = Fraction(0)
    w_et = Fraction(0)
    for label, amp in to_coupled(pair).items():
        if restricted and not label.exchange_symmetric:
            continue
        if label.electron.is_singlet:
            w_es += amp.radicand
        else:
            w_et += amp.radicand
    return ChannelWeights(w_es, w_et)
