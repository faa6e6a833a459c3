"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line; conftest prints them in the
terminal summary.  Run directly (``python3 tests/test_acceptance.py``) for the
lines alone.
"""

import itertools
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402
from hclockshift.constants import HBAR, M_H, PM  # noqa: E402
from hclockshift.fitting import (SingularFitError, density_grid, fit_coefficients,  # noqa: E402
                                 synthesize_dataset)
from hclockshift.hyperfine import (LABELS, HyperfineParams, breit_rabi_energies,  # noqa: E402
                                   high_field_states, solve_states, transition_field_slope)
from hclockshift.interaction import (DensitySet, InteractionModel, Pseudopotential,  # noqa: E402
                                     pair_lambda)
from hclockshift.shifts import (AD, BC, clock_shift, compare_to_theory,  # noqa: E402
                                consistent_with_reported, extract_delta_a,
                                field_shift_coefficient, model_ratio)
from hclockshift.spinalg import (INV_SQRT2, ONE, SINGLET, TRIPLET, CoupledPairLabel,  # noqa: E402
                                 channel_weights, format_terms, inner, symmetrize,
                                 to_coupled)

SYM, DIST = InteractionModel.SYMMETRIZED, InteractionModel.DISTINGUISHABLE
H = HyperfineParams.hydrogen()
HF = {s.label: s for s in high_field_states()}
PP = Pseudopotential(a_s=17 * PM, a_t=72 * PM, mass=M_H)
RESULTS: list[str] = []


def report(criterion, ok, detail):
    RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {criterion}: {detail}")
    print(RESULTS[-1])
    assert ok, detail


def support(ket):
    return {k: a for k, a in to_coupled(ket).items() if not a.is_zero}


# -- 1 ------------------------------------------------------------------------

TT0 = CoupledPairLabel(TRIPLET[0], TRIPLET[0])
SS = CoupledPairLabel(SINGLET, SINGLET)
TARGET = {TT0: INV_SQRT2, SS: INV_SQRT2}


def test_c1_ab_plus():
    got = support(symmetrize(HF["a"].ket, HF["b"].ket))
    ok = got == {CoupledPairLabel(TRIPLET[-1], TRIPLET[0]): ONE} and all(a.exact for a in got.values())
    report("1  |ab>+ = |e_t(-1) n_t(0)>", ok, f"got {format_terms(got)}")


def test_c1_bd_plus():
    got = support(symmetrize(HF["b"].ket, HF["d"].ket))
    ok = got == TARGET and all(a.exact for a in got.values())
    report("1  |bd>+ = (|e_t(0) n_t(0)> + |e_s n_s>)/sqrt2", ok, f"got {format_terms(got)}")


def test_c1_ac_plus():
    # Checked literally.  |ac>+ and |bd>+ are orthogonal, so at most one of them
    # can equal the target vector under any choice of state phases.
    ac, bd = symmetrize(HF["a"].ket, HF["c"].ket), symmetrize(HF["b"].ket, HF["d"].ket)
    got = support(ac)
    overlap = inner(ac, bd)
    report("1  |ac>+ = (|e_t(0) n_t(0)> + |e_s n_s>)/sqrt2", got == TARGET,
           f"got {format_terms(got)}; <ac+|bd+> = {overlap.value:g}, so both cannot equal one vector")


# -- 2 ------------------------------------------------------------------------

def test_c2_coupling_eigenvalues():
    mid = float((Fraction(PP.lambda_s) + Fraction(PP.lambda_t)) / 2)
    got = {p: pair_lambda(SYM, HF[p[0]], HF[p[1]], PP) for p in ("ab", "ac", "bd")}
    ok = got["ab"] == PP.lambda_t and got["ac"] == mid and got["bd"] == mid
    report("2  lambda_ab = lambda_t, lambda_ac = lambda_bd = (lambda_s+lambda_t)/2", ok,
           ", ".join(f"{p} {v:.6e}" for p, v in got.items()) + " J m^3")


# -- 3 ------------------------------------------------------------------------

def test_c3_shift_formulas():
    worst = 0.0
    for a_s, a_t, n in itertools.product([-5 * PM, 17 * PM, 40 * PM], [30 * PM, 72 * PM, 120 * PM],
                                         [1e18, 3.7e21, 1e22]):
        pp = Pseudopotential(a_s, a_t, M_H)
        ref = 2 * math.pi * HBAR ** 2 / M_H * (a_s - a_t) * n / HBAR
        for t, dens in ((BC, DensitySet(n_a=n)), (AD, DensitySet(n_b=n))):
            worst = max(worst, abs(clock_shift(SYM, t, dens, pp) / ref - 1))
    report("3  shifts equal (2 pi hbar^2/m)(a_s-a_t) n / hbar", worst <= 1e-12, f"max rel err {worst:.1e}")


# -- 4 ------------------------------------------------------------------------

def test_c4_factor_of_two():
    r = {t.name: model_ratio(t, DensitySet.of(**{t.bath: 1e21}), PP) for t in (AD, BC)}
    report("4  sym/dist shift ratio = 2 exactly", r == {"ad": 2.0, "bc": 2.0}, f"{r}")


# -- 5 ------------------------------------------------------------------------

def test_c5_delta_a_extraction():
    # independent CGS oracle for C = 2 pi hbar da / (gamma_e m)
    hbar_cgs, gamma_cgs, m_g = HBAR * 1e7, H.gamma_e * 1e-4, M_H * 1e3
    da_oracle_cm = 8e-19 * gamma_cgs * m_g / (2 * math.pi * hbar_cgs)
    da = extract_delta_a(8e-19, "cm3-gauss", H, sigma=2e-19)
    lo, hi = da.interval_2sigma
    ok = (math.isclose(da.value, da_oracle_cm * 1e-2, rel_tol=1e-12)
          and 27 * PM <= da.value <= 45 * PM and consistent_with_reported(da))
    report("5  delta_a from C = 8e-19 G cm^3 in [27,45] pm, 2 sigma overlaps 30(5) pm", ok,
           f"{da.value / PM:.2f} +- {da.sigma / PM:.2f} pm, 2 sigma [{lo / PM:.1f}, {hi / PM:.1f}]")


# -- 6 ------------------------------------------------------------------------

def test_c6_self_coefficients_vanish():
    c = {t.name: field_shift_coefficient(t, SYM, PP, H).C_self_m3_per_T for t in (AD, BC)}
    report("6  symmetrized C_aa = C_bb = 0", c == {"ad": 0.0, "bc": 0.0}, f"{c}")


# -- 7 ------------------------------------------------------------------------

def test_c7_projector_oracle():
    bad = []
    for x, y in itertools.combinations_with_replacement(LABELS, 2):
        w = channel_weights(symmetrize(HF[x].ket, HF[y].ket))
        ref = oracles.oracle_weights(oracles.exchange_combination(HF[x].ket, HF[y].ket, +1))
        if (w.w_es, w.w_et) != tuple(Fraction(str(v)) for v in ref):
            bad.append(x + y)
    report("7  channel weights match 16x16 projector oracle for all 10 pairs", not bad, f"mismatches {bad}")


# -- 8 ------------------------------------------------------------------------

def test_c8_breit_rabi():
    s0 = {s.label: s for s in solve_states(H, 0.0)}
    split = max(s0["c"].energy, s0["d"].energy) - s0["a"].energy
    s_big = {s.label: s for s in solve_states(H, 1e4)}
    overlap = min(inner(s_big[l].ket, HF[l].ket).value ** 2 for l in LABELS)
    slope = transition_field_slope(H, "ad", 4.6)
    closed = breit_rabi_energies(H, 0.0)
    ok = (math.isclose(split, H.A, rel_tol=1e-12) and math.isclose(closed["c"] - closed["a"], H.A, rel_tol=1e-12)
          and overlap > 1 - 1e-8 and abs(slope / H.gamma_e - 1) < 1e-3)
    report("8  B=0 splitting = A, high-field overlap, a->d slope = gamma_e", ok,
           f"split/A-1 = {split / H.A - 1:.1e}, min overlap {overlap:.10f}, slope/gamma_e-1 = {slope / H.gamma_e - 1:.1e}")


# -- 9 ------------------------------------------------------------------------

def test_c9_fit_round_trip():
    noiseless = fit_coefficients(synthesize_dataset(8e-19, 2e-20, density_grid(1e16, 5)))
    exact = (math.isclose(noiseless.C_cross, 8e-19, rel_tol=1e-10)
             and math.isclose(noiseless.C_self, 2e-20, rel_tol=1e-10))
    rng = np.random.default_rng(20100301)
    grid = [(float(u), float(v)) for u, v in rng.uniform(0, 1e16, size=(100, 2))]
    noisy = fit_coefficients(synthesize_dataset(8e-19, 0.0, grid, noise=2e-4, seed=20100301))
    within = (abs(noisy.C_cross - 8e-19) < 3 * noisy.sigma_cross and abs(noisy.C_self) < 3 * noisy.sigma_self)
    try:
        fit_coefficients(synthesize_dataset(8e-19, 0.0, [(1e15, 0.0), (2e15, 0.0), (5e15, 0.0)]))
        singular = False
    except SingularFitError as e:
        singular = "unidentifiable" in str(e)
    report("9  fit: exact noiseless, noisy within 3 sigma, singular design rejected",
           exact and within and singular,
           f"noiseless C_cross rel err {abs(noiseless.C_cross / 8e-19 - 1):.1e}, "
           f"noisy pull {(noisy.C_cross - 8e-19) / noisy.sigma_cross:+.2f} sigma")


# -- 10 -----------------------------------------------------------------------

def test_c10_theory_band():
    below, inside = compare_to_theory(30 * PM), compare_to_theory(48 * PM)
    ok = below.position == "below" and not below.within_range and inside.within_range
    report("10 30 pm below, 48 pm within the 42-55 pm band", ok, f"{below.position}, {inside.position}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
