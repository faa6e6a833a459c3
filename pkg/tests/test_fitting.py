import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hclockshift.fitting import (HEADER, InsufficientDataError, MeasurementParseError,
                                 MeasurementRow, SingularFitError, density_grid,
                                 fit_coefficients, format_measurements, load_measurements,
                                 parse_measurements, synthesize_dataset, write_measurements)

C_MEASURED = 8e-19
NOISY_SEED = 20100301
GRID = density_grid(1e16, 5)


def csv_text(*rows, header=",".join(HEADER)):
    return "\n".join([header, *rows]) + "\n"


# -- parsing ------------------------------------------------------------------

def test_load_well_formed(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("# three rows\n" + csv_text("ad,1e15,2e15,1.6e-3,1e-4",
                                              "ad,2e15,1e15,8e-4,1e-4",
                                              "bc,3.5E15,0,2.8e-3,2e-4"))
    rows = load_measurements(p)
    assert len(rows) == 3
    assert rows[2] == MeasurementRow("bc", 3.5e15, 0.0, 2.8e-3, 2e-4, row=3)
    assert rows[0].n_bath == 2e15 and rows[0].n_self == 1e15
    assert rows[2].n_bath == 3.5e15 and rows[2].n_self == 0.0


def test_sigma_zero_rejected():
    with pytest.raises(MeasurementParseError, match="row 2: sigma_B must be positive"):
        parse_measurements(csv_text("ad,1,2,3,1", "ad,1,2,3,0"))


def test_empty_data_rejected():
    with pytest.raises(MeasurementParseError, match="no measurements"):
        parse_measurements(csv_text("# nothing yet"))


@pytest.mark.parametrize("text,match", [
    (csv_text("ad,1,2,3,1", header="transition,n_a,n_b,delta_B"), "missing column"),
    (csv_text("ad,1,x,3,1"), "row 1: n_b is not a number"),
    (csv_text("ad,1,2,3"), "row 1: expected 5 fields"),
    (csv_text("ab,1,2,3,1"), "row 1: transition"),
    (csv_text("ad,-1,2,3,1"), "row 1: n_a must be non-negative"),
    ("", "missing header"),
])
def test_parse_errors(text, match):
    with pytest.raises(MeasurementParseError, match=match):
        parse_measurements(text)


def test_write_read_round_trip(tmp_path):
    rows = synthesize_dataset(C_MEASURED, 1e-20, GRID, noise=1e-4, seed=1)
    p = tmp_path / "out.csv"
    write_measurements(rows, p)
    assert load_measurements(p) == rows
    assert format_measurements(rows).splitlines()[0] == ",".join(HEADER)


# -- synthesis ----------------------------------------------------------------

def test_noiseless_rows_satisfy_linear_relation():
    rows = synthesize_dataset(C_MEASURED, 2e-20, GRID, transition="bc")
    for r in rows:
        assert r.delta_B == C_MEASURED * r.n_bath + 2e-20 * r.n_self
        assert r.sigma_B > 0


def test_same_seed_same_dataset():
    a = synthesize_dataset(C_MEASURED, 0.0, GRID, noise=1e-4, seed=7)
    b = synthesize_dataset(C_MEASURED, 0.0, GRID, noise=1e-4, seed=7)
    c = synthesize_dataset(C_MEASURED, 0.0, GRID, noise=1e-4, seed=8)
    assert a == b and a != c


def test_measured_scale_field_shifts():
    rows = synthesize_dataset(C_MEASURED, 0.0, GRID)
    assert max(r.delta_B for r in rows) == pytest.approx(8e-3, rel=1e-12)


def test_synthesis_validation():
    with pytest.raises(ValueError, match="empty"):
        synthesize_dataset(C_MEASURED, 0.0, [])
    with pytest.raises(ValueError):
        synthesize_dataset(C_MEASURED, 0.0, GRID, noise=-1)


# -- fitting ------------------------------------------------------------------

@pytest.mark.parametrize("transition", ["ad", "bc"])
def test_noiseless_exact_recovery(transition):
    rows = synthesize_dataset(C_MEASURED, 0.0, GRID, transition=transition)
    res = fit_coefficients(rows)
    assert res.C_cross == pytest.approx(C_MEASURED, rel=1e-10)
    assert abs(res.C_self) < 1e-10 * C_MEASURED
    assert res.chi2 <= 1e-16
    assert res.dof == len(rows) - 2


@given(st.floats(-1e-17, 1e-17), st.floats(-1e-17, 1e-17),
       st.lists(st.tuples(st.floats(0, 1e16), st.floats(0, 1e16)), min_size=3, max_size=30))
def test_noiseless_recovery_any_rank_two_design(c1, c2, grid):
    x = np.array(grid)
    sv = np.linalg.svd(x / max(np.abs(x).max(), 1.0), compute_uv=False)
    if sv[-1] < 1e-3 * sv[0] or sv[0] == 0:
        return
    res = fit_coefficients(synthesize_dataset(c1, c2, grid))
    scale = max(abs(c1), abs(c2), 1e-30)
    assert abs(res.C_cross - c1) <= 1e-10 * scale
    assert abs(res.C_self - c2) <= 1e-10 * scale


def test_noisy_recovery_within_three_sigma():
    rng = np.random.default_rng(NOISY_SEED)
    grid = [(float(u), float(v)) for u, v in rng.uniform(0, 1e16, size=(100, 2))]
    rows = synthesize_dataset(C_MEASURED, 0.0, grid, noise=2e-4, seed=NOISY_SEED)
    res = fit_coefficients(rows)
    assert abs(res.C_cross - C_MEASURED) < 3 * res.sigma_cross
    assert abs(res.C_self) < 3 * res.sigma_self
    assert res.dof == 98


def test_covariance_scales_with_sigma_squared():
    rows = synthesize_dataset(C_MEASURED, 0.0, GRID, noise=1e-4, seed=3)
    scaled = [MeasurementRow(r.transition, r.n_a, r.n_b, r.delta_B, 3 * r.sigma_B) for r in rows]
    base, big = fit_coefficients(rows), fit_coefficients(scaled)
    cov0, cov1 = np.array(base.covariance), np.array(big.covariance)
    assert np.allclose(cov1, 9 * cov0, rtol=1e-12)
    assert np.allclose(cov0, cov0.T)
    assert np.all(np.linalg.eigvalsh(cov0) >= 0)


def test_row_permutation_invariance():
    rows = synthesize_dataset(C_MEASURED, 1e-20, GRID, noise=1e-4, seed=5)
    shuffled = rows[:]
    random.Random(0).shuffle(shuffled)
    assert fit_coefficients(shuffled) == fit_coefficients(rows)


def test_self_column_zero_is_singular():
    grid = [(1e15, 0.0), (2e15, 0.0), (5e15, 0.0)]
    with pytest.raises(SingularFitError, match="C_self is unidentifiable"):
        fit_coefficients(synthesize_dataset(C_MEASURED, 0.0, grid))


def test_collinear_densities_are_singular():
    grid = [(1e15, 2e15), (2e15, 4e15), (4e15, 8e15)]
    with pytest.raises(SingularFitError, match="collinear"):
        fit_coefficients(synthesize_dataset(C_MEASURED, 0.0, grid))


def test_insufficient_data():
    with pytest.raises(InsufficientDataError):
        fit_coefficients(synthesize_dataset(C_MEASURED, 0.0, [(1e15, 1e15), (2e15, 0.0)]))


def test_mixed_transitions_rejected():
    rows = synthesize_dataset(C_MEASURED, 0.0, GRID[:3]) + synthesize_dataset(C_MEASURED, 0.0, GRID[:3], transition="bc")
    with pytest.raises(ValueError, match="mix"):
        fit_coefficients(rows)


def test_reduced_chi2_near_one_for_correct_sigma():
    rng = np.random.default_rng(11)
    grid = [(float(u), float(v)) for u, v in rng.uniform(0, 1e16, size=(400, 2))]
    res = fit_coefficients(synthesize_dataset(C_MEASURED, 0.0, grid, noise=1e-4, seed=11))
    assert res.reduced_chi2 == pytest.approx(1.0, abs=0.25)
