"""Hyperfine clock shifts in spin-polarized atomic hydrogen.

Pair spin states are built from exact amplitudes, symmetrized, and projected
on the electron singlet/triplet channels; contact couplings then give the
density shifts of the a->d and b->c ESR lines and the scattering-length
difference a_t - a_s from a measured shift coefficient.
"""

from .constants import Constants, load_constants
from .fitting import (FitResult, MeasurementRow, fit_coefficients, load_measurements,
                      synthesize_dataset)
from .hyperfine import (HyperfineParams, HyperfineState, high_field_states, solve_states,
                        transition_field_slope)
from .interaction import (CouplingTable, DensitySet, InteractionModel, Pseudopotential,
                          chemical_potential, coupling_table, interaction_energy_density,
                          lambda_from_scattering_length, pair_lambda)
from .shifts import (AD, BC, ShiftResult, Transition, clock_shift, compare_to_theory,
                     consistent_with_reported,
                     extract_delta_a, field_shift_coefficient, model_ratio)
from .spinalg import (Amplitude, SpinKet, antisymmetrize, channel_weights, symmetrize, tensor,
                      to_coupled)

__version__ = "0.1.0"
