//! Approximate synthesis over `{H, T, Tdag}` and the two-qubit spectral checks.

mod approx;
mod frame;
mod ladder;
mod rho;

pub use approx::{
    approx_su2, approx_su2_in, passthrough, simplify, SynthJson, SynthResult, PASSTHROUGH_MAX_LEN, SYNTH_EPS_FLOOR,
};
pub use frame::{
    axis_conjugator, find_axis_conjugator, gen1_rotation_cosine, lambda, lambda_frame, FrameReport, LambdaFrame,
};
pub use ladder::{convergent_denominators, ladder_bound, ladder_power, phase_ladder, LADDER_EPS_FLOOR, LADDER_N_CAP};
pub use rho::{
    alpha_const, beta_const, char_poly, eigenvalues, expected_spectrum, fixed_frame, fixed_state_residual,
    fixed_states, in_fixed_frame, rho_basis_forms, rho_generators, rho_words, spectrum_distance, swap_word,
    transpose_residual, RhoBasisReport, RhoGridPoint, RhoSet, RHO_LADDER_EPS,
};
