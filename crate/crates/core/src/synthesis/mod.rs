//! Decomposition of controlled two-level rotations and subspace-gating subcircuits.

mod angles;
mod ccr;
mod gating;
mod rewrite;
mod sequencer;

pub use angles::{apply_correction, build_m, correct_singular_m, rank_mod_p, AngleTransform, Correction};
pub use ccr::{
    ccr_synthesize, closing_gates, firing_matrix, parity_sequence, ucr_formula, ucr_synthesize, Axis, CcrPlan,
};
pub use gating::{
    and_verifier, combine_gate, demorgan_dual, gating_circuit, gating_gates, or_gate, qudit_toffoli, GatingSpec,
    GatingVariant,
};
pub use rewrite::{alt_paired_angle_decompose, gcx_run_optimize, hadamard_eliminate, HadamardElimination};
pub use sequencer::{normalize, sequencers, ControlSequence, SequencerOutput};
