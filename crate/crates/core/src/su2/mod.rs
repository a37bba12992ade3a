//! Truncated SU(2) plaquette operator with gauge-variant completion.

mod gvc;
mod halfint;
mod sixj;

pub use gvc::{
    build_plaquette_operator, build_plaquette_operator_with_max, class_count_formula, control_sector,
    control_set, d4_classes, flux_pair, transition_amplitude, ControlEntry, D4Class, FluxConfig,
    GgggTerm, PlaquetteOperator, XSubspace, D4, DEFAULT_MAX_D,
};
pub use halfint::{triad, HalfInt};
pub use sixj::{factorial, wigner_six_j};
