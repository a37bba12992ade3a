//! Plaquette, face-pair and Trotter-step compilation on a single cube.

mod alternate;
mod cube;
mod faces;
mod formulas;
mod params;
mod term;

pub use alternate::{
    alternate_control_sets, compile_alternate_pair, compile_alternate_term, matched_terms, AltStages, AlternateCompiler,
    ALT_LOCAL_LABELS,
};
pub use cube::{face_cycle, CubeWiring, Face, Vertex};
pub use faces::{
    casimir, compile_electric_step, compile_parallel_faces, compile_plaquette_evolution, compile_sequential_faces,
    compile_trotter, compile_trotter_step, cube_circuit, electric_angles, face_terms, face_wires, push_paired,
    push_sequential,
};
pub use formulas::{qudit_resource_formulas, qutrit_resource_table, ResourceRow};
pub use params::EvolutionParams;
pub use term::{
    compile_term_evolution, target_position, xparity_gates, xparity_subroutine, TermCompiler, TermPath, TermSegments,
    TermWires, LOCAL_LABELS,
};
