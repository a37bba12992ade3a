//! Shared inputs for the benchmarks.

use qgvc::evolution::{CubeWiring, EvolutionParams, TermCompiler};

pub fn params() -> EvolutionParams {
    EvolutionParams::new(0.2, 0.42, 1).expect("valid parameters")
}

pub fn qutrit_setup() -> (TermCompiler, CubeWiring) {
    (TermCompiler::new(3).expect("qutrit compiler"), CubeWiring::standard())
}
