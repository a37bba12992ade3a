//! State-vector simulation and the single-cube physics reference.

mod physics;
mod state;

pub use physics::{
    apply_moves, electric_energy, enumerate_physical_basis, exact_evolution, hamiltonian, ideal_trotter, ideal_trotter_observable,
    term_moves, term_oracle, trotter_series, trotter_simulate, ExactEvolution, PhysicalBasis, TrotterRun,
};
pub use state::{circuit_unitary, SparseState, StateVector, DEFAULT_UNITARY_CAP};
