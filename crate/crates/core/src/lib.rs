//! Gauge-variant qudit circuits for truncated SU(2) lattice gauge theory.
//!
//! Modules follow the pipeline: [`su2`] builds plaquette operators, [`ir`] holds
//! circuits, [`synthesis`] turns operator terms into gates, [`evolution`] assembles
//! Trotter steps on the cube, and [`sim`] checks everything numerically.

pub mod error;
pub mod evolution;
pub mod ir;
pub mod sim;
pub mod su2;
pub mod synthesis;

pub use error::{Error, Result};
