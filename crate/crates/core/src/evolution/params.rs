use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling, total time and Trotter step count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionParams {
    pub g2: f64,
    pub t: f64,
    pub n_trotter: usize,
}

impl EvolutionParams {
    pub fn new(g2: f64, t: f64, n_trotter: usize) -> Result<Self> {
        if n_trotter == 0 {
            return Err(Error::InvalidParameter("n_trotter must be at least 1".into()));
        }
        if !(g2 > 0.0 && g2.is_finite()) {
            return Err(Error::InvalidParameter(format!("g2 must be positive, got {g2}")));
        }
        if !t.is_finite() {
            return Err(Error::InvalidParameter(format!("t must be finite, got {t}")));
        }
        Ok(EvolutionParams { g2, t, n_trotter })
    }

    pub fn dt(&self) -> f64 {
        self.t / self.n_trotter as f64
    }

    /// Magnetic step parameter -t / (g² N_T).
    pub fn tau(&self) -> f64 {
        -self.dt() / self.g2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_and_validation() {
        let p = EvolutionParams::new(0.2, 0.4, 2).unwrap();
        assert!((p.tau() + 1.0).abs() < 1e-15);
        assert!(EvolutionParams::new(0.2, 0.4, 0).is_err());
        assert!(EvolutionParams::new(0.0, 0.4, 1).is_err());
    }
}
