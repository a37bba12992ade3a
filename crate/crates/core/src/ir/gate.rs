use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    /// Controlled two-level swap X_ij.
    Gcx,
    /// Controlled two-level Z_ij = diag(1, -1) on (i, j).
    Gcz,
    X,
    H,
    Rz,
    Ry,
    Rx,
    /// e^{i angle} on a single level.
    Phase,
}

impl GateKind {
    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rz | GateKind::Ry | GateKind::Rx | GateKind::Phase)
    }

    /// Kinds that permute basis states (and so never create superpositions).
    pub fn is_permutation(self) -> bool {
        matches!(self, GateKind::Gcx | GateKind::X)
    }

    pub fn is_diagonal(self) -> bool {
        matches!(self, GateKind::Gcz | GateKind::Rz | GateKind::Phase)
    }
}

/// Reduces an angle modulo 4 pi into (-2 pi, 2 pi].
pub fn normalize_angle(theta: f64) -> f64 {
    let period = 4.0 * PI;
    let mut a = theta % period;
    if a <= -2.0 * PI {
        a += period;
    } else if a > 2.0 * PI {
        a -= period;
    }
    a
}

/// One elementary operation: a two-level (or single-level phase) action on `target`,
/// applied when every `(wire, value)` control matches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub subspace: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    pub target: usize,
    #[serde(default)]
    pub controls: Vec<(usize, usize)>,
}

impl Gate {
    fn plain(kind: GateKind, target: usize, i: usize, j: usize) -> Self {
        Gate { kind, subspace: [i, j], angle: None, target, controls: Vec::new() }
    }

    fn rotation(kind: GateKind, target: usize, i: usize, j: usize, theta: f64) -> Self {
        Gate { kind, subspace: [i, j], angle: Some(normalize_angle(theta)), target, controls: Vec::new() }
    }

    pub fn x(target: usize, i: usize, j: usize) -> Self {
        Self::plain(GateKind::X, target, i, j)
    }

    pub fn h(target: usize, i: usize, j: usize) -> Self {
        Self::plain(GateKind::H, target, i, j)
    }

    pub fn gcx(control: usize, value: usize, target: usize, i: usize, j: usize) -> Self {
        Self::plain(GateKind::Gcx, target, i, j).with_control(control, value)
    }

    pub fn gcz(control: usize, value: usize, target: usize, i: usize, j: usize) -> Self {
        Self::plain(GateKind::Gcz, target, i, j).with_control(control, value)
    }

    pub fn rz(target: usize, i: usize, j: usize, theta: f64) -> Self {
        Self::rotation(GateKind::Rz, target, i, j, theta)
    }

    pub fn ry(target: usize, i: usize, j: usize, theta: f64) -> Self {
        Self::rotation(GateKind::Ry, target, i, j, theta)
    }

    pub fn rx(target: usize, i: usize, j: usize, theta: f64) -> Self {
        Self::rotation(GateKind::Rx, target, i, j, theta)
    }

    pub fn phase(target: usize, level: usize, theta: f64) -> Self {
        Self::rotation(GateKind::Phase, target, level, level, theta)
    }

    pub fn with_control(mut self, wire: usize, value: usize) -> Self {
        self.controls.push((wire, value));
        self
    }

    pub fn angle(&self) -> f64 {
        self.angle.unwrap_or(0.0)
    }

    /// Wires the gate occupies for scheduling: target and all controls.
    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target).chain(self.controls.iter().map(|c| c.0))
    }

    pub fn inverse(&self) -> Gate {
        let mut g = self.clone();
        if self.kind.is_rotation() {
            g.angle = Some(normalize_angle(-self.angle()));
        }
        g
    }

    /// Same gate with every wire index passed through `map`.
    pub fn remapped(&self, map: &[usize]) -> Gate {
        let mut g = self.clone();
        g.target = map[self.target];
        for c in &mut g.controls {
            c.0 = map[c.0];
        }
        g
    }

    /// 2x2 action on the amplitudes of levels (i, j); meaningless for `Phase`.
    pub fn two_level_matrix(&self) -> [[Complex64; 2]; 2] {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let half = self.angle() / 2.0;
        let (c, s) = (half.cos(), half.sin());
        match self.kind {
            GateKind::Gcx | GateKind::X => [[z, one], [one, z]],
            GateKind::Gcz => [[one, z], [z, -one]],
            GateKind::H => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                [[Complex64::new(r, 0.0), Complex64::new(r, 0.0)], [Complex64::new(r, 0.0), Complex64::new(-r, 0.0)]]
            }
            GateKind::Rz => [[Complex64::new(c, -s), z], [z, Complex64::new(c, s)]],
            GateKind::Ry => [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]],
            GateKind::Rx => [[Complex64::new(c, 0.0), Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), Complex64::new(c, 0.0)]],
            GateKind::Phase => [[Complex64::from_polar(1.0, self.angle()), z], [z, one]],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_normalization() {
        assert_eq!(normalize_angle(0.5), 0.5);
        assert!((normalize_angle(3.0 * PI) - -PI).abs() < 1e-12);
        assert!((normalize_angle(-2.0 * PI) - 2.0 * PI).abs() < 1e-12);
        assert_eq!(Gate::rz(0, 0, 1, 0.0).angle, Some(0.0));
    }

    #[test]
    fn inverse_negates_rotations_only() {
        let r = Gate::ry(1, 0, 2, 0.3).with_control(0, 1);
        assert_eq!(r.inverse().angle, Some(-0.3));
        let g = Gate::gcx(0, 2, 1, 0, 1);
        assert_eq!(g.inverse(), g);
    }
}
