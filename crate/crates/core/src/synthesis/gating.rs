use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GatingVariant {
    /// Ladder that writes 1 when every guarded wire lies in its set.
    And,
    /// Ladder ∨ with left completion; aux dimension must exceed the input count.
    Or,
    /// Three-input ∨ with right completion on a qutrit aux.
    OrRight,
    /// Optimized three-input qutrit ∨.
    Or3Qutrit,
    /// Four-input ∨ from two two-input gates joined by a combine gate.
    OrWide,
}

/// A verification gate over guarded wires.
///
/// For `And`, `sets[m]` holds the allowed levels of guarded wire m; for the ∨ variants it
/// holds the levels that trigger detection. The result lands on `aux`; `OrWide` also uses
/// `extra_aux[0]` as scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GatingSpec {
    pub guarded: Vec<usize>,
    pub dims: Vec<usize>,
    pub sets: Vec<Vec<usize>>,
    pub aux: usize,
    pub aux_dim: usize,
    #[serde(default)]
    pub extra_aux: Vec<usize>,
    pub variant: GatingVariant,
}

impl GatingSpec {
    /// Guarded wires 0..k, aux k (scratch k+1 for `OrWide`).
    pub fn standard(dims: Vec<usize>, sets: Vec<Vec<usize>>, aux_dim: usize, variant: GatingVariant) -> Self {
        let k = dims.len();
        let extra_aux = if variant == GatingVariant::OrWide { vec![k + 1] } else { vec![] };
        GatingSpec { guarded: (0..k).collect(), dims, sets, aux: k, aux_dim, extra_aux, variant }
    }

    pub fn k(&self) -> usize {
        self.guarded.len()
    }

    fn check(&self) -> Result<()> {
        let k = self.k();
        if k == 0 || self.dims.len() != k || self.sets.len() != k {
            return Err(Error::UnsupportedGating(format!(
                "{} guarded wires with {} dims and {} sets",
                k,
                self.dims.len(),
                self.sets.len()
            )));
        }
        for (m, (s, &d)) in self.sets.iter().zip(&self.dims).enumerate() {
            if s.iter().any(|&v| v >= d) {
                return Err(Error::UnsupportedGating(format!("set {s:?} exceeds dim {d} on guarded wire {m}")));
            }
        }
        Ok(())
    }

    fn single(&self, m: usize) -> Result<usize> {
        match self.sets[m][..] {
            [v] => Ok(v),
            _ => Err(Error::UnsupportedGating(format!("guarded wire {m} needs exactly one detect level"))),
        }
    }

    /// Wire dimensions for a standalone circuit holding every referenced wire.
    fn circuit_dims(&self) -> Vec<usize> {
        let n = self.guarded.iter().chain([&self.aux]).chain(&self.extra_aux).max().map_or(0, |m| m + 1);
        let mut dims = vec![2; n];
        for (&w, &d) in self.guarded.iter().zip(&self.dims) {
            dims[w] = d;
        }
        dims[self.aux] = self.aux_dim;
        for &w in &self.extra_aux {
            dims[w] = self.aux_dim;
        }
        dims
    }
}

fn x_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn guarded_step(out: &mut Vec<Gate>, wire: usize, set: &[usize], aux: usize, a: usize, b: usize) {
    let (i, j) = x_pair(a, b);
    out.extend(set.iter().map(|&v| Gate::gcx(wire, v, aux, i, j)));
}

/// Compute half of a verification gate.
pub fn gating_gates(spec: &GatingSpec) -> Result<Vec<Gate>> {
    spec.check()?;
    let k = spec.k();
    let g = &spec.guarded;
    let aux = spec.aux;
    let mut out = Vec::new();
    match spec.variant {
        GatingVariant::And => {
            if spec.aux_dim <= k {
                return Err(Error::UnsupportedGating(format!("AND over {k} wires needs aux dim > {k}")));
            }
            let mut levels = vec![0];
            levels.extend(2..=k);
            levels.push(1);
            for m in 1..=k {
                guarded_step(&mut out, g[m - 1], &spec.sets[m - 1], aux, levels[m - 1], levels[m]);
            }
            for m in (1..k).rev() {
                guarded_step(&mut out, g[m - 1], &spec.sets[m - 1], aux, levels[m - 1], levels[m]);
            }
        }
        GatingVariant::Or => {
            if spec.aux_dim <= k {
                return Err(Error::UnsupportedGating(format!("left-completed OR over {k} wires needs aux dim > {k}")));
            }
            for m in 1..=k {
                guarded_step(&mut out, g[m - 1], &spec.sets[m - 1], aux, 0, k - m + 1);
            }
            for m in (1..k).rev() {
                guarded_step(&mut out, g[m - 1], &spec.sets[m - 1], aux, 1, k - m + 1);
            }
        }
        GatingVariant::OrRight | GatingVariant::Or3Qutrit => {
            if k != 3 || spec.aux_dim != 3 || spec.dims[2] != 3 {
                return Err(Error::UnsupportedGating(
                    "right completion is defined for three inputs with a qutrit aux and qutrit last input".into(),
                ));
            }
            let (a, b, c) = (g[0], g[1], g[2]);
            let db = spec.single(1)?;
            let dc = spec.single(2)?;
            let others: Vec<usize> = (0..3).filter(|&v| v != dc).collect();
            let (u, w) = (others[0], others[1]);
            guarded_step(&mut out, a, &spec.sets[0], aux, 0, 2);
            out.push(Gate::gcx(b, db, c, u, w));
            out.push(Gate::gcx(c, u, aux, 0, 1));
            out.push(Gate::gcx(b, db, c, u, w));
            if spec.variant == GatingVariant::OrRight {
                out.push(Gate::gcx(c, u, aux, 0, 1));
                out.push(Gate::gcx(c, dc, aux, 0, 1));
            } else {
                out.push(Gate::gcx(c, w, aux, 0, 1));
                out.push(Gate::x(aux, 0, 1));
            }
            guarded_step(&mut out, a, &spec.sets[0], aux, 1, 2);
        }
        GatingVariant::OrWide => {
            if k != 4 || spec.aux_dim < 3 || spec.extra_aux.is_empty() {
                return Err(Error::UnsupportedGating("wide OR needs four inputs and two aux wires of dim >= 3".into()));
            }
            let scratch = spec.extra_aux[0];
            let half = |r: std::ops::Range<usize>, aux: usize| GatingSpec {
                guarded: g[r.clone()].to_vec(),
                dims: spec.dims[r.clone()].to_vec(),
                sets: spec.sets[r].to_vec(),
                aux,
                aux_dim: spec.aux_dim,
                extra_aux: vec![],
                variant: GatingVariant::Or,
            };
            let first = half(0..2, scratch);
            let second = half(2..4, aux);
            out.extend(gating_gates(&first)?);
            out.extend(gating_gates(&second)?);
            out.extend(combine_gate(scratch, aux));
        }
    }
    Ok(out)
}

/// Standalone circuit for a gating spec.
pub fn gating_circuit(spec: &GatingSpec) -> Result<Circuit> {
    let mut c = Circuit::new(&spec.circuit_dims());
    c.extend(gating_gates(spec)?);
    Ok(c)
}

/// AND verification gate.
pub fn and_verifier(spec: &GatingSpec) -> Result<Circuit> {
    if spec.variant != GatingVariant::And {
        return Err(Error::UnsupportedGating("and_verifier needs an AND spec".into()));
    }
    gating_circuit(spec)
}

/// ∨ gate over k wires of dimension d detecting level d-1, aux on wire k.
pub fn or_gate(k: usize, d: usize, aux_dim: usize, variant: GatingVariant) -> Result<Circuit> {
    if variant == GatingVariant::And {
        return Err(Error::UnsupportedGating("or_gate needs an OR variant".into()));
    }
    if d < 2 {
        return Err(Error::UnsupportedGating(format!("dimension {d}")));
    }
    let spec = GatingSpec::standard(vec![d; k], vec![vec![d - 1]; k], aux_dim, variant);
    gating_circuit(&spec)
}

/// Joins two ∨ results: b becomes a ∨ b, a is left in a scratch state.
pub fn combine_gate(a: usize, b: usize) -> Vec<Gate> {
    vec![Gate::x(a, 1, 2), Gate::gcx(b, 1, a, 1, 2), Gate::gcx(a, 2, b, 0, 1)]
}

/// De Morgan dual: AND over s becomes ∨ over the complement followed by X01 on the aux,
/// and a ∨ becomes AND over the complement followed by X01.
pub fn demorgan_dual(spec: &GatingSpec) -> Result<(GatingSpec, Circuit)> {
    spec.check()?;
    let variant = match spec.variant {
        GatingVariant::And => GatingVariant::Or,
        GatingVariant::Or | GatingVariant::OrRight | GatingVariant::Or3Qutrit => GatingVariant::And,
        GatingVariant::OrWide => {
            return Err(Error::UnsupportedGating("the wide OR is not a single ladder gate".into()))
        }
    };
    let sets = spec
        .sets
        .iter()
        .zip(&spec.dims)
        .map(|(s, &d)| (0..d).filter(|v| !s.contains(v)).collect())
        .collect();
    let dual = GatingSpec { sets, variant, extra_aux: vec![], ..spec.clone() };
    let mut c = gating_circuit(&dual)?;
    c.push(Gate::x(dual.aux, 0, 1));
    Ok((dual, c))
}

/// Flips a qubit target when two qutrit controls both hold 1. Only d = 3 is supported.
pub fn qudit_toffoli(d: usize) -> Result<Circuit> {
    if d != 3 {
        return Err(Error::UnsupportedGating(format!(
            "single-value GCX Toffoli with 2d-1 gates exists only for d = 3, got d = {d}"
        )));
    }
    let (x, y, t) = (0, 1, 2);
    let mut c = Circuit::new(&[3, 3, 2]);
    c.extend([
        Gate::gcx(x, 1, t, 0, 1),
        Gate::gcx(x, 1, y, 0, 2),
        Gate::gcx(y, 0, t, 0, 1),
        Gate::gcx(x, 1, y, 0, 2),
        Gate::gcx(y, 0, t, 0, 1),
    ]);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{resource_report, Circuit};

    fn counts(c: &Circuit) -> (usize, usize, usize) {
        let r = resource_report(c, |_| false);
        (r.gcx, r.x, r.depth)
    }

    #[test]
    fn caption_counts() {
        let and = GatingSpec::standard(vec![3; 3], vec![vec![0, 1]; 3], 4, GatingVariant::And);
        assert_eq!(counts(&and_verifier(&and).unwrap()), (10, 0, 10));
        assert_eq!(counts(&or_gate(2, 3, 3, GatingVariant::Or).unwrap()), (3, 0, 3));
        assert_eq!(counts(&or_gate(3, 3, 3, GatingVariant::Or3Qutrit).unwrap()), (6, 1, 6));
        assert_eq!(counts(&or_gate(3, 3, 3, GatingVariant::OrRight).unwrap()), (7, 0, 6));
        assert_eq!(counts(&or_gate(4, 3, 3, GatingVariant::OrWide).unwrap()), (8, 1, 6));
        assert_eq!(counts(&qudit_toffoli(3).unwrap()), (5, 0, 5));
    }

    #[test]
    fn unsupported_configurations() {
        let and = GatingSpec::standard(vec![3; 3], vec![vec![0, 1]; 3], 3, GatingVariant::And);
        assert!(and_verifier(&and).is_err());
        assert!(or_gate(3, 3, 3, GatingVariant::Or).is_err());
        assert!(qudit_toffoli(4).is_err());
        let wide = GatingSpec::standard(vec![3; 4], vec![vec![2]; 4], 3, GatingVariant::OrWide);
        assert!(demorgan_dual(&wide).is_err());
    }
}
