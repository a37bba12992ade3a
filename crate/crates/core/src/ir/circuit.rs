use std::fmt;

use serde::{Deserialize, Serialize};

use super::gate::{Gate, GateKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wire {
    pub index: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Ordered gate list over mixed-dimension wires.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub wires: Vec<Wire>,
    pub gates: Vec<Gate>,
}

/// First invariant violation found by [`Circuit::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub gate_index: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gate_index {
            Some(n) => write!(f, "gate {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl Circuit {
    pub fn new(dims: &[usize]) -> Self {
        let wires = dims
            .iter()
            .enumerate()
            .map(|(index, &dim)| Wire { index, dim, label: None })
            .collect();
        Circuit { wires, gates: Vec::new() }
    }

    pub fn with_labels(dims: &[usize], labels: &[&str]) -> Self {
        let mut c = Circuit::new(dims);
        for (w, l) in c.wires.iter_mut().zip(labels) {
            w.label = Some((*l).to_string());
        }
        c
    }

    pub fn dims(&self) -> Vec<usize> {
        self.wires.iter().map(|w| w.dim).collect()
    }

    pub fn num_wires(&self) -> usize {
        self.wires.len()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        self.gates.extend(gates);
    }

    /// `self` followed by `other`; both must be defined on the same wires.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.dims() != other.dims() {
            return Err(Error::WireMismatch(format!(
                "cannot compose circuits over {:?} and {:?}",
                self.dims(),
                other.dims()
            )));
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    /// Appends `sub` with its wire n placed on wire `map[n]` of `self`.
    pub fn append_mapped(&mut self, sub: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != sub.num_wires() {
            return Err(Error::WireMismatch(format!(
                "wire map has {} entries for {} wires",
                map.len(),
                sub.num_wires()
            )));
        }
        for (n, &m) in map.iter().enumerate() {
            let Some(w) = self.wires.get(m) else {
                return Err(Error::WireMismatch(format!("wire {m} does not exist")));
            };
            if w.dim < sub.wires[n].dim {
                return Err(Error::WireMismatch(format!(
                    "wire {m} has dim {} but the subcircuit needs {}",
                    w.dim, sub.wires[n].dim
                )));
            }
        }
        self.gates.extend(sub.gates.iter().map(|g| g.remapped(map)));
        Ok(())
    }

    /// Reverses gate order and inverts each gate.
    pub fn invert(&self) -> Circuit {
        Circuit { wires: self.wires.clone(), gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// Reverses gate order only.
    pub fn mirror(&self) -> Circuit {
        Circuit { wires: self.wires.clone(), gates: self.gates.iter().rev().cloned().collect() }
    }

    pub fn validate(&self) -> std::result::Result<(), Diagnostic> {
        for (n, w) in self.wires.iter().enumerate() {
            if w.index != n {
                return Err(Diagnostic { gate_index: None, message: format!("wire {n} carries index {}", w.index) });
            }
            if w.dim < 2 {
                return Err(Diagnostic { gate_index: None, message: format!("wire {n} has dim {} < 2", w.dim) });
            }
        }
        for (n, g) in self.gates.iter().enumerate() {
            if let Err(message) = self.check_gate(g) {
                return Err(Diagnostic { gate_index: Some(n), message });
            }
        }
        Ok(())
    }

    fn check_gate(&self, g: &Gate) -> std::result::Result<(), String> {
        let nw = self.wires.len();
        if g.target >= nw {
            return Err(format!("target wire {} does not exist", g.target));
        }
        let tdim = self.wires[g.target].dim;
        let [i, j] = g.subspace;
        if g.kind == GateKind::Phase {
            if i != j || i >= tdim {
                return Err(format!("phase level {:?} invalid on dim-{tdim} target", g.subspace));
            }
        } else if i >= j || j >= tdim {
            return Err(format!("subspace ({i},{j}) invalid on dim-{tdim} target"));
        }
        if g.kind.is_rotation() != g.angle.is_some() {
            return Err("angle must be present exactly for rotations and phases".into());
        }
        if g.angle.is_some_and(|a| !a.is_finite()) {
            return Err("angle is not finite".into());
        }
        match g.kind {
            GateKind::Gcx | GateKind::Gcz if g.controls.is_empty() => {
                return Err("controlled gate without controls".into())
            }
            GateKind::X | GateKind::H if !g.controls.is_empty() => {
                return Err("X and H gates take no controls".into())
            }
            _ => {}
        }
        let mut seen = Vec::with_capacity(g.controls.len());
        for &(w, v) in &g.controls {
            if w >= nw {
                return Err(format!("control wire {w} does not exist"));
            }
            if w == g.target {
                return Err(format!("control wire {w} is also the target"));
            }
            if seen.contains(&w) {
                return Err(format!("control wire {w} repeated"));
            }
            seen.push(w);
            if v >= self.wires[w].dim {
                return Err(format!("control value {v} on dim-{} wire {w}", self.wires[w].dim));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(e.to_string()))
    }
}
