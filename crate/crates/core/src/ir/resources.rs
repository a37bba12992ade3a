use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, Wire};
use super::gate::{Gate, GateKind};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub gcx: usize,
    /// Two-level rotations of any axis plus phase gates.
    pub rz: usize,
    pub x: usize,
    pub h: usize,
    pub depth: usize,
    pub wires: usize,
    pub aux_wires: usize,
}

/// Per-gate ASAP layer (1-based) where each gate occupies its target and control wires.
pub fn asap_layers(num_wires: usize, gates: &[Gate]) -> Vec<usize> {
    let mut level = vec![0usize; num_wires];
    gates
        .iter()
        .map(|g| {
            let layer = g.wires().map(|w| level[w]).max().unwrap_or(0) + 1;
            for w in g.wires() {
                level[w] = layer;
            }
            layer
        })
        .collect()
}

pub fn asap_depth(num_wires: usize, gates: &[Gate]) -> usize {
    asap_layers(num_wires, gates).into_iter().max().unwrap_or(0)
}

/// Wires whose label starts with "aux".
pub fn is_aux_label(w: &Wire) -> bool {
    w.label.as_deref().is_some_and(|l| l.starts_with("aux"))
}

pub fn resource_report(c: &Circuit, is_aux: impl Fn(&Wire) -> bool) -> ResourceReport {
    let mut r = ResourceReport {
        depth: asap_depth(c.num_wires(), &c.gates),
        wires: c.num_wires(),
        aux_wires: c.wires.iter().filter(|w| is_aux(w)).count(),
        ..ResourceReport::default()
    };
    for g in &c.gates {
        match g.kind {
            GateKind::Gcx | GateKind::Gcz => r.gcx += 1,
            GateKind::X => r.x += 1,
            GateKind::H => r.h += 1,
            GateKind::Rz | GateKind::Ry | GateKind::Rx | GateKind::Phase => r.rz += 1,
        }
    }
    r
}

/// A circuit divided into consecutive segments, each made of lanes that run side by side.
///
/// The additive depth sums, over segments, the largest per-lane ASAP depth.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SegmentedCircuit {
    pub circuit: Circuit,
    pub segments: Vec<Range<usize>>,
    pub lanes: Vec<u8>,
}

impl SegmentedCircuit {
    pub fn new(circuit: Circuit) -> Self {
        let n = circuit.gates.len();
        let segments = if n == 0 { Vec::new() } else { vec![0..n] };
        SegmentedCircuit { circuit, segments, lanes: vec![0; n] }
    }

    pub fn empty(wires: Vec<Wire>) -> Self {
        SegmentedCircuit { circuit: Circuit { wires, gates: Vec::new() }, segments: Vec::new(), lanes: Vec::new() }
    }

    /// Adds one segment whose lanes are merged in order of their own ASAP layers.
    pub fn push_parallel(&mut self, lanes: &[&[Gate]]) {
        let nw = self.circuit.num_wires();
        let mut tagged: Vec<(usize, u8, usize, &Gate)> = Vec::new();
        for (lane, gates) in lanes.iter().enumerate() {
            for (n, (g, layer)) in gates.iter().zip(asap_layers(nw, gates)).enumerate() {
                tagged.push((layer, lane as u8, n, g));
            }
        }
        tagged.sort_by_key(|t| (t.0, t.1, t.2));
        let start = self.circuit.gates.len();
        for (_, lane, _, g) in tagged {
            self.circuit.gates.push(g.clone());
            self.lanes.push(lane);
        }
        if self.circuit.gates.len() > start {
            self.segments.push(start..self.circuit.gates.len());
        }
    }

    pub fn push_segment(&mut self, gates: &[Gate]) {
        self.push_parallel(&[gates]);
    }

    pub fn append(&mut self, other: &SegmentedCircuit) {
        let offset = self.circuit.gates.len();
        self.circuit.gates.extend(other.circuit.gates.iter().cloned());
        self.lanes.extend(other.lanes.iter().copied());
        self.segments.extend(other.segments.iter().map(|r| r.start + offset..r.end + offset));
    }

    pub fn additive_depth(&self) -> usize {
        let nw = self.circuit.num_wires();
        self.segments
            .iter()
            .map(|seg| {
                let gates = &self.circuit.gates[seg.clone()];
                let lanes = &self.lanes[seg.clone()];
                let max_lane = lanes.iter().copied().max().unwrap_or(0);
                (0..=max_lane)
                    .map(|lane| {
                        let own: Vec<Gate> = gates
                            .iter()
                            .zip(lanes)
                            .filter(|(_, &l)| l == lane)
                            .map(|(g, _)| g.clone())
                            .collect();
                        asap_depth(nw, &own)
                    })
                    .max()
                    .unwrap_or(0)
            })
            .sum()
    }

    pub fn asap_depth(&self) -> usize {
        asap_depth(self.circuit.num_wires(), &self.circuit.gates)
    }

    /// Resource report whose depth field is the additive depth.
    pub fn report(&self) -> ResourceReport {
        let mut r = resource_report(&self.circuit, is_aux_label);
        r.depth = self.additive_depth();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_report() {
        let c = Circuit::new(&[]);
        assert_eq!(resource_report(&c, is_aux_label), ResourceReport::default());
    }

    #[test]
    fn disjoint_parts_schedule_in_parallel() {
        let mut a = Circuit::new(&[3, 3, 3, 3]);
        a.push(Gate::gcx(0, 1, 1, 0, 1));
        a.push(Gate::rz(1, 0, 1, 0.2));
        let mut b = Circuit::new(&[3, 3, 3, 3]);
        b.push(Gate::x(2, 0, 1));
        b.push(Gate::gcx(2, 1, 3, 1, 2));
        b.push(Gate::h(3, 1, 2));
        let ab = a.compose(&b).unwrap();
        let r = resource_report(&ab, |_| false);
        assert_eq!(r.depth, 3);
        assert_eq!((r.gcx, r.rz, r.x, r.h), (2, 1, 1, 1));
    }

    #[test]
    fn segments_sum_lane_maxima() {
        let mut s = SegmentedCircuit::empty(Circuit::new(&[2, 2, 2]).wires);
        let a = [Gate::x(0, 0, 1), Gate::x(0, 0, 1)];
        let b = [Gate::x(1, 0, 1)];
        s.push_parallel(&[&a, &b]);
        s.push_segment(&[Gate::gcx(0, 1, 2, 0, 1)]);
        assert_eq!(s.additive_depth(), 3);
        assert_eq!(s.asap_depth(), 3);
    }
}
