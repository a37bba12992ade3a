use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::angles::{apply_correction, correct_singular_m, AngleTransform, Correction};
use super::sequencer::{sequencers, ControlSequence, SequencerOutput};
use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Y,
    Z,
}

impl Axis {
    fn gate(self, target: usize, sub: [usize; 2], theta: f64) -> Gate {
        match self {
            Axis::Y => Gate::ry(target, sub[0], sub[1], theta),
            Axis::Z => Gate::rz(target, sub[0], sub[1], theta),
        }
    }
}

/// Angle-independent skeleton of a (uniformly or conditionally) controlled rotation.
///
/// Control wire `l` of the plan is local index `l`; [`CcrPlan::emit`] maps it onto real wires.
#[derive(Clone, Debug)]
pub struct CcrPlan {
    pub sequence: ControlSequence,
    pub sequencer: SequencerOutput,
    /// GCX (wire, value) pairs emitted just before each rotation.
    pub transitions: Vec<Vec<(usize, usize)>>,
    pub closing: Vec<(usize, usize)>,
    pub closing_x: bool,
    pub transform: AngleTransform,
}

impl CcrPlan {
    /// Plan with the singular-M correction search applied when needed.
    pub fn new(sequence: ControlSequence) -> Result<Self> {
        Self::build(sequence, true)
    }

    /// Plan without corrections; fails if M is singular.
    pub fn uncorrected(sequence: ControlSequence) -> Result<Self> {
        Self::build(sequence, false)
    }

    fn build(sequence: ControlSequence, correct: bool) -> Result<Self> {
        let sequencer = sequencers(&sequence)?;
        let n = sequence.len();
        let mut transitions = vec![Vec::new(); n];
        for j in 1..n {
            let (prev, cur) = (&sequencer.g_words[j - 1], &sequencer.g_words[j]);
            for l in 0..sequence.k() {
                if prev[l] != cur[l] {
                    transitions[j].push((l, prev[l].max(cur[l])));
                }
            }
        }
        let (closing, closing_x) = closing_gates(&sequence.dims, &transitions);
        let mut m = firing_matrix(&sequence.words, &transitions);
        let corrections = if correct { correct_singular_m(&m, &sequence.words, &sequence.dims)? } else { vec![] };
        for &c in &corrections {
            apply_correction(&mut m, &sequence.words, c);
        }
        let transform = AngleTransform::new(m, sequencer.b_words.clone(), sequencer.g_words.clone(), corrections)?;
        Ok(CcrPlan { sequence, sequencer, transitions, closing, closing_x, transform })
    }

    pub fn corrections(&self) -> &[Correction] {
        &self.transform.corrections
    }

    /// β for target angles listed in the sequence's (sorted) word order.
    pub fn solve(&self, thetas: &[f64]) -> Result<Vec<f64>> {
        self.transform.solve(thetas)
    }

    /// Gates for rotation angles `betas` (rotation order); control l sits on `wires[l]`.
    pub fn emit(&self, betas: &[f64], axis: Axis, target: usize, sub: [usize; 2], wires: &[usize]) -> Vec<Gate> {
        let gcx = |(l, v): (usize, usize)| Gate::gcx(wires[l], v, target, sub[0], sub[1]);
        let mut out = Vec::new();
        for (j, &beta) in betas.iter().enumerate() {
            out.extend(self.transitions[j].iter().copied().map(gcx));
            let corr: Vec<_> = self.corrections().iter().filter(|c| c.column == j).collect();
            out.extend(corr.iter().map(|c| gcx((c.wire, c.value))));
            out.push(axis.gate(target, sub, beta));
            out.extend(corr.iter().rev().map(|c| gcx((c.wire, c.value))));
        }
        out.extend(self.closing.iter().copied().map(gcx));
        if self.closing_x {
            out.push(Gate::x(target, sub[0], sub[1]));
        }
        out
    }

    /// Solves for β and emits the gates.
    pub fn gates(&self, thetas: &[f64], axis: Axis, target: usize, sub: [usize; 2], wires: &[usize]) -> Result<Vec<Gate>> {
        let betas = self.solve(thetas)?;
        Ok(self.emit(&betas, axis, target, sub, wires))
    }

    /// Standalone circuit: controls on wires 0..k, target on wire k.
    pub fn circuit(&self, thetas: &[f64], axis: Axis, sub: [usize; 2], target_dim: usize) -> Result<Circuit> {
        if sub[0] >= sub[1] || sub[1] >= target_dim {
            return Err(Error::InvalidParameter(format!("subspace {sub:?} on a dim-{target_dim} target")));
        }
        let k = self.sequence.k();
        let mut dims = self.sequence.dims.clone();
        dims.push(target_dim);
        let mut c = Circuit::new(&dims);
        let wires: Vec<usize> = (0..k).collect();
        c.extend(self.gates(thetas, axis, k, sub, &wires)?);
        Ok(c)
    }
}

/// Sign of each rotation as seen by each real control word, before corrections.
///
/// Row r is `words[r]`; column j is rotation j. The entry is -1 when an odd number of the
/// transition GCX gates emitted up to rotation j fire on that word.
pub fn firing_matrix(words: &[Vec<usize>], transitions: &[Vec<(usize, usize)>]) -> DMatrix<f64> {
    let n = transitions.len();
    let mut m = DMatrix::from_element(words.len(), n, 1.0);
    for (r, w) in words.iter().enumerate() {
        let mut sign = 1.0;
        for (j, ts) in transitions.iter().enumerate() {
            for &(l, v) in ts {
                if w[l] == v {
                    sign = -sign;
                }
            }
            m[(r, j)] = sign;
        }
    }
    m
}

/// Closing GCX gates that return every control value to an even number of target flips.
///
/// A wire whose odd-count values are exactly 1..dim-1 (dim > 2) is closed with one GCX on
/// value 0 and a toggle of the final uncontrolled X.
pub fn closing_gates(dims: &[usize], transitions: &[Vec<(usize, usize)>]) -> (Vec<(usize, usize)>, bool) {
    let mut out = Vec::new();
    let mut x = false;
    for (l, &dim) in dims.iter().enumerate() {
        let mut count = vec![0usize; dim];
        for &(ll, v) in transitions.iter().flatten() {
            if ll == l {
                count[v] += 1;
            }
        }
        let odd: Vec<usize> = (0..dim).filter(|&v| count[v] % 2 == 1).collect();
        if dim > 2 && odd == (1..dim).collect::<Vec<_>>() {
            out.push((l, 0));
            x = !x;
        } else {
            out.extend(odd.into_iter().map(|v| (l, v)));
        }
    }
    (out, x)
}

/// Uniformly controlled rotation over all of Z_d^k.
pub fn ucr_synthesize(k: usize, d: usize, axis: Axis, thetas: &[f64], sub: [usize; 2]) -> Result<Circuit> {
    if d < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("ucr needs d >= 2 and k >= 1, got d={d}, k={k}")));
    }
    let expected = d.pow(k as u32);
    if thetas.len() != expected {
        return Err(Error::LengthMismatch { expected, got: thetas.len() });
    }
    let plan = CcrPlan::new(ControlSequence::full(&vec![d; k]))?;
    plan.circuit(thetas, axis, sub, d)
}

/// Conditionally controlled rotation over the words of `seq`; the target has dimension
/// `target_dim`. Inputs whose controls fall outside the sequence are not constrained.
pub fn ccr_synthesize(
    seq: &ControlSequence,
    axis: Axis,
    thetas: &[f64],
    sub: [usize; 2],
    target_dim: usize,
) -> Result<Circuit> {
    if thetas.len() != seq.len() {
        return Err(Error::LengthMismatch { expected: seq.len(), got: thetas.len() });
    }
    CcrPlan::new(seq.clone())?.circuit(thetas, axis, sub, target_dim)
}

/// Control words (aux, i, j, k, l) with aux in {0, 1} and an even digit sum over `dim`-level
/// controls: the sequence used inside each qutrit plaquette term.
pub fn parity_sequence(dim: usize) -> ControlSequence {
    let words = crate::ir::all_words(&[2, dim, dim, dim, dim])
        .into_iter()
        .filter(|w| w[1..].iter().sum::<usize>() % 2 == 0)
        .collect();
    ControlSequence { words, dims: vec![2, dim, dim, dim, dim] }
}

/// UCDBT gate counts (GCX, rotations, X) in closed form.
pub fn ucr_formula(d: usize, k: usize) -> (usize, usize, usize) {
    let n = d.pow(k as u32);
    let gcx = if d % 2 == 0 { n } else { n + k - 1 };
    let x = usize::from((d > 2 && d % 2 == 0) || (d % 2 == 1 && k % 2 == 1));
    (gcx, n, x)
}
