use serde::{Deserialize, Serialize};

use super::params::EvolutionParams;
use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, SegmentedCircuit};
use crate::su2::{build_plaquette_operator, GgggTerm, PlaquetteOperator};
use crate::synthesis::{gating_gates, parity_sequence, Axis, CcrPlan, ControlSequence, GatingSpec, GatingVariant};

/// Gating strategy inside a term circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermPath {
    /// Three-input qutrit ∨ on a qutrit aux and the corrected 82-word rotation block.
    Qutrit,
    /// AND on a ququart aux and the full Z_2 × Z_d^4 rotation block.
    General,
}

/// Wire indices a term acts on: plaquette (q_ℓ, j_a^b, q_r, j_a^t), controls
/// (j_ℓ^t, j_ℓ^b, j_r^b, j_r^t) and the gating aux.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermWires {
    pub plaquette: [usize; 4],
    pub controls: [usize; 4],
    pub aux: usize,
}

impl TermWires {
    /// Standalone layout: eight links then the aux.
    pub const LOCAL: TermWires = TermWires { plaquette: [0, 1, 2, 3], controls: [4, 5, 6, 7], aux: 8 };
}

pub const LOCAL_LABELS: [&str; 9] = ["q_l", "j_a^b", "q_r", "j_a^t", "j_l^t", "j_l^b", "j_r^b", "j_r^t", "aux0"];

/// A compiled term split into its five stages.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TermSegments {
    pub xparity: Vec<Gate>,
    pub gate_on: Vec<Gate>,
    pub rotation: Vec<Gate>,
    pub gate_off: Vec<Gate>,
    pub xparity_inv: Vec<Gate>,
    /// Run the gating stages outside the X-parity stages. Same unitary, since X-parity keeps
    /// every plaquette wire inside its term subspace; this layout lets every H cancel.
    pub gating_outside: bool,
}

impl TermSegments {
    pub fn stages(&self) -> [&[Gate]; 5] {
        if self.gating_outside {
            [&self.gate_on, &self.xparity, &self.rotation, &self.xparity_inv, &self.gate_off]
        } else {
            [&self.xparity, &self.gate_on, &self.rotation, &self.gate_off, &self.xparity_inv]
        }
    }

    pub fn gates(&self) -> Vec<Gate> {
        self.stages().concat()
    }

    /// Whole-term gate order reversed; stage k of the result is stage 4-k reversed.
    pub fn mirrored(&self) -> TermSegments {
        let rev = |g: &[Gate]| g.iter().rev().cloned().collect::<Vec<_>>();
        TermSegments {
            gating_outside: self.gating_outside,
            xparity: rev(&self.xparity_inv),
            gate_on: rev(&self.gate_off),
            rotation: rev(&self.rotation),
            gate_off: rev(&self.gate_on),
            xparity_inv: rev(&self.xparity),
        }
    }
}

/// Plaquette position carrying the rotation: the highest subspace index, last on ties.
pub fn target_position(pqrs: [usize; 4]) -> usize {
    (0..4).rev().max_by_key(|&m| (pqrs[m], m)).expect("four positions")
}

fn inverse_of(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// H on every plaquette wire in its term subspace, then the parity of the three other
/// wires is folded onto `wires[target]`.
pub fn xparity_gates(pqrs: [usize; 4], wires: [usize; 4], target: usize) -> Vec<Gate> {
    let mut out: Vec<Gate> = (0..4).map(|m| Gate::h(wires[m], pqrs[m], pqrs[m] + 1)).collect();
    let o: Vec<usize> = (0..4).filter(|&m| m != target).collect();
    let gcx = |c: usize, t: usize| Gate::gcx(wires[c], pqrs[c] + 1, wires[t], pqrs[t], pqrs[t] + 1);
    out.push(gcx(o[0], o[1]));
    out.push(gcx(o[2], target));
    out.push(gcx(o[1], target));
    out
}

/// X-parity subroutine on four dimension-d wires.
pub fn xparity_subroutine(pqrs: [usize; 4], d: usize) -> Result<Circuit> {
    if pqrs.iter().any(|&x| x + 2 > d) {
        return Err(Error::SubspaceOutOfRange { index: *pqrs.iter().max().unwrap_or(&0), d });
    }
    let mut c = Circuit::new(&[d; 4]);
    c.extend(xparity_gates(pqrs, [0, 1, 2, 3], target_position(pqrs)));
    Ok(c)
}

/// Compiles ΠΠΠΠXXXX term evolutions for one dimension, caching the rotation-block plan.
#[derive(Clone, Debug)]
pub struct TermCompiler {
    pub d: usize,
    pub path: TermPath,
    pub op: PlaquetteOperator,
    plan: CcrPlan,
    gating_outside: bool,
}

impl TermCompiler {
    /// Qutrit path at d = 3, general path otherwise.
    pub fn new(d: usize) -> Result<Self> {
        Self::with_path(d, if d == 3 { TermPath::Qutrit } else { TermPath::General })
    }

    pub fn with_path(d: usize, path: TermPath) -> Result<Self> {
        let op = build_plaquette_operator(d)?;
        Self::from_operator(op, path)
    }

    pub fn from_operator(op: PlaquetteOperator, path: TermPath) -> Result<Self> {
        let d = op.d;
        let plan = match path {
            TermPath::Qutrit if d != 3 => {
                return Err(Error::InvalidParameter(format!("the qutrit path needs d = 3, got d = {d}")))
            }
            TermPath::Qutrit => CcrPlan::new(parity_sequence(3))?,
            TermPath::General => CcrPlan::new(ControlSequence::full(&[2, d, d, d, d]))?,
        };
        Ok(TermCompiler { d, path, op, plan, gating_outside: false })
    }

    /// Places the gating outside the X-parity stages; see [`TermSegments::gating_outside`].
    pub fn with_gating_outside(mut self, outside: bool) -> Self {
        self.gating_outside = outside;
        self
    }

    pub fn plan(&self) -> &CcrPlan {
        &self.plan
    }

    pub fn aux_dim(&self) -> usize {
        match self.path {
            TermPath::Qutrit => 3,
            TermPath::General => 4,
        }
    }

    /// Aux value that marks a valid plaquette.
    fn valid_aux(&self) -> usize {
        match self.path {
            TermPath::Qutrit => 0,
            TermPath::General => 1,
        }
    }

    /// Rotation angles 2τφ over the plan's words, zero outside the term's control sector
    /// or when the aux flags an invalid plaquette.
    pub fn thetas(&self, term: &GgggTerm, tau: f64) -> Vec<f64> {
        let valid = self.valid_aux();
        self.plan
            .sequence
            .words
            .iter()
            .map(|w| {
                if w[0] != valid {
                    return 0.0;
                }
                term.phi([w[1], w[2], w[3], w[4]]).map_or(0.0, |phi| 2.0 * tau * phi)
            })
            .collect()
    }

    fn gating_spec(&self, pqrs: [usize; 4], wires: &TermWires, others: &[usize]) -> GatingSpec {
        let d = self.d;
        let guarded: Vec<usize> = others.iter().map(|&m| wires.plaquette[m]).collect();
        match self.path {
            TermPath::Qutrit => GatingSpec {
                guarded,
                dims: vec![3; 3],
                sets: others.iter().map(|&m| vec![if pqrs[m] == 0 { 2 } else { 0 }]).collect(),
                aux: wires.aux,
                aux_dim: 3,
                extra_aux: vec![],
                variant: GatingVariant::Or3Qutrit,
            },
            TermPath::General => GatingSpec {
                guarded,
                dims: vec![d; 3],
                sets: others.iter().map(|&m| vec![pqrs[m], pqrs[m] + 1]).collect(),
                aux: wires.aux,
                aux_dim: 4,
                extra_aux: vec![],
                variant: GatingVariant::And,
            },
        }
    }

    pub fn term_segments(&self, term: &GgggTerm, wires: &TermWires, tau: f64) -> Result<TermSegments> {
        let pqrs = term.pqrs;
        if pqrs.iter().any(|&x| x + 2 > self.d) {
            return Err(Error::SubspaceOutOfRange { index: *pqrs.iter().max().unwrap_or(&0), d: self.d });
        }
        let t = target_position(pqrs);
        let others: Vec<usize> = (0..4).filter(|&m| m != t).collect();
        let xparity = xparity_gates(pqrs, wires.plaquette, t);
        let gate_on = gating_gates(&self.gating_spec(pqrs, wires, &others))?;
        let mut ctrl = vec![wires.aux];
        ctrl.extend(wires.controls);
        let rotation =
            self.plan.gates(&self.thetas(term, tau), Axis::Z, wires.plaquette[t], [pqrs[t], pqrs[t] + 1], &ctrl)?;
        Ok(TermSegments {
            gate_off: inverse_of(&gate_on),
            xparity_inv: inverse_of(&xparity),
            xparity,
            gate_on,
            rotation,
            gating_outside: self.gating_outside,
        })
    }

    /// Standalone nine-wire circuit (eight links and the aux) for one term.
    pub fn term_circuit(&self, term: &GgggTerm, tau: f64) -> Result<Circuit> {
        let mut dims = vec![self.d; 8];
        dims.push(self.aux_dim());
        let mut c = Circuit::with_labels(&dims, &LOCAL_LABELS);
        c.extend(self.term_segments(term, &TermWires::LOCAL, tau)?.gates());
        Ok(c)
    }

    /// Same circuit with one segment per stage, so its depth adds stage by stage.
    pub fn term_segmented(&self, term: &GgggTerm, tau: f64) -> Result<SegmentedCircuit> {
        let mut dims = vec![self.d; 8];
        dims.push(self.aux_dim());
        let mut seg = SegmentedCircuit::empty(Circuit::with_labels(&dims, &LOCAL_LABELS).wires);
        for stage in self.term_segments(term, &TermWires::LOCAL, tau)?.stages() {
            seg.push_segment(stage);
        }
        Ok(seg)
    }
}

/// One term of the d-dimensional operator compiled for the given parameters.
pub fn compile_term_evolution(d: usize, pqrs: [usize; 4], params: &EvolutionParams) -> Result<Circuit> {
    let tc = TermCompiler::new(d)?;
    let term = tc
        .op
        .term(pqrs)
        .ok_or_else(|| Error::SubspaceOutOfRange { index: *pqrs.iter().max().unwrap_or(&0), d })?
        .clone();
    tc.term_circuit(&term, params.tau())
}
