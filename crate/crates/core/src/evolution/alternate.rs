use super::cube::CubeWiring;
use super::faces::{cube_circuit, face_wires};
use super::params::EvolutionParams;
use super::term::{TermCompiler, TermPath, TermWires};
use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, SegmentedCircuit};
use crate::su2::{control_set, GgggTerm};
use crate::synthesis::{combine_gate, gating_gates, Axis, CcrPlan, ControlSequence, GatingSpec, GatingVariant};

/// Rotation classes whose control sets fix the gated-wire pattern.
const REPRESENTATIVES: [[usize; 4]; 5] = [[0, 0, 0, 0], [1, 0, 0, 0], [1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 0]];

const FULL: [usize; 4] = [1, 1, 1, 1];

fn rotate(t: [usize; 4], r: usize) -> [usize; 4] {
    [0, 1, 2, 3].map(|m| t[(m + r) % 4])
}

fn inverse_of(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// Control sets (F(s,p), F(p,q), F(q,r), F(r,s)) of a qutrit term.
pub fn alternate_control_sets(pqrs: [usize; 4]) -> Result<[Vec<usize>; 4]> {
    let s = |m: usize| control_set(pqrs[(m + 3) % 4], pqrs[m], 3);
    Ok([s(0)?, s(1)?, s(2)?, s(3)?])
}

/// Stages of one alternate term on one face.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AltStages {
    pub xparity: Vec<Gate>,
    pub plaq_on: Vec<Gate>,
    pub ctrl_on: Vec<Gate>,
    /// Result wire of the control ∨, or None when no control link is gated.
    pub ctrl_result: Option<usize>,
    pub rotation: Vec<Gate>,
}

impl AltStages {
    /// Full single-face gate list: compute, join, rotate, uncompute.
    pub fn stages(&self, plaq_aux: usize) -> Vec<Vec<Gate>> {
        let join = self.ctrl_result.map(|c| combine_gate(c, plaq_aux)).unwrap_or_default();
        vec![
            self.xparity.clone(),
            self.plaq_on.clone(),
            self.ctrl_on.clone(),
            join.clone(),
            self.rotation.clone(),
            inverse_of(&join),
            inverse_of(&self.ctrl_on),
            inverse_of(&self.plaq_on),
            inverse_of(&self.xparity),
        ]
    }
}

/// Qutrit plaquette compiler that also gates the control links, so each term's
/// rotation runs only over the words of its control sets.
#[derive(Clone, Debug)]
pub struct AlternateCompiler {
    pub primary: TermCompiler,
    plans: Vec<CcrPlan>,
}

impl AlternateCompiler {
    pub fn new(d: usize) -> Result<Self> {
        if d != 3 {
            return Err(Error::InvalidParameter(format!(
                "the alternate decomposition is compiled for d = 3 only, got d = {d}"
            )));
        }
        let primary = TermCompiler::with_path(3, TermPath::Qutrit)?;
        let plans = REPRESENTATIVES
            .iter()
            .map(|&rep| {
                let sets = alternate_control_sets(rep)?;
                let mut words = Vec::new();
                for a in 0..2 {
                    for &i in &sets[0] {
                        for &j in &sets[1] {
                            for &k in &sets[2] {
                                for &l in &sets[3] {
                                    if (i + j + k + l) % 2 == 0 {
                                        words.push(vec![a, i, j, k, l]);
                                    }
                                }
                            }
                        }
                    }
                }
                CcrPlan::new(ControlSequence::new(words, vec![2, 3, 3, 3, 3])?)
            })
            .collect::<Result<_>>()?;
        Ok(AlternateCompiler { primary, plans })
    }

    /// Rotation r and representative index with rotate(pqrs, r) a representative.
    pub fn representative(pqrs: [usize; 4]) -> Option<(usize, usize)> {
        (0..4).find_map(|r| REPRESENTATIVES.iter().position(|&rep| rep == rotate(pqrs, r)).map(|n| (r, n)))
    }

    pub fn plan(&self, pqrs: [usize; 4]) -> Option<&CcrPlan> {
        Self::representative(pqrs).map(|(_, n)| &self.plans[n])
    }

    /// Gated control wires with their detect level, in the representative's order.
    pub fn gated_controls(pqrs: [usize; 4], controls: [usize; 4]) -> Result<Vec<(usize, usize)>> {
        if pqrs == FULL {
            return Ok(vec![]);
        }
        let (r, _) = Self::representative(pqrs).ok_or_else(|| Error::SubspaceOutOfRange { index: 2, d: 3 })?;
        let sets = alternate_control_sets(pqrs)?;
        Ok((0..4)
            .map(|m| (m + r) % 4)
            .filter(|&n| sets[n].len() == 2)
            .map(|n| (controls[n], (0..3).find(|v| !sets[n].contains(v)).expect("two of three levels")))
            .collect())
    }

    /// ∨ over the gated control wires; `scratch` holds two qutrit aux wires.
    /// Returns the gates and the wire holding the result.
    pub fn control_gating(gated: &[(usize, usize)], scratch: [usize; 2]) -> Result<(Vec<Gate>, Option<usize>)> {
        let k = gated.len();
        let spec = |variant, aux, extra_aux| GatingSpec {
            guarded: gated.iter().map(|g| g.0).collect(),
            dims: vec![3; k],
            sets: gated.iter().map(|g| vec![g.1]).collect(),
            aux,
            aux_dim: 3,
            extra_aux,
            variant,
        };
        match k {
            0 => Ok((vec![], None)),
            2 => Ok((gating_gates(&spec(GatingVariant::Or, scratch[0], vec![]))?, Some(scratch[0]))),
            3 => Ok((gating_gates(&spec(GatingVariant::Or3Qutrit, scratch[0], vec![]))?, Some(scratch[0]))),
            4 => Ok((gating_gates(&spec(GatingVariant::OrWide, scratch[1], vec![scratch[0]]))?, Some(scratch[1]))),
            _ => Err(Error::UnsupportedGating(format!("{k} gated control links"))),
        }
    }

    /// Rotation angles 2τφ over a plan's words for `term`, rotated back to real control order.
    pub fn thetas(&self, term: &GgggTerm, tau: f64) -> Result<Vec<f64>> {
        if term.pqrs == FULL {
            return Ok(self.primary.thetas(term, tau));
        }
        let (r, n) = Self::representative(term.pqrs).ok_or_else(|| Error::SubspaceOutOfRange { index: 2, d: 3 })?;
        Ok(self.plans[n]
            .sequence
            .words
            .iter()
            .map(|w| {
                if w[0] != 0 {
                    return 0.0;
                }
                let mut real = [0; 4];
                for m in 0..4 {
                    real[(m + r) % 4] = w[m + 1];
                }
                term.phi(real).map_or(0.0, |phi| 2.0 * tau * phi)
            })
            .collect())
    }

    pub fn stages(&self, term: &GgggTerm, wires: &TermWires, scratch: [usize; 2], tau: f64) -> Result<AltStages> {
        let base = self.primary.term_segments(term, wires, tau)?;
        let gated = Self::gated_controls(term.pqrs, wires.controls)?;
        let (ctrl_on, ctrl_result) = Self::control_gating(&gated, scratch)?;
        let rotation = if term.pqrs == FULL {
            base.rotation
        } else {
            let (r, n) = Self::representative(term.pqrs).expect("checked by gated_controls");
            let mut ctrl = vec![wires.aux];
            ctrl.extend((0..4).map(|m| wires.controls[(m + r) % 4]));
            let t = super::term::target_position(term.pqrs);
            self.plans[n].gates(
                &self.thetas(term, tau)?,
                Axis::Z,
                wires.plaquette[t],
                [term.pqrs[t], term.pqrs[t] + 1],
                &ctrl,
            )?
        };
        Ok(AltStages { xparity: base.xparity, plaq_on: base.gate_on, ctrl_on, ctrl_result, rotation })
    }
}

/// Standalone labels: eight links, the plaquette aux, then two control aux wires.
pub const ALT_LOCAL_LABELS: [&str; 11] =
    ["q_l", "j_a^b", "q_r", "j_a^t", "j_l^t", "j_l^b", "j_r^b", "j_r^t", "aux0", "aux1", "aux2"];

/// One alternate term on eleven qutrits.
pub fn compile_alternate_term(ac: &AlternateCompiler, term: &GgggTerm, params: &EvolutionParams) -> Result<SegmentedCircuit> {
    let mut seg = SegmentedCircuit::empty(Circuit::with_labels(&[3; 11], &ALT_LOCAL_LABELS).wires);
    for s in ac.stages(term, &TermWires::LOCAL, [9, 10], params.tau())?.stages(8) {
        seg.push_segment(&s);
    }
    Ok(seg)
}

/// Term of face `b` paired with each term of face `a`: the one whose control sets, read on
/// the shared control links, agree with those of the `a` term.
pub fn matched_terms(cube: &CubeWiring, a: usize, b: usize) -> Result<Vec<([usize; 4], [usize; 4])>> {
    let fa = &cube.faces[a];
    let fb = &cube.faces[b];
    let terms: Vec<[usize; 4]> = crate::ir::all_words(&[2; 4]).into_iter().map(|w| [w[0], w[1], w[2], w[3]]).collect();
    let mut used = vec![false; terms.len()];
    let mut out = Vec::new();
    for &ta in &terms {
        let sa = alternate_control_sets(ta)?;
        let want: Vec<&Vec<usize>> = fb
            .controls
            .iter()
            .map(|l| &sa[fa.controls.iter().position(|x| x == l).expect("shared control links")])
            .collect();
        let found = terms
            .iter()
            .enumerate()
            .find(|&(n, &tb)| {
                !used[n] && alternate_control_sets(tb).map(|sb| sb.iter().zip(&want).all(|(x, y)| x == *y)).unwrap_or(false)
            })
            .map(|(n, _)| n)
            .ok_or_else(|| Error::UnsupportedGating(format!("no partner term on face {b} for {ta:?}")))?;
        used[found] = true;
        out.push((ta, terms[found]));
    }
    Ok(out)
}

/// Two opposite faces on 17 qutrits: 12 links, two plaquette aux wires and three shared
/// control aux wires.
pub fn compile_alternate_pair(
    ac: &AlternateCompiler,
    cube: &CubeWiring,
    a: usize,
    b: usize,
    params: &EvolutionParams,
) -> Result<SegmentedCircuit> {
    if !cube.are_opposite(a, b) {
        return Err(Error::NotOpposite(a, b));
    }
    let n = cube.links.len();
    let (pa, pb, c1, c2, c3) = (n, n + 1, n + 2, n + 3, n + 4);
    let mut seg = SegmentedCircuit::empty(cube_circuit(cube, 3, &[3; 5]).wires);
    let tau = params.tau();
    let op = &ac.primary.op;
    for (ta, tb) in matched_terms(cube, a, b)? {
        let term_a = op.term(ta).expect("qutrit term");
        let term_b = op.term(tb).expect("qutrit term");
        let sa = ac.stages(term_a, &face_wires(&cube.faces[a], pa), [c1, c2], tau)?;
        let sb = ac.stages(term_b, &face_wires(&cube.faces[b], pb), [c1, c2], tau)?;
        let (join_a, join_b, ctrl) = match sa.ctrl_result {
            Some(r) => {
                let mut ctrl = sa.ctrl_on.clone();
                ctrl.push(Gate::gcx(r, 1, c3, 0, 1));
                (combine_gate(r, pa), combine_gate(c3, pb), ctrl)
            }
            None => (vec![], vec![], vec![]),
        };
        let mirrored: Vec<Gate> = sb.rotation.iter().rev().cloned().collect();
        seg.push_parallel(&[&sa.xparity, &sb.xparity]);
        seg.push_parallel(&[&sa.plaq_on, &sb.plaq_on]);
        seg.push_segment(&ctrl);
        seg.push_parallel(&[&join_a, &join_b]);
        seg.push_parallel(&[&sa.rotation, &mirrored]);
        seg.push_parallel(&[&inverse_of(&join_a), &inverse_of(&join_b)]);
        seg.push_segment(&inverse_of(&ctrl));
        seg.push_parallel(&[&inverse_of(&sa.plaq_on), &inverse_of(&sb.plaq_on)]);
        seg.push_parallel(&[&inverse_of(&sa.xparity), &inverse_of(&sb.xparity)]);
    }
    Ok(seg)
}
