use std::f64::consts::PI;

use crate::ir::{Circuit, Gate, GateKind};

fn run_key(g: &Gate) -> Option<(usize, usize, [usize; 2])> {
    match (g.kind, &g.controls[..]) {
        (GateKind::Gcx, [(w, _)]) => Some((*w, g.target, g.subspace)),
        _ => None,
    }
}

/// Replaces each run of consecutive single-control GCX gates that share control wire and
/// target operation and cover every control value but one (u) by a GCX on u plus an X.
pub fn gcx_run_optimize(c: &Circuit) -> Circuit {
    let mut out = Vec::with_capacity(c.gates.len());
    let gates = &c.gates;
    let mut n = 0;
    while n < gates.len() {
        let Some(key) = run_key(&gates[n]) else {
            out.push(gates[n].clone());
            n += 1;
            continue;
        };
        let mut end = n + 1;
        while end < gates.len() && run_key(&gates[end]) == Some(key) {
            end += 1;
        }
        let dim = c.wires[key.0].dim;
        let mut values: Vec<usize> = gates[n..end].iter().map(|g| g.controls[0].1).collect();
        values.sort_unstable();
        let distinct = values.windows(2).all(|w| w[0] != w[1]);
        if dim > 2 && distinct && values.len() == dim - 1 {
            let u = (0..dim).find(|v| !values.contains(v)).expect("one value missing");
            out.push(Gate::gcx(key.0, u, key.1, key.2[0], key.2[1]));
            out.push(Gate::x(key.1, key.2[0], key.2[1]));
        } else {
            out.extend(gates[n..end].iter().cloned());
        }
        n = end;
    }
    Circuit { wires: c.wires.clone(), gates: out }
}

/// Result of [`hadamard_eliminate`]; `remaining` counts H gates that could not be absorbed.
#[derive(Clone, Debug, PartialEq)]
pub struct HadamardElimination {
    pub circuit: Circuit,
    pub remaining: usize,
}

fn overlaps(levels: [usize; 2], s: [usize; 2]) -> bool {
    levels.iter().any(|l| s.contains(l))
}

/// Pushes every H forward until it meets its partner, rewriting the gates it passes.
///
/// Under a pending H_ab: RZ_ab becomes RX_ab, GCX onto X_ab becomes GCZ, a GCX controlled
/// on the upper level whose target also carries a pending H in its own subspace is flipped,
/// and gates on other levels commute. Anything else forces the H to be emitted in place.
pub fn hadamard_eliminate(c: &Circuit) -> HadamardElimination {
    let mut pending: Vec<Option<[usize; 2]>> = vec![None; c.num_wires()];
    let mut out: Vec<Gate> = Vec::with_capacity(c.gates.len());
    let flush = |w: usize, pending: &mut Vec<Option<[usize; 2]>>, out: &mut Vec<Gate>| {
        if let Some(s) = pending[w].take() {
            out.push(Gate::h(w, s[0], s[1]));
        }
    };
    for g in &c.gates {
        if g.kind == GateKind::H {
            if pending[g.target] == Some(g.subspace) {
                pending[g.target] = None;
            } else {
                flush(g.target, &mut pending, &mut out);
                pending[g.target] = Some(g.subspace);
            }
            continue;
        }
        if g.kind == GateKind::Gcx {
            if let [(cw, cv)] = g.controls[..] {
                if let (Some(sc), Some(st)) = (pending[cw], pending[g.target]) {
                    if cv == sc[1] && st == g.subspace {
                        out.push(Gate::gcx(g.target, st[1], cw, sc[0], sc[1]));
                        continue;
                    }
                }
            }
        }
        for &(w, v) in &g.controls {
            if pending[w].is_some_and(|s| s.contains(&v)) {
                flush(w, &mut pending, &mut out);
            }
        }
        let Some(s) = pending[g.target] else {
            out.push(g.clone());
            continue;
        };
        if !overlaps(g.subspace, s) {
            out.push(g.clone());
            continue;
        }
        let mut r = g.clone();
        let converted = g.subspace == s
            && match g.kind {
                GateKind::Gcx => {
                    r.kind = GateKind::Gcz;
                    true
                }
                GateKind::Gcz => {
                    r.kind = GateKind::Gcx;
                    true
                }
                GateKind::Rz => {
                    r.kind = GateKind::Rx;
                    true
                }
                GateKind::Rx => {
                    r.kind = GateKind::Rz;
                    true
                }
                GateKind::Ry => {
                    r = g.inverse();
                    true
                }
                GateKind::X => {
                    r = Gate::phase(g.target, s[1], PI);
                    true
                }
                GateKind::H | GateKind::Phase => false,
            };
        if !converted {
            flush(g.target, &mut pending, &mut out);
            r = g.clone();
        }
        out.push(r);
    }
    for w in 0..pending.len() {
        flush(w, &mut pending, &mut out);
    }
    let remaining = out.iter().filter(|g| g.kind == GateKind::H).count();
    HadamardElimination { circuit: Circuit { wires: c.wires.clone(), gates: out }, remaining }
}

/// exp(-i φ Π^n Z01^{k+1}) as 2^k rotations on the last Z wire.
///
/// Wires 0..n are Π controls (value 1), wires n..n+k the other Z wires, wire n+k the target;
/// all have dimension `d`. The rotation for Z-wire values x has angle 2φ(-1)^{|x|}.
pub fn alt_paired_angle_decompose(n: usize, k: usize, phi: f64, d: usize) -> Circuit {
    let mut c = Circuit::new(&vec![d.max(2); n + k + 1]);
    let target = n + k;
    for x in 0..(1usize << k) {
        let bits: Vec<usize> = (0..k).map(|b| (x >> (k - 1 - b)) & 1).collect();
        let parity = bits.iter().sum::<usize>() % 2;
        let theta = if parity == 0 { 2.0 * phi } else { -2.0 * phi };
        let mut g = Gate::rz(target, 0, 1, theta);
        for w in 0..n {
            g = g.with_control(w, 1);
        }
        for (b, &v) in bits.iter().enumerate() {
            g = g.with_control(n + b, v);
        }
        c.push(g);
    }
    c
}
