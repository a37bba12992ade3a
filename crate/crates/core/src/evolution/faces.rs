use super::cube::{CubeWiring, Face};
use super::params::EvolutionParams;
use super::term::{TermCompiler, TermSegments, TermWires, LOCAL_LABELS};
use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, SegmentedCircuit};

/// Cube register: 12 links of dimension d followed by `aux_dims.len()` aux wires.
pub fn cube_circuit(cube: &CubeWiring, d: usize, aux_dims: &[usize]) -> Circuit {
    let mut dims = vec![d; cube.links.len()];
    dims.extend_from_slice(aux_dims);
    let mut labels: Vec<String> = (0..cube.links.len()).map(|l| cube.link_label(l)).collect();
    labels.extend((0..aux_dims.len()).map(|a| format!("aux{a}")));
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    Circuit::with_labels(&dims, &refs)
}

pub fn face_wires(face: &Face, aux: usize) -> TermWires {
    TermWires { plaquette: face.plaquette, controls: face.controls, aux }
}

/// Every term of the operator compiled onto `wires`, in increasing pqrs order.
pub fn face_terms(tc: &TermCompiler, wires: &TermWires, tau: f64) -> Result<Vec<TermSegments>> {
    tc.op.terms.iter().map(|t| tc.term_segments(t, wires, tau)).collect()
}

/// Appends terms one after another, one segment per stage.
pub fn push_sequential(seg: &mut SegmentedCircuit, terms: &[TermSegments]) {
    for t in terms {
        for stage in t.stages() {
            seg.push_segment(stage);
        }
    }
}

/// Appends two faces' terms side by side; the second face runs each term mirrored.
pub fn push_paired(seg: &mut SegmentedCircuit, a: &[TermSegments], b: &[TermSegments]) {
    for (ta, tb) in a.iter().zip(b) {
        let mb = tb.mirrored();
        for (sa, sb) in ta.stages().into_iter().zip(mb.stages()) {
            seg.push_parallel(&[sa, sb]);
        }
    }
}

/// Single-plaquette evolution exp(-iτ□) on eight links and one aux.
pub fn compile_plaquette_evolution(tc: &TermCompiler, params: &EvolutionParams) -> Result<SegmentedCircuit> {
    let mut dims = vec![tc.d; 8];
    dims.push(tc.aux_dim());
    let mut seg = SegmentedCircuit::empty(Circuit::with_labels(&dims, &LOCAL_LABELS).wires);
    push_sequential(&mut seg, &face_terms(tc, &TermWires::LOCAL, params.tau())?);
    Ok(seg)
}

fn pair_aux(cube: &CubeWiring) -> (usize, usize) {
    (cube.links.len(), cube.links.len() + 1)
}

/// Two opposite faces evolved side by side on the 12-link cube plus two aux wires.
pub fn compile_parallel_faces(
    tc: &TermCompiler,
    cube: &CubeWiring,
    a: usize,
    b: usize,
    params: &EvolutionParams,
) -> Result<SegmentedCircuit> {
    let mut seg = SegmentedCircuit::empty(cube_circuit(cube, tc.d, &[tc.aux_dim(); 2]).wires);
    push_face_pair(&mut seg, tc, cube, a, b, params.tau())?;
    Ok(seg)
}

fn push_face_pair(
    seg: &mut SegmentedCircuit,
    tc: &TermCompiler,
    cube: &CubeWiring,
    a: usize,
    b: usize,
    tau: f64,
) -> Result<()> {
    if !cube.are_opposite(a, b) {
        return Err(Error::NotOpposite(a, b));
    }
    let (xa, xb) = pair_aux(cube);
    let ta = face_terms(tc, &face_wires(&cube.faces[a], xa), tau)?;
    let tb = face_terms(tc, &face_wires(&cube.faces[b], xb), tau)?;
    push_paired(seg, &ta, &tb);
    Ok(())
}

/// Two faces evolved one after the other, for faces that cannot be paired.
pub fn compile_sequential_faces(
    tc: &TermCompiler,
    cube: &CubeWiring,
    faces: &[usize],
    params: &EvolutionParams,
) -> Result<SegmentedCircuit> {
    let mut seg = SegmentedCircuit::empty(cube_circuit(cube, tc.d, &[tc.aux_dim(); 2]).wires);
    let (xa, _) = pair_aux(cube);
    for &f in faces {
        push_sequential(&mut seg, &face_terms(tc, &face_wires(&cube.faces[f], xa), params.tau())?);
    }
    Ok(seg)
}

/// Casimir eigenvalue j(j+1) of level v (v = 2j).
pub fn casimir(level: usize) -> f64 {
    let j = level as f64 / 2.0;
    j * (j + 1.0)
}

/// Angles a_0..a_{d-2} of the chain RZ_{01}(a_0) RZ_{12}(a_1) ... whose product equals
/// exp(-i α j(j+1)) on every level, up to a global phase.
pub fn electric_angles(d: usize, alpha: f64) -> Vec<f64> {
    let mean = (0..d).map(casimir).sum::<f64>() / d as f64;
    let mut out = Vec::with_capacity(d - 1);
    let mut prev = 0.0;
    for v in 0..d - 1 {
        // level phase: prev/2 - a_v/2 = -α (casimir(v) - mean)
        let a = prev + 2.0 * alpha * (casimir(v) - mean);
        out.push(a);
        prev = a;
    }
    out
}

/// exp(-i dt g²/2 Σ_links Ê²) as d-1 rotations per link.
pub fn compile_electric_step(d: usize, params: &EvolutionParams, links: &[usize]) -> Vec<Gate> {
    let angles = electric_angles(d, params.dt() * params.g2 / 2.0);
    let mut out = Vec::new();
    for &l in links {
        for (v, &a) in angles.iter().enumerate() {
            out.push(Gate::rz(l, v, v + 1, a));
        }
    }
    out
}

/// One first-order Trotter step: electric evolution, then each opposite-face pair.
pub fn compile_trotter_step(tc: &TermCompiler, cube: &CubeWiring, params: &EvolutionParams) -> Result<SegmentedCircuit> {
    let mut seg = SegmentedCircuit::empty(cube_circuit(cube, tc.d, &[tc.aux_dim(); 2]).wires);
    let links: Vec<usize> = (0..cube.links.len()).collect();
    seg.push_segment(&compile_electric_step(tc.d, params, &links));
    for (a, b) in cube.pairs() {
        push_face_pair(&mut seg, tc, cube, a, b, params.tau())?;
    }
    Ok(seg)
}

/// N_T Trotter steps.
pub fn compile_trotter(tc: &TermCompiler, cube: &CubeWiring, params: &EvolutionParams) -> Result<SegmentedCircuit> {
    let step = compile_trotter_step(tc, cube, params)?;
    let mut seg = SegmentedCircuit::empty(step.circuit.wires.clone());
    for _ in 0..params.n_trotter {
        seg.append(&step);
    }
    Ok(seg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn electric_angles_reproduce_casimir() {
        for d in 2..6 {
            let alpha = 0.37;
            let a = electric_angles(d, alpha);
            let phase = |v: usize| {
                let up = if v > 0 { a[v - 1] / 2.0 } else { 0.0 };
                let down = if v < d - 1 { a[v] / 2.0 } else { 0.0 };
                up - down
            };
            let g = phase(0) + alpha * casimir(0);
            for v in 0..d {
                assert!((phase(v) + alpha * casimir(v) - g).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn qutrit_plaquette_and_step_totals() {
        let tc = TermCompiler::new(3).unwrap();
        let p = EvolutionParams::new(0.2, 0.3, 1).unwrap();
        let r = compile_plaquette_evolution(&tc, &p).unwrap().report();
        assert_eq!((r.gcx, r.rz, r.x, r.h, r.depth), (1792, 1312, 32, 128, 3104));
        let cube = CubeWiring::standard();
        let step = compile_trotter_step(&tc, &cube, &p).unwrap();
        assert!(step.circuit.validate().is_ok());
        let r = step.report();
        assert_eq!((r.gcx, r.rz, r.x, r.h, r.depth), (10752, 7896, 192, 768, 9314));
        assert_eq!((r.wires, r.aux_wires), (14, 2));
        assert!(step.asap_depth() <= r.depth);
    }

    #[test]
    fn non_opposite_faces_rejected() {
        let tc = TermCompiler::new(3).unwrap();
        let p = EvolutionParams::new(0.2, 0.3, 1).unwrap();
        let cube = CubeWiring::standard();
        assert_eq!(compile_parallel_faces(&tc, &cube, 0, 2, &p).unwrap_err(), Error::NotOpposite(0, 2));
        assert!(compile_parallel_faces(&tc, &cube, 2, 3, &p).is_ok());
    }

    #[test]
    fn zero_coupling_angles_vanish() {
        assert!(electric_angles(3, 0.0).iter().all(|&a| a == 0.0));
    }
}
