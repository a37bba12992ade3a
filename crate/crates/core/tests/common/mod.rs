#![allow(dead_code)]

use num_complex::Complex64;
use qgvc::ir::Circuit;
use qgvc::sim::{PhysicalBasis, SparseState, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TIMES: [f64; 10] = [0.02, 0.12, 0.22, 0.32, 0.42, 0.52, 0.62, 0.72, 0.82, 0.92];

pub const EXACT: [f64; 10] = [
    0.0059995205375,
    0.2013777323202,
    0.4735643212012,
    0.5530191097325,
    0.4390914030334,
    0.2780532551655,
    0.2269820889009,
    0.3062084922296,
    0.4407325362572,
    0.4749953963899,
];

pub const TROTTER_1: [f64; 10] =
    [0.00607722, 0.23791493, 0.57592832, 0.74714905, 0.58758336, 0.34950834, 0.00206689, 0.16572029, 0.44481068, 0.67250186];

pub const TROTTER_2: [f64; 10] =
    [0.00603121, 0.21797391, 0.48899010, 0.56093830, 0.52352385, 0.46890193, 0.43751637, 0.42842750, 0.40681914, 0.41583451];

pub fn random_state(dims: &[usize], seed: u64) -> StateVector {
    let n: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(dims, amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

/// Random superposition over the physical cube basis with every aux wire at 0.
pub fn physical_superposition(basis: &PhysicalBasis, dims: &[usize], seed: u64) -> (SparseState, Vec<Complex64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi: Vec<Complex64> =
        (0..basis.len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|a| *a /= norm);
    let mut s = SparseState::basis(dims, &vec![0; dims.len()]).unwrap();
    s.entries.clear();
    for (w, a) in basis.words.iter().zip(&psi) {
        let mut word = w.clone();
        word.resize(dims.len(), 0);
        let k = s.key(&word);
        s.entries.push((k, *a));
    }
    (s, psi)
}

/// Physical-basis amplitudes of `s`, plus the probability outside the physical, aux-0 subspace.
pub fn project(s: &SparseState, basis: &PhysicalBasis, links: usize) -> (Vec<Complex64>, f64) {
    let mut out = vec![Complex64::new(0.0, 0.0); basis.len()];
    let mut leak = 0.0;
    for (k, a) in s.canonical() {
        let w = s.unpack(k);
        match basis.index_of(&w[..links]) {
            Some(i) if w[links..].iter().all(|&x| x == 0) => out[i] = a,
            _ => leak += a.norm_sqr(),
        }
    }
    (out, leak)
}

pub fn phase_aligned_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let overlap: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    a.iter().zip(b).map(|(x, y)| (x * phase - y).norm()).fold(0.0, f64::max)
}

/// Largest error between the circuit and "RZ_sub(θ_w) on the target when the controls read w"
/// over every input whose controls lie in `words`.
pub fn rotation_oracle_error(c: &Circuit, words: &[Vec<usize>], thetas: &[f64], sub: [usize; 2]) -> f64 {
    let dims = c.dims();
    let k = dims.len() - 1;
    let mut worst = 0.0f64;
    for (w, &theta) in words.iter().zip(thetas) {
        for t in 0..dims[k] {
            let mut input = w.clone();
            input.push(t);
            let mut got = StateVector::basis(&dims, &input).unwrap();
            got.apply_circuit(c).unwrap();
            let mut want = StateVector::basis(&dims, &input).unwrap();
            let phase = if t == sub[0] {
                Complex64::from_polar(1.0, -theta / 2.0)
            } else if t == sub[1] {
                Complex64::from_polar(1.0, theta / 2.0)
            } else {
                Complex64::new(1.0, 0.0)
            };
            want.amps.iter_mut().for_each(|a| *a *= phase);
            let err = got.amps.iter().zip(&want.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            worst = worst.max(err);
        }
    }
    worst
}
