use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::state::SparseState;
use crate::error::{Error, Result};
use crate::evolution::{casimir, compile_trotter_step, CubeWiring, EvolutionParams, TermCompiler, TermWires};
use crate::su2::{GgggTerm, PlaquetteOperator};

/// Gauge-invariant link configurations of one cube: every vertex satisfies the triangle rule.
#[derive(Clone, Debug)]
pub struct PhysicalBasis {
    pub d: usize,
    pub words: Vec<Vec<usize>>,
    index: HashMap<u64, usize>,
}

fn pack(word: &[usize]) -> u64 {
    word.iter().rev().fold(0, |k, &v| k << 4 | v as u64)
}

fn triad(a: usize, b: usize, c: usize) -> bool {
    (a + b + c) % 2 == 0 && a.abs_diff(b) <= c && c <= a + b
}

impl PhysicalBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.index.get(&pack(word)).copied()
    }

    pub fn vacuum(&self) -> usize {
        self.index_of(&vec![0; self.words.first().map_or(0, Vec::len)]).expect("vacuum is physical")
    }
}

/// Enumerates physical states by assigning links in order and checking each vertex once its
/// three links are set.
pub fn enumerate_physical_basis(d: usize, cube: &CubeWiring) -> Result<PhysicalBasis> {
    if !(2..=16).contains(&d) {
        return Err(Error::DimensionOutOfRange { d, min: 2, max: 16 });
    }
    let n = cube.links.len();
    let vlinks: Vec<[usize; 3]> = (0..8).map(|v| cube.vertex_links(v)).collect();
    // vertices completed once link l is assigned
    let done: Vec<Vec<usize>> = (0..n)
        .map(|l| (0..8).filter(|&v| vlinks[v].iter().max() == Some(&l)).collect())
        .collect();
    let mut words = Vec::new();
    let mut w = vec![0usize; n];
    fn rec(
        l: usize,
        d: usize,
        w: &mut Vec<usize>,
        done: &[Vec<usize>],
        vlinks: &[[usize; 3]],
        out: &mut Vec<Vec<usize>>,
    ) {
        if l == w.len() {
            out.push(w.clone());
            return;
        }
        for v in 0..d {
            w[l] = v;
            if done[l].iter().all(|&x| triad(w[vlinks[x][0]], w[vlinks[x][1]], w[vlinks[x][2]])) {
                rec(l + 1, d, w, done, vlinks, out);
            }
        }
    }
    rec(0, d, &mut w, &done, &vlinks, &mut words);
    let index = words.iter().enumerate().map(|(i, w)| (pack(w), i)).collect();
    Ok(PhysicalBasis { d, words, index })
}

/// Electric energy g²/2 Σ j(j+1) over the given links.
pub fn electric_energy(word: &[usize], links: &[usize], g2: f64) -> f64 {
    g2 / 2.0 * links.iter().map(|&l| casimir(word[l])).sum::<f64>()
}

fn local_word(word: &[usize], plaquette: &[usize; 4], controls: &[usize; 4]) -> [usize; 8] {
    let mut out = [0; 8];
    for m in 0..4 {
        out[m] = word[plaquette[m]];
        out[m + 4] = word[controls[m]];
    }
    out
}

/// Dense Hamiltonian g²/2 Σ Ê² - (1/g²) Σ_faces □ on the physical basis.
pub fn hamiltonian(op: &PlaquetteOperator, cube: &CubeWiring, basis: &PhysicalBasis, g2: f64) -> Result<DMatrix<f64>> {
    let n = basis.len();
    let links: Vec<usize> = (0..cube.links.len()).collect();
    let mut h = DMatrix::zeros(n, n);
    for (i, w) in basis.words.iter().enumerate() {
        h[(i, i)] += electric_energy(w, &links, g2);
        for f in &cube.faces {
            for (next, phi) in op.matrix_action(&local_word(w, &f.plaquette, &f.controls))? {
                let mut nw = w.clone();
                for m in 0..4 {
                    nw[f.plaquette[m]] = next[m];
                }
                let j = basis
                    .index_of(&nw)
                    .ok_or_else(|| Error::MalformedWord(format!("{nw:?} left the physical space")))?;
                h[(j, i)] -= phi / g2;
            }
        }
    }
    Ok(h)
}

/// Electric energy of the observable face's plaquette links in a state over the physical basis.
fn observable(basis: &PhysicalBasis, cube: &CubeWiring, g2: f64, probs: impl Iterator<Item = f64>) -> f64 {
    let links = cube.observable_face().plaquette;
    probs.zip(&basis.words).map(|(p, w)| p * electric_energy(w, &links, g2)).sum()
}

/// Exact time evolution from the vacuum by diagonalisation.
#[derive(Clone, Debug)]
pub struct ExactEvolution {
    pub basis: PhysicalBasis,
    pub g2: f64,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
    overlap: DVector<f64>,
    cube: CubeWiring,
}

impl ExactEvolution {
    pub fn new(op: &PlaquetteOperator, cube: &CubeWiring, g2: f64) -> Result<Self> {
        let basis = enumerate_physical_basis(op.d, cube)?;
        let h = hamiltonian(op, cube, &basis, g2)?;
        let eig = SymmetricEigen::new(h);
        let overlap = eig.eigenvectors.row(basis.vacuum()).transpose();
        Ok(ExactEvolution {
            basis,
            g2,
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
            overlap,
            cube: cube.clone(),
        })
    }

    pub fn state(&self, t: f64) -> Vec<Complex64> {
        let c: Vec<Complex64> = self
            .eigenvalues
            .iter()
            .zip(self.overlap.iter())
            .map(|(&e, &o)| Complex64::from_polar(o, -e * t))
            .collect();
        (0..self.basis.len())
            .map(|i| self.eigenvectors.row(i).iter().zip(&c).map(|(&u, &ci)| ci * u).sum())
            .collect()
    }

    /// Electric energy on the observable face at time t.
    pub fn observable(&self, t: f64) -> f64 {
        observable(&self.basis, &self.cube, self.g2, self.state(t).iter().map(|a| a.norm_sqr()))
    }
}

/// Exact observable at each time.
pub fn exact_evolution(op: &PlaquetteOperator, cube: &CubeWiring, g2: f64, times: &[f64]) -> Result<Vec<f64>> {
    let ex = ExactEvolution::new(op, cube, g2)?;
    Ok(times.iter().map(|&t| ex.observable(t)).collect())
}

/// Basis transitions (state, partner, φ) of one term placed on a face.
pub fn term_moves(
    term: &GgggTerm,
    plaquette: &[usize; 4],
    controls: &[usize; 4],
    basis: &PhysicalBasis,
) -> Result<Vec<(usize, usize, f64)>> {
    let mut list = Vec::new();
    for (i, w) in basis.words.iter().enumerate() {
        let lw = local_word(w, plaquette, controls);
        let inside = (0..4).all(|m| lw[m] == term.pqrs[m] || lw[m] == term.pqrs[m] + 1);
        let Some(phi) = inside.then(|| term.phi([lw[4], lw[5], lw[6], lw[7]])).flatten() else {
            continue;
        };
        let mut nw = w.clone();
        for m in 0..4 {
            nw[plaquette[m]] = 2 * term.pqrs[m] + 1 - lw[m];
        }
        let j = basis
            .index_of(&nw)
            .ok_or_else(|| Error::MalformedWord(format!("{nw:?} left the physical space")))?;
        list.push((i, j, phi));
    }
    Ok(list)
}

/// Applies exp(-iτ T) for the term whose transitions are `moves`.
pub fn apply_moves(psi: &mut [Complex64], moves: &[(usize, usize, f64)], tau: f64) {
    let old = psi.to_vec();
    for &(i, j, phi) in moves {
        let (s, c) = (tau * phi).sin_cos();
        psi[i] = old[i] * c - Complex64::i() * s * old[j];
    }
}

/// Product-formula evolution on the physical basis with each term applied exactly.
///
/// Per step: the electric phase, then each face in step order with its terms in pqrs order.
pub fn ideal_trotter(op: &PlaquetteOperator, cube: &CubeWiring, basis: &PhysicalBasis, params: &EvolutionParams) -> Result<Vec<Complex64>> {
    let links: Vec<usize> = (0..cube.links.len()).collect();
    let dt = params.dt();
    let tau = params.tau();
    let phases: Vec<Complex64> = basis
        .words
        .iter()
        .map(|w| Complex64::from_polar(1.0, -electric_energy(w, &links, params.g2) * dt))
        .collect();
    let mut moves = Vec::new();
    for f in &cube.faces {
        for term in &op.terms {
            moves.push(term_moves(term, &f.plaquette, &f.controls, basis)?);
        }
    }
    let mut psi = vec![Complex64::new(0.0, 0.0); basis.len()];
    psi[basis.vacuum()] = Complex64::new(1.0, 0.0);
    for _ in 0..params.n_trotter {
        psi.iter_mut().zip(&phases).for_each(|(a, p)| *a *= p);
        for list in &moves {
            apply_moves(&mut psi, list, tau);
        }
    }
    Ok(psi)
}

/// Observable of [`ideal_trotter`].
pub fn ideal_trotter_observable(op: &PlaquetteOperator, cube: &CubeWiring, params: &EvolutionParams) -> Result<f64> {
    let basis = enumerate_physical_basis(op.d, cube)?;
    let psi = ideal_trotter(op, cube, &basis, params)?;
    Ok(observable(&basis, cube, params.g2, psi.iter().map(|a| a.norm_sqr())))
}

/// Result of running the compiled circuit.
#[derive(Clone, Debug)]
pub struct TrotterRun {
    pub observable: f64,
    /// Probability left outside the physical subspace or with an aux wire not reset.
    pub leakage: f64,
    pub norm: f64,
}

/// Runs the compiled Trotter step N_T times from the vacuum with both aux wires at 0.
pub fn trotter_simulate(tc: &TermCompiler, cube: &CubeWiring, params: &EvolutionParams) -> Result<TrotterRun> {
    let step = compile_trotter_step(tc, cube, params)?;
    let dims = step.circuit.dims();
    let mut s = SparseState::basis(&dims, &vec![0; dims.len()])?;
    for _ in 0..params.n_trotter {
        s.apply_circuit(&step.circuit)?;
    }
    let links = cube.observable_face().plaquette;
    let basis = enumerate_physical_basis(tc.d, cube)?;
    let n = cube.links.len();
    let mut obs = 0.0;
    let mut leakage = 0.0;
    for (k, a) in s.canonical() {
        let w = s.unpack(k);
        let p = a.norm_sqr();
        if w[n..].iter().any(|&x| x != 0) || basis.index_of(&w[..n]).is_none() {
            leakage += p;
        } else {
            obs += p * electric_energy(&w, &links, params.g2);
        }
    }
    Ok(TrotterRun { observable: obs, leakage, norm: s.norm() })
}

/// Observable after compiled Trotter evolution at each time, run in parallel.
pub fn trotter_series(tc: &TermCompiler, cube: &CubeWiring, g2: f64, n_trotter: usize, times: &[f64]) -> Result<Vec<f64>> {
    times
        .par_iter()
        .map(|&t| trotter_simulate(tc, cube, &EvolutionParams::new(g2, t, n_trotter)?).map(|r| r.observable))
        .collect()
}

/// Largest deviation between a compiled term and exp(-iτ ΠΠΠΠXXXX) restricted to
/// basis inputs with aux 0 and even control parity, after removing one global phase.
pub fn term_oracle(tc: &TermCompiler, term: &GgggTerm, tau: f64) -> Result<f64> {
    let c = tc.term_circuit(term, tau)?;
    let dims = c.dims();
    let d = tc.d;
    let w = TermWires::LOCAL;
    let inputs: Vec<Vec<usize>> = (0..d.pow(8))
        .map(|mut n| {
            let mut word = vec![0; 9];
            for x in word.iter_mut().take(8) {
                *x = n % d;
                n /= d;
            }
            word
        })
        .filter(|word| w.controls.iter().map(|&c| word[c]).sum::<usize>() % 2 == 0)
        .collect();
    let results: Vec<Result<Vec<(u64, Complex64, Complex64)>>> = inputs
        .par_iter()
        .map(|word| {
            let mut s = SparseState::basis(&dims, word)?;
            s.apply_circuit(&c)?;
            let pl: Vec<usize> = w.plaquette.iter().map(|&x| word[x]).collect();
            let ct = [word[4], word[5], word[6], word[7]];
            let inside = (0..4).all(|m| pl[m] == term.pqrs[m] || pl[m] == term.pqrs[m] + 1);
            let mut expect: HashMap<u64, Complex64> = HashMap::new();
            match inside.then(|| term.phi(ct)).flatten() {
                Some(phi) => {
                    let (sn, cs) = (tau * phi).sin_cos();
                    let mut partner = word.clone();
                    for m in 0..4 {
                        partner[w.plaquette[m]] = 2 * term.pqrs[m] + 1 - pl[m];
                    }
                    expect.insert(s.key(word), Complex64::new(cs, 0.0));
                    *expect.entry(s.key(&partner)).or_default() += Complex64::new(0.0, -sn);
                }
                None => {
                    expect.insert(s.key(word), Complex64::new(1.0, 0.0));
                }
            }
            let got: HashMap<u64, Complex64> = s.canonical().into_iter().collect();
            let mut keys: Vec<u64> = got.keys().chain(expect.keys()).copied().collect();
            keys.sort_unstable();
            keys.dedup();
            Ok(keys
                .into_iter()
                .map(|k| (k, got.get(&k).copied().unwrap_or_default(), expect.get(&k).copied().unwrap_or_default()))
                .collect())
        })
        .collect();
    let mut pairs = Vec::new();
    for r in results {
        pairs.extend(r?);
    }
    // global phase from the largest expected amplitude
    let (_, g, e) = pairs
        .iter()
        .max_by(|a, b| a.2.norm().total_cmp(&b.2.norm()))
        .copied()
        .unwrap_or_default();
    let phase = if e.norm() > 0.0 && g.norm() > 0.0 { (g / e) / (g / e).norm() } else { Complex64::new(1.0, 0.0) };
    Ok(pairs.iter().map(|(_, g, e)| (g - phase * e).norm()).fold(0.0, f64::max))
}
