use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, GateKind};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default cap on the Hilbert-space size accepted by [`circuit_unitary`] (3^9).
pub const DEFAULT_UNITARY_CAP: usize = 19683;

/// Dense amplitudes over a mixed-radix basis, wire 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub dims: Vec<usize>,
    pub amps: Vec<Complex64>,
    strides: Vec<usize>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for w in (0..dims.len().saturating_sub(1)).rev() {
        s[w] = s[w + 1] * dims[w + 1];
    }
    s
}

fn check_gate(dims: &[usize], g: &Gate) -> Result<()> {
    let bad = |m: String| Err(Error::WireMismatch(m));
    if g.target >= dims.len() {
        return bad(format!("target wire {} outside {} wires", g.target, dims.len()));
    }
    if g.subspace[1] >= dims[g.target] {
        return bad(format!("subspace {:?} on dim-{} wire {}", g.subspace, dims[g.target], g.target));
    }
    for &(w, v) in &g.controls {
        if w >= dims.len() || v >= dims[w] {
            return bad(format!("control ({w}, {v}) invalid for dims {dims:?}"));
        }
    }
    Ok(())
}

impl StateVector {
    /// |0...0⟩.
    pub fn new(dims: &[usize]) -> Self {
        Self::basis(dims, &vec![0; dims.len()]).expect("zero word is valid")
    }

    pub fn basis(dims: &[usize], word: &[usize]) -> Result<Self> {
        if word.len() != dims.len() {
            return Err(Error::LengthMismatch { expected: dims.len(), got: word.len() });
        }
        if word.iter().zip(dims).any(|(v, d)| v >= d) {
            return Err(Error::MalformedWord(format!("{word:?} over dims {dims:?}")));
        }
        let n: usize = dims.iter().product();
        let st = strides(dims);
        let mut amps = vec![ZERO; n];
        amps[word.iter().zip(&st).map(|(v, s)| v * s).sum::<usize>()] = Complex64::new(1.0, 0.0);
        Ok(StateVector { dims: dims.to_vec(), amps, strides: st })
    }

    pub fn from_amplitudes(dims: &[usize], amps: Vec<Complex64>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if amps.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: amps.len() });
        }
        Ok(StateVector { dims: dims.to_vec(), amps, strides: strides(dims) })
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn digit(&self, index: usize, wire: usize) -> usize {
        (index / self.strides[wire]) % self.dims[wire]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability that `wire` holds `level`.
    pub fn level_probability(&self, wire: usize, level: usize) -> f64 {
        self.amps.iter().enumerate().filter(|(i, _)| self.digit(*i, wire) == level).map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        check_gate(&self.dims, g)?;
        let st = &self.strides;
        let dims = &self.dims;
        let digit = |idx: usize, w: usize| (idx / st[w]) % dims[w];
        let t = g.target;
        let [i, j] = g.subspace;
        let controls_ok = |idx: usize| g.controls.iter().all(|&(w, v)| digit(idx, w) == v);
        if g.kind == GateKind::Phase {
            let ph = Complex64::from_polar(1.0, g.angle());
            self.amps.par_iter_mut().enumerate().for_each(|(idx, a)| {
                if digit(idx, t) == i && controls_ok(idx) {
                    *a *= ph;
                }
            });
            return Ok(());
        }
        let m = g.two_level_matrix();
        let delta = (j - i) * st[t];
        let src = self.amps.clone();
        self.amps.par_iter_mut().enumerate().for_each(|(idx, a)| {
            let dt = digit(idx, t);
            if (dt != i && dt != j) || !controls_ok(idx) {
                return;
            }
            *a = if dt == i {
                m[0][0] * src[idx] + m[0][1] * src[idx + delta]
            } else {
                m[1][0] * src[idx - delta] + m[1][1] * src[idx]
            };
        });
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.dims() != self.dims {
            return Err(Error::WireMismatch(format!("circuit over {:?}, state over {:?}", c.dims(), self.dims)));
        }
        c.gates.iter().try_for_each(|g| self.apply_gate(g))
    }
}

/// Dense unitary of `c`; fails when the Hilbert space exceeds `cap`.
pub fn circuit_unitary(c: &Circuit, cap: usize) -> Result<DMatrix<Complex64>> {
    let dims = c.dims();
    let n: usize = dims.iter().product();
    if n > cap {
        return Err(Error::CapExceeded { dim: n, cap });
    }
    let mut u = DMatrix::from_element(n, n, ZERO);
    for col in 0..n {
        let mut amps = vec![ZERO; n];
        amps[col] = Complex64::new(1.0, 0.0);
        let mut sv = StateVector::from_amplitudes(&dims, amps)?;
        sv.apply_circuit(c)?;
        u.set_column(col, &nalgebra::DVector::from_vec(sv.amps));
    }
    Ok(u)
}

/// Sparse amplitudes keyed by basis word packed into a u64, wire 0 in the low bits and
/// each wire given just enough bits for its dimension.
#[derive(Clone, Debug, Default)]
pub struct SparseState {
    pub dims: Vec<usize>,
    pub entries: Vec<(u64, Complex64)>,
    layout: KeyLayout,
}

#[derive(Clone, Debug, Default)]
struct KeyLayout {
    shifts: Vec<u32>,
    masks: Vec<u64>,
}

impl KeyLayout {
    #[inline]
    fn get(&self, key: u64, w: usize) -> usize {
        ((key >> self.shifts[w]) & self.masks[w]) as usize
    }

    #[inline]
    fn set(&self, key: u64, w: usize, v: usize) -> u64 {
        (key & !(self.masks[w] << self.shifts[w])) | ((v as u64) << self.shifts[w])
    }
}

const PRUNE: f64 = 1e-15;

impl SparseState {
    pub fn basis(dims: &[usize], word: &[usize]) -> Result<Self> {
        let widths: Vec<u32> = dims.iter().map(|&d| usize::BITS - d.saturating_sub(1).leading_zeros()).collect();
        if widths.iter().sum::<u32>() > 64 {
            return Err(Error::InvalidParameter(format!("sparse keys need more than 64 bits for dims {dims:?}")));
        }
        if word.len() != dims.len() || word.iter().zip(dims).any(|(v, d)| v >= d) {
            return Err(Error::MalformedWord(format!("{word:?} over dims {dims:?}")));
        }
        let mut shifts = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &w in &widths {
            shifts.push(acc);
            acc += w;
        }
        let masks = widths.iter().map(|&w| (1u64 << w) - 1).collect();
        let mut s = SparseState { dims: dims.to_vec(), entries: vec![], layout: KeyLayout { shifts, masks } };
        s.entries.push((s.key(word), Complex64::new(1.0, 0.0)));
        Ok(s)
    }

    /// Key of a basis word under this state's layout.
    pub fn key(&self, word: &[usize]) -> u64 {
        word.iter().enumerate().fold(0, |k, (w, &v)| self.layout.set(k, w, v))
    }

    pub fn unpack(&self, key: u64) -> Vec<usize> {
        (0..self.dims.len()).map(|w| self.layout.get(key, w)).collect()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        check_gate(&self.dims, g)?;
        let lay = &self.layout;
        let get = |k: u64, w: usize| lay.get(k, w);
        let set = |k: u64, w: usize, v: usize| lay.set(k, w, v);
        let t = g.target;
        let [i, j] = g.subspace;
        let ctrl = |k: u64| g.controls.iter().all(|&(w, v)| get(k, w) == v);
        match g.kind {
            GateKind::Gcx | GateKind::X => {
                for (k, _) in &mut self.entries {
                    let d = get(*k, t);
                    if (d == i || d == j) && ctrl(*k) {
                        *k = set(*k, t, i + j - d);
                    }
                }
            }
            GateKind::Phase => {
                let ph = Complex64::from_polar(1.0, g.angle());
                for (k, a) in &mut self.entries {
                    if get(*k, t) == i && ctrl(*k) {
                        *a *= ph;
                    }
                }
            }
            GateKind::Gcz | GateKind::Rz => {
                let m = g.two_level_matrix();
                for (k, a) in &mut self.entries {
                    let d = get(*k, t);
                    if (d == i || d == j) && ctrl(*k) {
                        *a *= if d == i { m[0][0] } else { m[1][1] };
                    }
                }
            }
            GateKind::H | GateKind::Rx | GateKind::Ry => {
                let m = g.two_level_matrix();
                let mut pairs: HashMap<u64, [Complex64; 2]> = HashMap::new();
                let mut out = Vec::with_capacity(self.entries.len() * 2);
                for &(k, a) in &self.entries {
                    let d = get(k, t);
                    if (d == i || d == j) && ctrl(k) {
                        let e = pairs.entry(set(k, t, i)).or_insert([ZERO; 2]);
                        e[usize::from(d == j)] += a;
                    } else {
                        out.push((k, a));
                    }
                }
                let mut keys: Vec<_> = pairs.into_iter().collect();
                keys.sort_unstable_by_key(|p| p.0);
                for (k, [a0, a1]) in keys {
                    let b0 = m[0][0] * a0 + m[0][1] * a1;
                    let b1 = m[1][0] * a0 + m[1][1] * a1;
                    if b0.norm_sqr() > PRUNE * PRUNE {
                        out.push((k, b0));
                    }
                    if b1.norm_sqr() > PRUNE * PRUNE {
                        out.push((set(k, t, j), b1));
                    }
                }
                self.entries = out;
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.dims() != self.dims {
            return Err(Error::WireMismatch(format!("circuit over {:?}, state over {:?}", c.dims(), self.dims)));
        }
        c.gates.iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Sums duplicate keys (none arise from gate application) and sorts by key.
    pub fn canonical(&self) -> Vec<(u64, Complex64)> {
        let mut m: HashMap<u64, Complex64> = HashMap::new();
        for &(k, a) in &self.entries {
            *m.entry(k).or_insert(ZERO) += a;
        }
        let mut v: Vec<_> = m.into_iter().collect();
        v.sort_unstable_by_key(|p| p.0);
        v
    }
}
