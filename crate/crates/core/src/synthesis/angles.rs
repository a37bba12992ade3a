use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Sign matrix from virtual d-ary and Gray words: entry (i, j) is the product over digits
/// of -1 whenever 0 < b_l(i) <= g_l(j).
pub fn build_m(b_words: &[Vec<usize>], g_words: &[Vec<usize>]) -> Result<DMatrix<f64>> {
    if b_words.len() != g_words.len() {
        return Err(Error::LengthMismatch { expected: b_words.len(), got: g_words.len() });
    }
    let k = b_words.first().map_or(0, Vec::len);
    if let Some(w) = b_words.iter().chain(g_words).find(|w| w.len() != k) {
        return Err(Error::LengthMismatch { expected: k, got: w.len() });
    }
    let n = b_words.len();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let flips = b_words[i].iter().zip(&g_words[j]).filter(|(&b, &g)| 0 < b && b <= g).count();
        if flips % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }))
}

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn to_field(x: f64) -> u64 {
    let v = x.round() as i64;
    v.rem_euclid(P as i64) as u64
}

/// Rank of an integer-valued matrix over GF(2^61 - 1), skipping the listed column.
///
/// Integer matrices with small entries have the same rank over this field as over the
/// rationals except for determinants divisible by the prime, which ±1 matrices of the
/// sizes used here never reach.
pub fn rank_mod_p(m: &DMatrix<f64>, skip_col: Option<usize>) -> usize {
    let cols: Vec<usize> = (0..m.ncols()).filter(|&c| Some(c) != skip_col).collect();
    let mut a: Vec<Vec<u64>> = (0..m.nrows()).map(|r| cols.iter().map(|&c| to_field(m[(r, c)])).collect()).collect();
    let (rows, ncols) = (a.len(), cols.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], P - 2);
        let pivot_row: Vec<u64> = a[rank][c..].iter().map(|&v| mul_mod(v, inv)).collect();
        for r in rank + 1..rows {
            let f = a[r][c];
            if f == 0 {
                continue;
            }
            for (x, &p) in a[r][c..].iter_mut().zip(&pivot_row) {
                *x = (*x + P - mul_mod(f, p)) % P;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// One sign-flip correction: column `column` is conjugated by GCX gates on `wire` at `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Correction {
    pub column: usize,
    pub wire: usize,
    pub value: usize,
}

/// Flips the sign of `column` in every row whose word has `value` on `wire`.
pub fn apply_correction(m: &mut DMatrix<f64>, words: &[Vec<usize>], c: Correction) {
    for (r, w) in words.iter().enumerate() {
        if w[c.wire] == c.value {
            m[(r, c.column)] = -m[(r, c.column)];
        }
    }
}

/// Greedy search for corrections restoring full rank.
///
/// Candidate columns are those whose removal keeps the rank, scanned in ascending order;
/// for each, wires and then values are tried in ascending order and the first option that
/// raises the rank is accepted. `words` are the row labels (real control words).
pub fn correct_singular_m(m: &DMatrix<f64>, words: &[Vec<usize>], dims: &[usize]) -> Result<Vec<Correction>> {
    let n = m.ncols();
    let mut m = m.clone();
    let mut rank = rank_mod_p(&m, None);
    let mut out = Vec::new();
    while rank < n {
        let mut found = None;
        'search: for column in 0..n {
            if rank_mod_p(&m, Some(column)) < rank {
                continue;
            }
            for (wire, &dim) in dims.iter().enumerate() {
                for value in 0..dim {
                    let c = Correction { column, wire, value };
                    let mut trial = m.clone();
                    apply_correction(&mut trial, words, c);
                    let r = rank_mod_p(&trial, None);
                    if r > rank {
                        found = Some((c, trial, r));
                        break 'search;
                    }
                }
            }
        }
        let Some((c, trial, r)) = found else {
            return Err(Error::CorrectionExhausted { rank, size: n });
        };
        out.push(c);
        m = trial;
        rank = r;
    }
    Ok(out)
}

/// The θ ↔ β relation θ = M β for one control sequence.
#[derive(Clone, Debug)]
pub struct AngleTransform {
    pub m: DMatrix<f64>,
    pub b_words: Vec<Vec<usize>>,
    pub g_words: Vec<Vec<usize>>,
    pub corrections: Vec<Correction>,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl AngleTransform {
    /// Wraps an already corrected, full-rank matrix.
    pub fn new(
        m: DMatrix<f64>,
        b_words: Vec<Vec<usize>>,
        g_words: Vec<Vec<usize>>,
        corrections: Vec<Correction>,
    ) -> Result<Self> {
        let rank = rank_mod_p(&m, None);
        if rank < m.ncols() {
            return Err(Error::CorrectionExhausted { rank, size: m.ncols() });
        }
        let lu = m.clone().lu();
        Ok(AngleTransform { m, b_words, g_words, corrections, lu })
    }

    pub fn size(&self) -> usize {
        self.m.ncols()
    }

    pub fn solve(&self, thetas: &[f64]) -> Result<Vec<f64>> {
        if thetas.len() != self.size() {
            return Err(Error::LengthMismatch { expected: self.size(), got: thetas.len() });
        }
        let rhs = DVector::from_column_slice(thetas);
        let beta = self.lu.solve(&rhs).ok_or(Error::CorrectionExhausted { rank: 0, size: self.size() })?;
        Ok(beta.iter().copied().collect())
    }
}
