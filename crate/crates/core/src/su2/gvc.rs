use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::halfint::{triad, HalfInt};
use super::sixj::wigner_six_j;
use crate::error::{Error, Result};

/// Largest dimension accepted by [`build_plaquette_operator`].
pub const DEFAULT_MAX_D: usize = 9;

/// Adjacent two-level subspace (low, low+1) of a d-level link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XSubspace {
    pub low: usize,
}

impl XSubspace {
    pub fn new(low: usize, d: usize) -> Result<Self> {
        if d < 2 || low > d - 2 {
            return Err(Error::SubspaceOutOfRange { index: low, d });
        }
        Ok(XSubspace { low })
    }

    pub fn high(self) -> usize {
        self.low + 1
    }

    pub fn levels(self) -> (usize, usize) {
        (self.low, self.low + 1)
    }
}

fn check_index(x: usize, d: usize) -> Result<()> {
    if d < 2 || x > d - 2 {
        Err(Error::SubspaceOutOfRange { index: x, d })
    } else {
        Ok(())
    }
}

/// Levels a control link may hold while a vertex transition with subspaces x and y stays gauge invariant.
pub fn control_set(x: usize, y: usize, d: usize) -> Result<Vec<usize>> {
    check_index(x, d)?;
    check_index(y, d)?;
    Ok((x.abs_diff(y)..=(x + y + 1)).filter(|&v| v < d).collect())
}

/// All control words ijkl admitted for the term pqrs, ascending.
pub fn control_sector(pqrs: [usize; 4], d: usize) -> Result<Vec<[usize; 4]>> {
    let [p, q, r, s] = pqrs;
    let fi = control_set(s, p, d)?;
    let fj = control_set(p, q, d)?;
    let fk = control_set(q, r, d)?;
    let fl = control_set(r, s, d)?;
    let mut out = Vec::new();
    for &i in &fi {
        for &j in &fj {
            for &k in &fk {
                for &l in &fl {
                    if (i + j + k + l) % 2 == 0 {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Element of the dihedral group of the square acting on plaquette positions.
///
/// Rotation by `rot` shifts both pqrs and ijkl cyclically; the reflection reverses pqrs
/// and sends ijkl to (i, l, k, j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct D4 {
    pub rot: usize,
    pub refl: bool,
}

impl D4 {
    pub fn all() -> [D4; 8] {
        let mut out = [D4 { rot: 0, refl: false }; 8];
        for (n, slot) in out.iter_mut().enumerate() {
            *slot = D4 { rot: n % 4, refl: n >= 4 };
        }
        out
    }

    pub fn apply_pqrs(self, t: [usize; 4]) -> [usize; 4] {
        let t = if self.refl { [t[3], t[2], t[1], t[0]] } else { t };
        std::array::from_fn(|m| t[(m + self.rot) % 4])
    }

    pub fn apply_word(self, w: [usize; 4]) -> [usize; 4] {
        let w = if self.refl { [w[0], w[3], w[2], w[1]] } else { w };
        std::array::from_fn(|m| w[(m + self.rot) % 4])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct D4Class {
    pub representative: [usize; 4],
    pub order: usize,
}

fn all_pqrs(d: usize) -> Vec<[usize; 4]> {
    let c = d - 1;
    (0..c.pow(4))
        .map(|n| [n / (c * c * c), (n / (c * c)) % c, (n / c) % c, n % c])
        .collect()
}

/// D4 orbits of the (d-1)^4 subspace assignments, keyed by their lexicographic minimum.
pub fn d4_classes(d: usize) -> Vec<D4Class> {
    if d < 2 {
        return Vec::new();
    }
    let mut out: Vec<D4Class> = Vec::new();
    for t in all_pqrs(d) {
        let mut images: Vec<[usize; 4]> = D4::all().iter().map(|g| g.apply_pqrs(t)).collect();
        images.sort();
        images.dedup();
        if images[0] == t {
            out.push(D4Class { representative: t, order: images.len() });
        }
    }
    out
}

/// The doubly triangular class count c(c+1)(c^2+c+2)/8.
pub fn class_count_formula(d: usize) -> usize {
    let c = d.saturating_sub(1);
    c * (c + 1) * (c * c + c + 2) / 8
}

/// Flux on the eight links around one plaquette, as 2j values.
///
/// Plaquette links are ordered (q_l, j_a^b, q_r, j_a^t), control links (j_l^t, j_l^b, j_r^b, j_r^t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FluxConfig {
    pub plaquette: [HalfInt; 4],
    pub controls: [HalfInt; 4],
}

impl FluxConfig {
    /// The three links meeting at each plaquette corner.
    pub fn vertex_triads(&self) -> [[HalfInt; 3]; 4] {
        let [ql, jab, qr, jat] = self.plaquette;
        let [jlt, jlb, jrb, jrt] = self.controls;
        [[jat, ql, jlt], [ql, jab, jlb], [jab, qr, jrb], [qr, jat, jrt]]
    }

    pub fn is_physical(&self) -> bool {
        self.vertex_triads().iter().all(|t| triad(t[0], t[1], t[2]))
    }
}

/// Initial and final flux configurations linked by the term pqrs under controls ijkl.
///
/// The first plaquette link is seeded with p flux lines and the remaining ones follow
/// from the integer-sum rule at each corner, walking j_a^t, q_r, j_a^b in turn.
pub fn flux_pair(pqrs: [usize; 4], ijkl: [usize; 4]) -> (FluxConfig, FluxConfig) {
    let [p, q, r, s] = pqrs;
    let [i, _j, k, l] = ijkl;
    let ql = p;
    let jat = if (ql + s + i) % 2 == 0 { s } else { s + 1 };
    let qr = if (jat + r + l) % 2 == 0 { r } else { r + 1 };
    let jab = if (qr + q + k) % 2 == 0 { q } else { q + 1 };
    let init = [ql, jab, qr, jat];
    let subs = [p, q, r, s];
    let fin: [usize; 4] = std::array::from_fn(|m| 2 * subs[m] + 1 - init[m]);
    let controls = ijkl.map(|v| HalfInt::from_twice(v as u32));
    (
        FluxConfig { plaquette: init.map(|v| HalfInt::from_twice(v as u32)), controls },
        FluxConfig { plaquette: fin.map(|v| HalfInt::from_twice(v as u32)), controls },
    )
}

/// Transition amplitude phi for the pair (pqrs, ijkl).
pub fn transition_amplitude(pqrs: [usize; 4], ijkl: [usize; 4], d: usize) -> Result<f64> {
    let sector = control_sector(pqrs, d)?;
    if sector.binary_search(&ijkl).is_err() {
        return Err(Error::NotInSector { pqrs, word: ijkl });
    }
    Ok(amplitude_unchecked(pqrs, ijkl))
}

fn amplitude_unchecked(pqrs: [usize; 4], ijkl: [usize; 4]) -> f64 {
    let (init, fin) = flux_pair(pqrs, ijkl);
    let [iql, ijab, iqr, ijat] = init.plaquette;
    let [fql, fjab, fqr, fjat] = fin.plaquette;
    let [jlt, jlb, jrb, jrt] = init.controls;
    let half = HalfInt::HALF;

    let dims: f64 = [iql, ijab, iqr, ijat, fql, fjab, fqr, fjat]
        .iter()
        .map(|x| x.dimension() as f64)
        .product();
    let e2 = ijkl.iter().sum::<usize>() as i64
        + 2 * (fjat.twice() as i64 + fjab.twice() as i64 - iql.twice() as i64 - iqr.twice() as i64);
    let sign = if (e2 / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };

    let six = wigner_six_j(jlt, ijat, iql, half, fql, fjat)
        * wigner_six_j(jlb, ijab, iql, half, fql, fjab)
        * wigner_six_j(jrt, ijat, iqr, half, fqr, fjat)
        * wigner_six_j(jrb, ijab, iqr, half, fqr, fjab);
    dims.sqrt() * sign * six
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlEntry {
    pub word: [usize; 4],
    pub phi: f64,
}

/// One XXXX term together with its projector words and amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GgggTerm {
    pub pqrs: [usize; 4],
    pub controls: Vec<ControlEntry>,
}

impl GgggTerm {
    pub fn subspaces(&self) -> [XSubspace; 4] {
        self.pqrs.map(|low| XSubspace { low })
    }

    pub fn phi(&self, word: [usize; 4]) -> Option<f64> {
        self.controls
            .binary_search_by(|e| e.word.cmp(&word))
            .ok()
            .map(|n| self.controls[n].phi)
    }

    /// pqrs read as a base-(d-1) integer.
    pub fn index(&self, d: usize) -> usize {
        self.pqrs.iter().fold(0, |acc, &x| acc * (d - 1) + x)
    }
}

/// The gauge-variant-completed plaquette operator at qudit dimension d.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaquetteOperator {
    pub d: usize,
    pub terms: Vec<GgggTerm>,
    pub d4_classes: Vec<D4Class>,
}

#[derive(Serialize, Deserialize)]
struct OperatorFile {
    d: usize,
    terms: Vec<GgggTerm>,
}

pub fn build_plaquette_operator(d: usize) -> Result<PlaquetteOperator> {
    build_plaquette_operator_with_max(d, DEFAULT_MAX_D)
}

/// Builds the operator from D4 representatives and expands each orbit by permuting indices.
pub fn build_plaquette_operator_with_max(d: usize, max_d: usize) -> Result<PlaquetteOperator> {
    if d < 2 || d > max_d {
        return Err(Error::DimensionOutOfRange { d, min: 2, max: max_d });
    }
    let classes = d4_classes(d);
    let expanded: Vec<Vec<GgggTerm>> = classes
        .par_iter()
        .map(|class| {
            let rep = class.representative;
            let entries: Vec<ControlEntry> = control_sector(rep, d)
                .expect("representative indices are in range")
                .into_iter()
                .map(|word| ControlEntry { word, phi: amplitude_unchecked(rep, word) })
                .collect();
            let mut images: Vec<GgggTerm> = Vec::with_capacity(class.order);
            for g in D4::all() {
                let pqrs = g.apply_pqrs(rep);
                if images.iter().any(|t| t.pqrs == pqrs) {
                    continue;
                }
                let mut controls: Vec<ControlEntry> = entries
                    .iter()
                    .map(|e| ControlEntry { word: g.apply_word(e.word), phi: e.phi })
                    .collect();
                controls.sort_by(|a, b| a.word.cmp(&b.word));
                images.push(GgggTerm { pqrs, controls });
            }
            images
        })
        .collect();
    let mut terms: Vec<GgggTerm> = expanded.into_iter().flatten().collect();
    terms.sort_by(|a, b| a.pqrs.cmp(&b.pqrs));
    Ok(PlaquetteOperator { d, terms, d4_classes: classes })
}

impl PlaquetteOperator {
    pub fn term(&self, pqrs: [usize; 4]) -> Option<&GgggTerm> {
        self.terms
            .binary_search_by(|t| t.pqrs.cmp(&pqrs))
            .ok()
            .map(|n| &self.terms[n])
    }

    /// Total number of (term, control word) pairs.
    pub fn entry_count(&self) -> usize {
        self.terms.iter().map(|t| t.controls.len()).sum()
    }

    /// Non-zero entries of the operator column for an 8-link word
    /// `[q_l, j_a^b, q_r, j_a^t, j_l^t, j_l^b, j_r^b, j_r^t]`.
    pub fn matrix_action(&self, word: &[usize]) -> Result<Vec<([usize; 8], f64)>> {
        if word.len() != 8 {
            return Err(Error::MalformedWord(format!("expected 8 digits, got {}", word.len())));
        }
        if let Some(&bad) = word.iter().find(|&&v| v >= self.d) {
            return Err(Error::MalformedWord(format!("digit {bad} not below d={}", self.d)));
        }
        let pl = [word[0], word[1], word[2], word[3]];
        let ct = [word[4], word[5], word[6], word[7]];
        let top = self.d - 2;
        let choices: Vec<Vec<usize>> = pl
            .iter()
            .map(|&v| {
                let mut c = Vec::with_capacity(2);
                if v >= 1 && v - 1 <= top {
                    c.push(v - 1);
                }
                if v <= top {
                    c.push(v);
                }
                c
            })
            .collect();
        let mut out = Vec::new();
        for &p in &choices[0] {
            for &q in &choices[1] {
                for &r in &choices[2] {
                    for &s in &choices[3] {
                        let pqrs = [p, q, r, s];
                        let Some(phi) = self.term(pqrs).and_then(|t| t.phi(ct)) else {
                            continue;
                        };
                        let mut next = [0usize; 8];
                        for m in 0..4 {
                            next[m] = 2 * pqrs[m] + 1 - pl[m];
                            next[m + 4] = ct[m];
                        }
                        out.push((next, phi));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let file = OperatorFile { d: self.d, terms: self.terms.clone() };
        serde_json::to_string(&file).expect("operator serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: OperatorFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(PlaquetteOperator { d: file.d, terms: file.terms, d4_classes: d4_classes(file.d) })
    }
}
