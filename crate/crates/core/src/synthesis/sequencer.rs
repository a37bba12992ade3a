use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ir::all_words;

/// Ordered control words driving a CCDBT, with per-wire dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlSequence {
    pub words: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
}

impl ControlSequence {
    /// Checks the words and sorts them into increasing integer order.
    pub fn new(mut words: Vec<Vec<usize>>, dims: Vec<usize>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::EmptySequence);
        }
        for w in &words {
            if w.len() != dims.len() {
                return Err(Error::LengthMismatch { expected: dims.len(), got: w.len() });
            }
            if let Some((l, _)) = w.iter().zip(&dims).enumerate().find(|(_, (v, d))| v >= d) {
                return Err(Error::InvalidSequence(format!("digit {l} of {w:?} exceeds its wire dimension")));
            }
        }
        words.sort();
        let before = words.len();
        words.dedup();
        if words.len() != before {
            return Err(Error::InvalidSequence("repeated control word".into()));
        }
        Ok(ControlSequence { words, dims })
    }

    /// Every word over `dims`.
    pub fn full(dims: &[usize]) -> Self {
        ControlSequence { words: all_words(dims), dims: dims.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }
}

/// Sequencer output listed in rotation (Gray-tree) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencerOutput {
    /// Real control word of each rotation.
    pub real: Vec<Vec<usize>>,
    /// Virtual Gray-tree labels; their single-digit changes place the GCX gates.
    pub g_words: Vec<Vec<usize>>,
    /// Virtual d-ary labels, single-child digits relabelled to 0.
    pub b_words: Vec<Vec<usize>>,
}

impl SequencerOutput {
    /// b' in increasing integer order.
    pub fn b_sorted(&self) -> Vec<Vec<usize>> {
        let mut b = self.b_words.clone();
        b.sort();
        b
    }
}

/// Builds the Gray tree of `seq` layer by layer.
///
/// Children of every second multi-child parent on a layer are reflected. A single child
/// takes the Gray label of the previous node on its layer (0 when first) and the d-ary
/// label 0.
pub fn sequencers(seq: &ControlSequence) -> Result<SequencerOutput> {
    if seq.words.is_empty() {
        return Err(Error::EmptySequence);
    }
    let k = seq.k();
    // (real prefix, g prefix, b prefix)
    let mut layer: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = vec![(vec![], vec![], vec![])];
    for level in 0..k {
        let mut next: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = Vec::new();
        let mut multi = 0usize;
        for (pre, gp, bp) in &layer {
            let mut children: Vec<usize> =
                seq.words.iter().filter(|w| w[..level] == pre[..]).map(|w| w[level]).collect();
            children.dedup();
            if children.len() > 1 {
                if multi % 2 == 1 {
                    children.reverse();
                }
                multi += 1;
                for v in children {
                    next.push((ext(pre, v), ext(gp, v), ext(bp, v)));
                }
            } else {
                let v = children[0];
                let label = next.last().map_or(0, |n| *n.1.last().expect("non-empty label"));
                next.push((ext(pre, v), ext(gp, label), ext(bp, 0)));
            }
        }
        layer = next;
    }
    let mut out = SequencerOutput { real: vec![], g_words: vec![], b_words: vec![] };
    for (r, g, b) in layer {
        out.real.push(r);
        out.g_words.push(g);
        out.b_words.push(b);
    }
    Ok(out)
}

fn ext(prefix: &[usize], v: usize) -> Vec<usize> {
    let mut w = prefix.to_vec();
    w.push(v);
    w
}

/// Relabels each digit position by the swap 0 ↔ v that sends the first word to all zeros.
pub fn normalize(words: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let Some(first) = words.first() else { return vec![] };
    words
        .iter()
        .map(|w| {
            w.iter()
                .zip(first)
                .map(|(&x, &f)| if x == f { 0 } else if x == 0 { f } else { x })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::gray_sequence;

    fn parse(ws: &[&str]) -> Vec<Vec<usize>> {
        ws.iter().map(|w| w.bytes().map(|b| (b - b'0') as usize).collect()).collect()
    }

    #[test]
    fn five_word_example() {
        let seq = ControlSequence::new(parse(&["00", "02", "11", "20", "22"]), vec![3, 3]).unwrap();
        let out = sequencers(&seq).unwrap();
        assert_eq!(out.g_words, parse(&["00", "02", "12", "22", "20"]));
        assert_eq!(out.b_sorted(), parse(&["00", "02", "10", "20", "22"]));
        assert_eq!(out.real, parse(&["00", "02", "11", "22", "20"]));
    }

    #[test]
    fn full_sequence_gives_gray_code() {
        let seq = ControlSequence::full(&[3, 3]);
        let out = sequencers(&seq).unwrap();
        assert_eq!(out.g_words, gray_sequence(3, 2));
        assert_eq!(out.b_sorted(), all_words(&[3, 3]));
    }

    #[test]
    fn normalizer_zeroes_first_word() {
        let n = normalize(&parse(&["12", "10", "02"]));
        assert_eq!(n, parse(&["00", "02", "10"]));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert_eq!(ControlSequence::new(vec![], vec![3]), Err(Error::EmptySequence));
        assert!(ControlSequence::new(parse(&["3"]), vec![3]).is_err());
        assert!(ControlSequence::new(parse(&["1", "1"]), vec![3]).is_err());
    }
}
