/// The d-ary reflected Gray code over k digits, most significant digit first.
pub fn gray_sequence(d: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(d >= 2 && k >= 1, "gray_sequence needs d >= 2 and k >= 1");
    let mut words: Vec<Vec<usize>> = (0..d).map(|v| vec![v]).collect();
    for _ in 1..k {
        let mut next = Vec::with_capacity(words.len() * d);
        for lead in 0..d {
            let forward = lead % 2 == 0;
            let mut add = |w: &Vec<usize>| {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(lead);
                nw.extend_from_slice(w);
                next.push(nw);
            };
            if forward {
                words.iter().for_each(&mut add);
            } else {
                words.iter().rev().for_each(&mut add);
            }
        }
        words = next;
    }
    words
}

/// Mixed-radix value of `word`, first digit most significant.
pub fn word_to_index(word: &[usize], dims: &[usize]) -> usize {
    word.iter().zip(dims).fold(0, |acc, (&v, &d)| acc * d + v)
}

pub fn index_to_word(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Every word of Z_{dims[0]} x ... in counting order.
pub fn all_words(dims: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = dims.iter().product();
    (0..n).map(|i| index_to_word(i, dims)).collect()
}
