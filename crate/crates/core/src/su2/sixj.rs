use super::halfint::{triad, HalfInt};

const EXACT_FACTORIALS: usize = 35;

fn factorial_table() -> &'static [f64; EXACT_FACTORIALS] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[f64; EXACT_FACTORIALS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [1.0; EXACT_FACTORIALS];
        let mut acc: u128 = 1;
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            acc *= n as u128;
            *slot = acc as f64;
        }
        out
    })
}

/// n! as a double; exact integer arithmetic up to 34!.
pub fn factorial(n: u32) -> f64 {
    let table = factorial_table();
    if (n as usize) < EXACT_FACTORIALS {
        return table[n as usize];
    }
    let mut acc = table[EXACT_FACTORIALS - 1];
    for k in EXACT_FACTORIALS as u32..=n {
        acc *= k as f64;
    }
    acc
}

// Arguments are twice-values whose sums are known to be even.
fn delta(a: u32, b: u32, c: u32) -> f64 {
    let num = factorial((a + b - c) / 2) * factorial((a + c - b) / 2) * factorial((b + c - a) / 2);
    (num / factorial((a + b + c) / 2 + 1)).sqrt()
}

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} by the Racah sum. Returns 0 when a triad fails.
pub fn wigner_six_j(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> f64 {
    if !(triad(j1, j2, j3) && triad(j1, j5, j6) && triad(j4, j2, j6) && triad(j4, j5, j3)) {
        return 0.0;
    }
    let [a, b, c, d, e, f] = [j1, j2, j3, j4, j5, j6].map(HalfInt::twice);
    let alphas = [(a + b + c) / 2, (a + e + f) / 2, (d + b + f) / 2, (d + e + c) / 2];
    let betas = [(a + b + d + e) / 2, (b + c + e + f) / 2, (a + c + d + f) / 2];
    let lo = *alphas.iter().max().unwrap();
    let hi = *betas.iter().min().unwrap();

    let mut sum = 0.0;
    for t in lo..=hi {
        let mut den = 1.0;
        for &al in &alphas {
            den *= factorial(t - al);
        }
        for &be in &betas {
            den *= factorial(be - t);
        }
        let term = factorial(t + 1) / den;
        sum += if t % 2 == 0 { term } else { -term };
    }
    delta(a, b, c) * delta(a, e, f) * delta(d, b, f) * delta(d, e, c) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: u32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn factorials_exact() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(10), 3_628_800.0);
        assert_eq!(factorial(20), 2_432_902_008_176_640_000.0);
    }

    #[test]
    fn invalid_triad_is_zero() {
        assert_eq!(wigner_six_j(h(1), h(0), h(0), h(0), h(0), h(0)), 0.0);
    }

    // Independent closed form: {a b c; 0 c b} = (-1)^(a+b+c) / sqrt((2b+1)(2c+1)).
    #[test]
    fn zero_column_closed_form() {
        for a in 0..6u32 {
            for b in 0..6u32 {
                for c in 0..6u32 {
                    if !triad(h(a), h(b), h(c)) {
                        continue;
                    }
                    let got = wigner_six_j(h(a), h(b), h(c), h(0), h(c), h(b));
                    let sign = if ((a + b + c) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    let want = sign / (((b + 1) * (c + 1)) as f64).sqrt();
                    assert!((got - want).abs() < 1e-13, "{a} {b} {c}: {got} vs {want}");
                }
            }
        }
    }
}
