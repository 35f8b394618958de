//! Bounded searches for words whose alternating polynomial is divisible by a
//! cyclotomic polynomial.

use rayon::prelude::*;

use crate::algebra::{cyclotomic, poly_divides, IntPoly};
use crate::sset::{phi_of_word, Word};

/// Words of length `len` with exponents in `[-max_abs_exp, max_abs_exp]`,
/// decoded from their rank in lexicographic order.
fn word_at(rank: u64, len: usize, max_abs_exp: i64) -> Vec<i64> {
    let base = (2 * max_abs_exp + 1) as u64;
    let mut exps = vec![0i64; len];
    let mut r = rank;
    for e in exps.iter_mut().rev() {
        *e = (r % base) as i64 - max_abs_exp;
        r /= base;
    }
    exps
}

fn admissible(target: &IntPoly, target_degree: i64, exps: &[i64]) -> bool {
    // the span of partial sums bounds the degree of the shifted polynomial
    let mut lo = 0i64;
    let mut hi = 0i64;
    let mut s = 0i64;
    for &e in exps {
        s += e;
        lo = lo.min(s);
        hi = hi.max(s);
    }
    if hi - lo < target_degree {
        return false;
    }
    let word = Word::new(exps.to_vec()).expect("nonempty");
    let (phi, _) = phi_of_word(&word).expect("length >= 2");
    poly_divides(target, &phi).expect("cyclotomic polynomials are nonzero")
}

fn words_of_len(k: u32, len: usize, max_abs_exp: i64) -> impl ParallelIterator<Item = Word> {
    let target = cyclotomic(k);
    let target_degree = target.max_exp().unwrap_or(0);
    let total = ((2 * max_abs_exp + 1) as u64).pow(len as u32);
    (0..total).into_par_iter().filter_map(move |rank| {
        let exps = word_at(rank, len, max_abs_exp);
        admissible(&target, target_degree, &exps).then(|| Word::new(exps).unwrap())
    })
}

/// All words `I` with `2 <= l <= max_len` and `|i_m| <= max_abs_exp` such
/// that `Phi_k` divides `Phi_I`, ordered by length and then lexicographically.
pub fn search_words(k: u32, max_len: usize, max_abs_exp: i64) -> Vec<Word> {
    assert!(
        k >= 1 && max_len >= 1 && max_abs_exp >= 1,
        "search bounds must be positive"
    );
    (2..=max_len)
        .flat_map(|len| words_of_len(k, len, max_abs_exp).collect::<Vec<_>>())
        .collect()
}

/// The first word `search_words` would return, without enumerating the rest.
pub fn first_word(k: u32, max_len: usize, max_abs_exp: i64) -> Option<Word> {
    assert!(
        k >= 1 && max_len >= 1 && max_abs_exp >= 1,
        "search bounds must be positive"
    );
    (2..=max_len).find_map(|len| words_of_len(k, len, max_abs_exp).find_first(|_| true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(words: &[Word], e: &[i64]) -> bool {
        words.iter().any(|w| w.exponents() == e)
    }

    #[test]
    fn search_examples() {
        let w = search_words(6, 2, 1);
        assert!(contains(&w, &[1, 1]));
        assert!(contains(&search_words(18, 2, 3), &[3, 3]));
        assert!(contains(&search_words(10, 4, 1), &[1, 1, 1, 1]));
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        assert_eq!(word_at(0, 3, 1), vec![-1, -1, -1]);
        assert_eq!(word_at(26, 3, 1), vec![1, 1, 1]);
        assert_eq!(word_at(5, 2, 1), vec![0, 1]);
        let w = search_words(6, 3, 2);
        for pair in w.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!((a.len(), a.exponents()) < (b.len(), b.exponents()));
        }
    }

    #[test]
    fn first_word_matches_full_search() {
        for k in [6, 10, 12] {
            assert_eq!(
                first_word(k, 4, 2),
                search_words(k, 4, 2).into_iter().next()
            );
        }
    }

    #[test]
    fn every_hit_is_divisible() {
        let phi6 = cyclotomic(6);
        for w in search_words(6, 3, 2) {
            let (p, _) = phi_of_word(&w).unwrap();
            assert!(poly_divides(&phi6, &p).unwrap());
        }
    }
}
