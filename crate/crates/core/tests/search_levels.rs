//! Words for every cyclotomic level, including those beyond the short
//! bounded search.

use sset_dybm::{cyclotomic, first_word, phi_of_word, poly_divides, search_words, Word};

const LEVELS: [u32; 17] = [
    10, 14, 15, 18, 20, 21, 22, 24, 26, 28, 33, 34, 35, 36, 38, 39, 40,
];

/// When the nonzero coefficients of `Φ_k` alternate `+1, -1, ..., +1`, the
/// gaps between consecutive exponents form a word `I` with `Φ_I = Φ_k`.
fn gap_word(k: u32) -> Option<Word> {
    let terms: Vec<(i64, i64)> = cyclotomic(k).terms().collect();
    let alternating = terms
        .iter()
        .enumerate()
        .all(|(j, &(_, c))| c == if j % 2 == 0 { 1 } else { -1 });
    if !alternating || terms.len().is_multiple_of(2) {
        return None;
    }
    let gaps = terms.windows(2).map(|w| w[1].0 - w[0].0).collect();
    Word::new(gaps).ok()
}

#[test]
fn every_level_has_a_certified_word() {
    for k in LEVELS {
        let w = gap_word(k)
            .or_else(|| first_word(k, 8, 3))
            .unwrap_or_else(|| panic!("no word for k = {k}"));
        let (phi, _) = phi_of_word(&w).unwrap();
        assert!(
            poly_divides(&cyclotomic(k), &phi).unwrap(),
            "k = {k}, I = {w}"
        );
    }
}

#[test]
fn levels_outside_the_short_search() {
    let expected: [(u32, usize, i64); 8] = [
        (22, 10, 1),
        (26, 12, 1),
        (33, 14, 2),
        (34, 16, 1),
        (35, 16, 4),
        (38, 18, 1),
        (39, 16, 2),
        (40, 4, 4),
    ];
    for (k, len, max_exp) in expected {
        assert_eq!(first_word(k, 8, 3), None, "k = {k}");
        let w = gap_word(k).unwrap();
        assert_eq!(w.len(), len, "k = {k}: {w}");
        assert_eq!(
            w.exponents().iter().map(|e| e.abs()).max(),
            Some(max_exp),
            "k = {k}: {w}"
        );
        let (phi, _) = phi_of_word(&w).unwrap();
        assert_eq!(phi, cyclotomic(k));
    }
}

#[test]
fn short_search_hits_are_minimal_and_certified() {
    for k in [10, 14, 15, 18, 20, 21, 24, 28, 36] {
        let w = first_word(k, 8, 3).unwrap();
        assert!(search_words(k, w.len() - 1, 3).is_empty(), "k = {k}");
        let (phi, _) = phi_of_word(&w).unwrap();
        assert!(poly_divides(&cyclotomic(k), &phi).unwrap());
    }
}
