//! Verdicts of exhaustive checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Outcome of one exhaustive check. `witness` is empty on success and holds
/// the lexicographically least failing index tuple otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    pub witness: Vec<usize>,
}

impl Report {
    pub fn from_witness(check: impl Into<String>, witness: Option<Vec<usize>>) -> Self {
        let check = check.into();
        match witness {
            None => Report {
                check,
                pass: true,
                witness: Vec::new(),
            },
            Some(w) => Report {
                check,
                pass: false,
                witness: w,
            },
        }
    }
}

/// Least failing tuple over `[0, n)^arity`, scanning the leading index in
/// parallel. `fails` receives tuples in lexicographic order within a slice.
pub(crate) fn least_witness<F>(n: usize, arity: usize, fails: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    assert!(arity >= 1);
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; arity];
            idx[0] = first;
            loop {
                if fails(&idx) {
                    return Some(idx);
                }
                // odometer over positions 1..arity
                let mut pos = arity - 1;
                loop {
                    if pos == 0 {
                        return None;
                    }
                    idx[pos] += 1;
                    if idx[pos] < n {
                        break;
                    }
                    idx[pos] = 0;
                    pos -= 1;
                }
            }
        })
        .find_first(Option::is_some)
        .flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_witness_is_lexicographic() {
        let w = least_witness(4, 3, |t| t[1] == 2 && t[2] >= 1);
        assert_eq!(w, Some(vec![0, 2, 1]));
        let w = least_witness(4, 3, |t| t[0] == 3 && t[2] == 0);
        assert_eq!(w, Some(vec![3, 0, 0]));
        assert_eq!(least_witness(3, 2, |_| false), None);
        assert_eq!(least_witness(3, 1, |t| t[0] == 2), Some(vec![2]));
    }

    #[test]
    fn serializes_to_flat_record() {
        let r = Report::from_witness("dybe", Some(vec![0, 1]));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"check":"dybe","pass":false,"witness":[0,1]}"#);
    }
}
