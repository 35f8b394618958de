//! Finite quasigroups stored as Latin squares with both division tables.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Row,
    Column,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row => write!(f, "row"),
            Line::Column => write!(f, "column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasigroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not a Latin square: {line} {index} repeats {value}")]
    NotLatin {
        line: Line,
        index: usize,
        value: usize,
    },
    #[error("declared order {declared} does not match table size {actual}")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
}

/// A finite quasigroup on `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasigroup {
    n: usize,
    mul: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
}

/// Result of an associativity scan. The witness is `(u, v, w)` together with
/// `((uv)w, u(vw))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Associativity {
    pub associative: bool,
    pub witness: Option<([usize; 3], (usize, usize))>,
}

impl Quasigroup {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.mul[u * self.n + v]
    }

    /// `u \ w`: the unique `v` with `uv = w`.
    #[inline]
    pub fn left_div(&self, u: usize, w: usize) -> usize {
        self.ldiv[u * self.n + w]
    }

    /// The unique `u` with `uv = w`.
    #[inline]
    pub fn right_div(&self, v: usize, w: usize) -> usize {
        self.rdiv[v * self.n + w]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// `((uv)w, u(vw))`.
    pub fn associator(&self, u: usize, v: usize, w: usize) -> (usize, usize) {
        (self.mul(self.mul(u, v), w), self.mul(u, self.mul(v, w)))
    }

    pub fn is_associative(&self) -> Associativity {
        for u in 0..self.n {
            for v in 0..self.n {
                for w in 0..self.n {
                    let (l, r) = self.associator(u, v, w);
                    if l != r {
                        return Associativity {
                            associative: false,
                            witness: Some(([u, v, w], (l, r))),
                        };
                    }
                }
            }
        }
        Associativity {
            associative: true,
            witness: None,
        }
    }

    /// Two-sided identity, if any.
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Checks the group axioms and returns the identity.
    pub fn group_identity(&self) -> Result<usize, QuasigroupError> {
        if let Some(([u, v, w], (l, r))) = self.is_associative().witness {
            return Err(QuasigroupError::NotAGroup(format!(
                "not associative: ({u}{v}){w} = {l} but {u}({v}{w}) = {r}"
            )));
        }
        let e = self
            .identity()
            .ok_or_else(|| QuasigroupError::NotAGroup("no two-sided identity".into()))?;
        // an associative quasigroup with identity has two-sided inverses
        for x in 0..self.n {
            let inv = self.left_div(x, e);
            if self.mul(inv, x) != e {
                return Err(QuasigroupError::NotAGroup(format!(
                    "{x} has no two-sided inverse"
                )));
            }
        }
        Ok(e)
    }

    /// Addition table of `Z/nZ`.
    pub fn cyclic(n: usize) -> Quasigroup {
        assert!(n >= 1);
        let table = (0..n)
            .map(|u| (0..n).map(|v| (u + v) % n).collect())
            .collect();
        validate_latin_square(table).expect("cyclic group table is Latin")
    }

    /// The symmetric group on `degree` points. Elements are the permutations in
    /// lexicographic order of their one-line notation; `pq` is `p` after `q`.
    pub fn symmetric_group(degree: usize) -> Quasigroup {
        let perms = permutations(degree);
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                        index_of(&pq)
                    })
                    .collect()
            })
            .collect();
        validate_latin_square(table).expect("group table is Latin")
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Validates a Latin square (row `u`, column `v`, entry `uv`) and precomputes
/// both divisions. Rows are checked before columns.
pub fn validate_latin_square(table: Vec<Vec<usize>>) -> Result<Quasigroup, QuasigroupError> {
    let n = table.len();
    if n == 0 {
        return Err(QuasigroupError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(QuasigroupError::NotSquare {
                row,
                len: r.len(),
                n,
            });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(QuasigroupError::EntryOutOfRange { row, col, value, n });
            }
        }
    }
    let mul: Vec<usize> = table.into_iter().flatten().collect();
    const UNSET: usize = usize::MAX;
    let mut ldiv = vec![UNSET; n * n];
    for u in 0..n {
        for v in 0..n {
            let w = mul[u * n + v];
            if ldiv[u * n + w] != UNSET {
                return Err(QuasigroupError::NotLatin {
                    line: Line::Row,
                    index: u,
                    value: w,
                });
            }
            ldiv[u * n + w] = v;
        }
    }
    let mut rdiv = vec![UNSET; n * n];
    for v in 0..n {
        for u in 0..n {
            let w = mul[u * n + v];
            if rdiv[v * n + w] != UNSET {
                return Err(QuasigroupError::NotLatin {
                    line: Line::Column,
                    index: v,
                    value: w,
                });
            }
            rdiv[v * n + w] = u;
        }
    }
    Ok(Quasigroup { n, mul, ldiv, rdiv })
}

/// Random Latin square by row-by-row randomized backtracking. Every Latin
/// rectangle extends by one row, so each row search succeeds.
pub fn random_latin_square(n: usize, seed: u64) -> Quasigroup {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut col_used = vec![vec![false; n]; n];
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n);

    fn fill(
        col: usize,
        row: &mut Vec<usize>,
        row_used: &mut [bool],
        col_used: &[Vec<bool>],
        rng: &mut ChaCha8Rng,
    ) -> bool {
        let n = row_used.len();
        if col == n {
            return true;
        }
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&x| !row_used[x] && !col_used[col][x])
            .collect();
        candidates.shuffle(rng);
        for x in candidates {
            row_used[x] = true;
            row.push(x);
            if fill(col + 1, row, row_used, col_used, rng) {
                return true;
            }
            row.pop();
            row_used[x] = false;
        }
        false
    }

    for _ in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut row_used = vec![false; n];
        let ok = fill(0, &mut row, &mut row_used, &col_used, &mut rng);
        assert!(ok, "Latin rectangle failed to extend");
        for (c, &x) in row.iter().enumerate() {
            col_used[c][x] = true;
        }
        rows.push(row);
    }
    validate_latin_square(rows).expect("backtracking produced a Latin square")
}

/// JSON form: `{"n": 5, "table": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasigroupFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl From<&Quasigroup> for QuasigroupFile {
    fn from(q: &Quasigroup) -> Self {
        QuasigroupFile {
            n: q.order(),
            table: q.table(),
        }
    }
}

impl TryFrom<QuasigroupFile> for Quasigroup {
    type Error = QuasigroupError;
    fn try_from(f: QuasigroupFile) -> Result<Self, Self::Error> {
        if f.n != f.table.len() {
            return Err(QuasigroupError::OrderMismatch {
                declared: f.n,
                actual: f.table.len(),
            });
        }
        validate_latin_square(f.table)
    }
}

/// The order-5 non-associative quasigroup used throughout the examples.
pub fn q5() -> Quasigroup {
    validate_latin_square(vec![
        vec![4, 3, 2, 1, 0],
        vec![3, 1, 0, 2, 4],
        vec![0, 2, 3, 4, 1],
        vec![1, 0, 4, 3, 2],
        vec![2, 4, 1, 0, 3],
    ])
    .expect("Q5 is a Latin square")
}
