//! Ternary operations on finite sets and the homogeneous pre-system checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, ModuleVec, Modulus, Residue};
use crate::report::{least_witness, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TernaryError {
    #[error("ternary table has {actual} entries, expected {expected}")]
    BadShape { expected: usize, actual: usize },
    #[error("entry {value} out of range for a set of size {n}")]
    EntryOutOfRange { value: usize, n: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Full `n x n x n` table, row-major in `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTable {
    n: usize,
    data: Vec<usize>,
}

impl TernaryTable {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    data.push(f(x, y, z));
                }
            }
        }
        TernaryTable { n, data }
    }

    pub fn from_nested(table: Vec<Vec<Vec<usize>>>) -> Result<Self, TernaryError> {
        let n = table.len();
        let data: Vec<usize> = table.into_iter().flatten().flatten().collect();
        if data.len() != n * n * n || n == 0 {
            return Err(TernaryError::BadShape {
                expected: n * n * n,
                actual: data.len(),
            });
        }
        if let Some(&value) = data.iter().find(|&&v| v >= n) {
            return Err(TernaryError::EntryOutOfRange { value, n });
        }
        Ok(TernaryTable { n, data })
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.n;
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.data[(x * n + y) * n..][..n].to_vec())
                    .collect()
            })
            .collect()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.data[(x * self.n + y) * self.n + z]
    }
}

/// `(x, y, z) ↦ αx + βy + γz` on `(Z/nZ)^k`, elements indexed mixed-radix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineTernary {
    pub modulus: Modulus,
    pub dim: usize,
    pub alpha: Residue,
    pub beta: Residue,
    pub gamma: Residue,
}

impl AffineTernary {
    pub fn new(
        modulus: Modulus,
        dim: usize,
        alpha: Residue,
        beta: Residue,
        gamma: Residue,
    ) -> Self {
        AffineTernary {
            modulus,
            dim,
            alpha,
            beta,
            gamma,
        }
    }

    pub fn from_ints(modulus: Modulus, dim: usize, coeffs: [i64; 3]) -> Self {
        let [a, b, c] = coeffs.map(|v| modulus.residue(v));
        AffineTernary::new(modulus, dim, a, b, c)
    }

    pub fn coeffs(&self) -> (u64, u64, u64) {
        (self.alpha.value(), self.beta.value(), self.gamma.value())
    }

    pub fn size(&self) -> usize {
        (self.modulus.get() as usize).pow(self.dim as u32)
    }

    pub fn apply(&self, x: usize, y: usize, z: usize) -> usize {
        let v = |i| ModuleVec::from_index(i, self.dim, self.modulus);
        let s = &v(x).scale(self.alpha) + &v(y).scale(self.beta);
        (&s + &v(z).scale(self.gamma)).to_index()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TernaryOp {
    Table(TernaryTable),
    Affine(AffineTernary),
}

impl TernaryOp {
    pub fn size(&self) -> usize {
        match self {
            TernaryOp::Table(t) => t.size(),
            TernaryOp::Affine(a) => a.size(),
        }
    }

    pub fn apply(&self, x: usize, y: usize, z: usize) -> usize {
        match self {
            TernaryOp::Table(t) => t.get(x, y, z),
            TernaryOp::Affine(a) => a.apply(x, y, z),
        }
    }

    /// Expands to a full table (a copy when already tabulated).
    pub fn to_table(&self) -> TernaryTable {
        match self {
            TernaryOp::Table(t) => t.clone(),
            TernaryOp::Affine(a) => TernaryTable::from_fn(a.size(), |x, y, z| a.apply(x, y, z)),
        }
    }

    /// `(a, b, c) ↦ self(b, a, c)`.
    pub fn swap_first_two(&self) -> TernaryOp {
        match self {
            TernaryOp::Table(t) => {
                TernaryOp::Table(TernaryTable::from_fn(t.n, |a, b, c| t.get(b, a, c)))
            }
            TernaryOp::Affine(a) => TernaryOp::Affine(AffineTernary {
                alpha: a.beta,
                beta: a.alpha,
                ..*a
            }),
        }
    }
}

/// Separate verdicts for `η(x, y, x) = y` and the self-distributivity law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpsReport {
    pub idempotent: Report,
    pub distributive: Report,
}

impl HpsReport {
    pub fn pass(&self) -> bool {
        self.idempotent.pass && self.distributive.pass
    }

    pub fn into_reports(self) -> Vec<Report> {
        vec![self.idempotent, self.distributive]
    }
}

/// Witnesses: `(x, y)` for the first axiom, `(x, y, u, v, w)` for the second.
pub fn check_hps(op: &TernaryOp) -> HpsReport {
    let t = op.to_table();
    let n = t.size();
    let idempotent = least_witness(n, 2, |p| t.get(p[0], p[1], p[0]) != p[1]);
    let distributive = least_witness(n, 5, |p| {
        let (x, y, u, v, w) = (p[0], p[1], p[2], p[3], p[4]);
        t.get(x, y, t.get(u, v, w)) != t.get(t.get(x, y, u), t.get(x, y, v), t.get(x, y, w))
    });
    HpsReport {
        idempotent: Report::from_witness("hps-idempotent", idempotent),
        distributive: Report::from_witness("hps-distributive", distributive),
    }
}

/// `η(x, y, z) = η(w, η(x, y, w), z)`; witness `(x, y, z, w)`.
pub fn check_displacement(op: &TernaryOp) -> Report {
    let t = op.to_table();
    let w = least_witness(t.size(), 4, |p| {
        let (x, y, z, w) = (p[0], p[1], p[2], p[3]);
        t.get(x, y, z) != t.get(w, t.get(x, y, w), z)
    });
    Report::from_witness("displacement", w)
}

/// JSON form of a ternary operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TernaryFile {
    Table {
        n: usize,
        table: Vec<Vec<Vec<usize>>>,
    },
    Affine {
        modulus: u64,
        dim: usize,
        coeffs: [i64; 3],
    },
}

impl From<&TernaryOp> for TernaryFile {
    fn from(op: &TernaryOp) -> Self {
        match op {
            TernaryOp::Table(t) => TernaryFile::Table {
                n: t.size(),
                table: t.to_nested(),
            },
            TernaryOp::Affine(a) => {
                let (x, y, z) = a.coeffs();
                TernaryFile::Affine {
                    modulus: a.modulus.get(),
                    dim: a.dim,
                    coeffs: [x as i64, y as i64, z as i64],
                }
            }
        }
    }
}

impl TryFrom<TernaryFile> for TernaryOp {
    type Error = TernaryError;
    fn try_from(f: TernaryFile) -> Result<Self, Self::Error> {
        match f {
            TernaryFile::Table { n, table } => {
                let t = TernaryTable::from_nested(table)?;
                if t.size() != n {
                    return Err(TernaryError::BadShape {
                        expected: n,
                        actual: t.size(),
                    });
                }
                Ok(TernaryOp::Table(t))
            }
            TernaryFile::Affine {
                modulus,
                dim,
                coeffs,
            } => {
                if dim == 0 {
                    return Err(TernaryError::BadShape {
                        expected: 1,
                        actual: 0,
                    });
                }
                Ok(TernaryOp::Affine(AffineTernary::from_ints(
                    Modulus::new(modulus)?,
                    dim,
                    coeffs,
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5(coeffs: [i64; 3]) -> TernaryOp {
        TernaryOp::Affine(AffineTernary::from_ints(
            Modulus::new(5).unwrap(),
            1,
            coeffs,
        ))
    }

    #[test]
    fn hps_examples() {
        let r = check_hps(&z5([-3, 1, 3]));
        assert!(r.idempotent.pass && r.distributive.pass);

        let r = check_hps(&z5([4, 3, 4]));
        assert!(!r.idempotent.pass);
        assert_eq!(r.idempotent.witness, vec![0, 1]);
        assert!(r.distributive.pass);

        let proj = TernaryOp::Table(TernaryTable::from_fn(3, |_, _, z| z));
        let r = check_hps(&proj);
        assert!(!r.idempotent.pass && r.distributive.pass);
    }

    #[test]
    fn displacement_examples() {
        assert!(check_displacement(&z5([-3, 1, 3])).pass);
        assert!(check_displacement(&z5([-1, 1, 1])).pass);
        // 4x + 3y + 4z: η(w, η(x,y,w), z) = 4w + 3(4x+3y+4w) + 4z differs once w moves
        let r = check_displacement(&z5([4, 3, 4]));
        assert!(!r.pass);
        let (x, y, z, w) = (r.witness[0], r.witness[1], r.witness[2], r.witness[3]);
        let t = z5([4, 3, 4]);
        assert_ne!(t.apply(x, y, z), t.apply(w, t.apply(x, y, w), z));
    }

    #[test]
    fn affine_table_agree_in_two_dims() {
        let m = Modulus::new(3).unwrap();
        let a = AffineTernary::from_ints(m, 2, [1, 2, 1]);
        let t = TernaryOp::Affine(a).to_table();
        // (1,2) + 2(0,1) + (2,2) = (0, 0)
        assert_eq!(t.get(5, 1, 8), 0);
        assert_eq!(t.size(), 9);
    }

    #[test]
    fn swap_matches_table_swap() {
        let a = z5([2, 1, 3]);
        let mu = a.swap_first_two();
        assert!(matches!(mu, TernaryOp::Affine(ref m) if m.coeffs() == (1, 2, 3)));
        let via_table = TernaryOp::Table(a.to_table()).swap_first_two();
        assert_eq!(via_table.to_table(), mu.to_table());
    }

    #[test]
    fn json_forms() {
        let a = z5([2, 1, 3]);
        let f = TernaryFile::from(&a);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"affine","modulus":5,"dim":1,"coeffs":[2,1,3]}"#
        );
        let back = TernaryOp::try_from(serde_json::from_str::<TernaryFile>(&s).unwrap()).unwrap();
        assert_eq!(back, a);
        let t = TernaryOp::Table(a.to_table());
        let s = serde_json::to_string(&TernaryFile::from(&t)).unwrap();
        let back = TernaryOp::try_from(serde_json::from_str::<TernaryFile>(&s).unwrap()).unwrap();
        assert_eq!(back, t);
        let bad = TernaryFile::Table {
            n: 2,
            table: vec![vec![vec![0, 1]]],
        };
        assert!(TernaryOp::try_from(bad).is_err());
    }
}
