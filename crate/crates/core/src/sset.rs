//! Finite s-sets, words in two letters, and the ternary operations they
//! generate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, IntPoly, ModuleVec, Modulus, Residue};
use crate::perm;
use crate::quasigroup::{Quasigroup, QuasigroupError};
use crate::ternary::{AffineTernary, TernaryOp, TernaryTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SSetError {
    #[error("empty carrier")]
    Empty,
    #[error("map s_{row} has length {len}, expected {n}")]
    RowLength { row: usize, len: usize, n: usize },
    #[error("s_{0} is not a bijection")]
    NotBijective(usize),
    #[error("s_x s_y = s_(s_x(y)) s_x fails at x={x}, y={y}, z={z}")]
    SymmetryFails { x: usize, y: usize, z: usize },
    #[error("declared size {declared} does not match {actual} maps")]
    SizeMismatch { declared: usize, actual: usize },
    #[error("words need at least {min} letters, got {len}")]
    WordTooShort { len: usize, min: usize },
    #[error("affine closed form disagrees with the table at ({x}, {y}, {z})")]
    ClosedFormMismatch { x: usize, y: usize, z: usize },
    #[error("affine carrier dimension must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quasigroup(#[from] QuasigroupError),
}

/// A finite set with one bijection `s_x` per element satisfying
/// `s_x ∘ s_y = s_{s_x(y)} ∘ s_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSSet {
    s: Vec<Vec<usize>>,
    s_inv: Vec<Vec<usize>>,
}

impl FiniteSSet {
    pub fn size(&self) -> usize {
        self.s.len()
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> usize {
        self.s[x][y]
    }

    #[inline]
    pub fn apply_inv(&self, x: usize, y: usize) -> usize {
        self.s_inv[x][y]
    }

    pub fn map(&self, x: usize) -> &[usize] {
        &self.s[x]
    }

    pub fn inverse_map(&self, x: usize) -> &[usize] {
        &self.s_inv[x]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.s
    }

    /// `s_x^e` as a permutation table.
    pub fn power(&self, x: usize, e: i64) -> Vec<usize> {
        perm::pow(&self.s[x], e)
    }

    /// `w_I(s_x, s_y)` as a permutation table.
    pub fn word_permutation(&self, word: &Word, x: usize, y: usize) -> Vec<usize> {
        word.evaluate(&self.s[x], &self.s[y])
    }
}

/// Checks bijectivity of every row and the symmetry identity on all
/// `n^3` triples. Witnesses are lexicographically least.
pub fn validate_sset(maps: Vec<Vec<usize>>) -> Result<FiniteSSet, SSetError> {
    let n = maps.len();
    if n == 0 {
        return Err(SSetError::Empty);
    }
    for (row, m) in maps.iter().enumerate() {
        if m.len() != n {
            return Err(SSetError::RowLength {
                row,
                len: m.len(),
                n,
            });
        }
    }
    if let Some(x) = maps.iter().position(|m| !perm::is_bijection(m)) {
        return Err(SSetError::NotBijective(x));
    }
    let witness = crate::report::least_witness(n, 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        maps[x][maps[y][z]] != maps[maps[x][y]][maps[x][z]]
    });
    if let Some(t) = witness {
        return Err(SSetError::SymmetryFails {
            x: t[0],
            y: t[1],
            z: t[2],
        });
    }
    let s_inv = maps.iter().map(|m| perm::inverse(m)).collect();
    Ok(FiniteSSet { s: maps, s_inv })
}

/// The conjugation s-set `s_x(y) = x y x^{-1}` of a group.
pub fn conjugation_sset(group: &Quasigroup) -> Result<FiniteSSet, SSetError> {
    let e = group.group_identity()?;
    let n = group.order();
    let maps = (0..n)
        .map(|x| {
            let x_inv = group.left_div(x, e);
            (0..n).map(|y| group.mul(group.mul(x, y), x_inv)).collect()
        })
        .collect();
    validate_sset(maps)
}

/// The s-set `s_x(y) = (1 - r)x + r y` on `(Z/nZ)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSSet {
    pub modulus: Modulus,
    pub dim: usize,
    pub r: Residue,
    sset: FiniteSSet,
}

impl AffineSSet {
    pub fn sset(&self) -> &FiniteSSet {
        &self.sset
    }

    pub fn spec(&self) -> AffineSpec {
        AffineSpec {
            modulus: self.modulus.get(),
            dim: self.dim,
            r: self.r.value() as i64,
        }
    }

    pub fn vector(&self, index: usize) -> ModuleVec {
        ModuleVec::from_index(index, self.dim, self.modulus)
    }
}

pub fn affine_sset(modulus: Modulus, dim: usize, r: Residue) -> Result<AffineSSet, SSetError> {
    if dim == 0 {
        return Err(SSetError::ZeroDimension);
    }
    let r = Residue::new(r.value() as i64, modulus);
    r.inverse()?;
    let one_minus_r = Residue::one(modulus) - r;
    let size = (modulus.get() as usize).pow(dim as u32);
    let vecs: Vec<ModuleVec> = (0..size)
        .map(|i| ModuleVec::from_index(i, dim, modulus))
        .collect();
    let maps = vecs
        .iter()
        .map(|x| {
            let fixed = x.scale(one_minus_r);
            vecs.iter()
                .map(|y| (&fixed + &y.scale(r)).to_index())
                .collect()
        })
        .collect();
    let sset = validate_sset(maps)?;
    Ok(AffineSSet {
        modulus,
        dim,
        r,
        sset,
    })
}

/// JSON form of an affine s-set: `{"modulus": 5, "dim": 1, "r": 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSpec {
    pub modulus: u64,
    pub dim: usize,
    pub r: i64,
}

impl AffineSpec {
    pub fn build(&self) -> Result<AffineSSet, SSetError> {
        let m = Modulus::new(self.modulus)?;
        affine_sset(m, self.dim, m.residue(self.r))
    }
}

/// JSON form of an s-set: `{"n": N, "maps": [[s_0(0), ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetFile {
    pub n: usize,
    pub maps: Vec<Vec<usize>>,
}

impl From<&FiniteSSet> for SSetFile {
    fn from(s: &FiniteSSet) -> Self {
        SSetFile {
            n: s.size(),
            maps: s.maps().to_vec(),
        }
    }
}

impl TryFrom<SSetFile> for FiniteSSet {
    type Error = SSetError;
    fn try_from(f: SSetFile) -> Result<Self, Self::Error> {
        if f.n != f.maps.len() {
            return Err(SSetError::SizeMismatch {
                declared: f.n,
                actual: f.maps.len(),
            });
        }
        validate_sset(f.maps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    X,
    Y,
}

/// Exponent sequence `(i_1, .., i_l)` for the word `X^{i_1} Y^{i_2} X^{i_3} ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Word(Vec<i64>);

impl Word {
    pub fn new(exponents: Vec<i64>) -> Result<Self, SSetError> {
        if exponents.is_empty() {
            return Err(SSetError::WordTooShort { len: 0, min: 1 });
        }
        Ok(Word(exponents))
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `d = i_1 + ... + i_l`.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `w_I(X, Y)` for permutations `X`, `Y` of the same set.
    pub fn evaluate(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        self.factors()
            .fold(perm::identity(x.len()), |acc, (letter, e)| {
                let base = match letter {
                    Letter::X => x,
                    Letter::Y => y,
                };
                perm::compose(&acc, &perm::pow(base, e))
            })
    }

    /// Factors left to right; odd positions are `X`, even positions `Y`.
    pub fn factors(&self) -> impl Iterator<Item = (Letter, i64)> + '_ {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &e)| (if j % 2 == 0 { Letter::X } else { Letter::Y }, e))
    }
}

impl TryFrom<Vec<i64>> for Word {
    type Error = SSetError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Word::new(v)
    }
}

impl From<Word> for Vec<i64> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `w_I(s_x, s_y)(z)`, rightmost factor applied first.
pub fn eval_word(s: &FiniteSSet, word: &Word, x: usize, y: usize, z: usize) -> usize {
    let mut v = z;
    for (letter, e) in word.factors().collect::<Vec<_>>().into_iter().rev() {
        let base = match letter {
            Letter::X => x,
            Letter::Y => y,
        };
        let table = if e < 0 {
            s.inverse_map(base)
        } else {
            s.map(base)
        };
        for _ in 0..e.unsigned_abs() {
            v = table[v];
        }
    }
    v
}

/// `eta_I(x, y, z) = w_I(s_x, s_y)(z)` tabulated over all triples.
pub fn eta_table(s: &FiniteSSet, word: &Word) -> TernaryOp {
    let n = s.size();
    let blocks: Vec<Vec<usize>> = (0..n * n)
        .into_par_iter()
        .map(|xy| s.word_permutation(word, xy / n, xy % n))
        .collect();
    TernaryOp::Table(TernaryTable::from_fn(n, |x, y, z| blocks[x * n + y][z]))
}

/// Alternating polynomial `1 + sum_j (-1)^j X^{i_1 + .. + i_j}` with `j`
/// running to `l` for even `l` and to `l - 1` for odd `l`.
fn alternating_poly(exponents: &[i64]) -> IntPoly {
    let l = exponents.len();
    let top = if l.is_multiple_of(2) { l } else { l - 1 };
    let mut p = IntPoly::one();
    let mut partial = 0i64;
    for (j, &e) in exponents[..top].iter().enumerate() {
        partial += e;
        p.add_term(if j % 2 == 0 { -1 } else { 1 }, partial);
    }
    p
}

/// `Phi_I` together with `d = i_1 + ... + i_l`.
pub fn phi_of_word(word: &Word) -> Result<(IntPoly, i64), SSetError> {
    if word.len() < 2 {
        return Err(SSetError::WordTooShort {
            len: word.len(),
            min: 2,
        });
    }
    Ok((alternating_poly(word.exponents()), word.degree()))
}

/// Closed form `(Phi(r) - r^d) x + (1 - Phi(r)) y + r^d z` of `eta_I` on an
/// affine s-set, checked against the tabulated operation.
pub fn affine_eta(a: &AffineSSet, word: &Word) -> Result<AffineTernary, SSetError> {
    let phi = alternating_poly(word.exponents()).eval_mod(a.r)?;
    let rd = a.r.pow(word.degree())?;
    let one = Residue::one(a.modulus);
    let closed = AffineTernary::new(a.modulus, a.dim, phi - rd, one - phi, rd);
    let TernaryOp::Table(table) = eta_table(a.sset(), word) else {
        unreachable!()
    };
    let n = table.size();
    let mismatch = crate::report::least_witness(n, 3, |t| {
        table.get(t[0], t[1], t[2]) != closed.apply(t[0], t[1], t[2])
    });
    if let Some(t) = mismatch {
        return Err(SSetError::ClosedFormMismatch {
            x: t[0],
            y: t[1],
            z: t[2],
        });
    }
    Ok(closed)
}

/// All units `r` mod `n` with `Phi_I(r) = 0`.
pub fn search_roots(word: &Word, modulus: Modulus) -> Result<Vec<Residue>, SSetError> {
    let (phi, _) = phi_of_word(word)?;
    let mut roots = Vec::new();
    for r in modulus.units() {
        if phi.eval_mod(r)?.is_zero() {
            roots.push(r);
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5_affine(r: i64) -> AffineSSet {
        let m = Modulus::new(5).unwrap();
        affine_sset(m, 1, m.residue(r)).unwrap()
    }

    fn w(e: &[i64]) -> Word {
        Word::new(e.to_vec()).unwrap()
    }

    #[test]
    fn affine_examples() {
        let a = z5_affine(2);
        assert_eq!(a.sset().apply(1, 3), 0);
        for x in 0..5 {
            assert_eq!(a.sset().apply(x, x), x);
            // inverse rows realise r^{-1} = 3
            for y in 0..5 {
                assert_eq!(a.sset().apply_inv(x, y), (3 * x + 3 * y) % 5);
            }
        }
        let s = a.sset();
        for y in 0..5 {
            assert_eq!(s.apply(0, s.apply(1, y)), s.apply(2, s.apply(0, y)));
        }
    }

    #[test]
    fn affine_two_dim_fixes_base_point() {
        let m = Modulus::new(3).unwrap();
        let a = affine_sset(m, 2, m.residue(2)).unwrap();
        assert_eq!(a.sset().size(), 9);
        for x in 0..9 {
            assert_eq!(a.sset().apply(x, x), x);
        }
    }

    #[test]
    fn affine_rejects_non_unit() {
        let m = Modulus::new(6).unwrap();
        assert!(matches!(
            affine_sset(m, 1, m.residue(2)),
            Err(SSetError::Algebra(AlgebraError::NotInvertible { .. }))
        ));
        assert_eq!(
            affine_sset(m, 0, m.residue(1)),
            Err(SSetError::ZeroDimension)
        );
    }

    #[test]
    fn conjugation_examples() {
        let z5 = conjugation_sset(&Quasigroup::cyclic(5)).unwrap();
        for x in 0..5 {
            assert_eq!(z5.map(x), &[0, 1, 2, 3, 4]);
        }
        let s3 = Quasigroup::symmetric_group(3);
        let c = conjugation_sset(&s3).unwrap();
        // transpositions: one-line [0,2,1]=1, [1,0,2]=2, [2,1,0]=5
        for t in [1, 2, 5] {
            assert_eq!(c.apply(t, t), t);
            assert_eq!(c.apply(t, 0), 0);
            let others: Vec<usize> = [1, 2, 5].into_iter().filter(|&u| u != t).collect();
            assert_eq!(c.apply(t, others[0]), others[1]);
            // 3-cycles are swapped
            assert_eq!(c.apply(t, 3), 4);
        }
        assert!(matches!(
            conjugation_sset(&crate::quasigroup::q5()),
            Err(SSetError::Quasigroup(QuasigroupError::NotAGroup(_)))
        ));
    }

    #[test]
    fn validation_failures() {
        assert_eq!(
            validate_sset(vec![vec![0, 0], vec![1, 1]]),
            Err(SSetError::NotBijective(0))
        );
        // s_0 = id, s_1 = swap, s_2 = id on 3 points breaks the symmetry identity
        let err = validate_sset(vec![vec![0, 1, 2], vec![1, 0, 2], vec![0, 2, 1]]).unwrap_err();
        assert!(matches!(err, SSetError::SymmetryFails { .. }));
        assert_eq!(validate_sset(vec![]), Err(SSetError::Empty));
    }

    #[test]
    fn eval_word_examples() {
        let a = z5_affine(2);
        assert_eq!(eval_word(a.sset(), &w(&[2, 1]), 1, 2, 3), 3);
        for (x, y, z) in [(0, 1, 2), (4, 4, 1), (3, 0, 0)] {
            assert_eq!(eval_word(a.sset(), &w(&[0]), x, y, z), z);
        }
        let s3 = Quasigroup::symmetric_group(3);
        let c = conjugation_sset(&s3).unwrap();
        for x in 0..6 {
            for z in 0..6 {
                let expected = s3.mul(s3.mul(x, z), s3.left_div(x, 0));
                assert_eq!(eval_word(&c, &w(&[1]), x, 3, z), expected);
            }
        }
    }

    #[test]
    fn word_permutation_agrees_with_pointwise_eval() {
        let c = conjugation_sset(&Quasigroup::symmetric_group(3)).unwrap();
        let word = w(&[-2, 3, 1, -1]);
        for x in 0..6 {
            for y in 0..6 {
                let p = c.word_permutation(&word, x, y);
                for z in 0..6 {
                    assert_eq!(p[z], eval_word(&c, &word, x, y, z));
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let (p, d) = phi_of_word(&w(&[2, 1])).unwrap();
        assert_eq!((p, d), (IntPoly::from_coeffs(&[1, 0, -1, 1]), 3));
        let (p, d) = phi_of_word(&w(&[1, 1])).unwrap();
        assert_eq!((p, d), (IntPoly::from_coeffs(&[1, -1, 1]), 2));
        let (p, d) = phi_of_word(&w(&[2, 1, 1])).unwrap();
        assert_eq!((p, d), (IntPoly::from_coeffs(&[1, 0, -1, 1]), 4));
        assert_eq!(
            phi_of_word(&w(&[3])),
            Err(SSetError::WordTooShort { len: 1, min: 2 })
        );
        assert!(Word::new(vec![]).is_err());
    }

    #[test]
    fn eta_closed_forms() {
        let a = z5_affine(2);
        let e = affine_eta(&a, &w(&[2, 1])).unwrap();
        assert_eq!(e.coeffs(), (2, 1, 3));
        let e = affine_eta(&a, &w(&[2, 1, 1])).unwrap();
        assert_eq!(e.coeffs(), (4, 1, 1));
        let e = affine_eta(&a, &w(&[1, 1])).unwrap();
        assert_eq!(e.coeffs(), (4, 3, 4));
        // single letter words use the power formula
        let e = affine_eta(&a, &w(&[-3])).unwrap();
        let r3 = a.r.pow(-3).unwrap().value();
        assert_eq!(e.coeffs(), ((6 - r3) % 5, 0, r3));
    }

    #[test]
    fn roots_examples() {
        let five = Modulus::new(5).unwrap();
        let roots: Vec<u64> = search_roots(&w(&[2, 1]), five)
            .unwrap()
            .into_iter()
            .map(Residue::value)
            .collect();
        assert_eq!(roots, vec![2]);
        let roots = search_roots(&w(&[2, -1]), five).unwrap();
        assert!(roots.iter().any(|r| r.value() == 3));
        assert!(search_roots(&w(&[1, 1]), Modulus::new(2).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn sset_json_roundtrip() {
        let a = z5_affine(3);
        let f = SSetFile::from(a.sset());
        let back: SSetFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(&FiniteSSet::try_from(back).unwrap(), a.sset());
        let spec: AffineSpec = serde_json::from_str(r#"{"modulus": 5, "dim": 1, "r": 2}"#).unwrap();
        assert_eq!(spec.build().unwrap(), z5_affine(2));
        let word: Word = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(word, w(&[2, 1]));
        assert!(serde_json::from_str::<Word>("[]").is_err());
    }
}
