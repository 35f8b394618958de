//! Exact arithmetic over `Z/nZ`, free modules `(Z/nZ)^k`, and integer
//! Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("residues with different moduli ({0} and {1})")]
    ModulusMismatch(u64, u64),
    #[error("module vectors of different lengths ({0} and {1})")]
    DimensionMismatch(usize, usize),
}

/// The modulus `n >= 2` of the ring `Z/nZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self, AlgebraError> {
        if n < 2 {
            return Err(AlgebraError::BadModulus(n));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn residue(self, value: i64) -> Residue {
        Residue::new(value, self)
    }

    /// All residues `r` with `gcd(r, n) = 1`, in increasing order.
    pub fn units(self) -> impl Iterator<Item = Residue> {
        (1..self.0)
            .filter(move |v| v.gcd(&self.0) == 1)
            .map(move |v| Residue {
                value: v,
                modulus: self,
            })
    }
}

impl TryFrom<u64> for Modulus {
    type Error = AlgebraError;
    fn try_from(n: u64) -> Result<Self, Self::Error> {
        Modulus::new(n)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z/nZ`, always stored reduced to `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        let value = (value as i128).rem_euclid(modulus.0 as i128) as u64;
        Residue { value, modulus }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn zero(modulus: Modulus) -> Self {
        Residue { value: 0, modulus }
    }

    pub fn one(modulus: Modulus) -> Self {
        Residue { value: 1, modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_invertible(self) -> bool {
        self.value.gcd(&self.modulus.0) == 1
    }

    pub fn inverse(self) -> Result<Residue, AlgebraError> {
        residue_inverse(self)
    }

    /// `self^e` for any integer `e`; negative exponents need an invertible base.
    pub fn pow(self, e: i64) -> Result<Residue, AlgebraError> {
        let base = if e < 0 { self.inverse()? } else { self };
        let mut exp = e.unsigned_abs();
        let mut acc = Residue::one(self.modulus);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            exp >>= 1;
        }
        Ok(acc)
    }

    fn check_same(self, other: Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic across different moduli"
        );
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let n = self.modulus.0 as u128;
        let v = (self.value as u128 + rhs.value as u128) % n;
        Residue {
            value: v as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self + (-rhs)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let value = if self.value == 0 {
            0
        } else {
            self.modulus.0 - self.value
        };
        Residue {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check_same(rhs);
        let n = self.modulus.0 as u128;
        let v = (self.value as u128 * rhs.value as u128) % n;
        Residue {
            value: v as u64,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Multiplicative inverse by the extended Euclidean algorithm.
pub fn residue_inverse(x: Residue) -> Result<Residue, AlgebraError> {
    let n = x.modulus.0 as i128;
    let e = (x.value as i128).extended_gcd(&n);
    if e.gcd != 1 {
        return Err(AlgebraError::NotInvertible {
            value: x.value,
            modulus: x.modulus.0,
        });
    }
    Ok(Residue {
        value: e.x.rem_euclid(n) as u64,
        modulus: x.modulus,
    })
}

/// A vector in `(Z/nZ)^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleVec {
    coords: Vec<u64>,
    modulus: Modulus,
}

impl ModuleVec {
    pub fn new(coords: &[i64], modulus: Modulus) -> Self {
        assert!(!coords.is_empty(), "module vectors have length >= 1");
        let coords = coords
            .iter()
            .map(|&c| Residue::new(c, modulus).value)
            .collect();
        ModuleVec { coords, modulus }
    }

    pub fn zero(dim: usize, modulus: Modulus) -> Self {
        assert!(dim >= 1, "module vectors have length >= 1");
        ModuleVec {
            coords: vec![0; dim],
            modulus,
        }
    }

    /// Decodes a carrier index; the last coordinate varies fastest.
    pub fn from_index(mut index: usize, dim: usize, modulus: Modulus) -> Self {
        let n = modulus.0 as usize;
        let mut coords = vec![0u64; dim];
        for c in coords.iter_mut().rev() {
            *c = (index % n) as u64;
            index /= n;
        }
        ModuleVec { coords, modulus }
    }

    pub fn to_index(&self) -> usize {
        let n = self.modulus.0 as usize;
        self.coords.iter().fold(0, |acc, &c| acc * n + c as usize)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coord(&self, i: usize) -> Residue {
        Residue {
            value: self.coords[i],
            modulus: self.modulus,
        }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn scale(&self, r: Residue) -> ModuleVec {
        assert_eq!(r.modulus, self.modulus);
        let n = self.modulus.0 as u128;
        let coords = self
            .coords
            .iter()
            .map(|&c| ((c as u128 * r.value as u128) % n) as u64)
            .collect();
        ModuleVec {
            coords,
            modulus: self.modulus,
        }
    }

    pub fn checked_add(&self, other: &ModuleVec) -> Result<ModuleVec, AlgebraError> {
        if self.modulus != other.modulus {
            return Err(AlgebraError::ModulusMismatch(
                self.modulus.0,
                other.modulus.0,
            ));
        }
        if self.dim() != other.dim() {
            return Err(AlgebraError::DimensionMismatch(self.dim(), other.dim()));
        }
        let n = self.modulus.0;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect();
        Ok(ModuleVec {
            coords,
            modulus: self.modulus,
        })
    }
}

impl Add for &ModuleVec {
    type Output = ModuleVec;
    fn add(self, rhs: &ModuleVec) -> ModuleVec {
        self.checked_add(rhs).expect("incompatible module vectors")
    }
}

/// Integer Laurent polynomial. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<i64, i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = IntPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    /// Ordinary polynomial from ascending coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = IntPoly::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(c, e as i64);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = IntPoly::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.min_exp().is_some_and(|e| e < 0)
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: i64) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Shifts so the lowest exponent is 0 (strips the unit factor `X^m`).
    pub fn normalized(&self) -> IntPoly {
        match self.min_exp() {
            Some(m) => self.shift(-m),
            None => IntPoly::zero(),
        }
    }

    /// Ascending dense coefficients of an ordinary polynomial.
    pub fn dense(&self) -> Vec<i64> {
        assert!(
            !self.has_negative_exponents(),
            "dense form of a Laurent polynomial"
        );
        match self.max_exp() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coeff(e)).collect(),
        }
    }

    pub fn eval_mod(&self, r: Residue) -> Result<Residue, AlgebraError> {
        poly_eval_mod(self, r)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(-c, e);
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{a}X")?,
                (_, 1) => write!(f, "X^{e}")?,
                _ => write!(f, "{a}X^{e}")?,
            }
        }
        Ok(())
    }
}

/// Evaluates `p(r)` in `Z/nZ`; negative exponents go through `r^{-1}`.
pub fn poly_eval_mod(p: &IntPoly, r: Residue) -> Result<Residue, AlgebraError> {
    let m = r.modulus();
    let mut acc = Residue::zero(m);
    for (e, c) in p.terms() {
        acc = acc + Residue::new(c, m) * r.pow(e)?;
    }
    Ok(acc)
}

/// The `k`-th cyclotomic polynomial, from `X^k - 1 = prod_{d | k} Phi_d`.
pub fn cyclotomic(k: u32) -> IntPoly {
    assert!(k >= 1, "cyclotomic level must be positive");
    let mut p = IntPoly::from_terms([(0, -1), (k as i64, 1)]);
    for d in 1..k {
        if k.is_multiple_of(d) {
            let (q, r) = div_rem_monic(&p, &cyclotomic(d)).expect("cyclotomic divisor is monic");
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// Long division of ordinary polynomials over `Z`. Returns `None` when a
/// quotient coefficient would not be an integer.
fn div_rem_monic(q: &IntPoly, p: &IntPoly) -> Option<(IntPoly, IntPoly)> {
    let divisor = p.dense();
    let lead = *divisor.last()?;
    let dp = divisor.len() - 1;
    let mut rem = q.dense();
    let mut quot = IntPoly::zero();
    while rem.len() > dp {
        let top = *rem.last().unwrap();
        if top != 0 {
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            let shift = rem.len() - 1 - dp;
            for (i, &c) in divisor.iter().enumerate() {
                rem[shift + i] -= f * c;
            }
            quot.add_term(f, shift as i64);
        }
        rem.pop();
    }
    Some((quot, IntPoly::from_coeffs(&rem)))
}

/// Whether `p` divides `q` over the integer Laurent ring: both are first
/// shifted to ordinary polynomials, then `q` is long-divided by `p`.
pub fn poly_divides(p: &IntPoly, q: &IntPoly) -> Result<bool, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroDivisor);
    }
    if q.is_zero() {
        return Ok(true);
    }
    let p = p.normalized();
    let q = q.normalized();
    if q.max_exp() < p.max_exp() {
        return Ok(false);
    }
    Ok(matches!(div_rem_monic(&q, &p), Some((_, r)) if r.is_zero()))
}
