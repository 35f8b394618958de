//! Generators-and-relations presentation of the algebra attached to a
//! dynamical Yang-Baxter map, and the graded-category checks on `KQ`.
//!
//! The grading group `G` is the opposite of the permutation group of `Q`:
//! `γ·β = β ∘ γ`. A basis vector `a ∈ KQ` has degree `λ ↦ λa`, so a basis
//! tensor `u ⊗ v` has degree `deg(v)·deg(u) = λ ↦ (λv)u`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dybm::{check_bijective, DynamicalMap};
use crate::perm;
use crate::quasigroup::Quasigroup;
use crate::report::{least_witness, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("prerequisite check `{0}` failed")]
    PrerequisiteFailed(String),
    #[error("quasigroup does not match the one σ was built over")]
    QuasigroupMismatch,
    #[error("cannot parse generator `{0}`")]
    BadGenerator(String),
    #[error("cannot parse coefficient `{0}`")]
    BadCoefficient(String),
}

/// An element of `G`, stored as the underlying permutation of `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedPermutation {
    perm: Vec<usize>,
}

impl GradedPermutation {
    pub fn unit(n: usize) -> Self {
        GradedPermutation {
            perm: perm::identity(n),
        }
    }

    /// `deg(a) = λ ↦ λa`.
    pub fn degree(q: &Quasigroup, a: usize) -> Self {
        GradedPermutation {
            perm: (0..q.order()).map(|l| q.mul(l, a)).collect(),
        }
    }

    /// Degree of the basis tensor `w_1 ⊗ ... ⊗ w_k`.
    pub fn of_tensor(q: &Quasigroup, factors: &[usize]) -> Self {
        factors
            .iter()
            .fold(GradedPermutation::unit(q.order()), |acc, &w| {
                GradedPermutation::degree(q, w).mul(&acc)
            })
    }

    /// Product `self·other` in `G`, i.e. `other ∘ self` as maps.
    pub fn mul(&self, other: &GradedPermutation) -> Self {
        GradedPermutation {
            perm: perm::compose(&other.perm, &self.perm),
        }
    }

    #[inline]
    pub fn at(&self, lambda: usize) -> usize {
        self.perm[lambda]
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }
}

/// Matrix of `T_a(f)(λ) = f(λa)` in the δ-basis: entry `[λ][ν]` is 1 iff
/// `λa = ν`.
pub fn shift_operator(q: &Quasigroup, a: usize) -> Vec<Vec<u8>> {
    let n = q.order();
    (0..n)
        .map(|l| (0..n).map(|nu| u8::from(q.mul(l, a) == nu)).collect())
        .collect()
}

/// The functions `σ^{xy}_{ac} ∈ M_Q`, stored by their supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaIndicator {
    n: usize,
    support: BTreeMap<(usize, usize, usize, usize), Vec<usize>>,
}

impl SigmaIndicator {
    pub fn value(&self, x: usize, y: usize, a: usize, c: usize, lambda: usize) -> u8 {
        self.support
            .get(&(x, y, a, c))
            .map_or(0, |s| u8::from(s.binary_search(&lambda).is_ok()))
    }

    /// `{λ : σ(λ)(x, y) = (a, c)}` in increasing order.
    pub fn support(&self, x: usize, y: usize, a: usize, c: usize) -> &[usize] {
        self.support.get(&(x, y, a, c)).map_or(&[], Vec::as_slice)
    }

    pub fn ones(&self) -> usize {
        self.support.values().map(Vec::len).sum()
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

pub fn sigma_indicator(sig: &DynamicalMap) -> SigmaIndicator {
    let n = sig.order();
    let mut support: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for l in 0..n {
        for x in 0..n {
            for y in 0..n {
                let (a, c) = sig.apply(l, x, y);
                support.entry((x, y, a, c)).or_default().push(l);
            }
        }
    }
    SigmaIndicator { n, support }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `δ_λ ⊗ δ_μ ∈ M_Q ⊗ M_Q`.
    Basis(usize, usize),
    L(usize, usize),
    Linv(usize, usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Basis(a, b) => write!(f, "B({a},{b})"),
            Generator::L(a, b) => write!(f, "L({a},{b})"),
            Generator::Linv(a, b) => write!(f, "Linv({a},{b})"),
        }
    }
}

impl FromStr for Generator {
    type Err = HopfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HopfError::BadGenerator(s.to_string());
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: usize = a.parse().map_err(|_| bad())?;
        let b: usize = b.parse().map_err(|_| bad())?;
        match head {
            "B" => Ok(Generator::Basis(a, b)),
            "L" => Ok(Generator::L(a, b)),
            "Linv" => Ok(Generator::Linv(a, b)),
            _ => Err(bad()),
        }
    }
}

/// `coeff · word`; the empty word is the unit of the free algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational64,
    pub word: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub family: u8,
    /// Sub-family within a family, counted from 1.
    pub kind: u8,
    pub index: Vec<usize>,
    /// Sorted by word, like terms merged, no zero coefficients.
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub n: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn family(&self, family: u8) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.family == family)
    }

    pub fn family_count(&self, family: u8) -> usize {
        self.family(family).count()
    }
}

#[derive(Default)]
struct Combination(BTreeMap<Vec<Generator>, Rational64>);

impl Combination {
    fn add(&mut self, coeff: i64, word: Vec<Generator>) {
        let entry = self
            .0
            .entry(word)
            .or_insert_with(|| Rational64::from_integer(0));
        *entry += Rational64::from_integer(coeff);
    }

    fn into_terms(self) -> Vec<Term> {
        self.0
            .into_iter()
            .filter(|(_, c)| *c != Rational64::from_integer(0))
            .map(|(word, coeff)| Term { coeff, word })
            .collect()
    }
}

/// Emits families (1)-(5) with `M_Q ⊗ M_Q` realised on the δ-basis:
///
/// 1. `B(λ,μ)B(λ',μ') - [λ=λ'][μ=μ'] B(λ,μ)` (kind 1) and
///    `(Σ B)·B(λ,μ) - B(λ,μ)` (kind 2);
/// 2. `Σ_c L(a,c)Linv(c,b) - δ_ab ∅` (kind 1) and the reversed product (kind 2);
/// 3. the four commutation rules with `T_a`, one per `(a, b, ν)` and `f = δ_ν`;
/// 4. the RLL relation for every `(a, b, c, d)`;
/// 5. `∅ - Σ B`.
pub fn emit_presentation(q: &Quasigroup, sig: &DynamicalMap) -> Result<Presentation, HopfError> {
    if q != sig.quasigroup() {
        return Err(HopfError::QuasigroupMismatch);
    }
    let bij = check_bijective(sig);
    if !bij.pass {
        return Err(HopfError::PrerequisiteFailed(bij.check));
    }
    let n = q.order();
    let ind = sigma_indicator(sig);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut relations = Vec::new();
    let mut push = |family: u8, kind: u8, index: Vec<usize>, c: Combination| {
        relations.push(Relation {
            family,
            kind,
            index,
            terms: c.into_terms(),
        });
    };
    use Generator::{Basis as B, Linv, L};

    // (1)
    for &(l, m) in &pairs {
        for &(l2, m2) in &pairs {
            let mut c = Combination::default();
            c.add(1, vec![B(l, m), B(l2, m2)]);
            if (l, m) == (l2, m2) {
                c.add(-1, vec![B(l, m)]);
            }
            push(1, 1, vec![l, m, l2, m2], c);
        }
    }
    for &(l, m) in &pairs {
        let mut c = Combination::default();
        for &(l2, m2) in &pairs {
            c.add(1, vec![B(l2, m2), B(l, m)]);
        }
        c.add(-1, vec![B(l, m)]);
        push(1, 2, vec![l, m], c);
    }

    // (2)
    for kind in [1u8, 2] {
        for &(a, b) in &pairs {
            let mut c = Combination::default();
            for k in 0..n {
                let word = if kind == 1 {
                    vec![L(a, k), Linv(k, b)]
                } else {
                    vec![Linv(a, k), L(k, b)]
                };
                c.add(1, word);
            }
            if a == b {
                c.add(-1, vec![]);
            }
            push(2, kind, vec![a, b], c);
        }
    }

    // (3): T_a(δ_ν) = δ_ρ with ρa = ν
    let shift = |a: usize, nu: usize| q.right_div(a, nu);
    for kind in 1u8..=4 {
        for &(a, b) in &pairs {
            for nu in 0..n {
                let mut c = Combination::default();
                for m in 0..n {
                    match kind {
                        1 => {
                            c.add(1, vec![B(shift(a, nu), m), L(a, b)]);
                            c.add(-1, vec![L(a, b), B(nu, m)]);
                        }
                        2 => {
                            c.add(1, vec![B(m, shift(b, nu)), L(a, b)]);
                            c.add(-1, vec![L(a, b), B(m, nu)]);
                        }
                        3 => {
                            c.add(1, vec![B(nu, m), Linv(a, b)]);
                            c.add(-1, vec![Linv(a, b), B(shift(b, nu), m)]);
                        }
                        _ => {
                            c.add(1, vec![B(m, nu), Linv(a, b)]);
                            c.add(-1, vec![Linv(a, b), B(m, shift(a, nu))]);
                        }
                    }
                }
                push(3, kind, vec![a, b, nu], c);
            }
        }
    }

    // (4)
    for &(a, b) in &pairs {
        for &(c_, d) in &pairs {
            let mut c = Combination::default();
            for &(x, y) in &pairs {
                for &l in ind.support(x, y, a, c_) {
                    for m in 0..n {
                        c.add(1, vec![B(l, m), L(y, d), L(x, b)]);
                    }
                }
            }
            for l in 0..n {
                let (x, y) = sig.apply(l, b, d);
                for m in 0..n {
                    c.add(-1, vec![B(m, l), L(c_, y), L(a, x)]);
                }
            }
            push(4, 1, vec![a, b, c_, d], c);
        }
    }

    // (5)
    let mut c = Combination::default();
    c.add(1, vec![]);
    for &(l, m) in &pairs {
        c.add(-1, vec![B(l, m)]);
    }
    push(5, 1, vec![], c);

    relations.sort_by(|r, s| (r.family, r.kind, &r.index).cmp(&(s.family, s.kind, &s.index)));
    let generators = pairs
        .iter()
        .map(|&(a, b)| B(a, b))
        .chain(pairs.iter().map(|&(a, b)| L(a, b)))
        .chain(pairs.iter().map(|&(a, b)| Linv(a, b)))
        .collect();
    Ok(Presentation {
        n,
        generators,
        relations,
    })
}

/// JSON form of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub n: usize,
    pub generators: Vec<String>,
    pub relations: Vec<RelationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub family: u8,
    pub kind: u8,
    pub index: Vec<usize>,
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: String,
    pub word: Vec<String>,
}

impl From<&Presentation> for PresentationFile {
    fn from(p: &Presentation) -> Self {
        PresentationFile {
            n: p.n,
            generators: p.generators.iter().map(ToString::to_string).collect(),
            relations: p
                .relations
                .iter()
                .map(|r| RelationFile {
                    family: r.family,
                    kind: r.kind,
                    index: r.index.clone(),
                    terms: r
                        .terms
                        .iter()
                        .map(|t| TermFile {
                            coeff: t.coeff.to_string(),
                            word: t.word.iter().map(ToString::to_string).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PresentationFile> for Presentation {
    type Error = HopfError;
    fn try_from(f: PresentationFile) -> Result<Self, Self::Error> {
        let generators = f
            .generators
            .iter()
            .map(|g| g.parse())
            .collect::<Result<_, _>>()?;
        let relations = f
            .relations
            .into_iter()
            .map(|r| {
                let terms = r
                    .terms
                    .into_iter()
                    .map(|t| {
                        let coeff = t
                            .coeff
                            .parse::<Rational64>()
                            .map_err(|_| HopfError::BadCoefficient(t.coeff.clone()))?;
                        let word = t.word.iter().map(|g| g.parse()).collect::<Result<_, _>>()?;
                        Ok(Term { coeff, word })
                    })
                    .collect::<Result<_, HopfError>>()?;
                Ok(Relation {
                    family: r.family,
                    kind: r.kind,
                    index: r.index,
                    terms,
                })
            })
            .collect::<Result<_, HopfError>>()?;
        Ok(Presentation {
            n: f.n,
            generators,
            relations,
        })
    }
}

/// A λ-indexed map on basis tensors of `KQ^{⊗k}`, i.e. a morphism of the
/// graded category restricted to basis vectors.
#[derive(Debug, Clone)]
pub enum GradedMorphism<'a> {
    Identity(usize),
    /// The fundamental L-operator `σ` on `KQ ⊗ KQ`.
    Sigma(&'a DynamicalMap),
    /// `f ⊗ g`, evaluated at `λ` as `f(γ(λ)) ⊗ g(λ)` with `γ` the degree of
    /// the right-hand factor.
    Tensor(Box<GradedMorphism<'a>>, Box<GradedMorphism<'a>>),
    /// `f_1 f_2 ... f_m`, applied right to left at the same `λ`.
    Compose(Vec<GradedMorphism<'a>>),
}

impl<'a> GradedMorphism<'a> {
    pub fn tensor(f: GradedMorphism<'a>, g: GradedMorphism<'a>) -> Self {
        GradedMorphism::Tensor(Box::new(f), Box::new(g))
    }

    pub fn arity(&self) -> usize {
        match self {
            GradedMorphism::Identity(k) => *k,
            GradedMorphism::Sigma(_) => 2,
            GradedMorphism::Tensor(f, g) => f.arity() + g.arity(),
            GradedMorphism::Compose(fs) => fs.first().map_or(0, GradedMorphism::arity),
        }
    }

    pub fn eval(&self, q: &Quasigroup, lambda: usize, basis: &[usize]) -> Vec<usize> {
        debug_assert_eq!(basis.len(), self.arity());
        match self {
            GradedMorphism::Identity(_) => basis.to_vec(),
            GradedMorphism::Sigma(s) => {
                let (a, c) = s.apply(lambda, basis[0], basis[1]);
                vec![a, c]
            }
            GradedMorphism::Tensor(f, g) => {
                let (left, right) = basis.split_at(f.arity());
                let gamma = GradedPermutation::of_tensor(q, right);
                let mut out = f.eval(q, gamma.at(lambda), left);
                out.extend(g.eval(q, lambda, right));
                out
            }
            GradedMorphism::Compose(fs) => fs
                .iter()
                .rev()
                .fold(basis.to_vec(), |v, f| f.eval(q, lambda, &v)),
        }
    }
}

/// The defining equation of the object `(KQ, σ)`:
/// `(σ ⊗ id)(id ⊗ L)(L ⊗ id) = (id ⊗ L)(L ⊗ id)(id ⊗ σ)` with `L = σ`;
/// witness `(λ, x, y, z)`.
pub fn check_fundamental_l(sig: &DynamicalMap) -> Report {
    use GradedMorphism::{Compose, Identity, Sigma};
    let q = sig.quasigroup();
    let t = GradedMorphism::tensor;
    let sigma_id = || t(Sigma(sig), Identity(1));
    let id_sigma = || t(Identity(1), Sigma(sig));
    let lhs = Compose(vec![sigma_id(), id_sigma(), sigma_id()]);
    let rhs = Compose(vec![id_sigma(), sigma_id(), id_sigma()]);
    let w = least_witness(sig.order(), 4, |p| {
        lhs.eval(q, p[0], &p[1..]) != rhs.eval(q, p[0], &p[1..])
    });
    Report::from_witness("fundamental-l", w)
}

/// `σ(λ)` maps each basis tensor `u ⊗ v` to one of the same degree value at
/// `λ`; witness `(λ, u, v)`.
pub fn check_sigma_morphism(sig: &DynamicalMap, q: &Quasigroup) -> Report {
    let w = least_witness(sig.order(), 3, |p| {
        let (l, u, v) = (p[0], p[1], p[2]);
        let (a, c) = sig.apply(l, u, v);
        GradedPermutation::of_tensor(q, &[u, v]).at(l)
            != GradedPermutation::of_tensor(q, &[a, c]).at(l)
    });
    Report::from_witness("morphism", w)
}
