//! Dynamical Yang-Baxter maps built from a ternary operation and a
//! quasigroup, and the exhaustive checks on them.
//!
//! Throughout, the parameter set and the carrier are both the quasigroup
//! `Q`, acting on itself by `λx = mul(λ, x)`. Maps on `Q^3` compose right to
//! left, and a parameter shift such as `λX^(3)` multiplies `λ` by the named
//! component of the vector the factor is applied to.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm;
use crate::quasigroup::{Quasigroup, QuasigroupError, QuasigroupFile};
use crate::report::{least_witness, Report};
use crate::ternary::{check_displacement, check_hps, TernaryOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DybmError {
    #[error("size mismatch: {what} has {actual} elements, expected {expected}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("prerequisite check `{0}` failed")]
    PrerequisiteFailed(String),
    #[error("not a bijection")]
    NotBijective,
    #[error("entry ({a}, {c}) out of range for order {n}")]
    EntryOutOfRange { a: usize, c: usize, n: usize },
    #[error("weight-zero identity violated at λ={lambda}, u={u}, v={v}")]
    WeightZero { lambda: usize, u: usize, v: usize },
    #[error(transparent)]
    Quasigroup(#[from] QuasigroupError),
}

/// `π: Q → S` with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Bijection {
    pi: Vec<usize>,
    pi_inv: Vec<usize>,
}

impl Bijection {
    pub fn new(pi: Vec<usize>) -> Result<Self, DybmError> {
        if !perm::is_bijection(&pi) {
            return Err(DybmError::NotBijective);
        }
        let pi_inv = perm::inverse(&pi);
        Ok(Bijection { pi, pi_inv })
    }

    pub fn identity(n: usize) -> Self {
        Bijection {
            pi: perm::identity(n),
            pi_inv: perm::identity(n),
        }
    }

    pub fn random(n: usize, seed: u64) -> Self {
        let mut pi = perm::identity(n);
        pi.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Bijection::new(pi).unwrap()
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    #[inline]
    pub fn forward(&self, q: usize) -> usize {
        self.pi[q]
    }

    #[inline]
    pub fn backward(&self, s: usize) -> usize {
        self.pi_inv[s]
    }
}

impl TryFrom<Vec<usize>> for Bijection {
    type Error = DybmError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Bijection::new(v)
    }
}

impl From<Bijection> for Vec<usize> {
    fn from(b: Bijection) -> Self {
        b.pi
    }
}

/// `σ(λ): Q × Q → Q × Q` for every `λ ∈ Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalMap {
    q: Quasigroup,
    table: Vec<(usize, usize)>,
}

impl DynamicalMap {
    pub fn from_fn(q: Quasigroup, f: impl Fn(usize, usize, usize) -> (usize, usize)) -> Self {
        let n = q.order();
        let mut table = Vec::with_capacity(n * n * n);
        for l in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let (a, c) = f(l, u, v);
                    assert!(a < n && c < n, "σ entry out of range");
                    table.push((a, c));
                }
            }
        }
        DynamicalMap { q, table }
    }

    pub fn from_nested(
        q: Quasigroup,
        sigma: Vec<Vec<Vec<(usize, usize)>>>,
    ) -> Result<Self, DybmError> {
        let n = q.order();
        let table: Vec<(usize, usize)> = sigma.into_iter().flatten().flatten().collect();
        if table.len() != n * n * n {
            return Err(DybmError::SizeMismatch {
                what: "σ table",
                expected: n * n * n,
                actual: table.len(),
            });
        }
        if let Some(&(a, c)) = table.iter().find(|&&(a, c)| a >= n || c >= n) {
            return Err(DybmError::EntryOutOfRange { a, c, n });
        }
        Ok(DynamicalMap { q, table })
    }

    pub fn identity(q: Quasigroup) -> Self {
        DynamicalMap::from_fn(q, |_, u, v| (u, v))
    }

    pub fn order(&self) -> usize {
        self.q.order()
    }

    pub fn quasigroup(&self) -> &Quasigroup {
        &self.q
    }

    #[inline]
    pub fn apply(&self, lambda: usize, u: usize, v: usize) -> (usize, usize) {
        let n = self.q.order();
        self.table[(lambda * n + u) * n + v]
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<(usize, usize)>>> {
        let n = self.order();
        (0..n)
            .map(|l| {
                (0..n)
                    .map(|u| (0..n).map(|v| self.apply(l, u, v)).collect())
                    .collect()
            })
            .collect()
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, lambda: usize, u: usize, v: usize, value: (usize, usize)) -> Self {
        let n = self.order();
        let mut out = self.clone();
        out.table[(lambda * n + u) * n + v] = value;
        out
    }

    /// `(λc)a = (λv)u` for `(a, c) = σ(λ)(u, v)`; witness `(λ, u, v)`.
    pub fn weight_zero_violation(&self) -> Option<(usize, usize, usize)> {
        let q = &self.q;
        least_witness(self.order(), 3, |t| {
            let (l, u, v) = (t[0], t[1], t[2]);
            let (a, c) = self.apply(l, u, v);
            q.mul(q.mul(l, c), a) != q.mul(q.mul(l, v), u)
        })
        .map(|t| (t[0], t[1], t[2]))
    }
}

/// `μ(a, b, c) = η(b, a, c)`.
pub fn mu_from_eta(eta: &TernaryOp) -> TernaryOp {
    eta.swap_first_two()
}

/// Both four-variable identities for `μ`; witnesses `(a, b, c, d)`.
pub fn check_mu_identities(mu: &TernaryOp) -> Vec<Report> {
    let t = mu.to_table();
    let n = t.size();
    let first = least_witness(n, 4, |p| {
        let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
        let m = t.get(a, b, c);
        t.get(a, m, t.get(m, c, d)) != t.get(a, b, t.get(b, c, d))
    });
    let second = least_witness(n, 4, |p| {
        let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
        let e = t.get(b, c, d);
        t.get(t.get(a, b, c), c, d) != t.get(t.get(a, b, e), e, d)
    });
    vec![
        Report::from_witness("mu-identity-1", first),
        Report::from_witness("mu-identity-2", second),
    ]
}

/// For each argument position, whether `μ(a, b, c) = d` has exactly one
/// solution in that position for every choice of the other arguments and
/// `d`. A witness is the two fixed arguments (in positional order) followed
/// by two colliding values of the free one.
pub fn check_unique_solvability(mu: &TernaryOp) -> Vec<Report> {
    let t = mu.to_table();
    let n = t.size();
    (0..3)
        .map(|pos| {
            let eval = |fixed: &[usize], free: usize| match pos {
                0 => t.get(free, fixed[0], fixed[1]),
                1 => t.get(fixed[0], free, fixed[1]),
                _ => t.get(fixed[0], fixed[1], free),
            };
            let witness = least_witness(n, 2, |fixed| {
                let mut seen = vec![false; n];
                (0..n).any(|free| std::mem::replace(&mut seen[eval(fixed, free)], true))
            })
            .map(|fixed| {
                let mut first_hit = vec![None; n];
                for free in 0..n {
                    let out = eval(&fixed, free);
                    if let Some(prev) = first_hit[out] {
                        return vec![fixed[0], fixed[1], prev, free];
                    }
                    first_hit[out] = Some(free);
                }
                unreachable!()
            });
            Report::from_witness(format!("solvability-{}", pos + 1), witness)
        })
        .collect()
}

/// `σ(λ)(u, v) = (h \ ((λv)u), λ \ h)` with
/// `h = π⁻¹(μ(π(λ), π(λv), π((λv)u)))`.
pub fn build_sigma(
    eta: &TernaryOp,
    q: &Quasigroup,
    pi: &Bijection,
) -> Result<DynamicalMap, DybmError> {
    let n = q.order();
    if eta.size() != n {
        return Err(DybmError::SizeMismatch {
            what: "ternary operation",
            expected: n,
            actual: eta.size(),
        });
    }
    if pi.len() != n {
        return Err(DybmError::SizeMismatch {
            what: "bijection",
            expected: n,
            actual: pi.len(),
        });
    }
    let hps = check_hps(eta);
    for r in [&hps.idempotent, &hps.distributive] {
        if !r.pass {
            return Err(DybmError::PrerequisiteFailed(r.check.clone()));
        }
    }
    let disp = check_displacement(eta);
    if !disp.pass {
        return Err(DybmError::PrerequisiteFailed(disp.check));
    }
    let mu = mu_from_eta(eta).to_table();
    let sigma = DynamicalMap::from_fn(q.clone(), |l, u, v| {
        let lv = q.mul(l, v);
        let lvu = q.mul(lv, u);
        let h = pi.backward(mu.get(pi.forward(l), pi.forward(lv), pi.forward(lvu)));
        (q.left_div(h, lvu), q.left_div(l, h))
    });
    if let Some((lambda, u, v)) = sigma.weight_zero_violation() {
        return Err(DybmError::WeightZero { lambda, u, v });
    }
    Ok(sigma)
}

/// Braid form of the dynamical Yang-Baxter equation; witness `(λ, x, y, z)`.
pub fn check_dybe(sig: &DynamicalMap) -> Report {
    let q = sig.quasigroup();
    // σ12(λX^(3)) and σ23(λ)
    let s12 = |l: usize, (x, y, z): (usize, usize, usize)| {
        let (a, c) = sig.apply(q.mul(l, z), x, y);
        (a, c, z)
    };
    let s23 = |l: usize, (x, y, z): (usize, usize, usize)| {
        let (b, c) = sig.apply(l, y, z);
        (x, b, c)
    };
    let w = least_witness(sig.order(), 4, |t| {
        let (l, v) = (t[0], (t[1], t[2], t[3]));
        s12(l, s23(l, s12(l, v))) != s23(l, s12(l, s23(l, v)))
    });
    Report::from_witness("dybe", w)
}

/// `R(λ)(x, y) = σ(λ)(y, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RForm(pub DynamicalMap);

pub fn to_r_form(sig: &DynamicalMap) -> RForm {
    RForm(DynamicalMap::from_fn(
        sig.quasigroup().clone(),
        |l, x, y| sig.apply(l, y, x),
    ))
}

/// `R23(λ) R13(λX^(2)) R12(λ) = R12(λX^(3)) R13(λ) R23(λX^(1))`; witness
/// `(λ, x, y, z)`.
pub fn check_qdybe(r: &RForm) -> Report {
    let r = &r.0;
    let q = r.quasigroup();
    let w = least_witness(r.order(), 4, |t| {
        let (l, x, y, z) = (t[0], t[1], t[2], t[3]);
        // left-hand side, applied right to left
        let (a, b) = r.apply(l, x, y);
        let (a, c) = r.apply(q.mul(l, b), a, z);
        let (b, c) = r.apply(l, b, c);
        let lhs = (a, b, c);
        // right-hand side
        let (b2, c2) = r.apply(q.mul(l, x), y, z);
        let (a2, c2) = r.apply(l, x, c2);
        let (a2, b2) = r.apply(q.mul(l, c2), a2, b2);
        lhs != (a2, b2, c2)
    });
    Report::from_witness("qdybe", w)
}

/// Each `σ(λ)` permutes `Q × Q`; witness `(λ, u, v, u', v')` where `(u, v)`
/// is the earlier preimage of the collided value.
pub fn check_bijective(sig: &DynamicalMap) -> Report {
    let n = sig.order();
    let witness = (0..n).find_map(|l| {
        let mut first: Vec<Option<(usize, usize)>> = vec![None; n * n];
        for u in 0..n {
            for v in 0..n {
                let (a, c) = sig.apply(l, u, v);
                match first[a * n + c] {
                    Some((pu, pv)) => return Some(vec![l, pu, pv, u, v]),
                    None => first[a * n + c] = Some((u, v)),
                }
            }
        }
        None
    });
    Report::from_witness("bijective", witness)
}

/// JSON form: `{"n": N, "sigma": [λ][u][v] = [a, c], "quasigroup": {...}}`.
/// Without a quasigroup the additive group `Z/NZ` is assumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaFile {
    pub n: usize,
    pub sigma: Vec<Vec<Vec<(usize, usize)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasigroup: Option<QuasigroupFile>,
}

impl From<&DynamicalMap> for SigmaFile {
    fn from(s: &DynamicalMap) -> Self {
        SigmaFile {
            n: s.order(),
            sigma: s.to_nested(),
            quasigroup: Some(s.quasigroup().into()),
        }
    }
}

impl TryFrom<SigmaFile> for DynamicalMap {
    type Error = DybmError;
    fn try_from(f: SigmaFile) -> Result<Self, Self::Error> {
        let q = match f.quasigroup {
            Some(qf) => Quasigroup::try_from(qf)?,
            None => Quasigroup::cyclic(f.n.max(1)),
        };
        if q.order() != f.n {
            return Err(DybmError::SizeMismatch {
                what: "quasigroup",
                expected: f.n,
                actual: q.order(),
            });
        }
        DynamicalMap::from_nested(q, f.sigma)
    }
}
