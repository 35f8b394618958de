//! Permutations of `{0, .., n-1}` as image tables.

/// `(f ∘ g)(x) = f(g(x))`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_bijection(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

/// `p^e` by repeated squaring; negative exponents invert first.
pub fn pow(p: &[usize], e: i64) -> Vec<usize> {
    let mut base = if e < 0 { inverse(p) } else { p.to_vec() };
    let mut exp = e.unsigned_abs();
    let mut acc = identity(p.len());
    while exp > 0 {
        if exp & 1 == 1 {
            acc = compose(&acc, &base);
        }
        base = compose(&base, &base);
        exp >>= 1;
    }
    acc
}
