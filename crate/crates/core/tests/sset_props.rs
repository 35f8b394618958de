use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sset_dybm::sset::SSetFile;
use sset_dybm::{
    affine_eta, affine_sset, check_displacement, check_hps, conjugation_sset, eta_table, eval_word,
    perm, phi_of_word, search_roots, validate_sset, AffineTernary, FiniteSSet, Modulus, Quasigroup,
    TernaryOp, Word,
};

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_abs: i64) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::new(
        (0..len)
            .map(|_| rng.gen_range(-max_abs..=max_abs))
            .collect(),
    )
    .unwrap()
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Every s-set on `n` points, by brute force over families of bijections.
fn all_ssets(n: usize) -> Vec<FiniteSSet> {
    let perms = all_perms(n);
    let total = perms.len().pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let maps = (0..n)
                .map(|_| {
                    let p = perms[code % perms.len()].clone();
                    code /= perms.len();
                    p
                })
                .collect();
            validate_sset(maps).ok()
        })
        .collect()
}

/// A mixed sample of s-sets with at most six points.
fn sample_ssets() -> Vec<FiniteSSet> {
    let mut out = all_ssets(2);
    out.extend(all_ssets(3));
    for (n, r) in [(4, 3), (5, 2), (5, 3), (5, 4), (6, 5)] {
        let m = Modulus::new(n).unwrap();
        out.push(affine_sset(m, 1, m.residue(r)).unwrap().sset().clone());
    }
    let m2 = Modulus::new(2).unwrap();
    out.push(affine_sset(m2, 2, m2.residue(1)).unwrap().sset().clone());
    out.push(conjugation_sset(&Quasigroup::symmetric_group(3)).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 4..=6 {
        let p = random_perm(&mut rng, n);
        out.push(validate_sset(vec![p; n]).unwrap());
    }
    out
}

#[test]
fn small_sset_census() {
    // the constant families alone give (n!) s-sets; others come from
    // genuinely varying maps
    let two = all_ssets(2);
    let three = all_ssets(3);
    assert!(two.len() >= 2);
    assert!(three.len() >= 6);
    assert!(three.iter().any(|s| s.map(0) != s.map(1)));
}

#[test]
fn every_word_gives_a_distributive_operation() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for s in sample_ssets() {
        for _ in 0..6 {
            let w = random_word(&mut rng, 4, 3);
            let rep = check_hps(&eta_table(&s, &w));
            assert!(
                rep.distributive.pass,
                "{w} on {:?}: {:?}",
                s.maps(),
                rep.distributive.witness
            );
        }
    }
}

#[test]
fn every_four_point_sset_is_distributive_for_a_fixed_word() {
    let w = Word::new(vec![2, -1, 1]).unwrap();
    let ssets = all_ssets(4);
    assert!(!ssets.is_empty());
    for s in ssets {
        assert!(check_hps(&eta_table(&s, &w)).distributive.pass);
    }
}

#[test]
fn words_intertwine_the_s_maps() {
    // s_{η(x,y,u)} ∘ w(s_x, s_y) = w(s_x, s_y) ∘ s_u
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for s in sample_ssets() {
        let n = s.size();
        for _ in 0..4 {
            let w = random_word(&mut rng, 4, 3);
            for x in 0..n {
                for y in 0..n {
                    let wp = s.word_permutation(&w, x, y);
                    for u in 0..n {
                        let lhs = perm::compose(s.map(wp[u]), &wp);
                        let rhs = perm::compose(&wp, s.map(u));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn word_table_agrees_with_pointwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let s = conjugation_sset(&Quasigroup::symmetric_group(3)).unwrap();
    for _ in 0..10 {
        let w = random_word(&mut rng, 5, 3);
        let t = eta_table(&s, &w);
        for x in 0..6 {
            for y in 0..6 {
                for z in 0..6 {
                    assert_eq!(t.apply(x, y, z), eval_word(&s, &w, x, y, z));
                }
            }
        }
    }
}

#[test]
fn conjugation_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..50 {
        let (p, a, b) = (
            random_perm(&mut rng, 6),
            random_perm(&mut rng, 6),
            random_perm(&mut rng, 6),
        );
        let pinv = perm::inverse(&p);
        let conj = |f: &[usize]| perm::compose(&perm::compose(&p, f), &pinv);
        let w = random_word(&mut rng, 5, 3);
        assert_eq!(w.evaluate(&conj(&a), &conj(&b)), conj(&w.evaluate(&a, &b)));
    }
}

#[test]
fn affine_powers() {
    // s_x^i(y) = (1 - r^i) x + r^i y
    for (n, dim) in [(5u64, 1usize), (7, 1), (3, 2), (4, 1)] {
        let m = Modulus::new(n).unwrap();
        for r in m.units() {
            let a = affine_sset(m, dim, r).unwrap();
            let size = a.sset().size();
            for i in -6i64..=6 {
                let ri = r.pow(i).unwrap();
                let one = sset_dybm::Residue::one(m);
                for x in 0..size {
                    let p = a.sset().power(x, i);
                    for (y, &py) in p.iter().enumerate() {
                        let expect = a
                            .vector(x)
                            .scale(one - ri)
                            .checked_add(&a.vector(y).scale(ri))
                            .unwrap();
                        assert_eq!(py, expect.to_index());
                    }
                }
            }
        }
    }
}

#[test]
fn closed_form_agrees_with_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for n in 2..=7u64 {
        let m = Modulus::new(n).unwrap();
        for dim in 1..=2 {
            for r in m.units() {
                let a = affine_sset(m, dim, r).unwrap();
                for _ in 0..3 {
                    let w = random_word(&mut rng, 4, 3);
                    let closed = affine_eta(&a, &w).unwrap_or_else(|e| panic!("{w} r={r:?}: {e}"));
                    let (al, be, ga) = closed.coeffs();
                    assert_eq!((al + be + ga) % n, 1 % n);
                }
            }
        }
    }
}

#[test]
fn roots_give_the_symmetric_affine_form() {
    // Φ_I(r) = 0 makes η_I = -r^d x + y + r^d z, which satisfies every axiom
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    let mut hits = 0;
    for _ in 0..300 {
        let n = rng.gen_range(3..=13u64);
        let m = Modulus::new(n).unwrap();
        let mut w = random_word(&mut rng, 5, 3);
        if w.len() < 2 {
            w = Word::new(vec![w.exponents()[0], 1]).unwrap();
        }
        for r in search_roots(&w, m).unwrap() {
            hits += 1;
            let a = affine_sset(m, 1, r).unwrap();
            let closed = affine_eta(&a, &w).unwrap();
            let rd = r.pow(w.degree()).unwrap();
            let expect = AffineTernary::new(m, 1, -rd, sset_dybm::Residue::one(m), rd);
            assert_eq!(closed, expect);
            let op = TernaryOp::Affine(closed);
            assert!(check_hps(&op).pass());
            assert!(check_displacement(&op).pass);
            let (phi, d) = phi_of_word(&w).unwrap();
            assert_eq!(d, w.degree());
            assert!(phi.eval_mod(r).unwrap().is_zero());
        }
    }
    assert!(hits > 20, "only {hits} roots sampled");
}

#[test]
fn stated_examples() {
    let m5 = Modulus::new(5).unwrap();
    let a = affine_sset(m5, 1, m5.residue(2)).unwrap();
    let w21 = Word::new(vec![2, 1]).unwrap();
    let (phi, d) = phi_of_word(&w21).unwrap();
    assert_eq!(phi.to_string(), "1 - X^2 + X^3");
    assert_eq!(d, 3);
    assert_eq!(search_roots(&w21, m5).unwrap(), vec![m5.residue(2)]);
    assert_eq!(
        affine_eta(&a, &w21).unwrap(),
        AffineTernary::from_ints(m5, 1, [-3, 1, 3])
    );
    let w2m1 = Word::new(vec![2, -1]).unwrap();
    assert!(search_roots(&w2m1, m5).unwrap().contains(&m5.residue(3)));
    let w211 = Word::new(vec![2, 1, 1]).unwrap();
    assert_eq!(
        affine_eta(&a, &w211).unwrap(),
        AffineTernary::from_ints(m5, 1, [-1, 1, 1])
    );
}

#[test]
fn non_root_words_break_idempotence_only() {
    let m5 = Modulus::new(5).unwrap();
    let a = affine_sset(m5, 1, m5.residue(2)).unwrap();
    let w = Word::new(vec![1, 1]).unwrap();
    let closed = affine_eta(&a, &w).unwrap();
    assert_eq!(closed, AffineTernary::from_ints(m5, 1, [4, 3, 4]));
    let op = TernaryOp::Affine(closed);
    let rep = check_hps(&op);
    assert!(rep.distributive.pass);
    assert_eq!(rep.idempotent.witness, vec![0, 1]);
    // the point quoted alongside the example fails as well
    assert_ne!(op.apply(1, 0, 1), 0);
}

#[test]
fn conjugation_single_letter_fails_displacement() {
    let s = conjugation_sset(&Quasigroup::symmetric_group(3)).unwrap();
    let op = eta_table(&s, &Word::new(vec![1]).unwrap());
    let rep = check_displacement(&op);
    assert!(!rep.pass);
    let [x, y, z, w] = rep.witness[..] else {
        panic!()
    };
    assert_ne!(op.apply(x, y, z), op.apply(w, op.apply(x, y, w), z));
}

#[test]
fn invalid_families_are_rejected() {
    // x = 1, y = 0 would need s_1 = s_1 s_1
    let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![0, 1, 2]];
    assert!(validate_sset(bad).is_err());
    assert!(validate_sset(vec![vec![0, 0], vec![0, 1]]).is_err());
    let f = SSetFile {
        n: 3,
        maps: vec![vec![0, 1], vec![1, 0]],
    };
    assert!(FiniteSSet::try_from(f).is_err());
}

#[test]
fn sset_json_round_trip() {
    let s = conjugation_sset(&Quasigroup::symmetric_group(3)).unwrap();
    let text = serde_json::to_string(&SSetFile::from(&s)).unwrap();
    let back: SSetFile = serde_json::from_str(&text).unwrap();
    assert_eq!(FiniteSSet::try_from(back).unwrap(), s);
}
