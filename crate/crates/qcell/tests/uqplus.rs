mod common;

use common::{ty, Lcg};
use qcell::rootsys::{CartanType, RootSystem};
use qcell::scalar::{LPoly, QScalar};
use qcell::shuffle::ShuffleAlgebra;
use qcell::uqplus::*;
use qcell::words::{Word, WordComb};

const P: u64 = 1_000_000_007;

fn alg(t: &str) -> ShuffleAlgebra {
    ShuffleAlgebra::new(ty(t)).unwrap()
}

fn e(a: &ShuffleAlgebra, i: u8) -> ShuffleElement {
    a.generator(i)
}

/// Free-algebra value of an expression, brackets expanded with the form directly.
fn free_eval(a: &ShuffleAlgebra, x: &GenExpr) -> WordComb {
    let n = a.rank();
    match x {
        GenExpr::Gen(i) => WordComb::letter(*i),
        GenExpr::Scalar(s, y) => free_eval(a, y).scale(s),
        GenExpr::Sum(ys) => ys.iter().fold(WordComb::zero(), |acc, y| acc.add(&free_eval(a, y))),
        GenExpr::Product(ys) => ys.iter().fold(WordComb::one(), |acc, y| acc.concat(&free_eval(a, y))),
        GenExpr::Bracket(u, v) => {
            let (du, dv) = (u.degree(n).unwrap(), v.degree(n).unwrap());
            let m = a.root_system().form().eval(&du, &dv) as i32;
            let (fu, fv) = (free_eval(a, u), free_eval(a, v));
            fu.concat(&fv).sub(&fv.concat(&fu).scale(&QScalar::q_pow(m)))
        }
    }
}

fn random_expr(rng: &mut Lcg, rank: usize, depth: usize) -> GenExpr {
    let gen = |rng: &mut Lcg| GenExpr::gen((rng.below(rank) + 1) as u8);
    if depth == 0 {
        return gen(rng);
    }
    match rng.below(4) {
        0 => gen(rng),
        1 => GenExpr::scaled(QScalar::q_pow(rng.below(5) as i32 - 2), random_expr(rng, rank, depth - 1)),
        2 => GenExpr::product(vec![random_expr(rng, rank, depth - 1), random_expr(rng, rank, depth - 1)]),
        _ => GenExpr::bracket(random_expr(rng, rank, depth - 1), random_expr(rng, rank, depth - 1)),
    }
}

/// Rank over `F_P` after specializing `q`; a lower bound for the rank over `Q(q)`.
fn rank_mod(rows: &[ShuffleElement], q: u64) -> usize {
    let mut words: Vec<Word> = rows.iter().flat_map(|r| r.words().copied()).collect();
    words.sort();
    words.dedup();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| words.iter().map(|w| r.coeff(*w).eval_mod(q, P).unwrap()).collect())
        .collect();
    let pow = |mut b: u64, mut k: u64| {
        let mut r = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                r = (r as u128 * b as u128 % P as u128) as u64;
            }
            b = (b as u128 * b as u128 % P as u128) as u64;
            k >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..words.len() {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = pow(m[rank][c], P - 2);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = (m[r][c] as u128 * inv as u128 % P as u128) as u64;
                for k in 0..words.len() {
                    let sub = (f as u128 * m[rank][k] as u128 % P as u128) as u64;
                    m[r][k] = (m[r][k] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn words_of_content(content: &[i64]) -> Vec<Vec<u8>> {
    if content.iter().all(|&c| c == 0) {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &c) in content.iter().enumerate() {
        if c > 0 {
            let mut rest = content.to_vec();
            rest[i] -= 1;
            for mut w in words_of_content(&rest) {
                w.insert(0, i as u8 + 1);
                out.push(w);
            }
        }
    }
    out
}

fn kostant(roots: &[Vec<i64>], target: &[i64]) -> usize {
    fn rec(roots: &[Vec<i64>], k: usize, rem: &mut Vec<i64>) -> usize {
        if rem.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == roots.len() {
            return 0;
        }
        let mut total = rec(roots, k + 1, rem);
        let mut used = 0;
        while rem.iter().zip(&roots[k]).all(|(a, b)| a >= b) {
            for (a, b) in rem.iter_mut().zip(&roots[k]) {
                *a -= b;
            }
            used += 1;
            total += rec(roots, k + 1, rem);
        }
        for (a, b) in rem.iter_mut().zip(&roots[k]) {
            *a += used * b;
        }
        total
    }
    rec(roots, 0, &mut target.to_vec())
}

#[test]
fn canonical_examples() {
    let a2 = alg("A2");
    let e1 = canonical(&a2, &GenExpr::gen(1)).unwrap();
    assert_eq!(e1.canonical_terms(), vec![(Word::from_letters(&[1]), QScalar::one())]);
    let serre = GenExpr::bracket(GenExpr::gen(1), GenExpr::bracket(GenExpr::gen(1), GenExpr::gen(2)));
    assert!(canonical(&a2, &serre).unwrap().is_zero());
    assert!(canonical(&a2, &GenExpr::gen(3)).is_err());
    let json = serde_json::to_value(canonical_terms(&e1)).unwrap();
    assert_eq!(json[0]["word"], serde_json::json!([1]));
    assert_eq!(from_canonical_terms(&canonical_terms(&e1)), e1);
}

#[test]
fn serre_relators_vanish() {
    for t in CartanType::all_up_to(4) {
        let a = ShuffleAlgebra::new(t).unwrap();
        let rel = a.serre_relators();
        assert_eq!(rel.len(), t.rank * (t.rank - 1));
        for (i, j, r) in rel {
            assert!(r.is_zero(), "{t}: relator ({i}, {j})");
        }
        // one power lower survives whenever the nodes are joined
        let c = a.root_system().cartan();
        for i in 1..=t.rank {
            for j in 1..=t.rank {
                if i != j && c[i - 1][j - 1] != 0 {
                    let k = (-c[i - 1][j - 1]) as usize;
                    assert!(!a.ad_power(i as u8, k, &e(&a, j as u8)).is_zero(), "{t} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn model_dimensions_match_pbw_counts() {
    for (t, max_h) in [("A2", 4), ("B2", 4), ("G2", 5), ("A3", 4)] {
        let a = alg(t);
        let roots = common::roots_by_closure(ty(t));
        let n = a.rank();
        let mut contents = vec![vec![0i64; n]];
        for _ in 0..max_h {
            let mut next = Vec::new();
            for c in &contents {
                for i in 0..n {
                    let mut d = c.clone();
                    d[i] += 1;
                    if !next.contains(&d) {
                        next.push(d);
                    }
                }
            }
            for c in &next {
                let rows: Vec<ShuffleElement> = words_of_content(c).iter().map(|w| a.monomial(Word::from_letters(w))).collect();
                assert_eq!(rank_mod(&rows, 12345), kostant(&roots, c), "{t} {c:?}");
            }
            contents = next;
        }
    }
}

#[test]
fn canonical_is_multiplicative() {
    let mut rng = Lcg(77);
    let types = ["A2", "B2", "G2", "A3", "B3", "C3", "A4", "D4"];
    for k in 0..200 {
        let a = alg(types[k % types.len()]);
        let x = random_expr(&mut rng, a.rank(), 3);
        let y = random_expr(&mut rng, a.rank(), 3);
        let cx = canonical(&a, &x).unwrap();
        let cy = canonical(&a, &y).unwrap();
        let prod = canonical(&a, &GenExpr::product(vec![x.clone(), y.clone()])).unwrap();
        assert_eq!(prod, a.mul(&cx, &cy));
        assert_eq!(prod, a.from_free(&free_eval(&a, &GenExpr::product(vec![x.clone(), y.clone()]))));
        assert_eq!(cx, a.from_free(&free_eval(&a, &x)));
        let sum = canonical(&a, &GenExpr::sum(vec![x.clone(), GenExpr::scaled(QScalar::int(-1), x.clone())])).unwrap();
        assert!(sum.is_zero());
        if !prod.is_zero() {
            let (dx, dy) = (x.degree(a.rank()).unwrap(), y.degree(a.rank()).unwrap());
            let d: Vec<i64> = dx.iter().zip(&dy).map(|(p, q)| p + q).collect();
            assert_eq!(prod.degree(a.rank()), Some(d));
        }
    }
}

#[test]
fn q_commutator_examples() {
    let a = alg("A2");
    let e1 = e(&a, 1);
    let self_br = q_commutator(&a, &e1, &e1).unwrap();
    let expect = a.mul(&e1, &e1).scale(&(&QScalar::one() - &QScalar::q_pow(2)));
    assert_eq!(self_br, expect);
    let inhom = e1.add(&e(&a, 2));
    assert!(matches!(q_commutator(&a, &inhom, &e1), Err(UqError::Inhomogeneous)));

    let g2 = alg("G2");
    let x = g2_generators(&g2, G2Nesting::Lyndon).unwrap();
    assert!(q_commutator(&g2, &x[2], &x[3]).unwrap().is_zero());
    // x_1 x_2 = q^3 x_2 x_1
    let rel = a_minus_qb(&g2, &g2.mul(&x[0], &x[1]), &g2.mul(&x[1], &x[0]), 3);
    assert!(rel.is_zero());

    let f4 = alg("F4");
    let w = f4.root_system().reduced_word(F4Which::X.word()).unwrap();
    let v: Vec<ShuffleElement> = [1, 2, 3].iter().map(|&k| root_vector(&f4, &w, k, RootVectorOptions::default()).unwrap()).collect();
    assert_eq!(q_commutator(&f4, &v[0], &v[2]).unwrap(), v[1]);
}

fn a_minus_qb(_: &ShuffleAlgebra, a: &ShuffleElement, b: &ShuffleElement, m: i32) -> ShuffleElement {
    let mut r = a.clone();
    r.add_scaled_assign(b, &LPoly::monomial(-1, m));
    r
}

#[test]
fn lusztig_examples() {
    let a = alg("A2");
    let t = lusztig_t(&a, 1, &MixedElement::k(2, vec![0, 0]));
    assert!(t.equals(&a, &MixedElement::one(2)));
    let t12 = lusztig_t(&a, 1, &MixedElement::e(2, 2));
    let plus = t12.plus_part().expect("T_1(E_2) lies in the positive part");
    assert_eq!(a.from_free(&plus), q_commutator(&a, &e(&a, 1), &e(&a, 2)).unwrap());
    assert_eq!(a.from_free(&generator_image_free(&a, 1, 2)), a.from_free(&plus));
    // T_i(E_i) has an F factor
    assert!(lusztig_t(&a, 1, &MixedElement::e(2, 1)).plus_part().is_none());

    let f4 = alg("F4");
    let w = f4.root_system().reduced_word(F4Which::X.word()).unwrap();
    assert_eq!(root_vector(&f4, &w, 24, RootVectorOptions::default()).unwrap(), e(&f4, 3));
    assert_eq!(root_vector(&f4, &w, 3, RootVectorOptions::default()).unwrap(), e(&f4, 2));
    assert_eq!(root_vector(&f4, &w, 1, RootVectorOptions::default()).unwrap(), e(&f4, 1));
}

#[test]
fn lusztig_is_multiplicative() {
    let a = alg("B2");
    let gens = [MixedElement::e(2, 1), MixedElement::e(2, 2), MixedElement::f(2, 1), MixedElement::f(2, 2), MixedElement::k(2, vec![1, -1])];
    for i in 1..=2u8 {
        for x in &gens {
            for y in &gens {
                let lhs = lusztig_t(&a, i, &x.mul(&a, y));
                let rhs = lusztig_t(&a, i, x).mul(&a, &lusztig_t(&a, i, y));
                assert!(lhs.equals(&a, &rhs), "T_{i} not multiplicative");
            }
        }
    }
}

#[test]
fn braid_relations_on_generators() {
    for (t, m) in [("A2", 3), ("B2", 4), ("G2", 6)] {
        let a = alg(t);
        let w1: Vec<u8> = (0..m).map(|k| if k % 2 == 0 { 1 } else { 2 }).collect();
        let w2: Vec<u8> = (0..m).map(|k| if k % 2 == 0 { 2 } else { 1 }).collect();
        let apply = |w: &[u8], x: &MixedElement| w.iter().rev().fold(x.clone(), |acc, &i| lusztig_t(&a, i, &acc));
        let gens = [MixedElement::e(2, 1), MixedElement::e(2, 2), MixedElement::f(2, 1), MixedElement::f(2, 2), MixedElement::k(2, vec![1, 0]), MixedElement::k(2, vec![0, 1])];
        for (k, g) in gens.iter().enumerate() {
            assert!(apply(&w1, g).equals(&a, &apply(&w2, g)), "{t}: generator {k}");
        }
    }
}

/// `w(alpha_i) = alpha_j` forces `T_w(E_i) = E_j`.
#[test]
fn simple_to_simple() {
    let mut checked = 0;
    for t in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let a = alg(t);
        let rs = RootSystem::new(ty(t));
        let n = rs.rank();
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                for l in 1..=n as u8 {
                    let mut v = w.clone();
                    v.push(l);
                    if rs.reduced_word(&v).is_ok() && seen.insert(rs.element_key(&v)) {
                        next.push(v);
                    }
                }
            }
            for w in &next {
                for i in 1..=n {
                    let img = rs.apply_word_int(w, &unit(n, i));
                    if let Some(j) = (1..=n).find(|&j| img == unit(n, j)) {
                        let x = t_word_free(&a, w, &WordComb::letter(i as u8), usize::MAX).unwrap();
                        assert_eq!(a.from_free(&x), e(&a, j as u8), "{t} w={w:?} i={i}");
                        checked += 1;
                    }
                }
            }
            frontier = next;
        }
    }
    assert!(checked > 10);
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (1..=n).map(|k| (k == i) as i64).collect()
}

#[test]
fn root_vectors_are_homogeneous() {
    for (t, w) in [("G2", vec![1u8, 2, 1, 2, 1, 2]), ("B3", vec![3, 2, 3, 1, 2, 3, 1, 2, 1]), ("C3", vec![1, 2, 1, 3, 2, 1, 3, 2, 3])] {
        let a = alg(t);
        let Ok(word) = a.root_system().reduced_word(&w) else { panic!("{t} {w:?}") };
        let lit = RootVectorOptions { route: Route::Literal, ..Default::default() };
        for (k, x) in root_vectors(&a, &word, RootVectorOptions::default()).unwrap().iter().enumerate() {
            assert_eq!(x.degree(a.rank()).as_ref(), Some(&word.roots()[k]), "{t} k={}", k + 1);
            assert_eq!(*x, root_vector(&a, &word, k + 1, lit).unwrap(), "{t}: routes differ at {}", k + 1);
        }
    }
    let g2 = alg("G2");
    let w = g2.root_system().reduced_word(&[1, 2, 1, 2, 1, 2]).unwrap();
    let x5 = root_vector(&g2, &w, 5, RootVectorOptions::default()).unwrap();
    assert_eq!(x5, q_commutator(&g2, &e(&g2, 1), &e(&g2, 2)).unwrap());
    let tiny = RootVectorOptions { budget: 1, ..Default::default() };
    assert!(matches!(root_vector(&g2, &w, 4, tiny), Err(UqError::Budget(1))));
}

#[test]
fn pbw_round_trip() {
    let mut rng = Lcg(5);
    for (t, w) in [("G2", vec![1u8, 2, 1, 2, 1, 2]), ("B2", vec![1, 2, 1, 2]), ("A3", vec![1, 2, 1, 3, 2, 1])] {
        let a = alg(t);
        let word = a.root_system().reduced_word(&w).unwrap();
        let basis = root_vectors(&a, &word, RootVectorOptions::default()).unwrap();
        let heights: Vec<i64> = word.roots().iter().map(|r| r.iter().sum()).collect();
        let mut tried = 0;
        while tried < 25 {
            let m: Vec<u32> = (0..basis.len()).map(|_| rng.below(3) as u32).collect();
            let h: i64 = m.iter().zip(&heights).map(|(&k, &h)| k as i64 * h).sum();
            if h == 0 || h > 6 {
                continue;
            }
            tried += 1;
            let mut x = WordComb::one();
            for (b, &k) in basis.iter().zip(&m) {
                x = a.mul(&x, &a.pow(b, k as usize));
            }
            let ex = pbw_expand(&a, &basis, &x).unwrap();
            assert_eq!(ex.len(), 1, "{t} {m:?}");
            assert_eq!(ex.get(&m), Some(&QScalar::one()));
        }
        let unit1 = pbw_expand(&a, &basis, &basis[0]).unwrap();
        let mut u = vec![0; basis.len()];
        u[0] = 1;
        assert_eq!(unit1.into_iter().collect::<Vec<_>>(), vec![(u, QScalar::one())]);
    }
}

#[test]
fn g2_expansion_with_scalars() {
    let a = alg("G2");
    let x = g2_generators(&a, G2Nesting::Lyndon).unwrap();
    let c = q_commutator(&a, &x[1], &x[5]).unwrap();
    let ex = pbw_expand(&a, &x[2..5], &c).unwrap();
    let zeta = &(&QScalar::q_pow(-3) - &QScalar::q_pow(-1)) - &QScalar::q_pow(1);
    assert_eq!(ex.get(&vec![1, 0, 1]), Some(&QScalar::qhat()));
    assert_eq!(ex.get(&vec![0, 1, 0]), Some(&zeta));
    assert_eq!(ex.len(), 2);
    // outside the span
    let sub = IntervalSubalgebra::from_vectors(3, x[2..4].to_vec());
    assert!(!sub.contains(&a, &x[4]).unwrap());
    assert!(matches!(sub.pbw_expand(&a, &x[4]), Err(UqError::OutsideSpan(_))));
}

/// `[X_i, X_j]` lies in the subalgebra generated by the root vectors strictly between.
#[test]
fn levendorskii_soibelman_membership() {
    for (t, w) in [("G2", vec![1u8, 2, 1, 2, 1, 2]), ("B3", vec![3, 2, 3, 1, 2, 3, 1, 2, 1]), ("C3", vec![1, 2, 1, 3, 2, 1, 3, 2, 3])] {
        let a = alg(t);
        let word = a.root_system().reduced_word(&w).unwrap();
        let x = root_vectors(&a, &word, RootVectorOptions::default()).unwrap();
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let c = q_commutator(&a, &x[i], &x[j]).unwrap();
                if j == i + 1 {
                    assert!(c.is_zero(), "{t} [{}, {}]", i + 1, j + 1);
                    continue;
                }
                let sub = IntervalSubalgebra::from_vectors(i + 2, x[i + 1..j].to_vec());
                assert!(sub.contains(&a, &c).unwrap(), "{t} [{}, {}]", i + 1, j + 1);
            }
        }
    }
}

#[test]
fn interval_subalgebras() {
    let a = alg("G2");
    let word = a.root_system().reduced_word(&[1, 2, 1, 2, 1, 2]).unwrap();
    let one = IntervalSubalgebra::new(&a, &word, 2, 2, RootVectorOptions::default()).unwrap();
    assert_eq!(one.root_vectors().len(), 1);
    assert!(one.contains(&a, &a.pow(&one.root_vectors()[0], 3)).unwrap());
    assert!(IntervalSubalgebra::new(&a, &word, 3, 2, RootVectorOptions::default()).is_err());
    let mid = IntervalSubalgebra::new(&a, &word, 2, 5, RootVectorOptions::default()).unwrap();
    assert!(mid.check_basis(&a, 6).unwrap() > 0);

    let f4 = RootSystem::new(ty("F4"));
    let x = f4.reduced_word(F4Which::X.word()).unwrap();
    let y = f4.reduced_word(F4Which::Y.word()).unwrap();
    assert_eq!(&y.letters()[5..23], &x.letters()[1..19]);
    let full = f4.longest_word(&[]);
    assert_eq!(f4.element_key(x.letters()), f4.element_key(full.letters()));
    assert_eq!(f4.element_key(y.letters()), f4.element_key(full.letters()));
    // U_[2,23] has the size of the nilradical for J = {2, 4}
    assert_eq!(f4.parabolic_word(&[2, 4]).unwrap().len(), 23 - 2 + 1);
}

#[test]
fn g2_relation_suite() {
    let r = verify_g2_relations().unwrap();
    assert_eq!(r.total, 15);
    assert!(r.all_passed(), "{:?}", r.certificates.iter().filter(|c| !c.passed()).map(|c| &c.identity).collect::<Vec<_>>());
    assert!(r.matches_root_vectors.iter().all(|&b| b));
    let json = serde_json::to_value(&r.certificates[0]).unwrap();
    assert!(json.get("identity").is_some() && json.get("status").is_some() && json.get("lhs_minus_rhs_terms").is_some());
}

#[test]
fn f4_lemma_suites() {
    for which in [F4Which::X, F4Which::Y] {
        let r = verify_f4_lemmas(which, 2, RootVectorOptions::default().budget).unwrap();
        assert_eq!(r.tiers.len(), 2);
        for t in &r.tiers {
            assert!(t.all_passed(), "{which:?} tier {}: {} failed", t.tier, t.failed);
            assert!(t.passed > 0);
        }
        let g = F4Generators::build(&ShuffleAlgebra::new(ty("F4")).unwrap(), which).unwrap();
        assert!(g.values.iter().all(Option::is_some), "{which:?}: identities reach every position");
    }
}
