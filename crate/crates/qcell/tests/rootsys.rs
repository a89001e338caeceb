mod common;

use std::collections::BTreeMap;

use common::{braid_variants, inversions, random_reduced_word, roots_by_closure, subsets, ty, Lcg};
use num_rational::Ratio;
use qcell::rootsys::*;

fn all_types(max_rank: usize) -> Vec<CartanType> {
    let mut v = CartanType::all_up_to(max_rank);
    v.insert(0, ty("A1"));
    v
}

fn expected_root_count(t: CartanType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => [36, 63, 120][n - 6],
        Family::F => 24,
        Family::G => 6,
    }
}

#[test]
fn cartan_matrices() {
    assert_eq!(cartan_matrix(ty("A2")), vec![vec![2, -1], vec![-1, 2]]);
    let g = cartan_matrix(ty("G2"));
    assert_eq!(g[0][1] * g[1][0], 3);
    let f = cartan_matrix(ty("F4"));
    let doubles: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&(i, j)| f[i][j] == -2)
        .collect();
    assert_eq!(doubles.len(), 1);
    let (i, j) = doubles[0];
    assert!([i + 1, j + 1] == [2, 3] || [i + 1, j + 1] == [3, 2]);
    for t in all_types(9) {
        let c = cartan_matrix(t);
        let rs = RootSystem::new(t);
        let d = rs.half_norms();
        for i in 0..t.rank {
            assert_eq!(c[i][i], 2);
            for j in 0..t.rank {
                if i != j {
                    assert!(c[i][j] <= 0);
                }
                assert_eq!(d[i] * c[i][j], d[j] * c[j][i], "{t} D*C symmetric");
                assert_eq!(rs.form().matrix[i][j], d[i] * c[i][j]);
            }
        }
        assert_eq!(*d.iter().min().unwrap(), 1, "{t}: short roots have norm 2");
    }
    assert_eq!(RootSystem::new(ty("G2")).half_norms(), &[1, 3]);
}

#[test]
fn type_parsing_and_bounds() {
    assert!("D3".parse::<CartanType>().is_err());
    assert!("E9".parse::<CartanType>().is_err());
    assert!("F5".parse::<CartanType>().is_err());
    assert!("C1".parse::<CartanType>().is_err());
    assert!("Q4".parse::<CartanType>().is_err());
    assert_eq!(ty("E8").to_string(), "E8");
    let j = serde_json::to_value(ty("F4")).unwrap();
    assert_eq!(j, serde_json::json!({"family": "F", "rank": 4}));
}

#[test]
fn positive_root_counts() {
    assert_eq!(positive_roots(ty("A2")).len(), 3);
    for t in all_types(9) {
        let rs = RootSystem::new(t);
        assert_eq!(rs.positive_roots().len(), expected_root_count(t), "{t}");
        let mut mine: Vec<Vec<i64>> = rs.positive_roots().to_vec();
        let mut oracle = roots_by_closure(t);
        mine.sort();
        oracle.sort();
        assert_eq!(mine, oracle, "{t}");
    }
    let g2 = RootSystem::new(ty("G2"));
    assert_eq!(g2.highest_root(), &[3, 2]);
}

#[test]
fn reflections() {
    let a2 = ty("A2");
    let a1 = LatticeVec::simple(2, 1);
    assert_eq!(reflect(a2, 1, &a1).unwrap(), LatticeVec::from_ints(&[-1, 0]));
    assert_eq!(reflect(a2, 1, &LatticeVec::simple(2, 2)).unwrap(), LatticeVec::from_ints(&[1, 1]));
    let g = cartan_matrix(ty("G2"));
    let s = reflect(ty("G2"), 1, &LatticeVec::simple(2, 2)).unwrap();
    assert_eq!(s.coords[0], Ratio::from_integer(-g[0][1]));
    assert!(reflect(a2, 3, &a1).is_err());
    let rs = RootSystem::new(ty("F4"));
    for r in rs.positive_roots() {
        for i in 1..=4 {
            assert_eq!(rs.reflect_int(i, &rs.reflect_int(i, r)), *r);
        }
    }
}

#[test]
fn words_act() {
    let g2 = ty("G2");
    let v = LatticeVec::from_ints(&[2, -1]);
    assert_eq!(apply_word(g2, &[], &v).unwrap(), v);
    assert_eq!(apply_word(g2, &[1, 1], &v).unwrap(), v);
    let rs = RootSystem::new(g2);
    for r in rs.positive_roots() {
        let img = rs.apply_word_int(&[1, 2, 1, 2, 1, 2], r);
        assert!(img.iter().all(|&c| c <= 0), "{r:?}");
    }
}

#[test]
fn longest_words() {
    assert_eq!(longest_word(ty("A1"), None).letters(), &[1]);
    assert_eq!(longest_word(ty("F4"), None).len(), 24);
    let b6 = RootSystem::new(ty("B6"));
    assert_eq!(b6.longest_word(&[2, 5]).len(), b6.longest_word(&[]).len() - 31);
    for t in all_types(8) {
        let rs = RootSystem::new(t);
        let w = rs.longest_word(&[]);
        assert_eq!(w.len(), rs.positive_roots().len());
        assert_eq!(longest_word(t, None).letters(), w.letters(), "deterministic");
    }
}

#[test]
fn parabolic_words() {
    let g2 = RootSystem::new(ty("G2"));
    assert_eq!(g2.parabolic_word(&[1, 2]).unwrap().len(), 6);
    assert!(matches!(g2.parabolic_word(&[]), Err(RootError::EmptyJ)));

    let b6 = RootSystem::new(ty("B6"));
    let given: Vec<u8> = vec![
        5, 6, 4, 5, 6, 3, 4, 5, 6, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 3, 4, 2, 3, 1, 2,
    ];
    let w = b6.parabolic_word(&[2, 5]).unwrap();
    assert_eq!(w.len(), 31);
    assert_eq!(b6.element_key(w.letters()), b6.element_key(&given));
    assert!(b6.reduced_word(&given).is_ok());

    for n in 2..=8 {
        let rs = RootSystem::new(CartanType::new(Family::C, n).unwrap());
        let mut word = Vec::new();
        for start in 1..=n {
            word.extend((start..=n).rev().map(|x| x as u8));
        }
        let w = rs.parabolic_word(&[n]).unwrap();
        assert_eq!(rs.element_key(&word), rs.element_key(w.letters()), "C{n}");
        assert_eq!(w.len(), n * (n + 1) / 2);
    }
}

#[test]
fn parabolic_lengths_all_cases() {
    for t in CartanType::all_up_to(9) {
        let rs = RootSystem::new(t);
        let lo = rs.longest_word(&[]).len();
        for j in subsets(t.rank) {
            let wj = rs.parabolic_word(&j).unwrap();
            assert_eq!(wj.len(), lo - rs.longest_word(&j).len(), "{t} {j:?}");
            for beta in wj.roots() {
                assert!(j.iter().any(|&x| beta[x - 1] > 0), "{t} {j:?}: {beta:?} has J-degree 0");
            }
        }
    }
}

#[test]
fn radical_root_examples() {
    let a1 = RootSystem::new(ty("A2"));
    assert_eq!(a1.radical_roots(&[1]).unwrap(), vec![vec![1, 0]]);
    assert_eq!(a1.radical_roots(&[1, 2]).unwrap(), vec![vec![1, 0], vec![1, 1]]);
    assert!(matches!(a1.radical_roots(&[1, 1]), Err(RootError::NotReduced(_))));
    let f4 = RootSystem::new(ty("F4"));
    let x = f4
        .reduced_word(&[1, 2, 1, 3, 2, 3, 1, 2, 4, 3, 2, 1, 3, 2, 3, 4, 3, 2, 3, 1, 2, 3, 4, 3])
        .unwrap();
    assert_eq!(x.roots()[21], vec![0, 0, 0, 1]);
    assert_eq!(x.roots()[2], vec![0, 1, 0, 0]);
    assert_eq!(x.roots()[23], vec![0, 0, 1, 0]);
}

#[test]
fn radical_roots_are_inversion_sets() {
    let mut rng = Lcg(20240601);
    for t in all_types(6) {
        let rs = RootSystem::new(t);
        let mut words: Vec<Vec<u8>> = subsets(t.rank).iter().map(|j| rs.parabolic_word(j).unwrap().letters().to_vec()).collect();
        for _ in 0..100 {
            words.push(random_reduced_word(&rs, &mut rng, rs.positive_roots().len()));
        }
        for w in words {
            let mut got = rs.radical_roots(&w).unwrap();
            got.sort();
            assert_eq!(got, inversions(t, &w), "{t} {w:?}");
            let mut direct = rs.inversion_set(&w);
            direct.sort();
            assert_eq!(got, direct);
        }
    }
}

#[test]
fn eta_and_px_examples() {
    assert_eq!(eta_and_px(&[1, 2, 1, 2, 1, 2]).1, Vec::<usize>::new());
    assert_eq!(eta_and_px(&[1, 2]), (vec![1, 2], vec![1, 2]));
    let g2 = RootSystem::new(ty("G2"));
    let w = g2.parabolic_word(&[1]).unwrap();
    assert!(eta_and_px(w.letters()).1.is_empty());
    assert_eq!(eta_and_px(&[3, 1, 2, 1]).1, vec![1, 3]);
}

#[test]
fn fundamental_weights() {
    let a1 = fundamental_weight(ty("A1"), 1).unwrap();
    assert_eq!(a1.coords, vec![Ratio::new(1, 2)]);
    let a2 = fundamental_weight(ty("A2"), 1).unwrap();
    assert_eq!(serde_json::to_value(&a2).unwrap(), serde_json::json!(["2/3", "1/3"]));
    for t in all_types(9) {
        let rs = RootSystem::new(t);
        for i in 1..=t.rank {
            let w = rs.fundamental_weight(i).unwrap();
            for j in 1..=t.rank {
                // <w, alpha_j^vee> = 2 (w, alpha_j) / (alpha_j, alpha_j)
                let p = rs.form().eval_rat(&w, &LatticeVec::simple(t.rank, j)) / Ratio::from_integer(rs.half_norms()[j - 1]);
                assert_eq!(p, Ratio::from_integer((i == j) as i64), "{t} {i} {j}");
            }
            let cw = rs.fundamental_coweight(i).unwrap();
            for j in 1..=t.rank {
                let p = rs.form().eval_rat(&cw, &LatticeVec::simple(t.rank, j));
                assert_eq!(p, Ratio::from_integer((i == j) as i64));
            }
        }
    }
    // C_n: varpi_i = e_1 + ... + e_i pairs with e_a + e_b to #{a, b <= i}
    let n = 5;
    let rs = RootSystem::new(CartanType::new(Family::C, n).unwrap());
    for i in 1..=n {
        let w = rs.fundamental_weight(i).unwrap();
        for a in 1..=n {
            for b in a..=n {
                let p = rs.form().eval_rat(&w, &LatticeVec::from_ints(&symmetric_root(n, a, b)));
                assert_eq!(p, Ratio::from_integer((a <= i) as i64 + (b <= i) as i64));
            }
        }
    }
}

/// `e_i + e_j` in the e-basis from simple-root coordinates, `alpha_k = e_k - e_{k+1}`, `alpha_n = 2 e_n`.
fn c_e_basis(n: usize, v: &[i64]) -> Vec<i64> {
    (0..n)
        .map(|k| {
            let prev = if k == 0 { 0 } else { v[k - 1] };
            if k == n - 1 {
                2 * v[k] - prev
            } else {
                v[k] - prev
            }
        })
        .collect()
}

#[test]
fn symmetric_chart() {
    for n in 2..=8 {
        let rs = RootSystem::new(CartanType::new(Family::C, n).unwrap());
        let w = rs.parabolic_word(&[n]).unwrap();
        let mut seen = Vec::new();
        for beta in w.roots() {
            let (i, j) = symmetric_label(n, beta).expect("radical root is e_i + e_j");
            let mut e = vec![0; n];
            e[i - 1] += 1;
            e[j - 1] += 1;
            assert_eq!(c_e_basis(n, beta), e);
            seen.push((i, j));
        }
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), n * (n + 1) / 2);
    }
}

#[test]
fn commutation_exponents() {
    let c4 = RootSystem::new(ty("C4"));
    let w = c4.parabolic_word(&[4]).unwrap();
    assert_eq!(c4.commutation_exponent(&w, 2, &LatticeVec::zero(4)).unwrap(), 0);
    let xnn = LatticeVec::from_ints(&symmetric_root(4, 4, 4));
    for k in 1..4 {
        assert_eq!(c4.commutation_exponent(&w, k, &xnn).unwrap(), 2);
    }
    for i in 1..=4 {
        let mu = LatticeVec::from_ints(&symmetric_root(4, i, 5 - i));
        for k in 1..=4 {
            assert_eq!(c4.commutation_exponent(&w, k, &mu).unwrap(), 0);
        }
    }
    let a3 = RootSystem::new(ty("A3"));
    let short = a3.reduced_word(&[1, 2]).unwrap();
    assert!(matches!(a3.commutation_exponent(&short, 3, &LatticeVec::zero(3)), Err(RootError::NotInSupport(3))));
    let half = LatticeVec { coords: vec![Ratio::new(1, 2), Ratio::from_integer(0), Ratio::from_integer(0)] };
    assert!(a3.commutation_exponent(&short, 1, &half).is_err());
}

#[test]
fn exponent_routes_agree() {
    for t in CartanType::all_up_to(6) {
        let rs = RootSystem::new(t);
        for j in subsets(t.rank) {
            let w = rs.parabolic_word(&j).unwrap();
            for &i in w.support() {
                let th = rs.theta_root(w.letters(), i);
                for beta in w.roots() {
                    let a = rs.exponent_int(&th, i, beta);
                    let b = rs.commutation_exponent(&w, i, &LatticeVec::from_ints(beta)).unwrap();
                    assert_eq!(a, b, "{t} {j:?} i={i} {beta:?}");
                }
            }
        }
    }
}

#[test]
fn theta_degree_examples() {
    assert_eq!(theta_degrees(ty("G2"), &[1]).unwrap(), vec![4, 6]);
    assert_eq!(theta_degrees(ty("G2"), &[2]).unwrap(), vec![2, 4]);
    assert_eq!(theta_degrees(ty("B6"), &[2, 5]).unwrap(), vec![4, 8, 10, 12, 14, 7]);
    for n in 2..=8 {
        let t = CartanType::new(Family::C, n).unwrap();
        assert_eq!(theta_degrees(t, &[n]).unwrap(), (1..=n as i64).collect::<Vec<_>>());
    }
    for t in CartanType::all_up_to(7) {
        for j in subsets(t.rank) {
            assert!(theta_degrees(t, &j).unwrap().iter().all(|&d| d > 0), "{t} {j:?}");
        }
    }
}

/// Support, theta degrees and exponents depend only on the Weyl element.
#[test]
fn reduced_word_invariance() {
    let cases: &[(&str, &[usize])] = &[("B4", &[2]), ("B3", &[2]), ("C4", &[4]), ("A4", &[2, 3]), ("F4", &[3]), ("D5", &[1, 4])];
    for &(t, j) in cases {
        let t = ty(t);
        let rs = RootSystem::new(t);
        let base = rs.parabolic_word(j).unwrap();
        let variants = braid_variants(t, base.letters(), 6);
        assert!(variants.len() >= 3, "{t} {j:?}: only {} words", variants.len());
        let profile = |w: &ReducedWord| -> (Vec<usize>, Vec<i64>, BTreeMap<Vec<i64>, Vec<i64>>) {
            let ex = w
                .roots()
                .iter()
                .map(|b| {
                    let e = w.support().iter().map(|&i| rs.commutation_exponent(w, i, &LatticeVec::from_ints(b)).unwrap()).collect();
                    (b.clone(), e)
                })
                .collect();
            (w.support().to_vec(), rs.theta_degrees_for(w, j), ex)
        };
        let p0 = profile(&base);
        for v in &variants {
            let w = rs.reduced_word(v).unwrap();
            assert_eq!(rs.element_key(v), rs.element_key(base.letters()));
            assert_eq!(profile(&w), p0, "{t} {j:?} {v:?}");
        }
    }
}
