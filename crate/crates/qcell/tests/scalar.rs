use proptest::prelude::*;
use qcell::scalar::{qfact_lpoly, qint_lpoly, LPoly, Poly, QScalar};

const P: u64 = 1_000_000_007;
const QS: [u64; 3] = [2, 12345, 987654321];

fn lpoly() -> impl Strategy<Value = LPoly> {
    (-4i32..4, prop::collection::vec(-5i64..=5, 0..5)).prop_map(|(low, c)| LPoly::from_coeffs(low, c))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 1..4).prop_map(Poly::from_coeffs)
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(QScalar::from_polys(n, d))
        }
    })
}

fn add_mod(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

#[test]
fn quantum_integers() {
    // [3]_q = q^-2 + 1 + q^2
    assert_eq!(qint_lpoly(3, 1), LPoly::from_coeffs(-2, vec![1, 0, 1, 0, 1]));
    // [2]_{q^2} = q^-2 + q^2
    assert_eq!(qint_lpoly(2, 2), LPoly::from_coeffs(-2, vec![1, 0, 0, 0, 1]));
    assert_eq!(qfact_lpoly(3, 1), &qint_lpoly(2, 1) * &qint_lpoly(3, 1));
    assert!(qint_lpoly(1, 3).is_one());
    let qhat = QScalar::qhat();
    let expect = &QScalar::q_pow(1) - &QScalar::q_pow(-1);
    assert_eq!(qhat, expect);
    // [n]_q (q - q^-1) = q^n - q^-n
    for n in 1..8 {
        let lhs = &QScalar::qint(n, 1) * &qhat;
        let rhs = &QScalar::q_pow(n as i32) - &QScalar::q_pow(-(n as i32));
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn canonical_form_is_reduced() {
    // (q^2 - 1) / (q - 1) = q + 1
    let a = QScalar::from_polys(Poly::from_coeffs(vec![-1, 0, 1]), Poly::from_coeffs(vec![-1, 1]));
    assert_eq!(a, QScalar::from_polys(Poly::from_coeffs(vec![1, 1]), Poly::one()));
    assert_eq!(a.den_coeffs(), &[1]);
    // negative leading denominator coefficient is normalized away
    let b = QScalar::from_polys(Poly::from_coeffs(vec![1]), Poly::from_coeffs(vec![0, -2]));
    assert!(b.den().lc() > 0);
    assert_eq!(&b * &QScalar::from_polys(Poly::from_coeffs(vec![0, -2]), Poly::one()), QScalar::one());
}

#[test]
fn laurent_round_trip() {
    let p = LPoly::from_coeffs(-3, vec![2, 0, -1, 5]);
    let s = QScalar::from_lpoly(&p);
    assert_eq!(s.as_laurent(), Some(p));
    assert_eq!(QScalar::qint(2, 1).inv().as_laurent(), None);
}

#[test]
fn zero_has_no_inverse_in_eval() {
    let s = QScalar::from_polys(Poly::one(), Poly::from_coeffs(vec![-2, 1]));
    assert_eq!(s.eval_mod(2, P), None);
    assert!(s.eval_mod(3, P).is_some());
}

#[test]
fn bar_involution() {
    let p = LPoly::from_coeffs(-1, vec![3, 0, 7]);
    assert_eq!(p.bar(), LPoly::from_coeffs(-1, vec![7, 0, 3]));
    assert_eq!(p.bar().bar(), p);
}

proptest! {
    #[test]
    fn lpoly_ring_matches_evaluation(a in lpoly(), b in lpoly(), q in prop::sample::select(QS.to_vec())) {
        let (ea, eb) = (a.eval_mod(q, P), b.eval_mod(q, P));
        prop_assert_eq!((&a + &b).eval_mod(q, P), add_mod(ea, eb));
        prop_assert_eq!((&a * &b).eval_mod(q, P), mul_mod(ea, eb));
        prop_assert_eq!(add_mod((&a - &b).eval_mod(q, P), eb), ea);
    }

    #[test]
    fn qscalar_field_matches_evaluation(a in scalar(), b in scalar(), q in prop::sample::select(QS.to_vec())) {
        if let (Some(ea), Some(eb)) = (a.eval_mod(q, P), b.eval_mod(q, P)) {
            if let Some(s) = (&a + &b).eval_mod(q, P) {
                prop_assert_eq!(s, add_mod(ea, eb));
            }
            if let Some(m) = (&a * &b).eval_mod(q, P) {
                prop_assert_eq!(m, mul_mod(ea, eb));
            }
        }
    }

    #[test]
    fn qscalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, QScalar::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(&b * &b.inv(), QScalar::one());
        }
    }

    #[test]
    fn canonical_representation_is_unique(a in scalar(), k in poly()) {
        prop_assume!(!k.is_zero());
        let scaled = QScalar::from_polys(a.num().mul(&k), a.den().mul(&k));
        prop_assert_eq!(scaled.num_coeffs(), a.num_coeffs());
        prop_assert_eq!(scaled.den_coeffs(), a.den_coeffs());
        prop_assert!(a.den().lc() > 0);
    }

    #[test]
    fn poly_gcd_divides(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = Poly::gcd(&a, &b);
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(b.exact_div(&g).is_some());
    }
}
