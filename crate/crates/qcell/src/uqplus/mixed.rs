//! Triangular normal form `F_a K_mu E_b` for the full quantum group.
//!
//! `F_a` and `E_b` are free-algebra words; the normal form proper is taken by
//! sending both to the shuffle model (`F_w` is read as `E_w`).

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::scalar::{LPoly, QScalar};
use crate::shuffle::ShuffleAlgebra;
use crate::words::{Word, WordComb};

use super::lusztig::generator_image_free;
use super::pbw::{exponent_tuples_for, Echelon};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedKey {
    pub f: Word,
    pub k: Vec<i64>,
    pub e: Word,
}

/// Finite sum of `F_a K_mu E_b` with rational-function coefficients.
#[derive(Debug, Clone)]
pub struct MixedElement {
    rank: usize,
    terms: FxHashMap<MixedKey, QScalar>,
}

impl MixedElement {
    pub fn zero(rank: usize) -> MixedElement {
        MixedElement {
            rank,
            terms: FxHashMap::default(),
        }
    }

    pub fn term(rank: usize, f: Word, k: Vec<i64>, e: Word, c: QScalar) -> MixedElement {
        let mut x = MixedElement::zero(rank);
        x.add_term(MixedKey { f, k, e }, c);
        x
    }

    pub fn one(rank: usize) -> MixedElement {
        MixedElement::k(rank, vec![0; rank])
    }

    pub fn e(rank: usize, i: u8) -> MixedElement {
        MixedElement::term(rank, Word::EMPTY, vec![0; rank], Word::letter_word(i), QScalar::one())
    }

    pub fn f(rank: usize, i: u8) -> MixedElement {
        MixedElement::term(rank, Word::letter_word(i), vec![0; rank], Word::EMPTY, QScalar::one())
    }

    pub fn k(rank: usize, mu: Vec<i64>) -> MixedElement {
        MixedElement::term(rank, Word::EMPTY, mu, Word::EMPTY, QScalar::one())
    }

    /// Embed a free-algebra element of `U^+`.
    pub fn from_plus(rank: usize, x: &WordComb) -> MixedElement {
        let mut out = MixedElement::zero(rank);
        for (w, c) in x.canonical_terms() {
            out.add_term(
                MixedKey {
                    f: Word::EMPTY,
                    k: vec![0; rank],
                    e: w,
                },
                c,
            );
        }
        out
    }

    /// Embed a free-algebra element of `U^-`, reading each word `w` as `F_w`.
    pub fn from_minus(rank: usize, x: &WordComb) -> MixedElement {
        let mut out = MixedElement::zero(rank);
        for (w, c) in x.canonical_terms() {
            out.add_term(
                MixedKey {
                    f: w,
                    k: vec![0; rank],
                    e: Word::EMPTY,
                },
                c,
            );
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixedKey, &QScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: MixedKey, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &MixedElement) -> MixedElement {
        let mut r = self.clone();
        for (k, c) in &other.terms {
            r.add_term(k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MixedElement) -> MixedElement {
        self.add(&other.scale(&QScalar::int(-1)))
    }

    pub fn scale(&self, s: &QScalar) -> MixedElement {
        let mut r = MixedElement::zero(self.rank);
        if s.is_zero() {
            return r;
        }
        for (k, c) in &self.terms {
            r.terms.insert(k.clone(), c * s);
        }
        r
    }

    pub fn mul(&self, alg: &ShuffleAlgebra, other: &MixedElement) -> MixedElement {
        Straightener::new(alg).mul(self, other)
    }

    /// The `E` part when every term has trivial `F` and `K` factors.
    pub fn plus_part(&self) -> Option<WordComb> {
        let mut v = Vec::new();
        for (k, c) in &self.terms {
            if !k.f.is_empty() || k.k.iter().any(|&x| x != 0) {
                return None;
            }
            v.push((k.e, c.clone()));
        }
        Some(WordComb::from_qterms(&v))
    }

    /// Unique normal form: terms `(F-word, K weight, E-word)` in the shuffle model, sorted.
    pub fn canonical(&self, alg: &ShuffleAlgebra) -> Vec<(MixedKey, QScalar)> {
        let mut cache: FxHashMap<Word, Vec<(Word, QScalar)>> = FxHashMap::default();
        let mut psi = |w: Word| -> Vec<(Word, QScalar)> {
            cache
                .entry(w)
                .or_insert_with(|| alg.monomial(w).canonical_terms())
                .clone()
        };
        let mut out: BTreeMap<MixedKey, QScalar> = BTreeMap::new();
        for (key, c) in &self.terms {
            let fa = psi(key.f);
            let eb = psi(key.e);
            for (w1, c1) in &fa {
                let c01 = c * c1;
                for (w2, c2) in &eb {
                    let k2 = MixedKey {
                        f: *w1,
                        k: key.k.clone(),
                        e: *w2,
                    };
                    let e = out.entry(k2).or_default();
                    *e = &*e + &(&c01 * c2);
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn equals(&self, alg: &ShuffleAlgebra, other: &MixedElement) -> bool {
        self.sub(other).canonical(alg).is_empty()
    }

    /// Same element with both free parts rewritten in a fixed basis of words.
    pub fn normalize(&self, alg: &ShuffleAlgebra) -> MixedElement {
        let mut sec = Section::new(alg);
        self.normalize_with(&mut sec)
    }

    fn normalize_with(&self, sec: &mut Section<'_>) -> MixedElement {
        let n = self.rank;
        let canon = self.canonical(sec.alg);
        // E side first, grouped by F word, K weight and E content.
        let mut groups: BTreeMap<(Word, Vec<i64>, Vec<i64>), Vec<(Word, QScalar)>> = BTreeMap::new();
        for (key, c) in canon {
            groups
                .entry((key.f, key.k, key.e.content(n)))
                .or_default()
                .push((key.e, c));
        }
        let mut half: BTreeMap<(Vec<i64>, Word, Vec<i64>), Vec<(Word, QScalar)>> = BTreeMap::new();
        for ((f, k, _), terms) in groups {
            for (b, c) in sec.lift(&WordComb::from_qterms(&terms)) {
                half.entry((k.clone(), b, f.content(n))).or_default().push((f, c));
            }
        }
        let mut out = MixedElement::zero(n);
        for ((k, b, _), terms) in half {
            for (a, c) in sec.lift(&WordComb::from_qterms(&terms)) {
                out.add_term(MixedKey { f: a, k: k.clone(), e: b }, c);
            }
        }
        out
    }
}

/// Free-word representatives for shuffle elements, one word basis per degree.
struct Section<'a> {
    alg: &'a ShuffleAlgebra,
    bases: FxHashMap<Vec<i64>, (Vec<Word>, Echelon)>,
}

impl<'a> Section<'a> {
    fn new(alg: &'a ShuffleAlgebra) -> Self {
        Section {
            alg,
            bases: FxHashMap::default(),
        }
    }

    fn basis(&mut self, deg: &[i64]) -> &(Vec<Word>, Echelon) {
        if !self.bases.contains_key(deg) {
            let dim = exponent_tuples_for(self.alg.root_system().positive_roots(), deg).len();
            let mut letters: Vec<u8> = Vec::new();
            for (i, &c) in deg.iter().enumerate() {
                letters.extend(std::iter::repeat((i + 1) as u8).take(c as usize));
            }
            let mut words = Vec::new();
            let mut ech = Echelon::default();
            loop {
                let w = Word::from_letters(&letters);
                if ech.insert(&self.alg.monomial(w)) {
                    words.push(w);
                    if words.len() == dim {
                        break;
                    }
                }
                if !next_permutation(&mut letters) {
                    break;
                }
            }
            self.bases.insert(deg.to_vec(), (words, ech));
        }
        &self.bases[deg]
    }

    /// Coefficients of `x` on the basis words of its degree.
    fn lift(&mut self, x: &WordComb) -> Vec<(Word, QScalar)> {
        let Some(deg) = x.degree(self.alg.rank()) else {
            return Vec::new();
        };
        let (words, ech) = self.basis(&deg);
        let coeffs = ech.solve(x).expect("word basis spans the degree");
        words
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (*w, c))
            .collect()
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

type Straightened = Vec<(Word, Vec<i64>, Word, QScalar)>;

/// Rewrites `E_b F_c` into triangular form, memoized.
struct Straightener<'a> {
    alg: &'a ShuffleAlgebra,
    memo: FxHashMap<(Word, Word), Straightened>,
}

impl<'a> Straightener<'a> {
    fn new(alg: &'a ShuffleAlgebra) -> Self {
        Straightener {
            alg,
            memo: FxHashMap::default(),
        }
    }

    fn content(&self, w: Word) -> Vec<i64> {
        w.content(self.alg.rank())
    }

    fn straighten(&mut self, b: Word, c: Word) -> Straightened {
        let n = self.alg.rank();
        if b.is_empty() || c.is_empty() {
            return vec![(c, vec![0; n], b, QScalar::one())];
        }
        if let Some(r) = self.memo.get(&(b, c)) {
            return r.clone();
        }
        let y = c.first().unwrap();
        let rest = c.drop_first();
        let mut out: Straightened = Vec::new();
        for (c2, k2, b2, s) in self.straighten(b, rest) {
            out.push((Word::letter_word(y).concat(c2), k2, b2, s));
        }
        let qhat = QScalar::from_lpoly(&self.alg.qhat_i(y));
        let mut pre = 0i32;
        for l in 0..b.len() {
            let bl = b.letter(l);
            if bl == y {
                let bb = b.remove(l);
                for (sign, e) in [(1i64, -pre), (-1i64, pre)] {
                    let coef = &QScalar::from_lpoly(&LPoly::monomial(sign, e)) / &qhat;
                    let mut ky = vec![0i64; n];
                    ky[y as usize - 1] = sign;
                    for (c2, k2, b2, s) in self.straighten(bb, rest) {
                        // K_{+-alpha_y} F_{c2} = q^{-(+-alpha_y, deg c2)} F_{c2} K_{+-alpha_y}
                        let sh = -self.alg.pair_deg(&ky, &self.content(c2));
                        let kk: Vec<i64> = k2.iter().zip(&ky).map(|(a, b)| a + b).collect();
                        let s2 = &(&s * &coef) * &QScalar::q_pow(sh);
                        out.push((c2, kk, b2, s2));
                    }
                }
            }
            pre += self.alg.pair(y, bl);
        }
        let mut merged: BTreeMap<(Word, Vec<i64>, Word), QScalar> = BTreeMap::new();
        for (c2, k2, b2, s) in out {
            let e = merged.entry((c2, k2, b2)).or_default();
            *e = &*e + &s;
        }
        let r: Straightened = merged
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|((c2, k2, b2), s)| (c2, k2, b2, s))
            .collect();
        self.memo.insert((b, c), r.clone());
        r
    }

    fn mul(&mut self, x: &MixedElement, y: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero(x.rank);
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                let cxy = cx * cy;
                for (c2, lam, b2, s) in self.straighten(kx.e, ky.f) {
                    let e1 = -self.alg.pair_deg(&kx.k, &self.content(c2));
                    let e2 = -self.alg.pair_deg(&ky.k, &self.content(b2));
                    let k: Vec<i64> = (0..x.rank).map(|t| kx.k[t] + lam[t] + ky.k[t]).collect();
                    let coef = &(&cxy * &s) * &QScalar::q_pow(e1 + e2);
                    out.add_term(
                        MixedKey {
                            f: kx.f.concat(c2),
                            k,
                            e: b2.concat(ky.e),
                        },
                        coef,
                    );
                }
            }
        }
        out
    }
}

/// Images of the generators under `T_i`.
struct TImages {
    e: Vec<MixedElement>,
    f: Vec<MixedElement>,
}

impl TImages {
    fn new(alg: &ShuffleAlgebra, i: u8) -> TImages {
        let n = alg.rank();
        let mut e = Vec::with_capacity(n);
        let mut f = Vec::with_capacity(n);
        let d = alg.half_norm(i) as i32;
        for j in 1..=n as u8 {
            if j == i {
                let mut alpha = vec![0i64; n];
                alpha[i as usize - 1] = 1;
                let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
                e.push(MixedElement::term(n, Word::letter_word(i), alpha, Word::EMPTY, QScalar::int(-1)));
                f.push(MixedElement::term(n, Word::EMPTY, neg, Word::letter_word(i), QScalar::int(-1)));
            } else {
                let img = generator_image_free(alg, i, j);
                let m = -alg.root_system().cartan()[i as usize - 1][j as usize - 1];
                let sign = if m % 2 == 0 { 1 } else { -1 };
                let scal = QScalar::from_lpoly(&LPoly::monomial(sign, d * m as i32));
                e.push(MixedElement::from_plus(n, &img));
                f.push(MixedElement::from_minus(n, &img).scale(&scal));
            }
        }
        TImages { e, f }
    }
}

/// `T_i` on the triangular normal form.
pub fn lusztig_t(alg: &ShuffleAlgebra, i: u8, x: &MixedElement) -> MixedElement {
    let n = alg.rank();
    let imgs = TImages::new(alg, i);
    let mut st = Straightener::new(alg);
    let mut out = MixedElement::zero(n);
    let rs = alg.root_system();
    for (key, c) in &x.terms {
        let mut acc = MixedElement::one(n);
        for l in key.f.letters() {
            acc = st.mul(&acc, &imgs.f[l as usize - 1]);
        }
        acc = st.mul(&acc, &MixedElement::k(n, rs.reflect_int(i as usize, &key.k)));
        for l in key.e.letters() {
            acc = st.mul(&acc, &imgs.e[l as usize - 1]);
        }
        out = out.add(&acc.scale(c));
    }
    out.normalize(alg)
}
