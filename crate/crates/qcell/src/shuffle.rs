//! The quantum shuffle model of `U_q^+`.
//!
//! `E_i` is the one-letter word `i`. The product of two words is the sum over
//! interleavings, each weighted by `q^{s (a, b)}` for every pair of letters `a`
//! of the left factor and `b` of the right factor with `b` placed before `a`,
//! where `s = +-1` is fixed once per algebra by checking the q-Serre relators.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::rootsys::{CartanType, RootSystem};
use crate::scalar::{qfact_lpoly, LPoly, QScalar};
use crate::words::{Word, WordComb};

pub type ShuffleElement = WordComb;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Crossing weight `q^{-(a,b)}`.
    Inverse,
    /// Crossing weight `q^{+(a,b)}`.
    Direct,
}

impl Convention {
    fn sign(self) -> i32 {
        match self {
            Convention::Inverse => -1,
            Convention::Direct => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UqError {
    #[error("element is not Q-homogeneous")]
    Inhomogeneous,
    #[error("node budget of {0} exceeded")]
    Budget(usize),
    #[error("no shuffle convention kills the q-Serre relators")]
    NoConvention,
    #[error("element lies outside the span of the given monomials; residual has {0} terms")]
    OutsideSpan(usize),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u8>),
    #[error("projection to the positive part is not total")]
    NotPositive,
    #[error("{0}")]
    Other(String),
}

/// Shuffle algebra for one Cartan type.
#[derive(Debug, Clone)]
pub struct ShuffleAlgebra {
    rs: RootSystem,
    form: Vec<Vec<i32>>,
    sign: i32,
    convention: Convention,
}

impl ShuffleAlgebra {
    /// Build the algebra, selecting the crossing convention by the q-Serre self-test.
    pub fn new(ty: CartanType) -> Result<ShuffleAlgebra, UqError> {
        let rs = RootSystem::new(ty);
        for conv in [Convention::Inverse, Convention::Direct] {
            let alg = ShuffleAlgebra::with_convention(rs.clone(), conv);
            if alg.serre_relators().iter().all(|(_, _, r)| r.is_zero()) {
                return Ok(alg);
            }
        }
        Err(UqError::NoConvention)
    }

    pub fn with_convention(rs: RootSystem, convention: Convention) -> ShuffleAlgebra {
        let form = rs
            .form()
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| x as i32).collect())
            .collect();
        ShuffleAlgebra {
            rs,
            form,
            sign: convention.sign(),
            convention,
        }
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `(alpha_a, alpha_b)` for letters.
    #[inline]
    pub fn pair(&self, a: u8, b: u8) -> i32 {
        self.form[a as usize - 1][b as usize - 1]
    }

    /// `(mu, nu)` for contents.
    pub fn pair_deg(&self, mu: &[i64], nu: &[i64]) -> i32 {
        self.rs.form().eval(mu, nu) as i32
    }

    /// `d_i` with `q_i = q^{d_i}`.
    pub fn half_norm(&self, i: u8) -> u32 {
        self.rs.half_norms()[i as usize - 1] as u32
    }

    /// `(alpha_l, deg w)`.
    pub fn pair_letter_word(&self, l: u8, w: Word) -> i32 {
        (0..w.len()).map(|k| self.pair(l, w.letter(k))).sum()
    }

    /// Visit all interleavings of `u` and `v` with their exponents.
    pub fn shuffle_words(&self, u: Word, v: Word, f: &mut impl FnMut(Word, i32)) {
        let (a, b) = (u.len(), v.len());
        if b == 0 {
            f(u, 0);
            return;
        }
        if a == 0 {
            f(v, 0);
            return;
        }
        let ul: Vec<u8> = u.letters();
        let vl: Vec<u8> = v.letters();
        // suf[i][j] = s * (deg u[i..], alpha_{v_j})
        let mut suf = vec![vec![0i32; b]; a + 1];
        for i in (0..a).rev() {
            for j in 0..b {
                suf[i][j] = suf[i + 1][j] + self.sign * self.pair(ul[i], vl[j]);
            }
        }
        let mut st = Interleave {
            ul: &ul,
            vl: &vl,
            suf: &suf,
        };
        st.rec(0, 0, 0, 0, 0, f);
    }

    pub fn mul(&self, x: &ShuffleElement, y: &ShuffleElement) -> ShuffleElement {
        let mut out: FxHashMap<Word, LPoly> = FxHashMap::default();
        for (u, a) in x.numerators() {
            for (v, b) in y.numerators() {
                let c = a.mul_ref(b);
                self.shuffle_words(*u, *v, &mut |w, e| {
                    out.entry(w).or_default().add_shifted(&c, e);
                });
            }
        }
        WordComb::from_parts(out, x.den().mul(y.den()))
    }

    pub fn product(&self, factors: &[&ShuffleElement]) -> ShuffleElement {
        let mut acc = WordComb::one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow(&self, x: &ShuffleElement, k: usize) -> ShuffleElement {
        let mut acc = WordComb::one();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `[x, y] = xy - q^{(deg x, deg y)} yx`.
    pub fn q_commutator(&self, x: &ShuffleElement, y: &ShuffleElement) -> Result<ShuffleElement, UqError> {
        if x.is_zero() || y.is_zero() {
            return Ok(WordComb::zero());
        }
        let n = self.rank();
        let dx = x.degree(n).ok_or(UqError::Inhomogeneous)?;
        let dy = y.degree(n).ok_or(UqError::Inhomogeneous)?;
        let e = self.pair_deg(&dx, &dy);
        let mut r = self.mul(x, y);
        r.add_scaled_assign(&self.mul(y, x), &LPoly::monomial(-1, e));
        Ok(r)
    }

    pub fn generator(&self, i: u8) -> ShuffleElement {
        WordComb::letter(i)
    }

    /// `(ad_q E_i)^n (y)`.
    pub fn ad_power(&self, i: u8, n: usize, y: &ShuffleElement) -> ShuffleElement {
        let ei = self.generator(i);
        let mut acc = y.clone();
        for _ in 0..n {
            acc = self.q_commutator(&ei, &acc).expect("homogeneous");
        }
        acc
    }

    /// `(ad_q E_i)^{1 - c_ij}(E_j)` for all ordered pairs `i != j`.
    pub fn serre_relators(&self) -> Vec<(u8, u8, ShuffleElement)> {
        let n = self.rank();
        let c = self.rs.cartan();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let k = (1 - c[i - 1][j - 1]) as usize;
                let r = self.ad_power(i as u8, k, &self.generator(j as u8));
                out.push((i as u8, j as u8, r));
            }
        }
        out
    }

    /// Image of the free-algebra monomial `E_w`.
    pub fn monomial(&self, w: Word) -> ShuffleElement {
        let mut acc = WordComb::one();
        for l in w.letters() {
            acc = self.mul(&acc, &self.generator(l));
        }
        acc
    }

    /// Image of a free-algebra element: `E_w` maps to the shuffle product of its letters.
    pub fn from_free(&self, x: &WordComb) -> ShuffleElement {
        // Horner scheme from the right end; words with a common prefix are merged as soon as
        // their tails have been absorbed.
        let mut groups: FxHashMap<Word, FxHashMap<Word, LPoly>> = FxHashMap::default();
        if x.max_len() == 0 {
            return x.clone();
        }
        for (w, p) in x.numerators() {
            let mut m = FxHashMap::default();
            m.insert(Word::EMPTY, p.clone());
            groups.insert(*w, m);
        }
        let mut current: FxHashMap<Word, FxHashMap<Word, LPoly>> = groups;
        loop {
            let mut next: FxHashMap<Word, FxHashMap<Word, LPoly>> = FxHashMap::default();
            let mut done = true;
            for (prefix, tail) in current {
                if prefix.is_empty() {
                    let e = next.entry(prefix).or_default();
                    for (w, p) in tail {
                        e.entry(w).or_default().add_shifted(&p, 0);
                    }
                    continue;
                }
                done = false;
                let l = prefix.last().unwrap();
                let rest = prefix.drop_last();
                let tail_elt = WordComb::from_parts(tail, crate::scalar::Poly::one());
                let prod = self.mul(&WordComb::letter(l), &tail_elt);
                let e = next.entry(rest).or_default();
                for (w, p) in prod.numerators() {
                    e.entry(*w).or_default().add_shifted(p, 0);
                }
            }
            current = next;
            if done {
                break;
            }
        }
        let terms = current.remove(&Word::EMPTY).unwrap_or_default();
        WordComb::from_parts(terms, x.den().clone())
    }

    /// Skew derivation removing a leading letter `i`.
    pub fn del_first(&self, i: u8, x: &ShuffleElement) -> ShuffleElement {
        x.map_words(|w, p, out| {
            if w.first() == Some(i) {
                out.entry(w.drop_first()).or_default().add_shifted(p, 0);
            }
        })
    }

    /// Skew derivation removing a trailing letter `i`.
    pub fn del_last(&self, i: u8, x: &ShuffleElement) -> ShuffleElement {
        x.map_words(|w, p, out| {
            if w.last() == Some(i) {
                out.entry(w.drop_last()).or_default().add_shifted(p, 0);
            }
        })
    }

    /// `[n]_{q_i}!` as a Laurent polynomial.
    pub fn qfact_i(&self, i: u8, n: u32) -> LPoly {
        qfact_lpoly(n, self.half_norm(i))
    }

    /// `q_i - q_i^{-1}`.
    pub fn qhat_i(&self, i: u8) -> LPoly {
        let d = self.half_norm(i) as i32;
        let mut p = LPoly::q_pow(d);
        p.add_monomial(-1, -d);
        p
    }

    pub fn scalar(&self, x: &ShuffleElement, s: &QScalar) -> ShuffleElement {
        x.scale(s)
    }
}

struct Interleave<'a> {
    ul: &'a [u8],
    vl: &'a [u8],
    suf: &'a [Vec<i32>],
}

impl Interleave<'_> {
    fn rec(&mut self, i: usize, j: usize, pos: usize, bits: u128, e: i32, f: &mut impl FnMut(Word, i32)) {
        let (a, b) = (self.ul.len(), self.vl.len());
        if i == a {
            let mut bits = bits;
            for (k, &l) in self.vl[j..].iter().enumerate() {
                bits |= (l as u128) << (4 * (pos + k));
            }
            f(Word::from_raw(bits), e);
            return;
        }
        if j == b {
            let mut bits = bits;
            for (k, &l) in self.ul[i..].iter().enumerate() {
                bits |= (l as u128) << (4 * (pos + k));
            }
            f(Word::from_raw(bits), e);
            return;
        }
        self.rec(i + 1, j, pos + 1, bits | ((self.ul[i] as u128) << (4 * pos)), e, f);
        let e2 = e + self.suf[i][j];
        self.rec(i, j + 1, pos + 1, bits | ((self.vl[j] as u128) << (4 * pos)), e2, f);
    }
}
