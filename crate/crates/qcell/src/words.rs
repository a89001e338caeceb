//! Packed letter words and finite linear combinations of them.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::scalar::{LPoly, Poly, QScalar};

/// Word over letters `1..=15`, at most 32 letters, packed four bits per letter.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(u128);

pub const MAX_WORD_LEN: usize = 32;

impl Word {
    pub const EMPTY: Word = Word(0);

    pub fn from_letters(letters: &[u8]) -> Word {
        assert!(letters.len() <= MAX_WORD_LEN, "word longer than {MAX_WORD_LEN}");
        let mut bits = 0u128;
        for (k, &l) in letters.iter().enumerate() {
            assert!((1..=15).contains(&l), "letter {l} out of range");
            bits |= (l as u128) << (4 * k);
        }
        Word(bits)
    }

    pub fn letter_word(l: u8) -> Word {
        Word::from_letters(&[l])
    }

    /// Caller guarantees every nibble up to the top one is a nonzero letter.
    #[inline]
    pub(crate) fn from_raw(bits: u128) -> Word {
        Word(bits)
    }

    #[inline]
    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            (128 - self.0.leading_zeros() as usize + 3) / 4
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn letter(self, k: usize) -> u8 {
        ((self.0 >> (4 * k)) & 0xF) as u8
    }

    pub fn first(self) -> Option<u8> {
        (!self.is_empty()).then(|| self.letter(0))
    }

    pub fn last(self) -> Option<u8> {
        let n = self.len();
        (n > 0).then(|| self.letter(n - 1))
    }

    pub fn letters(self) -> Vec<u8> {
        (0..self.len()).map(|k| self.letter(k)).collect()
    }

    #[inline]
    pub fn concat(self, other: Word) -> Word {
        let n = self.len();
        assert!(n + other.len() <= MAX_WORD_LEN, "word longer than {MAX_WORD_LEN}");
        Word(self.0 | (other.0 << (4 * n)))
    }

    #[inline]
    pub fn push(self, l: u8) -> Word {
        let n = self.len();
        assert!(n < MAX_WORD_LEN, "word longer than {MAX_WORD_LEN}");
        Word(self.0 | ((l as u128) << (4 * n)))
    }

    /// Delete the letter at position `k`.
    pub fn remove(self, k: usize) -> Word {
        let low_mask = if k == 0 { 0 } else { (1u128 << (4 * k)) - 1 };
        let low = self.0 & low_mask;
        let high = if 4 * (k + 1) >= 128 { 0 } else { self.0 >> (4 * (k + 1)) };
        Word(low | (high << (4 * k)))
    }

    pub fn drop_first(self) -> Word {
        Word(self.0 >> 4)
    }

    pub fn drop_last(self) -> Word {
        let n = self.len();
        if n == 0 {
            return self;
        }
        Word(self.0 & !(0xFu128 << (4 * (n - 1))))
    }

    /// Letter multiplicities, indexed by `letter - 1`.
    pub fn content(self, rank: usize) -> Vec<i64> {
        let mut c = vec![0i64; rank];
        for k in 0..self.len() {
            c[self.letter(k) as usize - 1] += 1;
        }
        c
    }

    pub fn reversed(self) -> Word {
        let mut l = self.letters();
        l.reverse();
        Word::from_letters(&l)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.len(), other.len());
        for k in 0..a.min(b) {
            match self.letter(k).cmp(&other.letter(k)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        a.cmp(&b)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `(1/den) * sum c_w w` with Laurent numerators and an ordinary polynomial denominator.
#[derive(Clone, Debug)]
pub struct WordComb {
    terms: FxHashMap<Word, LPoly>,
    den: Poly,
}

impl Default for WordComb {
    fn default() -> Self {
        WordComb::zero()
    }
}

impl WordComb {
    pub fn zero() -> WordComb {
        WordComb {
            terms: FxHashMap::default(),
            den: Poly::one(),
        }
    }

    pub fn one() -> WordComb {
        WordComb::word(Word::EMPTY)
    }

    pub fn word(w: Word) -> WordComb {
        let mut c = WordComb::zero();
        c.terms.insert(w, LPoly::one());
        c
    }

    pub fn letter(l: u8) -> WordComb {
        WordComb::word(Word::letter_word(l))
    }

    pub fn from_parts(terms: FxHashMap<Word, LPoly>, den: Poly) -> WordComb {
        let mut c = WordComb { terms, den };
        c.terms.retain(|_, p| !p.is_zero());
        c.reduce();
        c
    }

    pub fn from_qterms(terms: &[(Word, QScalar)]) -> WordComb {
        let mut out = WordComb::zero();
        for (w, s) in terms {
            let mut one = WordComb::word(*w);
            one = one.scale(s);
            out.add_assign(&one);
        }
        out
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

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn numerators(&self) -> &FxHashMap<Word, LPoly> {
        &self.terms
    }

    pub fn into_parts(self) -> (FxHashMap<Word, LPoly>, Poly) {
        (self.terms, self.den)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Coefficient of `w` as a reduced rational function.
    pub fn coeff(&self, w: Word) -> QScalar {
        match self.terms.get(&w) {
            Some(p) => QScalar::from_laurent(p, &self.den),
            None => QScalar::zero(),
        }
    }

    /// Sorted `(word, coefficient)` pairs in lowest terms.
    pub fn canonical_terms(&self) -> Vec<(Word, QScalar)> {
        let mut v: Vec<(Word, QScalar)> = self
            .terms
            .iter()
            .map(|(w, p)| (*w, QScalar::from_laurent(p, &self.den)))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Common content of all words, `None` if zero or inhomogeneous.
    pub fn degree(&self, rank: usize) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let d = it.next()?.content(rank);
        for w in it {
            if w.content(rank) != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn is_homogeneous(&self, rank: usize) -> bool {
        self.is_zero() || self.degree(rank).is_some()
    }

    /// Cancel common factors between the denominator and the numerators.
    pub fn reduce(&mut self) {
        if self.terms.is_empty() {
            self.den = Poly::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        if self.den.lc() < 0 {
            self.den = self.den.scale(-1);
            for p in self.terms.values_mut() {
                *p = p.scale(-1);
            }
        }
        let mut g = self.den.clone();
        for p in self.terms.values() {
            let (pp, _) = p.to_poly_shifted();
            g = Poly::gcd(&g, &pp);
            if g.is_one() {
                break;
            }
        }
        let mut ic = self.den.content();
        for p in self.terms.values() {
            if ic == 1 {
                break;
            }
            ic = num_integer::gcd(ic, p.content());
        }
        if !g.is_one() {
            self.den = self.den.exact_div(&g).expect("gcd divides");
            for p in self.terms.values_mut() {
                let (pp, low) = p.to_poly_shifted();
                let qq = pp.exact_div(&g).expect("gcd divides");
                *p = LPoly::from_coeffs(low, qq.coeffs().to_vec());
            }
        }
        let ic = num_integer::gcd(ic, self.den.content());
        if ic > 1 {
            self.den = self.den.div_int(ic);
            for p in self.terms.values_mut() {
                let (pp, low) = p.to_poly_shifted();
                *p = LPoly::from_coeffs(low, pp.div_int(ic).coeffs().to_vec());
            }
        }
    }

    fn mul_numerators(&mut self, f: &LPoly) {
        for p in self.terms.values_mut() {
            *p = p.mul_ref(f);
        }
        self.terms.retain(|_, p| !p.is_zero());
    }

    /// Bring `self` and `other` to a common denominator, returning the multiplier for `other`.
    fn align(&mut self, other: &WordComb) -> LPoly {
        if self.den == other.den {
            return LPoly::one();
        }
        let g = Poly::gcd(&self.den, &other.den);
        let fs = other.den.exact_div(&g).expect("gcd divides");
        let fo = self.den.exact_div(&g).expect("gcd divides");
        self.mul_numerators(&fs.to_lpoly());
        self.den = self.den.mul(&fs);
        fo.to_lpoly()
    }

    pub fn add_assign(&mut self, other: &WordComb) {
        self.add_scaled_assign(other, &LPoly::one());
    }

    /// `self += f * other` for a Laurent polynomial `f`.
    pub fn add_scaled_assign(&mut self, other: &WordComb, f: &LPoly) {
        if other.is_zero() || f.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            if !f.is_one() {
                self.mul_numerators(f);
            }
            return;
        }
        let mult = self.align(other).mul_ref(f);
        for (w, p) in &other.terms {
            let add = p.mul_ref(&mult);
            let e = self.terms.entry(*w).or_default();
            e.add_shifted(&add, 0);
            if e.is_zero() {
                self.terms.remove(w);
            }
        }
        if self.terms.is_empty() {
            self.den = Poly::one();
        }
    }

    pub fn add(&self, other: &WordComb) -> WordComb {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &WordComb) -> WordComb {
        let mut r = self.clone();
        r.add_scaled_assign(other, &LPoly::constant(-1));
        r
    }

    pub fn neg(&self) -> WordComb {
        self.scale_lpoly(&LPoly::constant(-1))
    }

    pub fn scale_lpoly(&self, f: &LPoly) -> WordComb {
        if f.is_zero() {
            return WordComb::zero();
        }
        let mut r = self.clone();
        r.mul_numerators(f);
        r.reduce();
        r
    }

    pub fn scale(&self, s: &QScalar) -> WordComb {
        if s.is_zero() {
            return WordComb::zero();
        }
        let mut r = self.clone();
        r.mul_numerators(&s.num().to_lpoly());
        r.den = r.den.mul(&s.den());
        r.reduce();
        r
    }

    /// Divide by a Laurent polynomial.
    pub fn div_lpoly(&self, f: &LPoly) -> WordComb {
        let (p, low) = f.to_poly_shifted();
        let mut r = self.clone();
        r.mul_numerators(&LPoly::q_pow(-low));
        r.den = r.den.mul(&p);
        r.reduce();
        r
    }

    /// Apply `f` to every word and sum, with the word's coefficient as a Laurent factor.
    pub fn map_words(&self, mut f: impl FnMut(Word, &LPoly, &mut FxHashMap<Word, LPoly>)) -> WordComb {
        let mut out: FxHashMap<Word, LPoly> = FxHashMap::default();
        for (w, p) in &self.terms {
            f(*w, p, &mut out);
        }
        WordComb::from_parts(out, self.den.clone())
    }

    /// Concatenation product, the free-algebra multiplication.
    pub fn concat(&self, other: &WordComb) -> WordComb {
        let mut out: FxHashMap<Word, LPoly> = FxHashMap::default();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let c = a.mul_ref(b);
                out.entry(u.concat(*v)).or_default().add_shifted(&c, 0);
            }
        }
        WordComb::from_parts(out, self.den.mul(&other.den))
    }

    /// Maximum word length.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

impl PartialEq for WordComb {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        if self.den == other.den {
            return self.terms == other.terms;
        }
        let ls = other.den.to_lpoly();
        let lo = self.den.to_lpoly();
        self.terms.iter().all(|(w, p)| match other.terms.get(w) {
            Some(q) => p.mul_ref(&ls) == q.mul_ref(&lo),
            None => false,
        })
    }
}

impl Eq for WordComb {}

impl fmt::Display for WordComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self.canonical_terms();
        for (k, (w, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[{w}]")?;
        }
        Ok(())
    }
}
