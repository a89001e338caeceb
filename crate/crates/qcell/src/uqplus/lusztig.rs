//! Lusztig symmetries on the free algebra, projected to `U_q^+`.
//!
//! When `T_i(y)` is known to lie in `U_q^+`, it can be computed letter by
//! letter: a letter `j != i` contributes the free image of `T_i(E_j)`, and a
//! letter `i` contributes `-F_i K_i`, of which only the part with trivial `F`
//! and `K` factors survives. That part is a skew derivation of what has been
//! built so far, divided by `q_i - q_i^{-1}`. Dropped terms carry a nonempty
//! `F` factor or a nonzero `K` weight, and neither can disappear again under
//! further right multiplication.

use rustc_hash::FxHashMap;

use crate::rootsys::ReducedWord;
use crate::scalar::{qfact_lpoly, LPoly};
use crate::shuffle::{ShuffleAlgebra, ShuffleElement, UqError};
use crate::words::{Word, WordComb};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `T_{i_1} ... T_{i_{k-1}}(E_{i_k})` exactly as written.
    Literal,
    /// Shortest left factor `u` of the prefix with `u^{-1}(beta_k)` simple.
    Reduced,
}

#[derive(Debug, Clone, Copy)]
pub struct RootVectorOptions {
    pub route: Route,
    /// Maximum number of free-algebra terms produced by one call.
    pub budget: usize,
}

impl Default for RootVectorOptions {
    fn default() -> Self {
        RootVectorOptions {
            route: Route::Reduced,
            budget: 200_000_000,
        }
    }
}

type Terms = FxHashMap<Word, LPoly>;

/// `E_i y - q^{(alpha_i, deg y)} y E_i` on free words.
fn ad_free(alg: &ShuffleAlgebra, i: u8, y: &Terms) -> Terms {
    let ei = Word::letter_word(i);
    let mut out: Terms = FxHashMap::default();
    for (w, c) in y {
        out.entry(ei.concat(*w)).or_default().add_shifted(c, 0);
        let e = alg.pair_letter_word(i, *w);
        out.entry(w.push(i)).or_default().add_shifted(&c.scale(-1), e);
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Numerator of `T_i(E_j)` on free words and the exponent `n = -c_ij`.
fn image_numerator(alg: &ShuffleAlgebra, i: u8, j: u8) -> (Terms, u32) {
    let n = -alg.root_system().cartan()[i as usize - 1][j as usize - 1];
    let mut y: Terms = FxHashMap::default();
    y.insert(Word::letter_word(j), LPoly::one());
    for _ in 0..n {
        y = ad_free(alg, i, &y);
    }
    (y, n as u32)
}

/// `T_i(E_j) = (ad_q E_i)^{(-c_ij)}(E_j)` as a free-algebra element, `j != i`.
pub fn generator_image_free(alg: &ShuffleAlgebra, i: u8, j: u8) -> WordComb {
    assert_ne!(i, j, "T_i(E_i) is not in the positive part");
    let (y, n) = image_numerator(alg, i, j);
    WordComb::from_parts(y, crate::scalar::Poly::one()).div_lpoly(&alg.qfact_i(i, n))
}

struct Fold<'a> {
    alg: &'a ShuffleAlgebra,
    i: u8,
    images: Vec<Terms>,
    budget: usize,
    used: usize,
}

impl Fold<'_> {
    fn charge(&mut self, n: usize) -> Result<(), UqError> {
        self.used += n;
        if self.used > self.budget {
            Err(UqError::Budget(self.budget))
        } else {
            Ok(())
        }
    }

    fn step(&mut self, p: &Terms, l: u8) -> Result<Terms, UqError> {
        let mut out: Terms = FxHashMap::default();
        if l != self.i {
            let cost = p.len() * self.images[l as usize - 1].len();
            self.charge(cost)?;
            let img = &self.images[l as usize - 1];
            for (u, a) in p {
                for (v, b) in img {
                    out.entry(u.concat(*v)).or_default().add_shifted(&a.mul_ref(b), 0);
                }
            }
        } else {
            let i = self.i;
            for (v, c) in p {
                let mut suffix = 0i32;
                for k in (0..v.len()).rev() {
                    let lk = v.letter(k);
                    if lk == i {
                        out.entry(v.remove(k)).or_default().add_shifted(c, -suffix);
                    }
                    suffix += self.alg.pair(i, lk);
                }
            }
            self.charge(out.len())?;
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    fn dfs(&mut self, words: &[(Word, &LPoly)], depth: usize, p: &Terms, out: &mut Terms) -> Result<(), UqError> {
        if words.len() == 1 && words[0].0.len() == depth {
            let c = words[0].1;
            for (w, a) in p {
                out.entry(*w).or_default().add_shifted(&a.mul_ref(c), 0);
            }
            return Ok(());
        }
        let mut start = 0;
        while start < words.len() {
            let l = words[start].0.letter(depth);
            let mut end = start + 1;
            while end < words.len() && words[end].0.letter(depth) == l {
                end += 1;
            }
            let next = self.step(p, l)?;
            if !next.is_empty() {
                self.dfs(&words[start..end], depth + 1, &next, out)?;
            }
            start = end;
        }
        Ok(())
    }
}

/// `T_i(y)` for a homogeneous free-algebra element whose image lies in `U_q^+`.
pub fn lusztig_t_free(alg: &ShuffleAlgebra, i: u8, y: &WordComb, budget: usize) -> Result<WordComb, UqError> {
    if y.is_zero() {
        return Ok(WordComb::zero());
    }
    let n = alg.rank();
    let content = y.degree(n).ok_or(UqError::Inhomogeneous)?;
    let mut images = Vec::with_capacity(n);
    let mut den = LPoly::one();
    for j in 1..=n as u8 {
        if j == i {
            images.push(FxHashMap::default());
            for _ in 0..content[j as usize - 1] {
                den = den.mul_ref(&alg.qhat_i(i));
            }
        } else {
            let (img, m) = image_numerator(alg, i, j);
            images.push(img);
            let f = qfact_lpoly(m, alg.half_norm(i));
            for _ in 0..content[j as usize - 1] {
                den = den.mul_ref(&f);
            }
        }
    }
    let mut words: Vec<(Word, &LPoly)> = y.numerators().iter().map(|(w, p)| (*w, p)).collect();
    words.sort_by(|a, b| a.0.cmp(&b.0));
    let mut fold = Fold {
        alg,
        i,
        images,
        budget,
        used: 0,
    };
    let mut start: Terms = FxHashMap::default();
    start.insert(Word::EMPTY, LPoly::one());
    let mut out: Terms = FxHashMap::default();
    fold.dfs(&words, 0, &start, &mut out)?;
    out.retain(|_, p| !p.is_zero());
    Ok(WordComb::from_parts(out, y.den().clone()).div_lpoly(&den))
}

/// `T_{a_1} T_{a_2} ... T_{a_k}(y)`, applying `T_{a_k}` first.
pub fn t_word_free(alg: &ShuffleAlgebra, word: &[u8], y: &WordComb, budget: usize) -> Result<WordComb, UqError> {
    let mut acc = y.clone();
    for &a in word.iter().rev() {
        acc = lusztig_t_free(alg, a, &acc, budget)?;
    }
    Ok(acc)
}

/// Free-algebra representative of `X_{beta_k}`, `k` 1-based.
fn root_vector_free(alg: &ShuffleAlgebra, word: &ReducedWord, k: usize, opts: RootVectorOptions) -> Result<WordComb, UqError> {
    let letters = word.letters();
    if k == 0 || k > letters.len() {
        return Err(UqError::Other(format!("position {k} out of range 1..={}", letters.len())));
    }
    let prefix = &letters[..k - 1];
    let (u, j) = match opts.route {
        Route::Literal => (prefix.to_vec(), letters[k - 1] as usize),
        Route::Reduced => alg
            .root_system()
            .shortest_factor_to_root(prefix, &word.roots()[k - 1])
            .ok_or_else(|| UqError::Other("no left factor maps a simple root to beta".into()))?,
    };
    t_word_free(alg, &u, &WordComb::letter(j as u8), opts.budget)
}

/// `X_{beta_k}` in the shuffle model, `k` 1-based.
pub fn root_vector(alg: &ShuffleAlgebra, word: &ReducedWord, k: usize, opts: RootVectorOptions) -> Result<ShuffleElement, UqError> {
    Ok(alg.from_free(&root_vector_free(alg, word, k, opts)?))
}

/// All root vectors `X_{beta_1}, ..., X_{beta_N}` of a reduced word.
pub fn root_vectors(alg: &ShuffleAlgebra, word: &ReducedWord, opts: RootVectorOptions) -> Result<Vec<ShuffleElement>, UqError> {
    (1..=word.len()).map(|k| root_vector(alg, word, k, opts)).collect()
}
