//! Expansion in ordered monomials of root vectors.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::rootsys::ReducedWord;
use crate::scalar::QScalar;
use crate::shuffle::{ShuffleAlgebra, ShuffleElement, UqError};
use crate::words::{Word, WordComb};

use super::lusztig::{root_vectors, RootVectorOptions};

/// Exponent tuple `(m_1, ..., m_N)` to coefficient, zero coefficients omitted.
pub type PbwExpansion = BTreeMap<Vec<u32>, QScalar>;

type Column = FxHashMap<Word, QScalar>;

fn to_column(x: &ShuffleElement) -> Column {
    x.canonical_terms().into_iter().collect()
}

/// `v -= s * r`.
fn axpy(v: &mut Column, s: &QScalar, r: &Column) {
    for (w, c) in r {
        let e = v.entry(*w).or_default();
        *e = &*e - &(s * c);
        if e.is_zero() {
            v.remove(w);
        }
    }
}

fn exponent_tuples(degs: &[Vec<i64>], target: &[i64]) -> Vec<Vec<u32>> {
    fn rec(degs: &[Vec<i64>], k: usize, rem: Vec<i64>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == degs.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let d = &degs[k];
        let mut r = rem;
        let mut m = 0u32;
        loop {
            cur.push(m);
            rec(degs, k + 1, r.clone(), cur, out);
            cur.pop();
            if d.iter().all(|&x| x == 0) {
                break;
            }
            for (a, x) in r.iter_mut().zip(d) {
                *a -= x;
            }
            if r.iter().any(|&x| x < 0) {
                break;
            }
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(degs, 0, target.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Ordered monomial `X_1^{m_1} ... X_N^{m_N}`.
pub fn ordered_monomial(alg: &ShuffleAlgebra, basis: &[ShuffleElement], m: &[u32]) -> ShuffleElement {
    let mut acc = WordComb::one();
    for (x, &e) in basis.iter().zip(m) {
        for _ in 0..e {
            acc = alg.mul(&acc, x);
        }
    }
    acc
}

/// Incremental column echelon form over `Q(q)`, tracking each reduced column
/// as a combination of the inserted ones.
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    pivots: Vec<(Word, Column, Vec<QScalar>)>,
    inserted: usize,
}

impl Echelon {
    /// Insert a column; returns `false` (and leaves the basis unchanged) if it is dependent.
    pub(crate) fn insert(&mut self, x: &ShuffleElement) -> bool {
        let j = self.inserted;
        let mut v = to_column(x);
        let mut comb = vec![QScalar::zero(); j + 1];
        comb[j] = QScalar::one();
        for (p, r, rc) in &self.pivots {
            if let Some(s) = v.get(p).cloned() {
                axpy(&mut v, &s, r);
                for (a, b) in comb.iter_mut().zip(rc) {
                    *a = &*a - &(&s * b);
                }
            }
        }
        let Some(p) = v.keys().min().copied() else {
            return false;
        };
        let inv = v[&p].inv();
        for c in v.values_mut() {
            *c = &*c * &inv;
        }
        for c in comb.iter_mut() {
            *c = &*c * &inv;
        }
        self.pivots.push((p, v, comb));
        self.inserted += 1;
        true
    }

    /// Coefficients on the inserted columns, or the residual size when `x` is outside the span.
    pub(crate) fn solve(&self, x: &ShuffleElement) -> Result<Vec<QScalar>, usize> {
        let mut v = to_column(x);
        let mut coeffs = vec![QScalar::zero(); self.inserted];
        for (p, r, rc) in &self.pivots {
            if let Some(s) = v.get(p).cloned() {
                axpy(&mut v, &s, r);
                for (a, b) in coeffs.iter_mut().zip(rc) {
                    *a = &*a + &(&s * b);
                }
            }
        }
        if v.is_empty() {
            Ok(coeffs)
        } else {
            Err(v.len())
        }
    }
}

pub(crate) fn exponent_tuples_for(degs: &[Vec<i64>], target: &[i64]) -> Vec<Vec<u32>> {
    exponent_tuples(degs, target)
}

/// Coefficients of `element` in the ordered monomials of `basis`.
///
/// Fails with [`UqError::OutsideSpan`] when no combination matches, and with
/// [`UqError::Other`] when the monomials of the required degree are dependent.
pub fn pbw_expand(alg: &ShuffleAlgebra, basis: &[ShuffleElement], element: &ShuffleElement) -> Result<PbwExpansion, UqError> {
    let n = alg.rank();
    if element.is_zero() {
        return Ok(BTreeMap::new());
    }
    let target_deg = element.degree(n).ok_or(UqError::Inhomogeneous)?;
    let mut degs = Vec::with_capacity(basis.len());
    for x in basis {
        degs.push(x.degree(n).ok_or(UqError::Inhomogeneous)?);
    }
    let tuples = exponent_tuples(&degs, &target_deg);
    let mut ech = Echelon::default();
    for t in &tuples {
        if !ech.insert(&ordered_monomial(alg, basis, t)) {
            return Err(UqError::Other(format!("ordered monomial {t:?} depends on earlier ones")));
        }
    }
    let coeffs = ech.solve(element).map_err(UqError::OutsideSpan)?;
    Ok(tuples
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// `U_{[i,j]}`, generated by `X_{beta_i}, ..., X_{beta_j}`.
#[derive(Debug, Clone)]
pub struct IntervalSubalgebra {
    pub first: usize,
    pub last: usize,
    vectors: Vec<ShuffleElement>,
}

impl IntervalSubalgebra {
    pub fn new(alg: &ShuffleAlgebra, word: &ReducedWord, i: usize, j: usize, opts: RootVectorOptions) -> Result<Self, UqError> {
        if i == 0 || i > j || j > word.len() {
            return Err(UqError::Other(format!("interval [{i},{j}] outside 1..={}", word.len())));
        }
        let all = root_vectors_range(alg, word, i, j, opts)?;
        Ok(IntervalSubalgebra {
            first: i,
            last: j,
            vectors: all,
        })
    }

    /// Build from precomputed root vectors `X_{beta_i}, ..., X_{beta_j}`.
    pub fn from_vectors(first: usize, vectors: Vec<ShuffleElement>) -> Self {
        IntervalSubalgebra {
            first,
            last: first + vectors.len() - 1,
            vectors,
        }
    }

    pub fn root_vectors(&self) -> &[ShuffleElement] {
        &self.vectors
    }

    pub fn pbw_expand(&self, alg: &ShuffleAlgebra, x: &ShuffleElement) -> Result<PbwExpansion, UqError> {
        pbw_expand(alg, &self.vectors, x)
    }

    /// Whether `x` lies in the span of the ordered monomials.
    pub fn contains(&self, alg: &ShuffleAlgebra, x: &ShuffleElement) -> Result<bool, UqError> {
        match self.pbw_expand(alg, x) {
            Ok(_) => Ok(true),
            Err(UqError::OutsideSpan(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Check linear independence of the ordered monomials in every degree of height at most `max_height`.
    pub fn check_basis(&self, alg: &ShuffleAlgebra, max_height: i64) -> Result<usize, UqError> {
        let n = alg.rank();
        let degs: Vec<Vec<i64>> = self.vectors.iter().map(|x| x.degree(n).unwrap()).collect();
        let mut targets: std::collections::BTreeSet<Vec<i64>> = Default::default();
        let mut frontier = vec![vec![0i64; n]];
        for _ in 0..max_height {
            let mut next = Vec::new();
            for f in &frontier {
                for d in &degs {
                    let s: Vec<i64> = f.iter().zip(d).map(|(a, b)| a + b).collect();
                    if s.iter().sum::<i64>() <= max_height && targets.insert(s.clone()) {
                        next.push(s);
                    }
                }
            }
            frontier = next;
        }
        let mut checked = 0;
        for t in targets {
            let tuples = exponent_tuples(&degs, &t);
            let mut sample = WordComb::zero();
            for (k, m) in tuples.iter().enumerate() {
                let mono = ordered_monomial(alg, &self.vectors, m);
                sample.add_scaled_assign(&mono, &crate::scalar::LPoly::q_pow(k as i32 * 7));
            }
            sample.reduce();
            pbw_expand(alg, &self.vectors, &sample)?;
            checked += tuples.len();
        }
        Ok(checked)
    }
}

fn root_vectors_range(alg: &ShuffleAlgebra, word: &ReducedWord, i: usize, j: usize, opts: RootVectorOptions) -> Result<Vec<ShuffleElement>, UqError> {
    if i == 1 && j == word.len() {
        return root_vectors(alg, word, opts);
    }
    (i..=j).map(|k| super::lusztig::root_vector(alg, word, k, opts)).collect()
}
