//! One quantized nilradical with a fixed reduced word and its grading data.

use std::collections::HashSet;

use serde::Serialize;

use crate::rootsys::{grading_degree, CartanType, ReducedWord, RootError, RootSystem};

use super::RigidityError;

/// `U_q(n_J)` presented by a reduced word of `w_J`, graded by `sum_{j in J} varpi_j^vee`.
#[derive(Debug, Clone)]
pub struct Nilradical<'a> {
    rs: &'a RootSystem,
    j: Vec<usize>,
    word: ReducedWord,
    /// Position of the first letter inside a longer ambient word, 0 when standalone.
    offset: usize,
    symbol: char,
    labels: Option<Vec<String>>,
    degrees: Vec<i64>,
    theta_roots: Vec<Vec<i64>>,
    theta_degrees: Vec<i64>,
    /// `exps[k][t]`: `X_{beta_k} Theta_t = q^e Theta_t X_{beta_k}`, `t` indexing the support.
    exps: Vec<Vec<i64>>,
}

/// A radical root with its position in the word and its display label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootRef {
    pub position: usize,
    pub label: String,
    pub root: Vec<i64>,
}

fn normalize_j(rs: &RootSystem, j: &[usize]) -> Result<Vec<usize>, RootError> {
    if j.is_empty() {
        return Err(RootError::EmptyJ);
    }
    let mut j = j.to_vec();
    j.sort_unstable();
    j.dedup();
    for &x in &j {
        if x == 0 || x > rs.rank() {
            return Err(RootError::IndexOutOfRange {
                index: x,
                rank: rs.rank(),
            });
        }
    }
    Ok(j)
}

impl<'a> Nilradical<'a> {
    /// Canonical reduced word for `w_J`.
    pub fn new(rs: &'a RootSystem, j: &[usize]) -> Result<Self, RootError> {
        let j = normalize_j(rs, j)?;
        let word = rs.parabolic_word(&j)?;
        Ok(Self::build(rs, j, word, 0, 'x'))
    }

    /// A user-supplied word, checked to be a reduced word for `w_J`.
    pub fn with_word(rs: &'a RootSystem, j: &[usize], letters: &[u8]) -> Result<Self, RigidityError> {
        Self::with_labels(rs, j, letters, 0, 'x')
    }

    /// As [`Nilradical::with_word`], labelling roots `symbol_{offset + k}`.
    pub fn with_labels(rs: &'a RootSystem, j: &[usize], letters: &[u8], offset: usize, symbol: char) -> Result<Self, RigidityError> {
        let j = normalize_j(rs, j)?;
        let word = rs.reduced_word(letters)?;
        let canonical = rs.parabolic_word(&j)?;
        if rs.element_key(letters) != rs.element_key(canonical.letters()) {
            return Err(RigidityError::WrongElement {
                word: letters.to_vec(),
                j,
            });
        }
        Ok(Self::build(rs, j, word, offset, symbol))
    }

    fn build(rs: &'a RootSystem, j: Vec<usize>, word: ReducedWord, offset: usize, symbol: char) -> Self {
        let degrees = word.roots().iter().map(|b| grading_degree(b, &j)).collect();
        let theta_roots: Vec<Vec<i64>> = word.support().iter().map(|&i| rs.theta_root(word.letters(), i)).collect();
        let theta_degrees = theta_roots.iter().map(|g| grading_degree(g, &j)).collect();
        let exps = word
            .roots()
            .iter()
            .map(|b| {
                word.support()
                    .iter()
                    .zip(&theta_roots)
                    .map(|(&i, g)| rs.exponent_int(g, i, b))
                    .collect()
            })
            .collect();
        Nilradical {
            rs,
            j,
            word,
            offset,
            symbol,
            labels: None,
            degrees,
            theta_roots,
            theta_degrees,
            exps,
        }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.rs.cartan_type()
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn support(&self) -> &[usize] {
        self.word.support()
    }

    /// Grading degree of `beta_k`, `k` 1-based.
    pub fn degree(&self, k: usize) -> i64 {
        self.degrees[k - 1]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `d_i` for `i` in the support, in support order.
    pub fn theta_degrees(&self) -> &[i64] {
        &self.theta_degrees
    }

    /// Q-degree `(1 - w) varpi_i` of `Theta_i`, in support order.
    pub fn theta_roots(&self) -> &[Vec<i64>] {
        &self.theta_roots
    }

    /// Exponents of `X_{beta_k}` against each `Theta_i`, in support order.
    pub fn exponents(&self, k: usize) -> &[i64] {
        &self.exps[k - 1]
    }

    pub fn label(&self, k: usize) -> String {
        match &self.labels {
            Some(l) => l[k - 1].clone(),
            None => format!("{}{}", self.symbol, self.offset + k),
        }
    }

    /// Replace the display labels, one per position.
    pub fn relabel(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len(), "one label per radical root");
        self.labels = Some(labels);
        self
    }

    /// Position of the root with this label.
    pub fn position_of(&self, label: &str) -> Option<usize> {
        (1..=self.len()).find(|&k| self.label(k) == label)
    }

    pub fn root_ref(&self, k: usize) -> RootRef {
        RootRef {
            position: k,
            label: self.label(k),
            root: self.word.roots()[k - 1].clone(),
        }
    }

    /// Positions of the degree-one radical roots.
    pub fn degree_one(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&k| self.degree(k) == 1).collect()
    }

    /// Index in support order of the simple root `i`.
    pub fn support_index(&self, i: usize) -> Option<usize> {
        self.support().iter().position(|&x| x == i)
    }

    /// `<beta_a, beta_b>`.
    pub fn pairing(&self, a: usize, b: usize) -> i64 {
        self.rs.form().eval(&self.word.roots()[a - 1], &self.word.roots()[b - 1])
    }

    pub fn ls_vanishing(&self, i: usize, j: usize) -> bool {
        ls_vanishing(&self.word, i, j)
    }

    pub fn kappa_pair(&self, i: usize) -> Option<usize> {
        kappa_pair(&self.word, i, &self.rs.form().matrix)
    }
}

/// Whether no nonnegative integral combination of `beta_{i+1}, ..., beta_{j-1}` equals `beta_i + beta_j`.
///
/// When true, `[X_{beta_i}, X_{beta_j}] = 0`.
pub fn ls_vanishing(word: &ReducedWord, i: usize, j: usize) -> bool {
    assert!(1 <= i && i < j && j <= word.len(), "need 1 <= i < j <= N");
    let roots = word.roots();
    let target: Vec<i64> = roots[i - 1].iter().zip(&roots[j - 1]).map(|(a, b)| a + b).collect();
    let pool: Vec<&Vec<i64>> = roots[i..j - 1].iter().collect();
    let mut dead: HashSet<(usize, Vec<i64>)> = HashSet::new();
    !reachable(&pool, 0, target, &mut dead)
}

fn reachable(pool: &[&Vec<i64>], k: usize, rem: Vec<i64>, dead: &mut HashSet<(usize, Vec<i64>)>) -> bool {
    if rem.iter().all(|&x| x == 0) {
        return true;
    }
    if k == pool.len() || dead.contains(&(k, rem.clone())) {
        return false;
    }
    let r = pool[k];
    let mut cur = rem.clone();
    loop {
        if reachable(pool, k + 1, cur.clone(), dead) {
            return true;
        }
        for (c, x) in cur.iter_mut().zip(r.iter()) {
            *c -= x;
        }
        if cur.iter().any(|&c| c < 0) {
            break;
        }
    }
    dead.insert((k, rem));
    false
}

/// A partner `j` with `[X_i, X_j] = 0` by the LS criterion and `<beta_i, beta_j> != 0`.
///
/// Adjacent positions are tried first, then increasing distance.
pub fn kappa_pair(word: &ReducedWord, i: usize, form: &[Vec<i64>]) -> Option<usize> {
    let n = word.len();
    let roots = word.roots();
    let pair = |a: usize, b: usize| -> i64 {
        let (x, y) = (&roots[a - 1], &roots[b - 1]);
        let mut s = 0;
        for (p, &xp) in x.iter().enumerate() {
            for (r, &yr) in y.iter().enumerate() {
                s += xp * form[p][r] * yr;
            }
        }
        s
    };
    for dist in 1..n {
        for j in [i.checked_sub(dist), Some(i + dist)].into_iter().flatten() {
            if j == 0 || j > n {
                continue;
            }
            if pair(i, j) == 0 {
                continue;
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            if ls_vanishing(word, a, b) {
                return Some(j);
            }
        }
    }
    None
}

/// Whether `degrees[j-1]` is not a nonnegative integral combination of the other degrees.
pub fn semigroup_excluded(degrees: &[i64], j: usize) -> bool {
    assert!(j >= 1 && j <= degrees.len(), "index {j} out of range");
    let target = degrees[j - 1];
    assert!(degrees.iter().all(|&d| d > 0), "degrees must be positive");
    let t = target as usize;
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for (k, &d) in degrees.iter().enumerate() {
        if k == j - 1 {
            continue;
        }
        let d = d as usize;
        for s in d..=t {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    !reach[t]
}

/// Ordered `Theta` monomials of total degree `d`, as exponent tuples in support order.
pub fn theta_monomials(degrees: &[i64], d: i64) -> Vec<Vec<u32>> {
    fn rec(degrees: &[i64], k: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == degrees.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut m = 0;
        while m as i64 * degrees[k] <= rem {
            cur.push(m);
            rec(degrees, k + 1, rem - m as i64 * degrees[k], cur, out);
            cur.pop();
            m += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(degrees, 0, d, &mut Vec::new(), &mut out);
    }
    out
}
