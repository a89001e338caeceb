//! Root systems of finite type and Weyl group combinatorics.
//!
//! Everything is expressed in the simple-root basis with exact arithmetic.
//! Simple roots are labelled as in Humphreys, 12.1; letters of words and
//! elements of `J` are 1-based.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rat = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("invalid Cartan type {family}{rank}")]
    InvalidType { family: Family, rank: usize },
    #[error("cannot parse Cartan type `{0}`")]
    Parse(String),
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u8>),
    #[error("J must be nonempty")]
    EmptyJ,
    #[error("index {0} is not in the support of the word")]
    NotInSupport(usize),
    #[error("vector has {got} coordinates, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("vector is not in the root lattice")]
    NotRootLattice,
    #[error("pairing {0} is not an integer")]
    NonIntegral(Rat),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.letter().to_string())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                Family::from_letter(c).ok_or_else(|| D::Error::custom("unknown family"))
            }
            _ => Err(D::Error::custom("family must be a single letter")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootError::InvalidType { family, rank })
        }
    }

    /// All valid types with `2 <= rank <= max_rank`, ordered by family then rank.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 2..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| RootError::Parse(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootError::Parse(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// Exact vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVec {
    pub coords: Vec<Rat>,
}

impl LatticeVec {
    pub fn zero(rank: usize) -> Self {
        LatticeVec {
            coords: vec![Rat::zero(); rank],
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        LatticeVec {
            coords: v.iter().map(|&x| Rat::from_integer(x)).collect(),
        }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = LatticeVec::zero(rank);
        v.coords[i - 1] = Rat::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Integer coordinates, if all coordinates are integers.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn add(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LatticeVec) -> LatticeVec {
        LatticeVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Rat) -> LatticeVec {
        LatticeVec {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rat::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rat::from_integer(s.trim().parse().ok()?)),
    }
}

impl Serialize for LatticeVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(rat_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coords = v
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))))
            .collect::<Result<_, _>>()?;
        Ok(LatticeVec { coords })
    }
}

/// Gram matrix of the invariant form on simple roots, short roots of norm 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinearForm {
    pub matrix: Vec<Vec<i64>>,
}

impl BilinearForm {
    pub fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.matrix[i];
            for (j, &bj) in b.iter().enumerate() {
                s += ai * row[j] * bj;
            }
        }
        s
    }

    pub fn eval_rat(&self, a: &LatticeVec, b: &LatticeVec) -> Rat {
        let mut s = Rat::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            for (j, bj) in b.coords.iter().enumerate() {
                s += ai * bj * Rat::from_integer(self.matrix[i][j]);
            }
        }
        s
    }
}

/// Gram matrix `<alpha_i, alpha_j>` for the given type.
fn gram_matrix(t: CartanType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut b = vec![vec![0i64; n]; n];
    let edge = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        b[i - 1][j - 1] = v;
        b[j - 1][i - 1] = v;
    };
    match t.family {
        Family::A => {
            for i in 1..=n {
                b[i - 1][i - 1] = 2;
            }
            for i in 1..n {
                edge(&mut b, i, i + 1, -1);
            }
        }
        Family::B => {
            for i in 1..n {
                b[i - 1][i - 1] = 4;
            }
            b[n - 1][n - 1] = 2;
            for i in 1..n {
                edge(&mut b, i, i + 1, -2);
            }
        }
        Family::C => {
            for i in 1..n {
                b[i - 1][i - 1] = 2;
            }
            b[n - 1][n - 1] = 4;
            for i in 1..n - 1 {
                edge(&mut b, i, i + 1, -1);
            }
            edge(&mut b, n - 1, n, -2);
        }
        Family::D => {
            for i in 1..=n {
                b[i - 1][i - 1] = 2;
            }
            for i in 1..n - 1 {
                edge(&mut b, i, i + 1, -1);
            }
            edge(&mut b, n - 2, n, -1);
        }
        Family::E => {
            for i in 1..=n {
                b[i - 1][i - 1] = 2;
            }
            edge(&mut b, 1, 3, -1);
            edge(&mut b, 2, 4, -1);
            for i in 3..n {
                edge(&mut b, i, i + 1, -1);
            }
        }
        Family::F => {
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
            edge(&mut b, 1, 2, -2);
            edge(&mut b, 2, 3, -2);
            edge(&mut b, 3, 4, -1);
        }
        Family::G => {
            b[0][0] = 2;
            b[1][1] = 6;
            edge(&mut b, 1, 2, -3);
        }
    }
    b
}

/// Cartan matrix `c_ij = 2<alpha_i, alpha_j>/<alpha_i, alpha_i>`.
pub fn cartan_matrix(t: CartanType) -> Vec<Vec<i64>> {
    let b = gram_matrix(t);
    (0..t.rank)
        .map(|i| (0..t.rank).map(|j| 2 * b[i][j] / b[i][i]).collect())
        .collect()
}

pub fn bilinear_form(t: CartanType) -> BilinearForm {
    BilinearForm {
        matrix: gram_matrix(t),
    }
}

/// A word in the simple reflections together with its radical roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    letters: Vec<u8>,
    roots: Vec<Vec<i64>>,
    support: Vec<usize>,
}

impl ReducedWord {
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// `beta_1, ..., beta_N` in integer simple-root coordinates.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Sorted letter set.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Subword at 1-based positions `i..=j`.
    pub fn interval(&self, rs: &RootSystem, i: usize, j: usize) -> Result<ReducedWord, RootError> {
        rs.reduced_word(&self.letters[i - 1..j])
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

/// Precomputed data for one Cartan type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    ty: CartanType,
    cartan: Vec<Vec<i64>>,
    form: BilinearForm,
    half_norms: Vec<i64>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    cartan_inv: Vec<Vec<Rat>>,
}

impl RootSystem {
    pub fn new(ty: CartanType) -> RootSystem {
        let cartan = cartan_matrix(ty);
        let form = bilinear_form(ty);
        let half_norms = (0..ty.rank).map(|i| form.matrix[i][i] / 2).collect();
        let cartan_inv = invert(&cartan);
        let mut rs = RootSystem {
            ty,
            cartan,
            form,
            half_norms,
            roots: Vec::new(),
            index: HashMap::new(),
            cartan_inv,
        };
        rs.close_roots();
        rs
    }

    fn close_roots(&mut self) {
        let n = self.rank();
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 1;
            seen.insert(v.clone(), ());
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let w = self.reflect_int(i + 1, &v);
                if w.iter().all(|&c| c >= 0) && w.iter().any(|&c| c > 0) && !seen.contains_key(&w) {
                    seen.insert(w.clone(), ());
                    queue.push_back(w);
                }
            }
            roots.push(v);
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.index = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        self.roots = roots;
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// `d_i = <alpha_i, alpha_i>/2`.
    pub fn half_norms(&self) -> &[i64] {
        &self.half_norms
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn highest_root(&self) -> &[i64] {
        self.roots.last().expect("nonempty root system")
    }

    fn check_index(&self, i: usize) -> Result<(), RootError> {
        if i == 0 || i > self.rank() {
            Err(RootError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// `<v, alpha_i^vee>` for integer `v`.
    pub fn coroot_pairing(&self, v: &[i64], i: usize) -> i64 {
        let row = &self.cartan[i - 1];
        row.iter().zip(v).map(|(c, x)| c * x).sum()
    }

    pub fn reflect_int(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let p = self.coroot_pairing(v, i);
        let mut out = v.to_vec();
        out[i - 1] -= p;
        out
    }

    pub fn reflect(&self, i: usize, v: &LatticeVec) -> Result<LatticeVec, RootError> {
        self.check_index(i)?;
        self.check_dim(v)?;
        let row = &self.cartan[i - 1];
        let p: Rat = row
            .iter()
            .zip(&v.coords)
            .map(|(c, x)| x * Rat::from_integer(*c))
            .sum();
        let mut out = v.clone();
        out.coords[i - 1] -= p;
        Ok(out)
    }

    fn check_dim(&self, v: &LatticeVec) -> Result<(), RootError> {
        if v.rank() != self.rank() {
            Err(RootError::Dimension {
                got: v.rank(),
                expected: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    fn check_letters(&self, word: &[u8]) -> Result<(), RootError> {
        for &l in word {
            self.check_index(l as usize)?;
        }
        Ok(())
    }

    /// `s_{i_1} ... s_{i_N} (v)`.
    pub fn apply_word(&self, word: &[u8], v: &LatticeVec) -> Result<LatticeVec, RootError> {
        self.check_letters(word)?;
        let mut out = v.clone();
        for &l in word.iter().rev() {
            out = self.reflect(l as usize, &out)?;
        }
        Ok(out)
    }

    pub fn apply_word_int(&self, word: &[u8], v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for &l in word.iter().rev() {
            let p = self.coroot_pairing(&out, l as usize);
            out[l as usize - 1] -= p;
        }
        out
    }

    /// Action of `s_i` on a weight written in the fundamental-weight basis.
    fn reflect_weight(&self, i: usize, lambda: &mut [i64]) {
        let li = lambda[i - 1];
        if li == 0 {
            return;
        }
        for (j, x) in lambda.iter_mut().enumerate() {
            *x -= li * self.cartan[i - 1][j];
        }
    }

    /// `w(rho)` in the fundamental-weight basis; determines `w`.
    pub fn element_key(&self, word: &[u8]) -> Vec<i64> {
        let mut lambda = vec![1i64; self.rank()];
        for &l in word.iter().rev() {
            self.reflect_weight(l as usize, &mut lambda);
        }
        lambda
    }

    /// Canonical reduced word of the element with `w(rho) = key`.
    pub fn word_from_key(&self, key: &[i64]) -> Vec<u8> {
        let mut lambda = key.to_vec();
        let mut word = Vec::new();
        while let Some(i) = lambda.iter().position(|&x| x < 0) {
            self.reflect_weight(i + 1, &mut lambda);
            word.push((i + 1) as u8);
        }
        word
    }

    pub fn reduced_word(&self, letters: &[u8]) -> Result<ReducedWord, RootError> {
        self.check_letters(letters)?;
        let roots = self.radical_roots(letters)?;
        let mut support: Vec<usize> = letters.iter().map(|&l| l as usize).collect();
        support.sort_unstable();
        support.dedup();
        Ok(ReducedWord {
            letters: letters.to_vec(),
            roots,
            support,
        })
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})`, failing if the word is not reduced.
    pub fn radical_roots(&self, letters: &[u8]) -> Result<Vec<Vec<i64>>, RootError> {
        self.check_letters(letters)?;
        let n = self.rank();
        let mut out: Vec<Vec<i64>> = Vec::with_capacity(letters.len());
        let mut seen = vec![false; self.roots.len()];
        for k in 0..letters.len() {
            let mut v = vec![0; n];
            v[letters[k] as usize - 1] = 1;
            let beta = self.apply_word_int(&letters[..k], &v);
            match self.root_index(&beta) {
                Some(idx) if !seen[idx] => {
                    seen[idx] = true;
                    out.push(beta);
                }
                _ => return Err(RootError::NotReduced(letters.to_vec())),
            }
        }
        Ok(out)
    }

    /// `{alpha > 0 : w^{-1} alpha < 0}` computed directly from the definition.
    pub fn inversion_set(&self, letters: &[u8]) -> Vec<Vec<i64>> {
        let inverse: Vec<u8> = letters.iter().rev().copied().collect();
        self.roots
            .iter()
            .filter(|a| {
                let img = self.apply_word_int(&inverse, a);
                img.iter().all(|&c| c <= 0)
            })
            .cloned()
            .collect()
    }

    /// Longest element of the parabolic subgroup on the indices outside `excluded`.
    pub fn longest_word(&self, excluded: &[usize]) -> ReducedWord {
        let mut lambda = vec![1i64; self.rank()];
        let mut word = Vec::new();
        loop {
            let next = (1..=self.rank()).find(|i| !excluded.contains(i) && lambda[i - 1] > 0);
            match next {
                Some(i) => {
                    self.reflect_weight(i, &mut lambda);
                    word.push(i as u8);
                }
                None => break,
            }
        }
        self.reduced_word(&word).expect("descent word is reduced")
    }

    /// Reduced word for `w_J = w_o^J w_o`.
    pub fn parabolic_word(&self, j: &[usize]) -> Result<ReducedWord, RootError> {
        if j.is_empty() {
            return Err(RootError::EmptyJ);
        }
        for &x in j {
            self.check_index(x)?;
        }
        let wo = self.longest_word(&[]);
        let woj = self.longest_word(j);
        let mut composite = woj.letters.clone();
        composite.extend_from_slice(&wo.letters);
        let key = self.element_key(&composite);
        let word = self.word_from_key(&key);
        self.reduced_word(&word)
    }

    /// `varpi_i` with `<varpi_i, alpha_j^vee> = delta_ij`.
    pub fn fundamental_weight(&self, i: usize) -> Result<LatticeVec, RootError> {
        self.check_index(i)?;
        Ok(LatticeVec {
            coords: (0..self.rank()).map(|k| self.cartan_inv[k][i - 1]).collect(),
        })
    }

    /// `varpi_i^vee` with `<varpi_i^vee, alpha_j> = delta_ij`, identified with a vector via the form.
    pub fn fundamental_coweight(&self, i: usize) -> Result<LatticeVec, RootError> {
        self.check_index(i)?;
        let w = self.fundamental_weight(i)?;
        Ok(w.scale(Rat::new(1, self.half_norms[i - 1])))
    }

    /// `(1 - w) varpi_i` for the element of `letters`, in the root lattice.
    pub fn theta_root(&self, letters: &[u8], i: usize) -> Vec<i64> {
        let mut gamma = vec![0i64; self.rank()];
        for &l in letters.iter().rev() {
            let l = l as usize;
            let p = self.coroot_pairing(&gamma, l);
            gamma[l - 1] -= p;
            if l == i {
                gamma[l - 1] += 1;
            }
        }
        gamma
    }

    /// Exponent `m` with `X Theta_i = q^m Theta_i X` for `X` of degree `mu`, integer route.
    pub fn exponent_int(&self, theta_root: &[i64], i: usize, mu: &[i64]) -> i64 {
        -2 * self.half_norms[i - 1] * mu[i - 1] + self.form.eval(theta_root, mu)
    }

    /// `-<(1 + w) varpi_i, mu>`.
    pub fn commutation_exponent(
        &self,
        word: &ReducedWord,
        i: usize,
        mu: &LatticeVec,
    ) -> Result<i64, RootError> {
        self.check_index(i)?;
        self.check_dim(mu)?;
        if !word.support.contains(&i) {
            return Err(RootError::NotInSupport(i));
        }
        mu.to_ints().ok_or(RootError::NotRootLattice)?;
        let varpi = self.fundamental_weight(i)?;
        let wvarpi = self.apply_word(&word.letters, &varpi)?;
        let p = -self.form.eval_rat(&varpi.add(&wvarpi), mu);
        if !p.is_integer() {
            return Err(RootError::NonIntegral(p));
        }
        Ok(p.to_integer())
    }

    /// Degrees `d_i = <sum_{j in J} varpi_j^vee, (1 - w_J) varpi_i>` over `supp(w_J)`.
    pub fn theta_degrees(&self, j: &[usize]) -> Result<Vec<i64>, RootError> {
        let w = self.parabolic_word(j)?;
        Ok(self.theta_degrees_for(&w, j))
    }

    pub fn theta_degrees_for(&self, w: &ReducedWord, j: &[usize]) -> Vec<i64> {
        w.support
            .iter()
            .map(|&i| grading_degree(&self.theta_root(&w.letters, i), j))
            .collect()
    }

    /// Minimal-length left factor `u` of `prefix` with `u^{-1}(beta)` simple.
    ///
    /// Returns a reduced word for `u` and the index `j` with `u(alpha_j) = beta`.
    pub fn shortest_factor_to_root(&self, prefix: &[u8], beta: &[i64]) -> Option<(Vec<u8>, usize)> {
        let allowed: Vec<Vec<i64>> = self.radical_roots(prefix).ok()?;
        let allowed: std::collections::HashSet<Vec<i64>> = allowed.into_iter().collect();
        let n = self.rank();
        let simple_of = |v: &[i64]| -> Option<usize> {
            let mut idx = None;
            for (k, &c) in v.iter().enumerate() {
                match c {
                    0 => {}
                    1 if idx.is_none() => idx = Some(k + 1),
                    _ => return None,
                }
            }
            idx
        };
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<(Vec<u8>, Vec<i64>)> = VecDeque::new();
        seen.insert(vec![1; n], ());
        queue.push_back((Vec::new(), beta.to_vec()));
        while let Some((word, pulled)) = queue.pop_front() {
            if let Some(j) = simple_of(&pulled) {
                return Some((word, j));
            }
            for a in 1..=n {
                let mut e = vec![0; n];
                e[a - 1] = 1;
                let new_root = self.apply_word_int(&word, &e);
                if !allowed.contains(&new_root) {
                    continue;
                }
                let mut w2 = word.clone();
                w2.push(a as u8);
                let key = self.element_key(&w2);
                if seen.contains_key(&key) {
                    continue;
                }
                seen.insert(key, ());
                let p2 = self.reflect_int(a, &pulled);
                queue.push_back((w2, p2));
            }
        }
        None
    }
}

/// Degree of a root-lattice vector under the grading by `sum_{j in J} varpi_j^vee`.
pub fn grading_degree(v: &[i64], j: &[usize]) -> i64 {
    j.iter().map(|&x| v[x - 1]).sum()
}

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|&x| Rat::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `eta(k) = i_k` and the positions whose letter occurs exactly once.
pub fn eta_and_px(word: &[u8]) -> (Vec<u8>, Vec<usize>) {
    let mut counts: HashMap<u8, usize> = HashMap::new();
    for &l in word {
        *counts.entry(l).or_default() += 1;
    }
    let px = word
        .iter()
        .enumerate()
        .filter(|(_, l)| counts[l] == 1)
        .map(|(k, _)| k + 1)
        .collect();
    (word.to_vec(), px)
}

pub fn positive_roots(t: CartanType) -> Vec<LatticeVec> {
    RootSystem::new(t)
        .positive_roots()
        .iter()
        .map(|r| LatticeVec::from_ints(r))
        .collect()
}

pub fn reflect(t: CartanType, i: usize, v: &LatticeVec) -> Result<LatticeVec, RootError> {
    RootSystem::new(t).reflect(i, v)
}

pub fn apply_word(t: CartanType, word: &[u8], v: &LatticeVec) -> Result<LatticeVec, RootError> {
    RootSystem::new(t).apply_word(word, v)
}

pub fn longest_word(t: CartanType, excluded_from: Option<&[usize]>) -> ReducedWord {
    RootSystem::new(t).longest_word(excluded_from.unwrap_or(&[]))
}

pub fn parabolic_word(t: CartanType, j: &[usize]) -> Result<ReducedWord, RootError> {
    RootSystem::new(t).parabolic_word(j)
}

pub fn radical_roots(t: CartanType, word: &[u8]) -> Result<Vec<LatticeVec>, RootError> {
    Ok(RootSystem::new(t)
        .radical_roots(word)?
        .iter()
        .map(|r| LatticeVec::from_ints(r))
        .collect())
}

pub fn fundamental_weight(t: CartanType, i: usize) -> Result<LatticeVec, RootError> {
    RootSystem::new(t).fundamental_weight(i)
}

pub fn commutation_exponent(
    t: CartanType,
    word: &[u8],
    i: usize,
    mu: &LatticeVec,
) -> Result<i64, RootError> {
    let rs = RootSystem::new(t);
    let w = rs.reduced_word(word)?;
    rs.commutation_exponent(&w, i, mu)
}

pub fn theta_degrees(t: CartanType, j: &[usize]) -> Result<Vec<i64>, RootError> {
    RootSystem::new(t).theta_degrees(j)
}

/// Chart for type `C_n`, `J = {n}`: the root `e_i + e_j` (`i <= j`) in simple-root coordinates.
pub fn symmetric_root(n: usize, i: usize, j: usize) -> Vec<i64> {
    (1..=n)
        .map(|k| (k >= i) as i64 + (j <= k && k < n) as i64)
        .collect()
}

/// Inverse of [`symmetric_root`] for roots of `C_n` involving `e_n`-type coordinates.
pub fn symmetric_label(n: usize, beta: &[i64]) -> Option<(usize, usize)> {
    for i in 1..=n {
        for j in i..=n {
            if symmetric_root(n, i, j) == beta {
                return Some((i, j));
            }
        }
    }
    None
}
