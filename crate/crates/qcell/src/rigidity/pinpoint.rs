//! Invariant subsets of the degree-one component cut out by commutation with `N(R)`.
//!
//! For `x` in `R_1` with root-vector support `S`, the space `V_d^m(x)` is
//! spanned by the degree-`d` ordered `Theta` monomials whose exponent against
//! every root of `S` is `m`: the products `Theta^a X_beta` have pairwise
//! distinct Q-degrees, so `x y = q^m y x` splits coefficient by coefficient.
//! Everything below is therefore a computation on supports.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::nilradical::{theta_monomials, Nilradical, RootRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryKind {
    C,
    Gamma,
}

/// `C_d^m`, or `gamma_{d,ell}^m` when `kind` is `Gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CmGammaQuery {
    pub d: i64,
    pub m: i64,
    pub kind: QueryKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
}

impl CmGammaQuery {
    pub fn c(d: i64, m: i64) -> Self {
        CmGammaQuery {
            d,
            m,
            kind: QueryKind::C,
            ell: None,
        }
    }

    pub fn gamma(d: i64, ell: usize, m: i64) -> Self {
        CmGammaQuery {
            d,
            m,
            kind: QueryKind::Gamma,
            ell: Some(ell),
        }
    }
}

impl fmt::Display for CmGammaQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            QueryKind::C => write!(f, "C_{}^{}", self.d, self.m),
            QueryKind::Gamma => write!(f, "gamma_{{{},{}}}^{}", self.d, self.ell.unwrap_or(0), self.m),
        }
    }
}

impl std::str::FromStr for CmGammaQuery {
    type Err = String;

    /// Parses `C_d^m` and `gamma_{d,l}^m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("cannot parse query `{s}`");
        let t = s.trim();
        let (head, m) = t.rsplit_once('^').ok_or_else(bad)?;
        let m: i64 = m.trim_matches(|c| c == '{' || c == '}').parse().map_err(|_| bad())?;
        if let Some(d) = head.strip_prefix("C_") {
            let d: i64 = d.trim_matches(|c| c == '{' || c == '}').parse().map_err(|_| bad())?;
            return Ok(CmGammaQuery::c(d, m));
        }
        let inner = head
            .strip_prefix("gamma_{")
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(bad)?;
        let (d, ell) = inner.split_once(',').ok_or_else(bad)?;
        Ok(CmGammaQuery::gamma(
            d.trim().parse().map_err(|_| bad())?,
            ell.trim().parse().map_err(|_| bad())?,
            m,
        ))
    }
}

/// Bitset over the degree-one roots.
type Mask = u128;

struct Level {
    d: i64,
    /// `exps[r][a]`: exponent of degree-one root `r` against monomial `a`.
    exps: Vec<Vec<i64>>,
}

/// Commutation data of the degree-one roots against `N(R)_d` for a range of `d`.
pub struct Profiles {
    roots: Vec<usize>,
    labels: Vec<RootRef>,
    levels: Vec<Level>,
}

impl Profiles {
    /// Levels `1..=max_d` with `0 < dim N(R)_d <= max_monomials`.
    pub fn new(nil: &Nilradical<'_>, max_d: i64, max_monomials: usize) -> Profiles {
        Self::with_levels(nil, 1..=max_d, max_monomials)
    }

    pub fn with_levels(nil: &Nilradical<'_>, ds: impl IntoIterator<Item = i64>, max_monomials: usize) -> Profiles {
        let roots = nil.degree_one();
        assert!(roots.len() <= 128, "more than 128 degree-one roots");
        let labels = roots.iter().map(|&k| nil.root_ref(k)).collect();
        let mut levels = Vec::new();
        for d in ds {
            if monomial_count(nil.theta_degrees(), d) > max_monomials as u128 {
                continue;
            }
            if let Some(l) = Self::level(nil, &roots, d) {
                levels.push(l);
            }
        }
        Profiles { roots, labels, levels }
    }

    fn level(nil: &Nilradical<'_>, roots: &[usize], d: i64) -> Option<Level> {
        let monos = theta_monomials(nil.theta_degrees(), d);
        if monos.is_empty() {
            return None;
        }
        let exps = roots
            .iter()
            .map(|&k| {
                let e = nil.exponents(k);
                monos
                    .iter()
                    .map(|a| a.iter().zip(e).map(|(&p, &x)| p as i64 * x).sum())
                    .collect()
            })
            .collect();
        Some(Level { d, exps })
    }

    fn level_for(&self, d: i64) -> Option<&Level> {
        self.levels.iter().find(|l| l.d == d)
    }

    pub fn degree_one_roots(&self) -> &[RootRef] {
        &self.labels
    }

    fn all_mask(&self) -> Mask {
        if self.roots.len() == 128 {
            Mask::MAX
        } else {
            (1u128 << self.roots.len()) - 1
        }
    }

    fn index_of(&self, position: usize) -> Option<usize> {
        self.roots.iter().position(|&k| k == position)
    }

    /// Roots whose exponent against every degree-`d` monomial is `m`; all roots when `N(R)_d = 0`.
    fn c_mask(&self, d: i64, m: i64) -> Mask {
        match self.level_for(d) {
            None => self.all_mask(),
            Some(l) => {
                let mut mask = 0;
                for (r, e) in l.exps.iter().enumerate() {
                    if e.iter().all(|&x| x == m) {
                        mask |= 1 << r;
                    }
                }
                mask
            }
        }
    }

    /// Monomials at level `d` with exponent `m` against root `r`, as a bit vector.
    fn hits(&self, d: i64, m: i64, r: usize) -> Vec<u64> {
        let Some(l) = self.level_for(d) else {
            return Vec::new();
        };
        let n = l.exps[r].len();
        let mut v = vec![0u64; n.div_ceil(64)];
        for (a, &x) in l.exps[r].iter().enumerate() {
            if x == m {
                v[a / 64] |= 1 << (a % 64);
            }
        }
        v
    }

    fn monomial_count(&self, d: i64) -> usize {
        self.level_for(d).map_or(0, |l| l.exps.first().map_or(0, |e| e.len()))
    }

    /// `dim V_d^m(x)` for `x` supported on the given roots (positions in the word).
    pub fn gamma_dim(&self, d: i64, m: i64, support: &[usize]) -> usize {
        let mut acc: Option<Vec<u64>> = None;
        for &p in support {
            let r = self.index_of(p).expect("support must consist of degree-one roots");
            let h = self.hits(d, m, r);
            acc = Some(match acc {
                None => h,
                Some(a) => a.iter().zip(&h).map(|(x, y)| x & y).collect(),
            });
        }
        acc.map_or(self.monomial_count(d), |a| a.iter().map(|x| x.count_ones() as usize).sum())
    }

    /// The degree-one roots spanning `C_d^m`.
    pub fn cdm_span(&self, d: i64, m: i64) -> Vec<usize> {
        self.mask_positions(self.c_mask(d, m))
    }

    fn mask_positions(&self, mask: Mask) -> Vec<usize> {
        (0..self.roots.len()).filter(|r| mask >> r & 1 == 1).map(|r| self.roots[r]).collect()
    }

    /// Exponent values seen at level `d`.
    fn observed(&self, d: i64) -> BTreeSet<i64> {
        self.level_for(d)
            .map(|l| l.exps.iter().flatten().copied().collect())
            .unwrap_or_default()
    }

    pub fn levels(&self) -> Vec<i64> {
        self.levels.iter().map(|l| l.d).collect()
    }

    /// Solutions of a conjunction of queries.
    pub fn evaluate(&self, queries: &[CmGammaQuery]) -> Solution {
        let mut u = self.all_mask();
        let mut gammas = Vec::new();
        for q in queries {
            match q.kind {
                QueryKind::C => u &= self.c_mask(q.d, q.m),
                QueryKind::Gamma => gammas.push(self.gamma_data(q)),
            }
        }
        if gammas.is_empty() {
            return Solution::Subspace(self.mask_positions(u));
        }
        let mut out = Vec::new();
        let members: Vec<usize> = (0..self.roots.len()).filter(|r| u >> r & 1 == 1).collect();
        self.supports(&members, &gammas, &mut out, 64);
        Solution::Supports(out.into_iter().map(|m| self.mask_positions(m)).collect())
    }

    fn gamma_data(&self, q: &CmGammaQuery) -> GammaData {
        let ell = q.ell.expect("gamma query carries ell");
        let hits = (0..self.roots.len()).map(|r| self.hits(q.d, q.m, r)).collect();
        GammaData {
            ell,
            total: self.monomial_count(q.d),
            hits,
        }
    }

    /// Nonempty supports inside `members` meeting every gamma condition, at most `cap` of them.
    fn supports(&self, members: &[usize], gammas: &[GammaData], out: &mut Vec<Mask>, cap: usize) {
        let start: Vec<Option<Vec<u64>>> = vec![None; gammas.len()];
        dfs(members, 0, 0, &start, gammas, out, cap);
    }

    /// Search for a conjunction of at most `max_len` queries whose only solution is `{beta}`.
    fn certify(&self, r: usize, max_len: usize) -> Option<Vec<CmGammaQuery>> {
        let others = self.all_mask() & !(1u128 << r);
        if others == 0 {
            return Some(Vec::new());
        }
        let cands = self.candidates(r);
        // Roots excluded as singletons, and as partners of `beta` in a pair, by each query.
        let single: Vec<Mask> = cands.iter().map(|q| self.fails_single(q, r)).collect();
        let pair: Vec<Mask> = cands.iter().map(|q| self.fails_pair(q, r)).collect();
        let check = |idx: &[usize]| -> bool {
            let s = idx.iter().fold(0, |a, &i| a | single[i]);
            let p = idx.iter().fold(0, |a, &i| a | pair[i]);
            if s & others != others || p & others != others {
                return false;
            }
            let qs: Vec<CmGammaQuery> = idx.iter().map(|&i| cands[i]).collect();
            self.is_certificate(&qs, r)
        };
        let n = cands.len();
        for a in 0..n {
            if check(&[a]) {
                return Some(vec![cands[a]]);
            }
        }
        if max_len >= 2 {
            for a in 0..n {
                for b in a + 1..n {
                    if check(&[a, b]) {
                        return Some(vec![cands[a], cands[b]]);
                    }
                }
            }
        }
        if max_len >= 3 {
            for a in 0..n {
                for b in a + 1..n {
                    let ab_s = single[a] | single[b];
                    let ab_p = pair[a] | pair[b];
                    for c in b + 1..n {
                        if (ab_s | single[c]) & others != others || (ab_p | pair[c]) & others != others {
                            continue;
                        }
                        if check(&[a, b, c]) {
                            return Some(vec![cands[a], cands[b], cands[c]]);
                        }
                    }
                }
            }
        }
        None
    }

    fn is_certificate(&self, qs: &[CmGammaQuery], r: usize) -> bool {
        let target = vec![self.roots[r]];
        match self.evaluate(qs) {
            Solution::Subspace(s) => s == target,
            Solution::Supports(s) => s.len() == 1 && s[0] == target,
        }
    }

    /// Queries satisfied by `{beta_r}`: C-sets containing it and its own gamma values.
    fn candidates(&self, r: usize) -> Vec<CmGammaQuery> {
        let mut cs = Vec::new();
        let mut gs = Vec::new();
        for l in &self.levels {
            let e = &l.exps[r];
            if e.iter().all(|&x| x == e[0]) {
                cs.push(CmGammaQuery::c(l.d, e[0]));
            }
            for m in self.observed(l.d).into_iter().rev() {
                let ell = e.iter().filter(|&&x| x == m).count();
                gs.push(CmGammaQuery::gamma(l.d, ell, m));
            }
        }
        cs.extend(gs);
        cs
    }

    fn fails_single(&self, q: &CmGammaQuery, r: usize) -> Mask {
        let mut mask = 0;
        for o in 0..self.roots.len() {
            if o != r && !self.satisfies(q, 1 << o) {
                mask |= 1 << o;
            }
        }
        mask
    }

    fn fails_pair(&self, q: &CmGammaQuery, r: usize) -> Mask {
        let mut mask = 0;
        for o in 0..self.roots.len() {
            if o != r && !self.satisfies(q, 1 << o | 1 << r) {
                mask |= 1 << o;
            }
        }
        mask
    }

    fn satisfies(&self, q: &CmGammaQuery, support: Mask) -> bool {
        match q.kind {
            QueryKind::C => support & !self.c_mask(q.d, q.m) == 0,
            QueryKind::Gamma => {
                let pos = self.mask_positions(support);
                self.gamma_dim(q.d, q.m, &pos) == q.ell.unwrap_or(0)
            }
        }
    }

    /// The smallest intersection of C-sets containing root `r`.
    fn block(&self, r: usize) -> (Mask, Vec<CmGammaQuery>) {
        let cs: Vec<CmGammaQuery> = self
            .candidates(r)
            .into_iter()
            .filter(|q| q.kind == QueryKind::C)
            .collect();
        let full = cs.iter().fold(self.all_mask(), |a, q| a & self.c_mask(q.d, q.m));
        for len in 0..=cs.len().min(3) {
            if let Some(sub) = first_subset(&cs, len, |sub| {
                sub.iter().fold(self.all_mask(), |a, q| a & self.c_mask(q.d, q.m)) == full
            }) {
                return (full, sub);
            }
        }
        (full, cs)
    }
}

/// `dim N(R)_d`, without listing monomials.
fn monomial_count(degrees: &[i64], d: i64) -> u128 {
    if d < 0 {
        return 0;
    }
    let d = d as usize;
    let mut c = vec![0u128; d + 1];
    c[0] = 1;
    for &g in degrees {
        let g = g as usize;
        for s in g..=d {
            c[s] = c[s].saturating_add(c[s - g]);
        }
    }
    c[d]
}

struct GammaData {
    ell: usize,
    total: usize,
    hits: Vec<Vec<u64>>,
}

fn popcount(v: &Option<Vec<u64>>, total: usize) -> usize {
    v.as_ref().map_or(total, |a| a.iter().map(|x| x.count_ones() as usize).sum())
}

fn dfs(
    members: &[usize],
    from: usize,
    cur: Mask,
    acc: &[Option<Vec<u64>>],
    gammas: &[GammaData],
    out: &mut Vec<Mask>,
    cap: usize,
) {
    for (k, &r) in members.iter().enumerate().skip(from) {
        if out.len() >= cap {
            return;
        }
        let next: Vec<Option<Vec<u64>>> = acc
            .iter()
            .zip(gammas)
            .map(|(a, g)| {
                Some(match a {
                    None => g.hits[r].clone(),
                    Some(v) => v.iter().zip(&g.hits[r]).map(|(x, y)| x & y).collect(),
                })
            })
            .collect();
        let dims: Vec<usize> = next.iter().zip(gammas).map(|(v, g)| popcount(v, g.total)).collect();
        // Dimensions only shrink as the support grows.
        if dims.iter().zip(gammas).any(|(&d, g)| d < g.ell) {
            continue;
        }
        let s = cur | 1 << r;
        if dims.iter().zip(gammas).all(|(&d, g)| d == g.ell) {
            out.push(s);
        }
        dfs(members, k + 1, s, &next, gammas, out, cap);
    }
}

fn first_subset<T: Copy>(items: &[T], len: usize, mut ok: impl FnMut(&[T]) -> bool) -> Option<Vec<T>> {
    fn rec<T: Copy>(items: &[T], len: usize, from: usize, cur: &mut Vec<T>, ok: &mut dyn FnMut(&[T]) -> bool) -> bool {
        if cur.len() == len {
            return ok(cur);
        }
        for k in from..items.len() {
            cur.push(items[k]);
            if rec(items, len, k + 1, cur, ok) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    if rec(items, len, 0, &mut cur, &mut ok) {
        Some(cur)
    } else {
        None
    }
}

/// Solution set of a query conjunction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "roots", rename_all = "snake_case")]
pub enum Solution {
    /// The span of these roots (zero included).
    Subspace(Vec<usize>),
    /// Nonzero elements with exactly one of these supports.
    Supports(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PinpointStatus {
    Certified,
    ManualStepRequired,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PinpointCertificate {
    pub root: RootRef,
    pub status: PinpointStatus,
    /// Conjunction cutting out exactly `K beta` or `K^x beta`; for manual roots, the block.
    pub queries: Vec<String>,
    #[serde(skip)]
    pub raw: Vec<CmGammaQuery>,
    /// Roots spanning the smallest invariant subspace found around this root.
    pub block: Vec<String>,
    #[serde(skip)]
    pub block_positions: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct PinpointOptions {
    /// Largest `d` searched; `None` means `2 max(d_i)`.
    pub max_d: Option<i64>,
    pub max_len: usize,
    /// Levels with more ordered monomials than this are left out of the search.
    pub max_monomials: usize,
}

impl Default for PinpointOptions {
    fn default() -> Self {
        PinpointOptions {
            max_d: None,
            max_len: 3,
            max_monomials: 100_000,
        }
    }
}

pub fn default_max_d(nil: &Nilradical<'_>) -> i64 {
    2 * nil.theta_degrees().iter().copied().max().unwrap_or(0)
}

/// Certificates for every degree-one root.
pub fn pinpoint_certificates(nil: &Nilradical<'_>, opts: PinpointOptions) -> Vec<PinpointCertificate> {
    let p = Profiles::new(nil, opts.max_d.unwrap_or_else(|| default_max_d(nil)), opts.max_monomials);
    let mut out = Vec::new();
    for (r, root) in p.labels.iter().enumerate() {
        match p.certify(r, opts.max_len) {
            Some(qs) => out.push(PinpointCertificate {
                root: root.clone(),
                status: PinpointStatus::Certified,
                queries: qs.iter().map(|q| q.to_string()).collect(),
                raw: qs,
                block: vec![root.label.clone()],
                block_positions: vec![root.position],
            }),
            None => {
                let (mask, qs) = p.block(r);
                let positions = p.mask_positions(mask);
                out.push(PinpointCertificate {
                    root: root.clone(),
                    status: PinpointStatus::ManualStepRequired,
                    queries: qs.iter().map(|q| q.to_string()).collect(),
                    raw: qs,
                    block: positions.iter().map(|&k| nil.label(k)).collect(),
                    block_positions: positions,
                });
            }
        }
    }
    out
}

/// Degree-one roots spanning `C_d^m`.
pub fn cdm_span(nil: &Nilradical<'_>, d: i64, m: i64) -> Vec<usize> {
    Profiles::with_levels(nil, [d], usize::MAX).cdm_span(d, m)
}

/// `dim V_d^m(x)` for `x` with the given degree-one support (word positions).
pub fn gamma_dim(nil: &Nilradical<'_>, d: i64, m: i64, support: &[usize]) -> usize {
    assert!(!support.is_empty(), "support must be nonempty");
    Profiles::with_levels(nil, [d], usize::MAX).gamma_dim(d, m, support)
}
