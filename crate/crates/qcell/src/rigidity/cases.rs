//! Fixed reduced words for specific cases, diagram symmetries, and the exhaustive case scan.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::rootsys::{symmetric_label, CartanType, Family, RootSystem};

use super::nilradical::{semigroup_excluded, Nilradical};
use super::RigidityError;

/// A reduced word with its labelling convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelledWord {
    pub letters: Vec<u8>,
    pub offset: usize,
    pub symbol: char,
}

const F4_X: [u8; 24] = [1, 2, 1, 3, 2, 3, 1, 2, 4, 3, 2, 1, 3, 2, 3, 4, 3, 2, 3, 1, 2, 3, 4, 3];
const F4_Y: [u8; 24] = [4, 1, 2, 3, 4, 2, 1, 3, 2, 3, 1, 2, 4, 3, 2, 1, 3, 2, 3, 4, 3, 2, 3, 2];

/// `J -> (word, first, last)` for F4; the subword `[first, last]` is a reduced word of `w_J`.
const F4_INTERVALS: [(&[usize], char, usize, usize); 15] = [
    (&[1], 'y', 2, 16),
    (&[2], 'x', 2, 21),
    (&[3], 'y', 4, 23),
    (&[4], 'x', 9, 23),
    (&[1, 2], 'x', 1, 21),
    (&[1, 3], 'y', 2, 23),
    (&[1, 4], 'y', 1, 20),
    (&[2, 3], 'y', 3, 24),
    (&[2, 4], 'x', 2, 23),
    (&[3, 4], 'x', 4, 24),
    (&[1, 2, 3], 'y', 2, 24),
    (&[1, 2, 4], 'x', 1, 23),
    (&[1, 3, 4], 'y', 1, 23),
    (&[2, 3, 4], 'x', 2, 24),
    (&[1, 2, 3, 4], 'x', 1, 24),
];

const B6_25: [u8; 31] = [
    5, 6, 4, 5, 6, 3, 4, 5, 6, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 3, 4, 2, 3, 1, 2,
];

/// `(s_n ... s_1)(s_n ... s_2) ... (s_n s_{n-1}) s_n`.
pub fn symmetric_word(n: usize) -> Vec<u8> {
    let mut w = Vec::new();
    for start in 1..=n {
        for l in (start..=n).rev() {
            w.push(l as u8);
        }
    }
    w
}

/// The fixed word used for `(ty, J)`, if there is one.
pub fn labelled_word(ty: CartanType, j: &[usize]) -> Option<LabelledWord> {
    match (ty.family, ty.rank, j) {
        (Family::F, 4, _) => F4_INTERVALS.iter().find(|e| e.0 == j).map(|&(_, s, a, b)| {
            let w: &[u8] = if s == 'x' { &F4_X } else { &F4_Y };
            LabelledWord {
                letters: w[a - 1..b].to_vec(),
                offset: a - 1,
                symbol: s,
            }
        }),
        (Family::G, 2, [1]) => Some(LabelledWord {
            letters: vec![1, 2, 1, 2, 1],
            offset: 0,
            symbol: 'x',
        }),
        (Family::G, 2, [2]) => Some(LabelledWord {
            letters: vec![2, 1, 2, 1, 2],
            offset: 1,
            symbol: 'x',
        }),
        (Family::G, 2, [1, 2]) => Some(LabelledWord {
            letters: vec![1, 2, 1, 2, 1, 2],
            offset: 0,
            symbol: 'x',
        }),
        (Family::B, 6, [2, 5]) => Some(LabelledWord {
            letters: B6_25.to_vec(),
            offset: 0,
            symbol: 'x',
        }),
        (Family::C, n, js) if js == [n] => Some(LabelledWord {
            letters: symmetric_word(n),
            offset: 0,
            symbol: 'x',
        }),
        _ => None,
    }
}

/// The nilradical of `(ty, J)` presented by its fixed word, or the canonical one.
pub fn nilradical_for<'a>(rs: &'a RootSystem, j: &[usize]) -> Result<Nilradical<'a>, RigidityError> {
    let mut sorted = j.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let ty = rs.cartan_type();
    match labelled_word(ty, &sorted) {
        Some(lw) => {
            let nil = Nilradical::with_labels(rs, &sorted, &lw.letters, lw.offset, lw.symbol)?;
            if ty.family == Family::C && sorted == [ty.rank] {
                let n = ty.rank;
                let labels = nil
                    .word()
                    .roots()
                    .iter()
                    .map(|b| {
                        let (i, j) = symmetric_label(n, b).expect("C_n radical root is e_i + e_j");
                        if n < 10 {
                            format!("x{i}{j}")
                        } else {
                            format!("x{i},{j}")
                        }
                    })
                    .collect();
                Ok(nil.relabel(labels))
            } else {
                Ok(nil)
            }
        }
        None => Ok(Nilradical::new(rs, &sorted)?),
    }
}

/// `{sigma : sigma preserves the Cartan matrix and sigma(J) = J}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramGroup {
    pub order: usize,
    /// Non-identity elements as images `sigma(1), ..., sigma(r)`.
    pub elements: Vec<Vec<usize>>,
    /// A generating set drawn from `elements`.
    pub generators: Vec<Vec<usize>>,
}

impl DiagramGroup {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn name(&self) -> String {
        match self.order {
            1 => "1".into(),
            2 => "Z/2".into(),
            3 => "Z/3".into(),
            6 => "S_3".into(),
            k => format!("group of order {k}"),
        }
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x - 1]).collect()
}

fn closure(gens: &[Vec<usize>], r: usize) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (1..=r).collect();
    let mut set = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g, &x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn dynkin_aut_j(rs: &RootSystem, j: &[usize]) -> DiagramGroup {
    let c = rs.cartan();
    let r = rs.rank();
    let jset: BTreeSet<usize> = j.iter().copied().collect();
    let mut found = Vec::new();
    let mut perm = vec![0usize; r];
    let mut used = vec![false; r + 1];
    fn rec(k: usize, c: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let r = perm.len();
        if k == r {
            out.push(perm.clone());
            return;
        }
        for img in 1..=r {
            if used[img] {
                continue;
            }
            let ok = (0..k).all(|a| c[a][k] == c[perm[a] - 1][img - 1] && c[k][a] == c[img - 1][perm[a] - 1])
                && c[k][k] == c[img - 1][img - 1];
            if ok {
                perm[k] = img;
                used[img] = true;
                rec(k + 1, c, perm, used, out);
                used[img] = false;
            }
        }
    }
    rec(0, c, &mut perm, &mut used, &mut found);
    let elements: Vec<Vec<usize>> = found
        .into_iter()
        .filter(|p| {
            let image: BTreeSet<usize> = jset.iter().map(|&x| p[x - 1]).collect();
            image == jset
        })
        .filter(|p| p.iter().enumerate().any(|(i, &x)| x != i + 1))
        .collect();
    let mut generators: Vec<Vec<usize>> = Vec::new();
    for e in &elements {
        if !closure(&generators, r).contains(e) {
            generators.push(e.clone());
        }
    }
    DiagramGroup {
        order: elements.len() + 1,
        elements,
        generators,
    }
}

/// `S = {i in supp(w_J) : d_i is not a sum of the other degrees}`, as simple-root indices.
pub fn semigroup_thetas(nil: &Nilradical<'_>) -> Vec<usize> {
    let d = nil.theta_degrees();
    nil.support()
        .iter()
        .enumerate()
        .filter(|&(t, _)| semigroup_excluded(d, t + 1))
        .map(|(_, &i)| i)
        .collect()
}

/// Degree-one roots `beta` such that each other degree-one root commutes differently with some `Theta_i`, `i in S`.
pub fn degree_one_separation(nil: &Nilradical<'_>, s: &[usize]) -> Vec<usize> {
    let idx: Vec<usize> = s
        .iter()
        .map(|&i| nil.support_index(i).expect("S must lie in the support"))
        .collect();
    let ones = nil.degree_one();
    ones.iter()
        .copied()
        .filter(|&b| {
            ones.iter()
                .all(|&o| o == b || idx.iter().any(|&t| nil.exponents(b)[t] != nil.exponents(o)[t]))
        })
        .collect()
}

/// A `(type, J)` pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Case {
    #[serde(rename = "type")]
    pub ty: String,
    pub j: Vec<usize>,
}

impl Case {
    pub fn new(ty: CartanType, j: &[usize]) -> Case {
        Case {
            ty: ty.to_string(),
            j: j.to_vec(),
        }
    }

    fn sort_key(&self) -> (usize, usize, Vec<usize>) {
        let ty: CartanType = self.ty.parse().expect("valid type");
        let fam = Family::ALL.iter().position(|&f| f == ty.family).unwrap();
        (fam, ty.rank, self.j.clone())
    }

    pub fn rank(&self) -> usize {
        self.ty.parse::<CartanType>().map(|t| t.rank).unwrap_or(0)
    }
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let j: Vec<String> = self.j.iter().map(|x| x.to_string()).collect();
        write!(f, "{} {}", self.ty, j.join(","))
    }
}

/// Order cases by family, rank, then `J` lexicographically.
pub fn sort_cases(cases: &mut [Case]) {
    cases.sort_by_key(|c| c.sort_key());
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    /// Drop cases whose grading conditions fail combinatorially.
    pub filter_grading: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub max_rank: usize,
    pub scanned: usize,
    pub cases: Vec<Case>,
}

/// All types of rank `2..=max_rank` (`C_2` is `B_2`), every nonempty `J`.
pub fn all_cases(max_rank: usize) -> Vec<(CartanType, Vec<usize>)> {
    let mut out = Vec::new();
    for ty in CartanType::all_up_to(max_rank) {
        if ty.family == Family::C && ty.rank == 2 {
            continue;
        }
        let r = ty.rank;
        for mask in 1u32..(1 << r) {
            let j: Vec<usize> = (1..=r).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            out.push((ty, j));
        }
    }
    out
}

/// Whether every degree-one root of `(ty, J)` is separated by the semigroup thetas.
pub fn case_qualifies(rs: &RootSystem, j: &[usize], opts: EnumerateOptions) -> Result<bool, RigidityError> {
    let nil = Nilradical::new(rs, j)?;
    if opts.filter_grading {
        let lambda: Vec<i64> = (1..=rs.rank()).map(|i| j.contains(&i) as i64).collect();
        let rep = super::grading::grading_report(rs, nil.word(), &lambda, super::grading::GradingOptions::combinatorial())?;
        if rep.conditions_1_to_4.iter().any(|c| c.status == super::grading::Status::Failed) {
            return Ok(false);
        }
    }
    let s = semigroup_thetas(&nil);
    Ok(degree_one_separation(&nil, &s).len() == nil.degree_one().len())
}

/// Scan every case of rank at most `max_rank` in parallel.
pub fn enumerate_prop_cases(max_rank: usize, opts: EnumerateOptions) -> Result<Enumeration, RigidityError> {
    if max_rank < 2 {
        return Err(RigidityError::Other(format!("max_rank must be at least 2, got {max_rank}")));
    }
    let all = all_cases(max_rank);
    let types: Vec<CartanType> = {
        let mut t: Vec<CartanType> = all.iter().map(|c| c.0).collect();
        t.dedup();
        t
    };
    let systems: Vec<RootSystem> = types.par_iter().map(|&t| RootSystem::new(t)).collect();
    let results: Vec<Result<Option<Case>, RigidityError>> = all
        .par_iter()
        .map(|(ty, j)| {
            let rs = &systems[types.iter().position(|t| t == ty).unwrap()];
            Ok(case_qualifies(rs, j, opts)?.then(|| Case::new(*ty, j)))
        })
        .collect();
    let mut cases = Vec::new();
    for r in results {
        if let Some(c) = r? {
            cases.push(c);
        }
    }
    sort_cases(&mut cases);
    Ok(Enumeration {
        max_rank,
        scanned: all.len(),
        cases,
    })
}

const REFERENCE_CASES: &str = include_str!("../../data/prop_cases.txt");

/// The reference case list shipped with the crate.
pub fn reference_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for line in REFERENCE_CASES.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (ty, j) = line.split_once(char::is_whitespace).expect("`TYPE J` per line");
        let ty: CartanType = ty.parse().expect("valid type in reference data");
        let j: Vec<usize> = j.trim().split(',').map(|x| x.trim().parse().expect("index")).collect();
        out.push(Case::new(ty, &j));
    }
    sort_cases(&mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseDiff {
    pub missing: Vec<Case>,
    pub extra: Vec<Case>,
}

impl CaseDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compare with the reference list, restricted to ranks at most `max_rank`.
pub fn diff_against_reference(found: &Enumeration) -> CaseDiff {
    let reference: BTreeSet<Case> = reference_cases()
        .into_iter()
        .filter(|c| c.rank() <= found.max_rank)
        .collect();
    let got: BTreeSet<Case> = found.cases.iter().cloned().collect();
    let mut missing: Vec<Case> = reference.difference(&got).cloned().collect();
    let mut extra: Vec<Case> = got.difference(&reference).cloned().collect();
    sort_cases(&mut missing);
    sort_cases(&mut extra);
    CaseDiff { missing, extra }
}
