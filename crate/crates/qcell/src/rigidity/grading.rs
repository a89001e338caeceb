//! Grading hypotheses, the core, and `q`-commuting partners.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rootsys::{eta_and_px, ReducedWord, RootSystem};
use crate::shuffle::{ShuffleAlgebra, ShuffleElement, UqError};
use crate::uqplus::{pbw_expand, root_vectors, RootVectorOptions};

use super::nilradical::{kappa_pair, ls_vanishing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proved,
    Assumed,
    Failed,
}

/// `beta_target` obtained from `[X_left, X_right]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Split {
    pub target: usize,
    pub left: usize,
    pub right: usize,
    /// Coefficient of `X_target` in the commutator, when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Every radical root has degree at least this.
    MinDegree { degree: i64 },
    NegativeRoot { position: usize, root: Vec<i64>, degree: i64 },
    DegreeZeroRoot { position: usize, root: Vec<i64> },
    /// Not a nonnegative combination of degree-one radical roots.
    Indecomposable { position: usize, root: Vec<i64>, degree: i64 },
    Splits { splits: Vec<Split> },
    /// No split found for this root.
    NoSplit { position: usize, root: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionStatus {
    pub condition: u8,
    pub status: Status,
    pub witness: Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreStatus {
    EqualsRProved,
    EqualsRByPxEmpty,
    /// Some `X_i` with `i` in `F_x` is missing from the core.
    Proper,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreReport {
    pub status: CoreStatus,
    pub p_x: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_x: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_x: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    /// Coweight `lambda` in the fundamental-coweight basis.
    pub lambda: Vec<i64>,
    pub degrees: Vec<i64>,
    pub conditions_1_to_4: [ConditionStatus; 4],
    pub kappa_pairs: BTreeMap<usize, usize>,
    /// Degree-one positions with no partner.
    pub kappa_missing: Vec<usize>,
    pub core_status: CoreReport,
}

impl GradingReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.conditions_1_to_4.iter().all(|c| c.status != Status::Failed)
            && self.kappa_missing.is_empty()
            && matches!(
                self.core_status.status,
                CoreStatus::EqualsRProved | CoreStatus::EqualsRByPxEmpty
            )
    }

    pub fn status(&self, condition: u8) -> Status {
        self.conditions_1_to_4[condition as usize - 1].status
    }

    /// Recheck every witness against the word and `lambda`.
    pub fn revalidate(&self, rs: &RootSystem, word: &ReducedWord) -> bool {
        let roots = word.roots();
        let degs: Vec<i64> = roots.iter().map(|b| degree(&self.lambda, b)).collect();
        if degs != self.degrees {
            return false;
        }
        let ones: Vec<&Vec<i64>> = roots.iter().zip(&degs).filter(|(_, &d)| d == 1).map(|(b, _)| b).collect();
        let root_at = |p: usize| roots.get(p.wrapping_sub(1));
        for c in &self.conditions_1_to_4 {
            let ok = match (&c.witness, c.status) {
                (Witness::MinDegree { degree }, Status::Proved) => degs.iter().all(|d| d >= degree) && *degree >= 1 - (c.condition == 1) as i64,
                (Witness::NegativeRoot { position, root, degree }, Status::Failed) => {
                    root_at(*position) == Some(root) && degs[position - 1] == *degree && *degree < 0
                }
                (Witness::DegreeZeroRoot { position, root }, Status::Failed) => {
                    root_at(*position) == Some(root) && degs[position - 1] == 0
                }
                (Witness::Indecomposable { position, root, degree }, Status::Failed) => {
                    root_at(*position) == Some(root) && degs[position - 1] == *degree && !in_monoid(&ones, root)
                }
                (Witness::Splits { splits }, Status::Proved | Status::Assumed) => {
                    let covered: Vec<usize> = splits.iter().map(|s| s.target).collect();
                    let all_higher = (1..=roots.len()).filter(|&k| degs[k - 1] > 1).all(|k| covered.contains(&k));
                    all_higher
                        && splits.iter().all(|s| {
                            let sum: Vec<i64> = roots[s.left - 1].iter().zip(&roots[s.right - 1]).map(|(a, b)| a + b).collect();
                            s.left < s.target && s.target < s.right && sum == roots[s.target - 1]
                        })
                        && (c.status == Status::Assumed || splits.iter().all(|s| s.coefficient.is_some()))
                }
                (Witness::NoSplit { position, root }, Status::Assumed) => root_at(*position) == Some(root),
                _ => false,
            };
            if !ok {
                return false;
            }
        }
        self.kappa_pairs.iter().all(|(&i, &j)| {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            ls_vanishing(word, a, b) && rs.form().eval(&roots[i - 1], &roots[j - 1]) != 0
        })
    }
}

fn degree(lambda: &[i64], beta: &[i64]) -> i64 {
    lambda.iter().zip(beta).map(|(l, b)| l * b).sum()
}

/// Whether `target` is a nonnegative integral combination of `gens`.
fn in_monoid(gens: &[&Vec<i64>], target: &[i64]) -> bool {
    fn rec(gens: &[&Vec<i64>], k: usize, rem: &mut Vec<i64>) -> bool {
        if rem.iter().all(|&x| x == 0) {
            return true;
        }
        if k == gens.len() {
            return false;
        }
        if rec(gens, k + 1, rem) {
            return true;
        }
        let g = gens[k];
        let mut used = 0;
        let mut found = false;
        loop {
            for (r, x) in rem.iter_mut().zip(g.iter()) {
                *r -= x;
            }
            used += 1;
            if rem.iter().any(|&x| x < 0) {
                break;
            }
            if rec(gens, k + 1, rem) {
                found = true;
                break;
            }
        }
        for _ in 0..used {
            for (r, x) in rem.iter_mut().zip(g.iter()) {
                *r += x;
            }
        }
        found
    }
    if target.iter().any(|&x| x < 0) {
        return false;
    }
    rec(gens, 0, &mut target.to_vec())
}

#[derive(Debug, Clone, Copy)]
pub struct GradingOptions {
    /// Use exact commutator expansions when the rank is at most this.
    pub exact_max_rank: usize,
    pub budget: usize,
}

impl Default for GradingOptions {
    fn default() -> Self {
        GradingOptions {
            exact_max_rank: 4,
            budget: RootVectorOptions::default().budget,
        }
    }
}

impl GradingOptions {
    pub fn combinatorial() -> Self {
        GradingOptions {
            exact_max_rank: 0,
            ..Self::default()
        }
    }
}

/// Root vectors of `word`, built lazily and shared by the exact checks.
struct Exact<'a> {
    alg: ShuffleAlgebra,
    word: &'a ReducedWord,
    budget: usize,
    vectors: Option<Vec<ShuffleElement>>,
}

impl<'a> Exact<'a> {
    fn new(rs: &RootSystem, word: &'a ReducedWord, opts: GradingOptions) -> Result<Option<Self>, UqError> {
        if rs.rank() > opts.exact_max_rank {
            return Ok(None);
        }
        Ok(Some(Exact {
            alg: ShuffleAlgebra::new(rs.cartan_type())?,
            word,
            budget: opts.budget,
            vectors: None,
        }))
    }

    fn vectors(&mut self) -> Result<&[ShuffleElement], UqError> {
        if self.vectors.is_none() {
            let opts = RootVectorOptions {
                budget: self.budget,
                ..RootVectorOptions::default()
            };
            self.vectors = Some(root_vectors(&self.alg, self.word, opts)?);
        }
        Ok(self.vectors.as_deref().unwrap())
    }

    /// Expansion of `Q_{jl} = [X_j, X_l]` over the ordered monomials of `X_{j+1}, ..., X_{l-1}`.
    fn q_jl(&mut self, j: usize, l: usize) -> Result<crate::uqplus::PbwExpansion, UqError> {
        let alg = self.alg.clone();
        let v = self.vectors()?;
        let c = alg.q_commutator(&v[j - 1], &v[l - 1])?;
        pbw_expand(&alg, &v[j..l - 1], &c)
    }
}

/// Conditions (1)-(4), partners for degree-one roots, and the core, for the grading by `lambda`.
pub fn grading_report(rs: &RootSystem, word: &ReducedWord, lambda: &[i64], opts: GradingOptions) -> Result<GradingReport, UqError> {
    let roots = word.roots();
    let n = roots.len();
    let degs: Vec<i64> = roots.iter().map(|b| degree(lambda, b)).collect();
    let min = degs.iter().copied().min().unwrap_or(1);
    let root_at = |k: usize| roots[k - 1].clone();

    let c1 = match (1..=n).find(|&k| degs[k - 1] < 0) {
        Some(k) => ConditionStatus {
            condition: 1,
            status: Status::Failed,
            witness: Witness::NegativeRoot {
                position: k,
                root: root_at(k),
                degree: degs[k - 1],
            },
        },
        None => ConditionStatus {
            condition: 1,
            status: Status::Proved,
            witness: Witness::MinDegree { degree: min.max(0) },
        },
    };
    // With no negative degrees, R_d is finite dimensional iff no root has degree 0, and so is R_0 = K.
    let zero = (1..=n).find(|&k| degs[k - 1] == 0);
    let neg = (1..=n).find(|&k| degs[k - 1] < 0);
    let local = |cond: u8| match (zero, neg) {
        (Some(k), _) => ConditionStatus {
            condition: cond,
            status: Status::Failed,
            witness: Witness::DegreeZeroRoot {
                position: k,
                root: root_at(k),
            },
        },
        (None, Some(k)) => ConditionStatus {
            condition: cond,
            status: Status::Failed,
            witness: Witness::NegativeRoot {
                position: k,
                root: root_at(k),
                degree: degs[k - 1],
            },
        },
        (None, None) => ConditionStatus {
            condition: cond,
            status: Status::Proved,
            witness: Witness::MinDegree { degree: min.max(1) },
        },
    };
    let c2 = local(2);
    let c3 = local(3);

    let mut exact = Exact::new(rs, word, opts)?;
    let c4 = if c3.status == Status::Failed {
        c3.clone_with(4)
    } else {
        generated_in_degree_one_inner(roots, &degs, exact.as_mut())?
    };

    let mut kappa_pairs = BTreeMap::new();
    let mut kappa_missing = Vec::new();
    for k in (1..=n).filter(|&k| degs[k - 1] == 1) {
        match kappa_pair(word, k, &rs.form().matrix) {
            Some(j) => {
                kappa_pairs.insert(k, j);
            }
            None => kappa_missing.push(k),
        }
    }

    let core_status = core_status_inner(word, exact.as_mut())?;
    Ok(GradingReport {
        lambda: lambda.to_vec(),
        degrees: degs,
        conditions_1_to_4: [c1, c2, c3, c4],
        kappa_pairs,
        kappa_missing,
        core_status,
    })
}

impl ConditionStatus {
    fn clone_with(&self, condition: u8) -> ConditionStatus {
        ConditionStatus {
            condition,
            ..self.clone()
        }
    }
}

fn generated_in_degree_one_inner(roots: &[Vec<i64>], degs: &[i64], mut exact: Option<&mut Exact<'_>>) -> Result<ConditionStatus, UqError> {
    let n = roots.len();
    let ones: Vec<&Vec<i64>> = roots.iter().zip(degs).filter(|(_, &d)| d == 1).map(|(b, _)| b).collect();
    for k in 1..=n {
        if degs[k - 1] > 1 && !in_monoid(&ones, &roots[k - 1]) {
            return Ok(ConditionStatus {
                condition: 4,
                status: Status::Failed,
                witness: Witness::Indecomposable {
                    position: k,
                    root: roots[k - 1].clone(),
                    degree: degs[k - 1],
                },
            });
        }
    }
    let mut splits = Vec::new();
    let mut proved = exact.is_some();
    for k in (1..=n).filter(|&k| degs[k - 1] > 1) {
        // Candidate splits, shortest interval first.
        let mut cands = Vec::new();
        for j in 1..k {
            for l in k + 1..=n {
                let sum: Vec<i64> = roots[j - 1].iter().zip(&roots[l - 1]).map(|(a, b)| a + b).collect();
                if sum == roots[k - 1] {
                    cands.push((l - j, j, l));
                }
            }
        }
        cands.sort_unstable();
        let Some(&(_, j0, l0)) = cands.first() else {
            return Ok(ConditionStatus {
                condition: 4,
                status: Status::Assumed,
                witness: Witness::NoSplit {
                    position: k,
                    root: roots[k - 1].clone(),
                },
            });
        };
        let mut chosen = Split {
            target: k,
            left: j0,
            right: l0,
            coefficient: None,
        };
        if let Some(ex) = exact.as_deref_mut() {
            let mut found = false;
            for &(_, j, l) in &cands {
                let exp = ex.q_jl(j, l)?;
                let mut key = vec![0u32; l - j - 1];
                key[k - j - 1] = 1;
                if let Some(c) = exp.get(&key) {
                    chosen = Split {
                        target: k,
                        left: j,
                        right: l,
                        coefficient: Some(c.to_string()),
                    };
                    found = true;
                    break;
                }
            }
            proved &= found;
        }
        splits.push(chosen);
    }
    Ok(ConditionStatus {
        condition: 4,
        status: if proved { Status::Proved } else { Status::Assumed },
        witness: Witness::Splits { splits },
    })
}

/// Condition (4) for the grading by `lambda`.
pub fn generated_in_degree_one(rs: &RootSystem, word: &ReducedWord, lambda: &[i64], opts: GradingOptions) -> Result<ConditionStatus, UqError> {
    let degs: Vec<i64> = word.roots().iter().map(|b| degree(lambda, b)).collect();
    let mut exact = Exact::new(rs, word, opts)?;
    generated_in_degree_one_inner(word.roots(), &degs, exact.as_mut())
}

fn core_status_inner(word: &ReducedWord, exact: Option<&mut Exact<'_>>) -> Result<CoreReport, UqError> {
    let (_, p_x) = eta_and_px(word.letters());
    if p_x.is_empty() {
        return Ok(CoreReport {
            status: CoreStatus::EqualsRByPxEmpty,
            p_x,
            f_x: None,
            c_x: None,
        });
    }
    let Some(ex) = exact else {
        return Ok(CoreReport {
            status: CoreStatus::Unknown,
            p_x,
            f_x: None,
            c_x: None,
        });
    };
    let roots = word.roots();
    let n = roots.len();
    let mut f_x = Vec::new();
    for &i in &p_x {
        let mut appears = false;
        'pairs: for j in 1..i {
            for l in i + 1..=n {
                // X_i can only occur if beta_j + beta_l - beta_i is reachable from the interval.
                let rest: Vec<i64> = roots[j - 1]
                    .iter()
                    .zip(&roots[l - 1])
                    .zip(&roots[i - 1])
                    .map(|((a, b), c)| a + b - c)
                    .collect();
                let pool: Vec<&Vec<i64>> = roots[j..l - 1].iter().collect();
                if !in_monoid(&pool, &rest) {
                    continue;
                }
                let exp = ex.q_jl(j, l)?;
                if exp.keys().any(|m| m[i - j - 1] > 0) {
                    appears = true;
                    break 'pairs;
                }
            }
        }
        if !appears {
            f_x.push(i);
        }
    }
    let c_x: Vec<usize> = (1..=n).filter(|k| !f_x.contains(k)).collect();
    Ok(CoreReport {
        status: if f_x.is_empty() {
            CoreStatus::EqualsRProved
        } else {
            CoreStatus::Proper
        },
        p_x,
        f_x: Some(f_x),
        c_x: Some(c_x),
    })
}

/// The core of `U_q^+[w]` for this word.
pub fn core_status(rs: &RootSystem, word: &ReducedWord, opts: GradingOptions) -> Result<CoreReport, UqError> {
    let mut exact = Exact::new(rs, word, opts)?;
    core_status_inner(word, exact.as_mut())
}

/// One trial coweight in a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoweightTrial {
    pub lambda: Vec<i64>,
    pub statuses: [Status; 4],
}

/// Every `lambda` with coefficients in `-bound..=bound`, and whether it meets all four conditions.
pub fn coweight_search(rs: &RootSystem, word: &ReducedWord, bound: i64, opts: GradingOptions) -> Result<Vec<CoweightTrial>, UqError> {
    let r = rs.rank();
    let mut out = Vec::new();
    let mut lambda = vec![-bound; r];
    loop {
        if lambda.iter().any(|&x| x != 0) {
            let rep = grading_report(rs, word, &lambda, opts)?;
            out.push(CoweightTrial {
                lambda: lambda.clone(),
                statuses: [rep.status(1), rep.status(2), rep.status(3), rep.status(4)],
            });
        }
        let mut p = 0;
        loop {
            if p == r {
                return Ok(out);
            }
            if lambda[p] < bound {
                lambda[p] += 1;
                break;
            }
            lambda[p] = -bound;
            p += 1;
        }
    }
}
