//! Type `C_n` with `J = {n}`: degree-one separation through partitions and centralizers.

use serde::Serialize;

use crate::rootsys::{symmetric_root, LatticeVec, RootSystem};

use super::nilradical::{theta_monomials, Nilradical};
use super::RigidityError;

/// Number of partitions of `k`.
pub fn partitions(k: usize) -> u64 {
    let mut p = vec![0u64; k + 1];
    p[0] = 1;
    for part in 1..=k {
        for s in part..=k {
            p[s] += p[s - part];
        }
    }
    p[k]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepSummary {
    pub step: char,
    pub checks: usize,
}

/// `Theta_p` distinguishes `x_ij` from `x_kl`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationWitness {
    pub root: (usize, usize),
    pub other: (usize, usize),
    pub p: usize,
    /// Whether `p` is the index given by [`hint_p`].
    pub from_hint: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Centralizer {
    pub root: (usize, usize),
    pub dim: usize,
    /// `n - i`, the dimension expected from the defining relations.
    pub claimed_dim: usize,
    pub members: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricChecks {
    pub n: usize,
    pub steps: Vec<StepSummary>,
    pub witnesses: Vec<SeparationWitness>,
    pub centralizers: Vec<Centralizer>,
    /// Centralizer dimensions differ along the antidiagonal, so each `x_ij` there is fixed up to scalar.
    pub dims_distinct: bool,
    /// Every centralizer dimension equals `n - i`.
    pub claim_holds: bool,
}

fn fail(n: usize, step: char, i: usize, j: usize, k: usize, detail: impl Into<String>) -> RigidityError {
    RigidityError::Symmetric {
        n,
        step,
        i,
        j,
        k,
        detail: detail.into(),
    }
}

/// The witness index suggested for `x_ij` against `x_kl`.
pub fn hint_p(n: usize, (i, j): (usize, usize), (k, l): (usize, usize)) -> usize {
    if i + j < n + 1 {
        if i != k {
            i.min(k)
        } else {
            j.min(l)
        }
    } else if j != l {
        (j - 1).max(l - 1)
    } else {
        (i - 1).max(k - 1)
    }
}

/// Run the four checks on the nilradical of `(C_n, {n})`.
///
/// Steps (a) to (c) and the centrality part of (d) return an error on failure. The
/// centralizer dimensions are recorded, not enforced; see [`SymmetricChecks::claim_holds`].
pub fn symmetric_checks(nil: &Nilradical<'_>) -> Result<SymmetricChecks, RigidityError> {
    let rs = nil.root_system();
    let n = rs.rank();
    let word = nil.word();
    let pos = |i: usize, j: usize| -> usize {
        let b = symmetric_root(n, i, j);
        word.roots().iter().position(|r| *r == b).expect("every e_i + e_j is a radical root") + 1
    };
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let mut steps = Vec::new();

    // (a) deg Theta_k = k, and dim (N_J)_k = P(k).
    let degs = nil.theta_degrees();
    for (t, &d) in degs.iter().enumerate() {
        if d != t as i64 + 1 {
            return Err(fail(n, 'a', 0, 0, t + 1, format!("deg Theta_{} = {d}", t + 1)));
        }
    }
    for k in 1..=n {
        let dim = theta_monomials(degs, k as i64).len() as u64;
        if dim != partitions(k) {
            return Err(fail(n, 'a', 0, 0, k, format!("dim (N_J)_{k} = {dim}, P({k}) = {}", partitions(k))));
        }
    }
    steps.push(StepSummary { step: 'a', checks: 2 * n });

    // (b) x_nn Theta_k = q^2 Theta_k x_nn for k < n, on both exponent routes.
    let xnn = pos(n, n);
    let mu = LatticeVec::from_ints(&word.roots()[xnn - 1]);
    for k in 1..n {
        let e = nil.exponents(xnn)[k - 1];
        let e2 = rs.commutation_exponent(word, k, &mu)?;
        if e != 2 || e2 != 2 {
            return Err(fail(n, 'b', n, n, k, format!("exponent {e} (direct {e2}), expected 2")));
        }
    }
    steps.push(StepSummary { step: 'b', checks: n - 1 });

    // (c) separation off the antidiagonal, validated on the weight route.
    let exp = |rs: &RootSystem, i: usize, j: usize, p: usize| -> Result<i64, RigidityError> {
        Ok(rs.commutation_exponent(word, p, &LatticeVec::from_ints(&symmetric_root(n, i, j)))?)
    };
    let mut witnesses = Vec::new();
    for &(i, j) in pairs.iter().filter(|(i, j)| i + j != n + 1) {
        for &(k, l) in pairs.iter().filter(|&&kl| kl != (i, j)) {
            let hint = hint_p(n, (i, j), (k, l));
            let separates = |p: usize| -> Result<bool, RigidityError> {
                Ok((1..=n).contains(&p) && exp(rs, i, j, p)? != exp(rs, k, l, p)?)
            };
            let (p, from_hint) = if separates(hint)? {
                (hint, true)
            } else {
                let mut found = None;
                for p in 1..=n {
                    if separates(p)? {
                        found = Some(p);
                        break;
                    }
                }
                match found {
                    Some(p) => (p, false),
                    None => return Err(fail(n, 'c', i, j, k, format!("no Theta_p separates x_{i}{j} from x_{k}{l}"))),
                }
            };
            witnesses.push(SeparationWitness {
                root: (i, j),
                other: (k, l),
                p,
                from_hint,
            });
        }
    }
    steps.push(StepSummary {
        step: 'c',
        checks: witnesses.len(),
    });

    // (d) the antidiagonal commutes with N_J; C(x_ij) = {x : x_ij x = q x x_ij} in degree one.
    let mut centralizers = Vec::new();
    for &(i, j) in &pairs {
        let central = nil.exponents(pos(i, j)).iter().all(|&e| e == 0);
        if central != (i + j == n + 1) {
            return Err(fail(n, 'd', i, j, 0, format!("x_{i}{j} central in N_J: {central}")));
        }
    }
    for &(i, j) in pairs.iter().filter(|(i, j)| i + j == n + 1) {
        let a = pos(i, j);
        let mut members = Vec::new();
        for &(k, l) in &pairs {
            let b = pos(k, l);
            if a == b {
                continue;
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if !nil.ls_vanishing(lo, hi) {
                continue;
            }
            // X_a X_b = q^<,> X_b X_a when a < b.
            let e = if a < b { nil.pairing(a, b) } else { -nil.pairing(a, b) };
            if e == 1 {
                members.push((k, l));
            }
        }
        centralizers.push(Centralizer {
            root: (i, j),
            dim: members.len(),
            claimed_dim: n - i,
            members,
        });
    }
    let mut dims: Vec<usize> = centralizers.iter().map(|c| c.dim).collect();
    dims.sort_unstable();
    dims.dedup();
    let dims_distinct = dims.len() == centralizers.len();
    let claim_holds = centralizers.iter().all(|c| c.dim == c.claimed_dim);
    steps.push(StepSummary {
        step: 'd',
        checks: centralizers.len(),
    });

    Ok(SymmetricChecks {
        n,
        steps,
        witnesses,
        centralizers,
        dims_distinct,
        claim_holds,
    })
}
