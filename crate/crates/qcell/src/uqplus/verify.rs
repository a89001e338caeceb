//! Certificate suites for the G2 relation table and the F4 commutator lemmas.

use std::time::Instant;

use serde::Serialize;

use crate::rootsys::{CartanType, Family, ReducedWord};
use crate::scalar::QScalar;
use crate::shuffle::{Convention, ShuffleAlgebra, ShuffleElement, UqError};
use crate::words::WordComb;

use super::lusztig::{root_vector, RootVectorOptions};
use super::{canonical_terms, CanonicalTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityStatus {
    Pass,
    Fail,
    BudgetExceeded,
    Undefined,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub identity: String,
    pub status: IdentityStatus,
    pub lhs_minus_rhs_terms: Vec<CanonicalTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    fn compare(identity: String, lhs: &ShuffleElement, rhs: &ShuffleElement) -> Certificate {
        let diff = lhs.sub(rhs);
        let (status, note) = if diff.is_zero() {
            (IdentityStatus::Pass, None)
        } else {
            (IdentityStatus::Fail, proportionality_note(lhs, rhs))
        };
        Certificate {
            identity,
            status,
            lhs_minus_rhs_terms: canonical_terms(&diff),
            note,
        }
    }

    fn other(identity: String, status: IdentityStatus, note: String) -> Certificate {
        Certificate {
            identity,
            status,
            lhs_minus_rhs_terms: Vec::new(),
            note: Some(note),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == IdentityStatus::Pass
    }
}

/// `lhs = c * rhs` for a scalar `c`, when that holds.
fn proportionality_note(lhs: &ShuffleElement, rhs: &ShuffleElement) -> Option<String> {
    if lhs.is_zero() || rhs.is_zero() {
        return Some(format!("lhs has {} terms, rhs has {}", lhs.len(), rhs.len()));
    }
    let (w, _) = rhs.canonical_terms().into_iter().next()?;
    let c = &lhs.coeff(w) / &rhs.coeff(w);
    if !c.is_zero() && lhs.sub(&rhs.scale(&c)).is_zero() {
        Some(format!("lhs = ({c}) * rhs"))
    } else {
        Some("lhs and rhs are not proportional".into())
    }
}

// ---------------------------------------------------------------- G2

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum G2Nesting {
    /// `E_{112} = [E_1, [E_1, E_2]]`, `E_{11212} = [E_{112}, E_{12}]`.
    Lyndon,
    /// `E_{112} = [[E_1, E_1], E_2]` and so on, bracketing letters from the left.
    LeftNested,
}

fn qint(n: u32) -> QScalar {
    QScalar::qint(n, 1)
}

/// `x_1, ..., x_6` for the word `121212`, built from bracketed generators.
pub fn g2_generators(alg: &ShuffleAlgebra, nesting: G2Nesting) -> Result<Vec<ShuffleElement>, UqError> {
    let e1 = alg.generator(1);
    let e2 = alg.generator(2);
    let br = |a: &ShuffleElement, b: &ShuffleElement| alg.q_commutator(a, b);
    let (e1112, e112, e11212, e12) = match nesting {
        G2Nesting::Lyndon => {
            let e12 = br(&e1, &e2)?;
            let e112 = br(&e1, &e12)?;
            let e1112 = br(&e1, &e112)?;
            let e11212 = br(&e112, &e12)?;
            (e1112, e112, e11212, e12)
        }
        G2Nesting::LeftNested => {
            let left = |letters: &[u8]| -> Result<ShuffleElement, UqError> {
                let mut acc = alg.generator(letters[0]);
                for &l in &letters[1..] {
                    acc = br(&acc, &alg.generator(l))?;
                }
                Ok(acc)
            };
            (left(&[1, 1, 1, 2])?, left(&[1, 1, 2])?, left(&[1, 1, 2, 1, 2])?, left(&[1, 2])?)
        }
    };
    let f3 = QScalar::qfact(3, 1);
    Ok(vec![
        e1,
        e1112.scale(&f3.inv()),
        e112.scale(&qint(2).inv()),
        e11212.scale(&f3.inv()),
        e12,
        e2,
    ])
}

struct G2Relation {
    left: (usize, usize),
    rhs: Vec<(QScalar, &'static str, Vec<usize>)>,
}

fn g2_relations() -> Vec<G2Relation> {
    let q = QScalar::q_pow;
    let qhat = QScalar::qhat();
    let qqhat = &q(1) * &qhat;
    let zeta = &(&q(-3) - &q(-1)) - &q(1);
    let eta = &(&q(3) * &qhat.pow(2)) / &qint(3);
    let rel = |a: usize, b: usize, rhs: Vec<(QScalar, &'static str, Vec<usize>)>| G2Relation { left: (a, b), rhs };
    vec![
        rel(1, 2, vec![(q(3), "q^3", vec![2, 1])]),
        rel(1, 3, vec![(q(1), "q", vec![3, 1]), (qint(3), "[3]_q", vec![2])]),
        rel(1, 4, vec![(q(0), "", vec![4, 1]), (qqhat.clone(), "q qhat", vec![3, 3])]),
        rel(1, 5, vec![(q(-1), "q^-1", vec![5, 1]), (qint(2), "[2]_q", vec![3])]),
        rel(1, 6, vec![(q(-3), "q^-3", vec![6, 1]), (q(0), "", vec![5])]),
        rel(2, 3, vec![(q(3), "q^3", vec![3, 2])]),
        rel(2, 4, vec![(q(3), "q^3", vec![4, 2]), (eta.clone(), "eta", vec![3, 3, 3])]),
        rel(2, 5, vec![(q(0), "", vec![5, 2]), (qqhat.clone(), "q qhat", vec![3, 3])]),
        rel(
            2,
            6,
            vec![(q(-3), "q^-3", vec![6, 2]), (qhat, "qhat", vec![3, 5]), (zeta, "zeta", vec![4])],
        ),
        rel(3, 4, vec![(q(3), "q^3", vec![4, 3])]),
        rel(3, 5, vec![(q(1), "q", vec![5, 3]), (qint(3), "[3]_q", vec![4])]),
        rel(3, 6, vec![(q(0), "", vec![6, 3]), (qqhat, "q qhat", vec![5, 5])]),
        rel(4, 5, vec![(q(3), "q^3", vec![5, 4])]),
        rel(4, 6, vec![(q(3), "q^3", vec![6, 4]), (eta, "eta", vec![5, 5, 5])]),
        rel(5, 6, vec![(q(3), "q^3", vec![6, 5])]),
    ]
}

fn monomial_text(idx: &[usize]) -> String {
    idx.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(" ")
}

impl G2Relation {
    fn text(&self) -> String {
        let rhs: Vec<String> = self
            .rhs
            .iter()
            .map(|(_, label, m)| {
                if label.is_empty() {
                    monomial_text(m)
                } else {
                    format!("{label} {}", monomial_text(m))
                }
            })
            .collect();
        format!("{} = {}", monomial_text(&[self.left.0, self.left.1]), rhs.join(" + "))
    }

    fn check(&self, alg: &ShuffleAlgebra, x: &[ShuffleElement]) -> Certificate {
        let lhs = alg.mul(&x[self.left.0 - 1], &x[self.left.1 - 1]);
        let mut rhs = WordComb::zero();
        for (c, _, m) in &self.rhs {
            let factors: Vec<&ShuffleElement> = m.iter().map(|&i| &x[i - 1]).collect();
            rhs.add_assign(&alg.product(&factors).scale(c));
        }
        rhs.reduce();
        Certificate::compare(self.text(), &lhs, &rhs)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct G2Report {
    pub convention: Convention,
    pub nesting: G2Nesting,
    pub passed: usize,
    pub total: usize,
    pub certificates: Vec<Certificate>,
    /// Relations that also hold with letter-by-letter left bracketing.
    pub left_nested_passed: usize,
    /// Whether `x_k` from the bracket expressions equals the Lusztig vector `X_{beta_k}` of `121212`.
    pub matches_root_vectors: Vec<bool>,
    pub seconds: f64,
}

impl G2Report {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Check the 15 defining relations of `U_q^+(G_2)` in the root vectors of `121212`.
pub fn verify_g2_relations() -> Result<G2Report, UqError> {
    let t0 = Instant::now();
    let alg = ShuffleAlgebra::new(CartanType::new(Family::G, 2).expect("G2"))?;
    let x = g2_generators(&alg, G2Nesting::Lyndon)?;
    let certificates: Vec<Certificate> = g2_relations().iter().map(|r| r.check(&alg, &x)).collect();
    let passed = certificates.iter().filter(|c| c.passed()).count();
    let left = g2_generators(&alg, G2Nesting::LeftNested)?;
    let left_nested_passed = g2_relations().iter().filter(|r| r.check(&alg, &left).passed()).count();
    let word = alg.root_system().reduced_word(&[1, 2, 1, 2, 1, 2]).expect("reduced");
    let mut matches_root_vectors = Vec::new();
    for (k, xk) in x.iter().enumerate() {
        let v = root_vector(&alg, &word, k + 1, RootVectorOptions::default())?;
        matches_root_vectors.push(&v == xk);
    }
    Ok(G2Report {
        convention: alg.convention(),
        nesting: G2Nesting::Lyndon,
        passed,
        total: certificates.len(),
        certificates,
        left_nested_passed,
        matches_root_vectors,
        seconds: t0.elapsed().as_secs_f64(),
    })
}

// ---------------------------------------------------------------- F4

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum F4Which {
    X,
    Y,
}

impl F4Which {
    pub fn word(self) -> &'static [u8] {
        match self {
            F4Which::X => &[1, 2, 1, 3, 2, 3, 1, 2, 4, 3, 2, 1, 3, 2, 3, 4, 3, 2, 3, 1, 2, 3, 4, 3],
            F4Which::Y => &[4, 1, 2, 3, 4, 2, 1, 3, 2, 3, 1, 2, 4, 3, 2, 1, 3, 2, 3, 4, 3, 2, 3, 2],
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            F4Which::X => "x",
            F4Which::Y => "y",
        }
    }

    /// Positions known to carry Chevalley generators, with the generator index.
    fn seeds(self) -> &'static [(usize, u8)] {
        match self {
            F4Which::X => &[(1, 1), (3, 2), (22, 4), (24, 3)],
            F4Which::Y => &[(1, 4), (2, 1), (21, 3), (24, 2)],
        }
    }

    /// `(target, a, b, halved)`: `v_target = [v_a, v_b]`, divided by `[2]_q` when halved.
    fn identities(self) -> &'static [(usize, usize, usize, bool)] {
        match self {
            F4Which::X => &[
                (2, 1, 3, false),
                (4, 1, 6, false),
                (4, 2, 24, false),
                (5, 4, 6, true),
                (6, 3, 24, false),
                (7, 1, 8, false),
                (7, 4, 24, true),
                (8, 6, 24, true),
                (9, 6, 13, false),
                (10, 8, 13, false),
                (11, 10, 13, true),
                (12, 10, 15, true),
                (13, 1, 15, false),
                (13, 4, 22, false),
                (14, 13, 15, true),
                (15, 6, 22, false),
                (16, 15, 17, false),
                (17, 1, 19, false),
                (17, 7, 22, false),
                (18, 17, 19, true),
                (19, 8, 22, false),
                (20, 1, 21, false),
                (20, 17, 22, true),
                (21, 19, 22, true),
                (23, 22, 24, false),
            ],
            F4Which::Y => &[
                (3, 2, 24, false),
                (4, 3, 17, false),
                (5, 3, 21, false),
                (6, 4, 17, true),
                (7, 4, 19, true),
                (8, 5, 17, false),
                (9, 8, 10, true),
                (10, 5, 19, false),
                (11, 5, 21, true),
                (12, 5, 23, true),
                (13, 10, 17, false),
                (14, 12, 17, false),
                (15, 14, 17, true),
                (16, 14, 19, true),
                (17, 1, 21, false),
                (18, 17, 19, true),
                (19, 1, 23, false),
                (19, 17, 24, false),
                (20, 19, 21, false),
                (22, 21, 23, true),
                (23, 21, 24, false),
            ],
        }
    }
}

/// Root vectors as determined by the lemma identities, seeded with the Chevalley generators.
#[derive(Debug, Clone)]
pub struct F4Generators {
    pub which: F4Which,
    pub word: ReducedWord,
    /// Index `k - 1` holds `v_k`, `None` where the identities do not reach.
    pub values: Vec<Option<ShuffleElement>>,
    /// For each defined `v_k`, the identity that defined it, or `None` for a seed.
    pub defined_by: Vec<Option<usize>>,
}

impl F4Generators {
    pub fn build(alg: &ShuffleAlgebra, which: F4Which) -> Result<Self, UqError> {
        let word = alg
            .root_system()
            .reduced_word(which.word())
            .map_err(|e| UqError::Other(e.to_string()))?;
        let mut values: Vec<Option<ShuffleElement>> = vec![None; 24];
        let mut defined_by = vec![None; 24];
        for &(k, g) in which.seeds() {
            values[k - 1] = Some(alg.generator(g));
        }
        let ids = which.identities();
        loop {
            let mut progress = false;
            for (n, &(t, a, b, halved)) in ids.iter().enumerate() {
                if values[t - 1].is_some() {
                    continue;
                }
                if let (Some(va), Some(vb)) = (&values[a - 1], &values[b - 1]) {
                    values[t - 1] = Some(bracket(alg, va, vb, halved)?);
                    defined_by[t - 1] = Some(n);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        Ok(F4Generators {
            which,
            word,
            values,
            defined_by,
        })
    }
}

fn bracket(alg: &ShuffleAlgebra, a: &ShuffleElement, b: &ShuffleElement, halved: bool) -> Result<ShuffleElement, UqError> {
    let c = alg.q_commutator(a, b)?;
    Ok(if halved { c.scale(&qint(2).inv()) } else { c })
}

fn identity_text(which: F4Which, (t, a, b, halved): (usize, usize, usize, bool)) -> String {
    let s = which.symbol();
    if halved {
        format!("{s}{t} = (1/[2]_q) [{s}{a}, {s}{b}]")
    } else {
        format!("{s}{t} = [{s}{a}, {s}{b}]")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TierReport {
    pub tier: u8,
    pub passed: usize,
    pub failed: usize,
    pub budget_exceeded: usize,
    pub certificates: Vec<Certificate>,
    pub seconds: f64,
}

impl TierReport {
    fn new(tier: u8, certificates: Vec<Certificate>, t0: Instant) -> TierReport {
        let count = |s: IdentityStatus| certificates.iter().filter(|c| c.status == s).count();
        TierReport {
            tier,
            passed: count(IdentityStatus::Pass),
            failed: count(IdentityStatus::Fail) + count(IdentityStatus::Undefined),
            budget_exceeded: count(IdentityStatus::BudgetExceeded),
            certificates,
            seconds: t0.elapsed().as_secs_f64(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.budget_exceeded == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct F4Report {
    pub which: F4Which,
    pub word: Vec<u8>,
    pub convention: Convention,
    pub tiers: Vec<TierReport>,
}

/// Tier 1: every lemma identity among the lemma-defined vectors, plus degree bookkeeping.
fn tier1(alg: &ShuffleAlgebra, g: &F4Generators) -> TierReport {
    let t0 = Instant::now();
    let which = g.which;
    let mut certs = Vec::new();
    for &id in which.identities() {
        let (t, a, b, halved) = id;
        let text = identity_text(which, id);
        let roots = g.word.roots();
        let deg_ok = (0..4).all(|c| roots[t - 1][c] == roots[a - 1][c] + roots[b - 1][c]);
        if !deg_ok {
            certs.push(Certificate::other(
                text,
                IdentityStatus::Fail,
                format!(
                    "degree mismatch: beta_{t} = {:?}, beta_{a} + beta_{b} = {:?}",
                    roots[t - 1],
                    (0..4).map(|c| roots[a - 1][c] + roots[b - 1][c]).collect::<Vec<_>>()
                ),
            ));
            continue;
        }
        match (&g.values[t - 1], &g.values[a - 1], &g.values[b - 1]) {
            (Some(vt), Some(va), Some(vb)) => match bracket(alg, va, vb, halved) {
                Ok(r) => certs.push(Certificate::compare(text, vt, &r)),
                Err(e) => certs.push(Certificate::other(text, IdentityStatus::Fail, e.to_string())),
            },
            _ => certs.push(Certificate::other(
                text,
                IdentityStatus::Undefined,
                "some vector is not reached from the generators".into(),
            )),
        }
    }
    TierReport::new(1, certs, t0)
}

/// Tiers 2 and 3: recompute root vectors with the Lusztig action and compare.
fn tier_recompute(alg: &ShuffleAlgebra, g: &F4Generators, tier: u8, max_height: i64, budget: usize) -> TierReport {
    let t0 = Instant::now();
    let which = g.which;
    let s = which.symbol();
    let opts = RootVectorOptions {
        budget,
        ..RootVectorOptions::default()
    };
    let mut lusztig: Vec<Option<Result<ShuffleElement, UqError>>> = vec![None; 24];
    for k in 1..=24 {
        if crate::rootsys::height(&g.word.roots()[k - 1]) <= max_height {
            lusztig[k - 1] = Some(root_vector(alg, &g.word, k, opts));
        }
    }
    let mut certs = Vec::new();
    for k in 1..=24 {
        let Some(res) = &lusztig[k - 1] else { continue };
        let text = format!("{s}{k} (Lusztig) = {s}{k} (lemma)");
        match (res, &g.values[k - 1]) {
            (Err(UqError::Budget(b)), _) => certs.push(Certificate::other(
                text,
                IdentityStatus::BudgetExceeded,
                format!("node budget {b} exceeded"),
            )),
            (Err(e), _) => certs.push(Certificate::other(text, IdentityStatus::Fail, e.to_string())),
            (Ok(v), Some(lemma)) => certs.push(Certificate::compare(text, v, lemma)),
            (Ok(_), None) => certs.push(Certificate::other(
                text,
                IdentityStatus::Undefined,
                "vector not reached by the lemma identities".into(),
            )),
        }
    }
    for &id in which.identities() {
        let (t, a, b, halved) = id;
        let get = |k: usize| match &lusztig[k - 1] {
            Some(Ok(v)) => Some(v),
            _ => None,
        };
        if [t, a, b].iter().any(|&k| lusztig[k - 1].is_none()) {
            continue;
        }
        let text = format!("{} (Lusztig vectors)", identity_text(which, id));
        match (get(t), get(a), get(b)) {
            (Some(vt), Some(va), Some(vb)) => match bracket(alg, va, vb, halved) {
                Ok(r) => certs.push(Certificate::compare(text, vt, &r)),
                Err(e) => certs.push(Certificate::other(text, IdentityStatus::Fail, e.to_string())),
            },
            _ => certs.push(Certificate::other(
                text,
                IdentityStatus::BudgetExceeded,
                "a Lusztig vector was not computed".into(),
            )),
        }
    }
    TierReport::new(tier, certs, t0)
}

/// Run the F4 lemma tiers `1..=max_tier`.
///
/// Tier 2 recomputes the root vectors of height at most 6, tier 3 all of them.
pub fn verify_f4_lemmas(which: F4Which, max_tier: u8, budget: usize) -> Result<F4Report, UqError> {
    let alg = ShuffleAlgebra::new(CartanType::new(Family::F, 4).expect("F4"))?;
    let g = F4Generators::build(&alg, which)?;
    let mut tiers = vec![tier1(&alg, &g)];
    if max_tier >= 2 {
        tiers.push(tier_recompute(&alg, &g, 2, 6, budget));
    }
    if max_tier >= 3 {
        tiers.push(tier_recompute(&alg, &g, 3, i64::MAX, budget));
    }
    Ok(F4Report {
        which,
        word: which.word().to_vec(),
        convention: alg.convention(),
        tiers,
    })
}
