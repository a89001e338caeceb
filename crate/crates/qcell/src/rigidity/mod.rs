//! Automorphism rigidity of quantized nilradicals.
//!
//! [`analyze`] runs the grading hypotheses, fixes normal elements, separates
//! degree-one root vectors by their commutation with the fixed `Theta_i`, and
//! falls back to invariant subsets `C_d^m`, `gamma_{d,l}^m` for the rest.

mod cases;
mod grading;
mod nilradical;
mod pinpoint;
mod symmetric;

use std::fmt::Write as _;

use serde::Serialize;

use crate::rootsys::{CartanType, Family, RootError, RootSystem};
use crate::shuffle::UqError;

pub use cases::{
    all_cases, case_qualifies, degree_one_separation, diff_against_reference, dynkin_aut_j, enumerate_prop_cases,
    labelled_word, nilradical_for, reference_cases, semigroup_thetas, sort_cases, symmetric_word, Case, CaseDiff,
    DiagramGroup, EnumerateOptions, Enumeration, LabelledWord,
};
pub use grading::{
    core_status, coweight_search, generated_in_degree_one, grading_report, ConditionStatus, CoreReport, CoreStatus,
    CoweightTrial, GradingOptions, GradingReport, Split, Status, Witness,
};
pub use nilradical::{kappa_pair, ls_vanishing, semigroup_excluded, theta_monomials, Nilradical, RootRef};
pub use pinpoint::{
    cdm_span, default_max_d, gamma_dim, pinpoint_certificates, CmGammaQuery, PinpointCertificate, PinpointOptions,
    PinpointStatus, Profiles, QueryKind, Solution,
};
pub use symmetric::{hint_p, partitions, symmetric_checks, Centralizer, SeparationWitness, StepSummary, SymmetricChecks};

#[derive(Debug, thiserror::Error)]
pub enum RigidityError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error("word {word:?} is not a reduced word for w_J, J = {j:?}")]
    WrongElement { word: Vec<u8>, j: Vec<usize> },
    #[error("C_{n}, J = {{{n}}}: step ({step}) failed at i = {i}, j = {j}, k = {k}: {detail}")]
    Symmetric {
        n: usize,
        step: char,
        i: usize,
        j: usize,
        k: usize,
        detail: String,
    },
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixReason {
    /// `d_i` is not a sum of the other degrees.
    Semigroup,
    /// Only `Theta_k` among degree-`k` monomials commutes with `x_nn` by `q^2`.
    XnnRelation,
    /// `Theta_n` generates the center.
    Center,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedTheta {
    pub index: usize,
    pub degree: i64,
    pub reason: FixReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationMethod {
    /// Distinct exponents against some fixed `Theta_i`.
    Theta,
    Pinpoint,
    CentralizerDimension,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatedRoot {
    pub position: usize,
    pub label: String,
    pub methods: Vec<SeparationMethod>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    DiagonalOnDegreeOne,
    Partial,
    ManualStepRequired,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub word: Vec<u8>,
    pub theta_degrees: Vec<i64>,
    pub fixed_thetas: Vec<FixedTheta>,
    pub degree_one_roots: Vec<RootRef>,
    pub separated_roots: Vec<SeparatedRoot>,
    pub cm_certificates: Vec<PinpointCertificate>,
    pub conclusion: Conclusion,
    pub aut_descriptor: String,
    pub dynkin_aut_j: DiagramGroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<SymmetricChecks>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub grading: GradingOptions,
    pub pinpoint: PinpointOptions,
    pub skip_pinpoint: bool,
}

/// `S`: the semigroup rule, plus the `x_nn` and center rules for `(C_n, {n})`.
pub fn fixed_thetas(nil: &Nilradical<'_>) -> Vec<FixedTheta> {
    let ty = nil.cartan_type();
    let supp = nil.support();
    let degs = nil.theta_degrees();
    let semi = semigroup_thetas(nil);
    let symmetric = ty.family == Family::C && nil.j() == [ty.rank];
    let mut out = Vec::new();
    for (t, &i) in supp.iter().enumerate() {
        let reason = if semi.contains(&i) {
            Some(FixReason::Semigroup)
        } else if symmetric && i < ty.rank {
            Some(FixReason::XnnRelation)
        } else if symmetric && i == ty.rank {
            Some(FixReason::Center)
        } else {
            None
        };
        if let Some(reason) = reason {
            out.push(FixedTheta {
                index: i,
                degree: degs[t],
                reason,
            });
        }
    }
    out
}

fn descriptor(ty: CartanType, j: &[usize], group: &DiagramGroup) -> String {
    if is_quantum_affine_3space(ty, j) {
        return "(K^×)^3 ⋊ K".into();
    }
    let base = format!("(K^×)^{}", ty.rank);
    if group.is_trivial() {
        base
    } else {
        format!("{base} ⋊ {}", group.name())
    }
}

fn is_quantum_affine_3space(ty: CartanType, j: &[usize]) -> bool {
    ty.family == Family::A && ty.rank == 3 && (j == [1] || j == [3])
}

/// Grading coweight `sum_{j in J} varpi_j^vee` in the fundamental-coweight basis.
pub fn nilradical_lambda(rank: usize, j: &[usize]) -> Vec<i64> {
    (1..=rank).map(|i| j.contains(&i) as i64).collect()
}

/// Full pipeline for `(ty, J)`.
pub fn analyze(ty: CartanType, j: &[usize], opts: AnalyzeOptions) -> Result<RigidityReport, RigidityError> {
    let rs = RootSystem::new(ty);
    analyze_in(&rs, j, opts)
}

pub fn analyze_in(rs: &RootSystem, j: &[usize], opts: AnalyzeOptions) -> Result<RigidityReport, RigidityError> {
    let nil = nilradical_for(rs, j)?;
    build_report(&nil, opts)
}

/// The `(C_n, {n})` report with all four special-path checks.
pub fn symmetric_matrices_pipeline(n: usize) -> Result<RigidityReport, RigidityError> {
    if n < 2 {
        return Err(RigidityError::Other(format!("n must be at least 2, got {n}")));
    }
    let ty = CartanType::new(Family::C, n)?;
    analyze(
        ty,
        &[n],
        AnalyzeOptions {
            grading: GradingOptions::combinatorial(),
            skip_pinpoint: true,
            ..AnalyzeOptions::default()
        },
    )
}

fn build_report(nil: &Nilradical<'_>, opts: AnalyzeOptions) -> Result<RigidityReport, RigidityError> {
    let rs = nil.root_system();
    let ty = rs.cartan_type();
    let j = nil.j().to_vec();
    let group = dynkin_aut_j(rs, &j);
    let mut notes = Vec::new();
    let exception = is_quantum_affine_3space(ty, &j);
    let full = j.len() == rs.rank();
    if exception {
        notes.push("U_q(n_J) is the quantum affine space A_q(K^3); descriptor only".into());
    }
    if full {
        notes.push("J is the full set: U_q(n_J) = U_q^+(g), covered by Yakimov's theorem".into());
    }

    let grading = if exception {
        None
    } else {
        Some(grading_report(rs, nil.word(), &nilradical_lambda(rs.rank(), &j), opts.grading)?)
    };

    let fixed = fixed_thetas(nil);
    let s: Vec<usize> = fixed.iter().map(|f| f.index).collect();
    let ones = nil.degree_one();
    let mut methods: std::collections::BTreeMap<usize, Vec<SeparationMethod>> = Default::default();
    for k in degree_one_separation(nil, &s) {
        methods.entry(k).or_default().push(SeparationMethod::Theta);
    }

    let symmetric = if ty.family == Family::C && j == [ty.rank] && !exception {
        let checks = symmetric_checks(nil)?;
        let n = ty.rank;
        if !checks.claim_holds {
            let d: Vec<String> = checks.centralizers.iter().map(|c| format!("x{}{}:{}/{}", c.root.0, c.root.1, c.dim, c.claimed_dim)).collect();
            notes.push(format!("centralizer dimensions differ from n - i ({})", d.join(" ")));
        }
        for c in checks.centralizers.iter().filter(|_| checks.dims_distinct) {
            let b = crate::rootsys::symmetric_root(n, c.root.0, c.root.1);
            let k = nil.word().roots().iter().position(|r| *r == b).unwrap() + 1;
            methods.entry(k).or_default().push(SeparationMethod::CentralizerDimension);
        }
        Some(checks)
    } else {
        None
    };

    let mut certs = Vec::new();
    let unresolved = ones.iter().any(|k| !methods.contains_key(k));
    if unresolved && !exception && !full {
        let hypotheses = grading.as_ref().is_some_and(|g| g.hypotheses_hold());
        if opts.skip_pinpoint {
            notes.push("pinpoint search skipped".into());
        } else if !hypotheses {
            notes.push("grading hypotheses not established; pinpoint search skipped".into());
        } else if ones.len() > 128 {
            notes.push("more than 128 degree-one roots; pinpoint search skipped".into());
        } else {
            certs = pinpoint_certificates(nil, opts.pinpoint);
            for c in &certs {
                if c.status == PinpointStatus::Certified {
                    let m = methods.entry(c.root.position).or_default();
                    m.push(SeparationMethod::Pinpoint);
                }
            }
        }
    }

    let separated_roots: Vec<SeparatedRoot> = methods
        .into_iter()
        .map(|(k, mut m)| {
            m.sort_unstable();
            m.dedup();
            SeparatedRoot {
                position: k,
                label: nil.label(k),
                methods: m,
            }
        })
        .collect();
    let conclusion = if separated_roots.len() == ones.len() {
        Conclusion::DiagonalOnDegreeOne
    } else if certs.iter().any(|c| c.status == PinpointStatus::ManualStepRequired) {
        Conclusion::ManualStepRequired
    } else {
        Conclusion::Partial
    };

    Ok(RigidityReport {
        ty: ty.to_string(),
        j: j.clone(),
        word: nil.word().letters().to_vec(),
        theta_degrees: nil.theta_degrees().to_vec(),
        fixed_thetas: fixed,
        degree_one_roots: ones.iter().map(|&k| nil.root_ref(k)).collect(),
        separated_roots,
        cm_certificates: certs,
        conclusion,
        aut_descriptor: descriptor(ty, &j, &group),
        dynkin_aut_j: group,
        grading,
        symmetric,
        notes,
    })
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Flat CSV summary.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(rename = "J")]
    pub j: String,
    pub word_length: usize,
    pub theta_degrees: String,
    pub fixed_thetas: String,
    pub degree_one: usize,
    pub separated: usize,
    pub conclusion: String,
    pub aut_descriptor: String,
}

impl RigidityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn row(&self) -> ReportRow {
        let fixed: Vec<usize> = self.fixed_thetas.iter().map(|f| f.index).collect();
        ReportRow {
            ty: self.ty.clone(),
            j: join(&self.j, ","),
            word_length: self.word.len(),
            theta_degrees: join(&self.theta_degrees, " "),
            fixed_thetas: join(&fixed, ","),
            degree_one: self.degree_one_roots.len(),
            separated: self.separated_roots.len(),
            conclusion: serde_json::to_value(self.conclusion).unwrap().as_str().unwrap().to_string(),
            aut_descriptor: self.aut_descriptor.clone(),
        }
    }

    /// Header plus one row.
    pub fn to_csv(&self) -> String {
        write_csv(std::slice::from_ref(self))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let r = self.row();
        let _ = writeln!(s, "type: {}  J: {{{}}}", r.ty, r.j);
        let _ = writeln!(s, "word: {}", join(&self.word, " "));
        let _ = writeln!(s, "theta degrees: {}", r.theta_degrees);
        let fixed: Vec<String> = self
            .fixed_thetas
            .iter()
            .map(|f| format!("{} ({})", f.index, serde_json::to_value(f.reason).unwrap().as_str().unwrap()))
            .collect();
        let _ = writeln!(s, "fixed thetas: {}", fixed.join(", "));
        let ones: Vec<&str> = self.degree_one_roots.iter().map(|r| r.label.as_str()).collect();
        let _ = writeln!(s, "degree-one roots ({}): {}", ones.len(), ones.join(" "));
        let sep: Vec<String> = self
            .separated_roots
            .iter()
            .map(|r| {
                let m: Vec<String> = r
                    .methods
                    .iter()
                    .map(|m| serde_json::to_value(m).unwrap().as_str().unwrap().to_string())
                    .collect();
                format!("{} [{}]", r.label, m.join("+"))
            })
            .collect();
        let _ = writeln!(s, "separated ({}): {}", sep.len(), sep.join(" "));
        for c in &self.cm_certificates {
            let status = serde_json::to_value(c.status).unwrap();
            let _ = writeln!(
                s,
                "  {}: {} {} block {{{}}}",
                c.root.label,
                status.as_str().unwrap(),
                if c.queries.is_empty() { "(trivial)".to_string() } else { c.queries.join(" ∩ ") },
                c.block.join(", ")
            );
        }
        if let Some(g) = &self.grading {
            let st: Vec<String> = g
                .conditions_1_to_4
                .iter()
                .map(|c| format!("({}) {}", c.condition, serde_json::to_value(c.status).unwrap().as_str().unwrap()))
                .collect();
            let _ = writeln!(s, "grading: {}", st.join(" "));
            let _ = writeln!(
                s,
                "core: {} (P_x = {{{}}})",
                serde_json::to_value(g.core_status.status).unwrap().as_str().unwrap(),
                join(&g.core_status.p_x, ",")
            );
            if !g.kappa_missing.is_empty() {
                let _ = writeln!(s, "no q-commuting partner: {}", join(&g.kappa_missing, ","));
            }
        }
        if let Some(sym) = &self.symmetric {
            let st: Vec<String> = sym.steps.iter().map(|x| format!("({}) {} checks", x.step, x.checks)).collect();
            let _ = writeln!(s, "symmetric checks: {}", st.join(", "));
        }
        let _ = writeln!(s, "dynkin-aut_J: order {}", self.dynkin_aut_j.order);
        let _ = writeln!(s, "conclusion: {}", r.conclusion);
        let _ = writeln!(s, "descriptor: {}", self.aut_descriptor);
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

pub fn write_csv(reports: &[RigidityReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(r.row()).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
