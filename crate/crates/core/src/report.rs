//! The combined analysis pipeline and its renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::certificates::{certify_braid_mixed, certify_two_param, certify_w_mixed};
use crate::criteria::{
    extract_ghz_diag_params, flip_pivot, ghz_diag_analysis, guhne_necessary, l1_sufficient, mds_eigen_bound,
    ppt_verdict, svd_sufficient, CriterionVerdict, GhzDiagReport, Outcome, Witness,
};
use crate::error::{Error, Result};
use crate::hs::{decompose, HsDecomposition, MDS_TOL};
use crate::io::{StateExpr, StateSpec};
use crate::kernel::{eig_hermitian, DensityMatrix};
use crate::states::GhzDiagParams;

/// Coefficients below this magnitude are omitted from the report listing.
const LISTING_EPS: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct HsTerm {
    pub index: Vec<usize>,
    pub label: String,
    pub coeff: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HsSummary {
    pub nonzero: usize,
    pub l1_sum: f64,
    pub terms: Vec<HsTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub criterion: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub shape: Vec<usize>,
    pub spectrum: Vec<f64>,
    pub is_mds: bool,
    pub hs: HsSummary,
    pub verdicts: Vec<CriterionVerdict>,
    pub skipped: Vec<Skipped>,
    pub ghz_diag: Option<GhzDiagReport>,
    pub overall: Outcome,
    pub decided_by: Vec<&'static str>,
}

/// Human-readable label of a basis index, e.g. `XYZ` or `X f3`.
pub fn term_label(idx: &[usize], dims: &[usize]) -> String {
    let parts: Vec<String> = idx
        .iter()
        .zip(dims)
        .map(|(&k, &d)| match (d, k) {
            (_, 0) => "I".to_string(),
            (2, 1) => "X".to_string(),
            (2, 2) => "Y".to_string(),
            (2, 3) => "Z".to_string(),
            (_, mu) => format!("f{mu}"),
        })
        .collect();
    if dims.iter().all(|&d| d == 2) {
        parts.concat()
    } else {
        parts.join(" ")
    }
}

fn hs_summary(hs: &HsDecomposition) -> HsSummary {
    let dims = hs.shape().dims();
    let terms: Vec<HsTerm> = hs
        .terms()
        .filter(|(_, c)| c.abs() > LISTING_EPS)
        .map(|(idx, c)| HsTerm {
            index: idx.clone(),
            label: term_label(idx, dims),
            coeff: c,
        })
        .collect();
    HsSummary {
        nonzero: terms.len(),
        l1_sum: hs.l1_offidentity(),
        terms,
    }
}

/// Certificate from the family's dedicated construction, when one applies.
fn family_verdict(spec: &StateSpec, rho: &DensityMatrix) -> Result<Option<CriterionVerdict>> {
    let p = spec.signal_weight();
    let cert = match spec.expr {
        StateExpr::TwoParam { r1, r3 } => Some(certify_two_param(p * r1, p * r3)?),
        StateExpr::Braid { n: 3, index: 1 } if p <= 0.2 => Some(certify_braid_mixed(p)?),
        StateExpr::W if p <= 1.0 / 9.0 => Some(certify_w_mixed(p)?),
        _ => None,
    };
    cert.map(|c| CriterionVerdict::certified("family", rho, c)).transpose()
}

fn run(verdicts: &mut Vec<CriterionVerdict>, skipped: &mut Vec<Skipped>, name: &'static str, r: Result<CriterionVerdict>) -> Result<()> {
    match r {
        Ok(v) => verdicts.push(v),
        Err(e @ Error::Internal(_)) => return Err(e),
        Err(e) => skipped.push(Skipped {
            criterion: name,
            reason: e.to_string(),
        }),
    }
    Ok(())
}

/// Runs validation → PPT → Gühne → MDS bound → l₁ → SVD → GHZ-diagonal, plus
/// the family construction when the state came from a named expression.
pub fn analyze(rho: &DensityMatrix, input: &str, family: Option<&StateSpec>, tol: f64) -> Result<AnalysisReport> {
    let shape = rho.shape();
    let hs = decompose(rho)?;
    let spectrum = eig_hermitian(rho.matrix(), tol.max(1e-9))?.values().to_vec();
    let mut verdicts = Vec::new();
    let mut skipped = Vec::new();

    run(&mut verdicts, &mut skipped, "ppt", ppt_verdict(rho, tol))?;
    if shape.dims() == [2, 2, 2] {
        run(&mut verdicts, &mut skipped, "guhne", guhne_necessary(rho, tol))?;
    }
    if flip_pivot(&hs, MDS_TOL).is_some() {
        run(&mut verdicts, &mut skipped, "mds_bound", mds_eigen_bound(rho, tol))?;
    } else {
        skipped.push(Skipped {
            criterion: "mds_bound",
            reason: "every qubit site has identity-at-site terms".into(),
        });
    }
    run(&mut verdicts, &mut skipped, "l1", l1_sufficient(&hs))?;
    run(&mut verdicts, &mut skipped, "svd", svd_sufficient(&hs))?;

    let mut ghz_diag = None;
    match extract_ghz_diag_params(rho, tol) {
        Some(p) if p.windows(2).all(|w| w[0] >= w[1]) => {
            let report = ghz_diag_analysis(&GhzDiagParams::new(p)?, tol)?;
            verdicts.push(report.verdict.clone());
            ghz_diag = Some(report);
        }
        Some(_) => skipped.push(Skipped {
            criterion: "ghz_diag",
            reason: "GHZ-diagonal weights are not in descending order".into(),
        }),
        None => skipped.push(Skipped {
            criterion: "ghz_diag",
            reason: "not GHZ-diagonal".into(),
        }),
    }
    if let Some(spec) = family {
        if let Some(v) = family_verdict(spec, rho)? {
            verdicts.push(v);
        }
    }

    let entangled: Vec<_> = verdicts.iter().filter(|v| v.is_entangled()).map(|v| v.criterion).collect();
    let certified: Vec<_> = verdicts.iter().filter(|v| v.is_certified()).map(|v| v.criterion).collect();
    let (overall, decided_by) = match (entangled.is_empty(), certified.is_empty()) {
        (false, false) => {
            return Err(Error::Internal(format!(
                "criteria disagree: {entangled:?} report entanglement, {certified:?} certify separability"
            )))
        }
        (false, true) => (Outcome::Entangled, entangled),
        (true, false) => (Outcome::SeparableCertified, certified),
        (true, true) => (Outcome::Inconclusive, Vec::new()),
    };

    Ok(AnalysisReport {
        input: input.to_string(),
        shape: shape.dims().to_vec(),
        spectrum,
        is_mds: hs.max_partial_weight() <= MDS_TOL,
        hs: hs_summary(&hs),
        verdicts,
        skipped,
        ghz_diag,
        overall,
        decided_by,
    })
}

/// Rounds to `digits` significant digits; non-finite values pass through.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x, 15))) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with floats rounded to 15 significant digits.
pub fn to_stable_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Entangled => "entangled",
        Outcome::SeparableCertified => "separable (certified)",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::NegativeEigenvalue {
            transform,
            site,
            eigenvalue,
        } => format!("{transform} at site {site}: eigenvalue {eigenvalue:.6}"),
        Witness::Inequality { name, lhs, rhs } => format!("{name} violated: {lhs:.6} > {rhs:.6}"),
    }
}

pub fn render_table(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let shape: Vec<String> = report.shape.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "input     {}", report.input);
    let _ = writeln!(out, "shape     [{}]   mds: {}", shape.join(","), report.is_mds);
    let spec: Vec<String> = report.spectrum.iter().map(|x| format!("{x:.6}")).collect();
    let _ = writeln!(out, "spectrum  {}", spec.join(" "));
    let _ = writeln!(out, "hs        {} terms, l1 = {:.6}", report.hs.nonzero, report.hs.l1_sum);
    let _ = writeln!(out);
    for v in &report.verdicts {
        let _ = write!(out, "{:<10}{}", v.criterion, outcome_word(v.outcome));
        if let Some(w) = &v.witness {
            let _ = write!(out, "  [{}]", witness_text(w));
        }
        if let Some(c) = &v.certificate {
            let _ = write!(out, "  [{} product terms]", c.len());
        }
        let _ = writeln!(out);
    }
    for s in &report.skipped {
        let _ = writeln!(out, "{:<10}skipped: {}", s.criterion, s.reason);
    }
    if let Some(g) = &report.ghz_diag {
        let f = |a: &[f64; 3]| a.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out);
        let _ = writeln!(out, "ghz-diag  ptu min (8ρ) exact   {}", f(&g.ptu_min_exact));
        let _ = writeln!(out, "          ptu min (8ρ) k=0     {}", f(&g.ptu_min_block_formula));
        let _ = writeln!(out, "          p1 <= 1/4: {}   special case: {}", g.p1_at_most_quarter, g.special_case);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "overall   {}", outcome_word(report.overall));
    out
}
