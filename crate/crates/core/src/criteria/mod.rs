//! Entanglement and separability criteria.
//!
//! Every test returns a [`CriterionVerdict`]. An `Entangled` verdict always
//! carries a witness strictly past the tolerance, and a `SeparableCertified`
//! verdict always carries a certificate that has been checked numerically
//! against the state it certifies.

mod ghz_diag;
mod threshold;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::certificates::{
    certify_l1, certify_qubit_qudit_mds, certify_three_qubit_svd, verify_certificate, SeparableDecomposition,
};
use crate::error::{Error, Result};
use crate::hs::{decompose, gs_split, svd_reduce_3q_slices, svd_reduce_qubit_qudit, HsDecomposition, MDS_TOL};
use crate::kernel::{eig_hermitian, validate_density, DensityMatrix, SystemShape};
use crate::ptu::partial_transpose;

pub use ghz_diag::{
    extract_ghz_diag_params, ghz_diag_analysis, ghz_diag_noise_threshold, leading_block_minima, ptu_block_minima,
    GhzDiagReport,
};
pub use threshold::{bisect_threshold, Bisection, noise_threshold, Detector, ScanPoint, ThresholdOptions, ThresholdResult};

/// Certificates are checked against their target at this tolerance.
pub const CERTIFICATE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Entangled,
    SeparableCertified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A transformed matrix with an eigenvalue below `−tol`.
    NegativeEigenvalue { transform: String, site: usize, eigenvalue: f64 },
    /// An inequality `lhs ≤ rhs` required for separability that fails.
    Inequality { name: String, lhs: f64, rhs: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionVerdict {
    pub criterion: &'static str,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub certificate: Option<SeparableDecomposition>,
    pub diagnostics: BTreeMap<String, f64>,
}

impl CriterionVerdict {
    fn new(criterion: &'static str, outcome: Outcome) -> Self {
        Self {
            criterion,
            outcome,
            witness: None,
            certificate: None,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn inconclusive(criterion: &'static str) -> Self {
        Self::new(criterion, Outcome::Inconclusive)
    }

    pub fn entangled(criterion: &'static str, witness: Witness) -> Self {
        Self {
            witness: Some(witness),
            ..Self::new(criterion, Outcome::Entangled)
        }
    }

    /// Checks `cert` against `target`; a failing certificate downgrades the verdict to inconclusive.
    pub fn certified(criterion: &'static str, target: &DensityMatrix, cert: SeparableDecomposition) -> Result<Self> {
        let check = verify_certificate(target, &cert, CERTIFICATE_TOL)?;
        let mut v = if check.valid {
            Self {
                certificate: Some(cert.clone()),
                ..Self::new(criterion, Outcome::SeparableCertified)
            }
        } else {
            Self::inconclusive(criterion)
        };
        v.diagnostics.insert("certificate_terms".into(), cert.len() as f64);
        v.diagnostics.insert("certificate_max_deviation".into(), check.max_deviation);
        Ok(v)
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.into(), value);
        self
    }

    pub fn is_entangled(&self) -> bool {
        self.outcome == Outcome::Entangled
    }

    pub fn is_certified(&self) -> bool {
        self.outcome == Outcome::SeparableCertified
    }
}

/// Minimum eigenvalue of the partial transpose at each site.
pub fn min_pt_eigenvalues(rho: &DensityMatrix, tol: f64) -> Result<Vec<f64>> {
    (0..rho.shape().num_sites())
        .map(|site| Ok(eig_hermitian(&partial_transpose(rho, site)?.matrix, tol.max(1e-9))?.min()))
        .collect()
}

/// Peres–Horodecki test at every single site. Never certifies separability.
pub fn ppt_verdict(rho: &DensityMatrix, tol: f64) -> Result<CriterionVerdict> {
    let mins = min_pt_eigenvalues(rho, tol)?;
    let (site, &worst) = mins
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least one site");
    let mut v = if worst < -tol {
        CriterionVerdict::entangled(
            "ppt",
            Witness::NegativeEigenvalue {
                transform: "partial_transpose".into(),
                site,
                eigenvalue: worst,
            },
        )
    } else {
        CriterionVerdict::inconclusive("ppt")
    };
    for (k, m) in mins.iter().enumerate() {
        v.diagnostics.insert(format!("min_pt_eigenvalue_site_{k}"), *m);
    }
    Ok(v)
}

fn target_of(hs: &HsDecomposition) -> Result<DensityMatrix> {
    validate_density(&hs.reconstruct(), hs.shape(), 1e-9)
}

/// Sum of absolute coefficients at most 1 implies full separability.
pub fn l1_sufficient(hs: &HsDecomposition) -> Result<CriterionVerdict> {
    let l1 = hs.l1_offidentity();
    let v = if l1 <= 1.0 {
        CriterionVerdict::certified("l1", &target_of(hs)?, certify_l1(hs)?)?
    } else {
        CriterionVerdict::inconclusive("l1")
    };
    Ok(v.with("l1_sum", l1))
}

/// SVD-sharpened l₁ test for qubit⊗qudit MDS states and 3-qubit MDS states.
pub fn svd_sufficient(hs: &HsDecomposition) -> Result<CriterionVerdict> {
    let shape = hs.shape();
    if shape.num_sites() == 2 && shape.dims()[0] == 2 {
        let red = svd_reduce_qubit_qudit(hs)?;
        let total = red.total_singular_sum();
        let v = if total <= 1.0 {
            CriterionVerdict::certified("svd", &target_of(hs)?, certify_qubit_qudit_mds(hs, &red)?)?
        } else {
            CriterionVerdict::inconclusive("svd")
        };
        return Ok(v.with("singular_value_sum", total).with("l1_sum", red.total_l1()));
    }
    if shape.dims() == [2, 2, 2] {
        if hs.max_partial_weight() > MDS_TOL {
            return Err(Error::NotMds(format!(
                "coefficient of magnitude {:.3e} outside the triple block",
                hs.max_partial_weight()
            )));
        }
        let reductions = (0..3).map(|p| svd_reduce_3q_slices(hs, p)).collect::<Result<Vec<_>>>()?;
        let (best, red) = reductions
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_singular_sum().total_cmp(&b.1.total_singular_sum()))
            .expect("three pivots");
        let total = red.total_singular_sum();
        let mut v = if total <= 1.0 {
            CriterionVerdict::certified("svd", &target_of(hs)?, certify_three_qubit_svd(hs, red)?)?
        } else {
            CriterionVerdict::inconclusive("svd")
        };
        for (p, r) in reductions.iter().enumerate() {
            v.diagnostics.insert(format!("singular_value_sum_pivot_{p}"), r.total_singular_sum());
        }
        return Ok(v.with("best_pivot", best as f64).with("singular_value_sum", total));
    }
    Err(Error::UnsupportedShape(format!(
        "SVD criterion needs a qubit⊗qudit or 3-qubit MDS state, got {shape}"
    )))
}

/// First qubit site whose identity-at-site block is empty, if any.
///
/// At such a pivot `ρ(PTU) = 2I/D − ρ`, so an eigenvalue of `ρ` above `2/D`
/// forces a negative PTU eigenvalue.
pub fn flip_pivot(hs: &HsDecomposition, tol: f64) -> Option<usize> {
    let shape = hs.shape();
    (0..shape.num_sites()).find(|&site| {
        shape.require_qubit(site).is_ok()
            && gs_split(hs, site)
                .map(|s| s.g_part.values().all(|c| c.abs() <= tol))
                .unwrap_or(false)
    })
}

/// Largest eigenvalue of `ρ` against `2/D` (`1/d` for qubit⊗qudit, `1/2^{n−1}` for n qubits).
pub fn mds_eigen_bound(rho: &DensityMatrix, tol: f64) -> Result<CriterionVerdict> {
    let hs = decompose(rho)?;
    let pivot = flip_pivot(&hs, MDS_TOL).ok_or_else(|| {
        Error::NotMds("no qubit site carries a Pauli in every non-identity term".into())
    })?;
    let bound = 2.0 / rho.dim() as f64;
    let lambda_max = eig_hermitian(rho.matrix(), tol.max(1e-9))?.max();
    let v = if lambda_max > bound + tol {
        CriterionVerdict::entangled(
            "mds_bound",
            Witness::Inequality {
                name: "max eigenvalue <= 2/D".into(),
                lhs: lambda_max,
                rhs: bound,
            },
        )
    } else {
        CriterionVerdict::inconclusive("mds_bound")
    };
    Ok(v.with("max_eigenvalue", lambda_max).with("bound", bound).with("pivot", pivot as f64))
}

/// `|ρ₁₈| ≤ (ρ₂₂ρ₃₃ρ₄₄ρ₅₅ρ₆₆ρ₇₇)^{1/6}`, necessary for full separability of three qubits.
pub fn guhne_necessary(rho: &DensityMatrix, tol: f64) -> Result<CriterionVerdict> {
    if rho.shape().dims() != [2, 2, 2] {
        return Err(Error::UnsupportedShape(format!(
            "Gühne inequality needs three qubits, got {}",
            rho.shape()
        )));
    }
    let (lhs, rhs) = guhne_sides(rho);
    let v = if lhs - rhs > tol {
        CriterionVerdict::entangled(
            "guhne",
            Witness::Inequality {
                name: "|rho_18| <= (rho_22...rho_77)^(1/6)".into(),
                lhs,
                rhs,
            },
        )
    } else {
        CriterionVerdict::inconclusive("guhne")
    };
    Ok(v.with("lhs", lhs).with("rhs", rhs))
}

pub(crate) fn guhne_sides(rho: &DensityMatrix) -> (f64, f64) {
    let m = rho.matrix();
    let lhs = m[(0, 7)].norm();
    let product: f64 = (1..7).map(|i| m[(i, i)].re.max(0.0)).product();
    (lhs, product.powf(1.0 / 6.0))
}

/// Shape check shared by callers that only accept three qubits.
pub(crate) fn require_three_qubits(shape: &SystemShape) -> Result<()> {
    if shape.dims() != [2, 2, 2] {
        return Err(Error::UnsupportedShape(format!("expected three qubits, got {shape}")));
    }
    Ok(())
}
