//! Closed forms for GHZ-diagonal states.
//!
//! The PTU image at each pivot keeps the X-shaped sparsity, so its spectrum
//! splits into four 2×2 blocks. Block `k` at pivot A pairs the coherence
//! `b_k = p_{2k+1} − p_{2k+2}` with the populations `a_{k⊕3}` of the branch it
//! lands on, giving eigenvalues `4(a_{k⊕3} ± b_k)` on the `8ρ` scale; pivot B
//! uses `k⊕2` and pivot C uses `k⊕1`. The formulas usually quoted for this
//! family keep only the `k = 0` block, which is the minimum in common cases
//! but not in general, so both are reported.

use serde::Serialize;

use super::{require_three_qubits, threshold::bisect_threshold, CriterionVerdict, Witness};
use crate::certificates::{certify_ghz_diag_special, certify_l1, is_ghz_diag_special};
use crate::error::{Error, Result};
use crate::hs::HsDecomposition;
use crate::kernel::{eig_hermitian, DensityMatrix, SystemShape};
use crate::ptu::ptu_qubit;
use crate::states::{ghz_diagonal, GhzDiagCoefficients, GhzDiagParams, GHZ_PAIRS};

/// Allowed gap between closed-form and numeric minima before reporting an internal error.
const CROSS_CHECK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GhzDiagReport {
    /// Weights sorted descending.
    pub p: [f64; 8],
    pub permutation: [usize; 8],
    pub coefficients: GhzDiagCoefficients,
    /// Exact minimum PTU eigenvalue per pivot A, B, C on the `8ρ` scale.
    pub ptu_min_exact: [f64; 3],
    /// The single-block formulas `4[p₇+p₈−(p₁−p₂)]`, `4[p₅+p₆−(p₁−p₂)]`, `4[p₃+p₄−(p₁−p₂)]`.
    pub ptu_min_block_formula: [f64; 3],
    /// Numeric eigendecomposition of the PTU matrices on the `8ρ` scale.
    pub ptu_min_numeric: [f64; 3],
    pub l1_sum: f64,
    /// `p₁ ≤ 1/4`. Reported only; it does not by itself certify separability.
    pub p1_at_most_quarter: bool,
    /// `t₃₃ = o₃₃ = p₃₃`.
    pub special_case: bool,
    /// `p₁ − p₂/2 − 1/4` on the special-case line: positive means entangled.
    pub special_case_margin: Option<f64>,
    pub verdict: CriterionVerdict,
}

/// Exact minimum PTU eigenvalue at pivots A, B, C on the `8ρ` scale.
pub fn ptu_block_minima(p: &[f64; 8]) -> [f64; 3] {
    let a: [f64; 4] = std::array::from_fn(|k| p[2 * k] + p[2 * k + 1]);
    let b: [f64; 4] = std::array::from_fn(|k| p[2 * k] - p[2 * k + 1]);
    [3usize, 2, 1].map(|flip| {
        (0..4)
            .map(|k| 4.0 * (a[k ^ flip] - b[k].abs()))
            .fold(f64::INFINITY, f64::min)
    })
}

/// The `k = 0` block only: `4[a_j − (p₁ − p₂)]` with `a_j` the partner populations.
pub fn leading_block_minima(p: &[f64; 8]) -> [f64; 3] {
    let d = p[0] - p[1];
    [4.0 * (p[6] + p[7] - d), 4.0 * (p[4] + p[5] - d), 4.0 * (p[2] + p[3] - d)]
}

fn numeric_minima(rho: &DensityMatrix) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (site, slot) in out.iter_mut().enumerate() {
        *slot = 8.0 * eig_hermitian(&ptu_qubit(rho, site)?.matrix, 1e-9)?.min();
    }
    Ok(out)
}

/// Recovers `p` when `ρ` has the X-shaped GHZ-diagonal pattern, in GHZ variant order.
pub fn extract_ghz_diag_params(rho: &DensityMatrix, tol: f64) -> Option<[f64; 8]> {
    require_three_qubits(rho.shape()).ok()?;
    let m = rho.matrix();
    for i in 0..8 {
        for j in 0..8 {
            if j != i && j != 7 - i && m[(i, j)].norm() > tol {
                return None;
            }
        }
    }
    let mut p = [0.0; 8];
    for (k, &(a, b)) in GHZ_PAIRS.iter().enumerate() {
        let (pop, coh) = (m[(a, a)].re, m[(a, b)]);
        if (pop - m[(b, b)].re).abs() > tol || coh.im.abs() > tol {
            return None;
        }
        p[2 * k] = (pop + coh.re).max(0.0);
        p[2 * k + 1] = (pop - coh.re).max(0.0);
    }
    Some(p)
}

pub fn ghz_diag_analysis(params: &GhzDiagParams, tol: f64) -> Result<GhzDiagReport> {
    let p = *params.p();
    let coefficients = GhzDiagCoefficients::from_params(params);
    let rho = ghz_diagonal(params);
    let exact = ptu_block_minima(&p);
    let numeric = numeric_minima(&rho)?;
    for (site, (e, n)) in exact.iter().zip(&numeric).enumerate() {
        if (e - n).abs() > CROSS_CHECK_TOL {
            return Err(Error::Internal(format!(
                "closed-form PTU minimum {e} at site {site} disagrees with numeric {n}"
            )));
        }
    }
    let special_case = is_ghz_diag_special(&coefficients, tol);
    let special_case_margin = special_case.then(|| p[0] - p[1] / 2.0 - 0.25);
    let l1_sum = coefficients.l1();

    let (site, worst) = exact
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("three pivots");
    let verdict = if worst / 8.0 < -tol {
        CriterionVerdict::entangled(
            "ghz_diag",
            Witness::NegativeEigenvalue {
                transform: "ptu".into(),
                site,
                eigenvalue: worst / 8.0,
            },
        )
    } else if special_case {
        CriterionVerdict::certified("ghz_diag", &rho, certify_ghz_diag_special(params)?)?
    } else if l1_sum <= 1.0 {
        let hs = HsDecomposition::from_terms(
            &SystemShape::qubits(3),
            coefficients.terms().map(|(idx, c)| (idx.to_vec(), c)),
        )?;
        CriterionVerdict::certified("ghz_diag", &rho, certify_l1(&hs)?)?
    } else {
        CriterionVerdict::inconclusive("ghz_diag")
    };
    let verdict = verdict.with("l1_sum", l1_sum).with("p1", p[0]);

    Ok(GhzDiagReport {
        p,
        permutation: *params.permutation(),
        coefficients,
        ptu_min_exact: exact,
        ptu_min_block_formula: leading_block_minima(&p),
        ptu_min_numeric: numeric,
        l1_sum,
        p1_at_most_quarter: p[0] <= 0.25,
        special_case,
        special_case_margin,
        verdict,
    })
}

/// Threshold of the GHZ-with-noise family through `p₁ = (1+7q)/8`.
pub fn ghz_diag_noise_threshold(tol_p: f64, tol: f64) -> Result<Option<f64>> {
    let (threshold, _) = bisect_threshold(
        |q| Ok(ghz_diag_analysis(&GhzDiagParams::ghz_with_noise(q)?, tol)?.verdict.is_entangled()),
        64,
        tol_p,
    )?;
    Ok(threshold)
}
