//! White-noise robustness thresholds by scan plus bisection.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{guhne_sides, min_pt_eigenvalues, require_three_qubits};
use crate::error::{Error, Result};
use crate::kernel::{DensityMatrix, DEFAULT_TOL};
use crate::states::{mix_white_noise, MixtureParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Detector {
    Ppt,
    Guhne,
}

impl Detector {
    pub fn id(self) -> &'static str {
        match self {
            Detector::Ppt => "ppt",
            Detector::Guhne => "guhne",
        }
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Detector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ppt" => Ok(Detector::Ppt),
            "guhne" => Ok(Detector::Guhne),
            other => Err(Error::Parse(format!("unknown detector '{other}' (expected ppt or guhne)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdOptions {
    pub tol_p: f64,
    /// Negativity floor used by the detector.
    pub tol: f64,
    pub scan_points: usize,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self {
            tol_p: 1e-6,
            tol: DEFAULT_TOL,
            scan_points: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub p: f64,
    pub min_pt_eigenvalues: Vec<f64>,
    pub fires: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub detector: Detector,
    /// `None` when the detector never fires on `[0, 1]`.
    pub threshold: Option<f64>,
    pub tol_p: f64,
    pub scan: Vec<ScanPoint>,
}

/// Threshold (if any) and the `(p, fires)` scan.
pub type Bisection = (Option<f64>, Vec<(f64, bool)>);

/// Scans `scan_points` evenly spaced weights in `[0, 1]`, checks that the
/// firing set is an upper interval, then bisects the first sign change.
pub fn bisect_threshold(
    mut fires: impl FnMut(f64) -> Result<bool>,
    scan_points: usize,
    tol_p: f64,
) -> Result<Bisection> {
    let n = scan_points.max(2);
    let grid: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
    let scan = grid.iter().map(|&p| Ok((p, fires(p)?))).collect::<Result<Vec<_>>>()?;
    let first = match scan.iter().position(|&(_, f)| f) {
        None => return Ok((None, scan)),
        Some(i) => i,
    };
    if let Some(&(p, _)) = scan[first..].iter().find(|&&(_, f)| !f) {
        return Err(Error::NonMonotone(format!(
            "fires at p = {} but not at p = {p}",
            scan[first].0
        )));
    }
    if first == 0 {
        return Ok((Some(0.0), scan));
    }
    let (mut lo, mut hi) = (scan[first - 1].0, scan[first].0);
    while hi - lo > tol_p {
        let mid = 0.5 * (lo + hi);
        if fires(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((Some(0.5 * (lo + hi)), scan))
}

/// Smallest white-noise weight above which `detector` reports entanglement.
pub fn noise_threshold(rho: &DensityMatrix, detector: Detector, opts: ThresholdOptions) -> Result<ThresholdResult> {
    if detector == Detector::Guhne {
        require_three_qubits(rho.shape())?;
    }
    let fires = |p: f64| -> Result<(bool, Vec<f64>)> {
        let mixed = mix_white_noise(rho, MixtureParams::new(p.clamp(0.0, 1.0))?);
        let mins = min_pt_eigenvalues(&mixed, opts.tol)?;
        let hit = match detector {
            Detector::Ppt => mins.iter().any(|&m| m < -opts.tol),
            Detector::Guhne => {
                let (lhs, rhs) = guhne_sides(&mixed);
                lhs - rhs > opts.tol
            }
        };
        Ok((hit, mins))
    };
    let mut table = Vec::new();
    let (threshold, _) = bisect_threshold(
        |p| {
            let (hit, mins) = fires(p)?;
            if table.len() < opts.scan_points.max(2) {
                table.push(ScanPoint {
                    p,
                    min_pt_eigenvalues: mins,
                    fires: hit,
                });
            }
            Ok(hit)
        },
        opts.scan_points,
        opts.tol_p,
    )?;
    Ok(ThresholdResult {
        detector,
        threshold,
        tol_p: opts.tol_p,
        scan: table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::SystemShape;
    use crate::states::{braid_state, ghz_state, w_state};

    #[test]
    fn ppt_thresholds() {
        let opts = ThresholdOptions::default();
        let ghz = noise_threshold(&ghz_state(1).unwrap(), Detector::Ppt, opts).unwrap();
        assert!((ghz.threshold.unwrap() - 0.2).abs() < 1e-6);
        assert_eq!(ghz.scan.len(), 64);
        let b1 = noise_threshold(&braid_state(3, 1).unwrap(), Detector::Ppt, opts).unwrap();
        assert!((b1.threshold.unwrap() - 0.2).abs() < 1e-6);
        let w = noise_threshold(&w_state(), Detector::Ppt, opts).unwrap();
        let expected = 3.0 / (3.0 + 8.0 * 2f64.sqrt());
        assert!((w.threshold.unwrap() - expected).abs() < 1e-6);
    }

    #[test]
    fn never_fires_gives_sentinel() {
        let mm = DensityMatrix::maximally_mixed(&SystemShape::qubits(2));
        let r = noise_threshold(&mm, Detector::Ppt, ThresholdOptions::default()).unwrap();
        assert_eq!(r.threshold, None);
    }

    #[test]
    fn non_monotone_detector_is_rejected() {
        let r = bisect_threshold(|p| Ok((0.3..0.6).contains(&p)), 64, 1e-6);
        assert!(matches!(r, Err(Error::NonMonotone(_))));
    }

    #[test]
    fn detector_parsing() {
        assert_eq!("ppt".parse::<Detector>().unwrap(), Detector::Ppt);
        assert!("foo".parse::<Detector>().is_err());
    }

    #[test]
    fn guhne_threshold_on_ghz() {
        // |ρ₁₈| = p/2 against (1−p)/8: fires above 1/5 as well.
        let r = noise_threshold(&ghz_state(1).unwrap(), Detector::Guhne, ThresholdOptions::default()).unwrap();
        assert!((r.threshold.unwrap() - 0.2).abs() < 1e-6);
    }
}
