//! File formats and the state expression grammar.
//!
//! Matrices are JSON objects `{"shape": [2,2,2], "matrix": [[[re, im], …], …]}`.
//! Certificates are `{"shape": […], "terms": [{"weight": w, "factors": [matrix, …]}]}`
//! with each factor in the same row-of-pairs layout.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::certificates::{ProductTerm, SeparableDecomposition};
use crate::error::{Error, Result};
use crate::kernel::{validate_density, ComplexMatrix, DensityMatrix, SystemShape, DEFAULT_TOL};
use crate::states::{
    braid_state, four_qubit_xyz, ghz_diagonal, ghz_state, mix_white_noise, two_param, w_state, GhzDiagParams,
    MixtureParams,
};

/// Environment variable that overrides the default tolerance.
pub const TOL_ENV: &str = "SEPSCOPE_TOL";

/// `SEPSCOPE_TOL` if set, otherwise the kernel default.
pub fn tolerance_from_env() -> Result<f64> {
    match std::env::var(TOL_ENV) {
        Ok(s) => parse_tolerance(&s),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

pub fn parse_tolerance(s: &str) -> Result<f64> {
    let tol: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("tolerance '{s}' is not a number")))?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Parse(format!("tolerance must be positive, got {s}")));
    }
    Ok(tol)
}

type Rows = Vec<Vec<[f64; 2]>>;

fn to_rows(m: &ComplexMatrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn from_rows(rows: &Rows) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    shape: Vec<usize>,
    matrix: Rows,
}

pub fn matrix_to_json(m: &ComplexMatrix, shape: &SystemShape) -> Result<String> {
    let file = MatrixFile {
        shape: shape.dims().to_vec(),
        matrix: to_rows(m),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Parses and validates a density matrix document.
pub fn density_from_json(text: &str, tol: f64) -> Result<DensityMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix file: {e}")))?;
    let shape = SystemShape::new(file.shape)?;
    validate_density(&from_rows(&file.matrix)?, &shape, tol)
}

pub fn load_density(path: &Path, tol: f64) -> Result<DensityMatrix> {
    density_from_json(&std::fs::read_to_string(path)?, tol)
}

pub fn save_density(path: &Path, rho: &DensityMatrix) -> Result<()> {
    std::fs::write(path, matrix_to_json(rho.matrix(), rho.shape())? + "\n")?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    weight: f64,
    factors: Vec<Rows>,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    shape: Vec<usize>,
    terms: Vec<TermFile>,
}

pub fn certificate_to_json(cert: &SeparableDecomposition) -> Result<String> {
    let file = CertificateFile {
        shape: cert.shape.dims().to_vec(),
        terms: cert
            .terms
            .iter()
            .map(|t| TermFile {
                weight: t.weight,
                factors: t.factors.iter().map(to_rows).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn certificate_from_json(text: &str) -> Result<SeparableDecomposition> {
    let file: CertificateFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate file: {e}")))?;
    let terms = file
        .terms
        .iter()
        .map(|t| {
            Ok(ProductTerm {
                weight: t.weight,
                factors: t.factors.iter().map(from_rows).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SeparableDecomposition {
        shape: SystemShape::new(file.shape)?,
        terms,
    })
}

pub fn load_certificate(path: &Path) -> Result<SeparableDecomposition> {
    certificate_from_json(&std::fs::read_to_string(path)?)
}

pub fn save_certificate(path: &Path, cert: &SeparableDecomposition) -> Result<()> {
    std::fs::write(path, certificate_to_json(cert)? + "\n")?;
    Ok(())
}

/// A named state family with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum StateExpr {
    Ghz(usize),
    W,
    Braid { n: usize, index: usize },
    GhzDiag([f64; 8]),
    TwoParam { r1: f64, r3: f64 },
    FourQubitXyz,
}

impl StateExpr {
    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            StateExpr::Ghz(v) => ghz_state(v),
            StateExpr::W => Ok(w_state()),
            StateExpr::Braid { n, index } => braid_state(n, index),
            StateExpr::GhzDiag(p) => Ok(ghz_diagonal(&GhzDiagParams::new(p)?)),
            StateExpr::TwoParam { r1, r3 } => two_param(r1, r3),
            StateExpr::FourQubitXyz => Ok(four_qubit_xyz()),
        }
    }
}

fn numbers(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split([',', ':'])
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("{what}: '{t}' is not a number")))
        })
        .collect()
}

fn integer(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: '{s}' is not a non-negative integer")))
}

impl FromStr for StateExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let need = |what: &str| rest.ok_or_else(|| Error::Parse(format!("'{head}' needs parameters: {what}")));
        match head {
            "ghz" => Ok(StateExpr::Ghz(integer(need("ghz:<1-8>")?, "ghz variant")?)),
            "w" if rest.is_none() => Ok(StateExpr::W),
            "four_qubit_xyz" if rest.is_none() => Ok(StateExpr::FourQubitXyz),
            "braid" => {
                let (n, i) = need("braid:<n>:<i>")?
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("braid expects braid:<n>:<i>".into()))?;
                Ok(StateExpr::Braid {
                    n: integer(n, "braid qubit count")?,
                    index: integer(i, "braid basis index")?,
                })
            }
            "ghzdiag" => {
                let p = numbers(need("ghzdiag:p1,...,p8")?, "ghzdiag")?;
                let arr: [f64; 8] = p
                    .try_into()
                    .map_err(|v: Vec<f64>| Error::Parse(format!("ghzdiag expects 8 weights, got {}", v.len())))?;
                Ok(StateExpr::GhzDiag(arr))
            }
            "two_param" => match numbers(need("two_param:R1,R3")?, "two_param")?.as_slice() {
                &[r1, r3] => Ok(StateExpr::TwoParam { r1, r3 }),
                other => Err(Error::Parse(format!("two_param expects 2 numbers, got {}", other.len()))),
            },
            _ => Err(Error::Parse(format!("unknown state expression '{s}'"))),
        }
    }
}

impl fmt::Display for StateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateExpr::Ghz(v) => write!(f, "ghz:{v}"),
            StateExpr::W => write!(f, "w"),
            StateExpr::Braid { n, index } => write!(f, "braid:{n}:{index}"),
            StateExpr::GhzDiag(p) => {
                let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "ghzdiag:{}", parts.join(","))
            }
            StateExpr::TwoParam { r1, r3 } => write!(f, "two_param:{r1},{r3}"),
            StateExpr::FourQubitXyz => write!(f, "four_qubit_xyz"),
        }
    }
}

/// A state expression optionally mixed with white noise.
#[derive(Clone, Debug, PartialEq)]
pub struct StateSpec {
    pub expr: StateExpr,
    /// Signal weight `p` in `p·ρ + (1−p)·I/D`.
    pub noise: Option<f64>,
}

impl StateSpec {
    pub fn parse(expr: &str, noise: Option<f64>) -> Result<Self> {
        Ok(Self {
            expr: expr.parse()?,
            noise,
        })
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        apply_noise(self.expr.build()?, self.noise)
    }

    /// Signal weight, 1 when no noise is applied.
    pub fn signal_weight(&self) -> f64 {
        self.noise.unwrap_or(1.0)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.noise {
            Some(p) => write!(f, "{} --noise {p}", self.expr),
            None => write!(f, "{}", self.expr),
        }
    }
}

pub fn apply_noise(rho: DensityMatrix, noise: Option<f64>) -> Result<DensityMatrix> {
    match noise {
        Some(p) => Ok(mix_white_noise(&rho, MixtureParams::new(p)?)),
        None => Ok(rho),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{certify_two_param, verify_certificate};

    #[test]
    fn parse_expressions() {
        assert_eq!("ghz:3".parse::<StateExpr>().unwrap(), StateExpr::Ghz(3));
        assert_eq!("w".parse::<StateExpr>().unwrap(), StateExpr::W);
        assert_eq!(
            "braid:3:1".parse::<StateExpr>().unwrap(),
            StateExpr::Braid { n: 3, index: 1 }
        );
        assert_eq!(
            "two_param:0.3,0.4".parse::<StateExpr>().unwrap(),
            StateExpr::TwoParam { r1: 0.3, r3: 0.4 }
        );
        assert_eq!(
            "two_param:0:0".parse::<StateExpr>().unwrap(),
            StateExpr::TwoParam { r1: 0.0, r3: 0.0 }
        );
        assert!(matches!(
            "ghzdiag:0.5,0.1,0.1,0.1,0.1,0.1,0,0".parse::<StateExpr>().unwrap(),
            StateExpr::GhzDiag(_)
        ));
        assert_eq!("four_qubit_xyz".parse::<StateExpr>().unwrap(), StateExpr::FourQubitXyz);
        for bad in ["ghz", "ghz:x", "braid:3", "ghzdiag:0.5,0.5", "two_param:1", "bell", "w:1"] {
            assert!(matches!(bad.parse::<StateExpr>(), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn expression_display_roundtrip() {
        for s in ["ghz:2", "w", "braid:4:3", "two_param:0.6,0.8", "four_qubit_xyz"] {
            assert_eq!(s.parse::<StateExpr>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn matrix_json_roundtrip() {
        let rho = ghz_state(2).unwrap();
        let text = matrix_to_json(rho.matrix(), rho.shape()).unwrap();
        let back = density_from_json(&text, 1e-9).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn matrix_json_errors() {
        assert!(matches!(density_from_json("{", 1e-9), Err(Error::Parse(_))));
        let bad = r#"{"shape":[2],"matrix":[[[2,0],[0,0]],[[0,0],[0,0]]]}"#;
        assert!(matches!(density_from_json(bad, 1e-9), Err(Error::Trace { .. })));
        let ragged = r#"{"shape":[2],"matrix":[[[1,0]],[[0,0],[0,0]]]}"#;
        assert!(density_from_json(ragged, 1e-9).is_err());
    }

    #[test]
    fn certificate_json_roundtrip() {
        let cert = certify_two_param(0.6, 0.8).unwrap();
        let back = certificate_from_json(&certificate_to_json(&cert).unwrap()).unwrap();
        assert_eq!(back, cert);
        let check = verify_certificate(&two_param(0.6, 0.8).unwrap(), &back, 1e-10).unwrap();
        assert!(check.valid);
    }

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("1e-6").unwrap(), 1e-6);
        assert!(parse_tolerance("-1").is_err());
        assert!(parse_tolerance("abc").is_err());
    }

    #[test]
    fn noise_wrapping() {
        let spec = StateSpec::parse("ghz:1", Some(0.3)).unwrap();
        let rho = spec.build().unwrap();
        assert!((rho.matrix()[(0, 7)].re - 0.15).abs() < 1e-15);
        assert_eq!(spec.to_string(), "ghz:1 --noise 0.3");
        assert!(StateSpec::parse("ghz:1", Some(1.5)).unwrap().build().is_err());
    }
}
