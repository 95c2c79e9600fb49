use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::eig_hermitian;
use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Default tolerance for density validation and negativity tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Ordered local dimensions; site 0 is the most significant tensor factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SystemShape(Vec<usize>);

impl SystemShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("no sites".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidShape(format!("local dimension {d} < 2")));
        }
        Ok(Self(dims))
    }

    pub fn qubits(n: usize) -> Self {
        assert!(n >= 1);
        Self(vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn num_sites(&self) -> usize {
        self.0.len()
    }

    pub fn site_dim(&self, site: usize) -> Result<usize> {
        self.0.get(site).copied().ok_or(Error::IndexOutOfRange {
            what: "site",
            index: site,
            limit: self.0.len(),
        })
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_all_qubits(&self) -> bool {
        self.0.iter().all(|&d| d == 2)
    }

    /// Ensures `site` exists and is two-dimensional.
    pub fn require_qubit(&self, site: usize) -> Result<()> {
        let dim = self.site_dim(site)?;
        if dim != 2 {
            return Err(Error::NotQubit { site, dim });
        }
        Ok(())
    }

    /// Row-major stride of each site.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }

    /// Splits a flat basis index into per-site digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            out[k] = index % self.0[k];
            index /= self.0[k];
        }
        out
    }
}

impl TryFrom<Vec<usize>> for SystemShape {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SystemShape> for Vec<usize> {
    fn from(s: SystemShape) -> Self {
        s.0
    }
}

impl fmt::Display for SystemShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    shape: SystemShape,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn maximally_mixed(shape: &SystemShape) -> Self {
        let d = shape.total_dim();
        Self {
            matrix: ComplexMatrix::identity(d).scale(1.0 / d as f64),
            shape: shape.clone(),
        }
    }

    /// Normalized projector onto `psi`.
    pub fn from_pure(psi: &[Complex64], shape: &SystemShape) -> Result<Self> {
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq == 0.0 {
            return Err(Error::Precondition("zero state vector".into()));
        }
        let m = ComplexMatrix::outer(psi).scale(1.0 / norm_sq);
        validate_density(&m, shape, DEFAULT_TOL)
    }

    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }
}

fn check_square_for_shape(m: &ComplexMatrix, shape: &SystemShape) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != shape.total_dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.total_dim(),
            found: m.rows(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Certifies `m` as a density matrix on `shape`.
pub fn validate_density(m: &ComplexMatrix, shape: &SystemShape, tol: f64) -> Result<DensityMatrix> {
    check_square_for_shape(m, shape)?;
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(Error::Hermiticity { defect, tol });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > tol {
        return Err(Error::Trace { trace, tol });
    }
    let spectrum = eig_hermitian(m, tol)?;
    let min_eigenvalue = spectrum.min();
    if min_eigenvalue < -tol {
        return Err(Error::Negativity { min_eigenvalue, tol });
    }
    Ok(DensityMatrix {
        matrix: m.clone(),
        shape: shape.clone(),
    })
}

/// Reduced operator after tracing out `site`.
pub fn partial_trace_site(m: &ComplexMatrix, shape: &SystemShape, site: usize) -> Result<(ComplexMatrix, SystemShape)> {
    check_square_for_shape(m, shape)?;
    let d = shape.site_dim(site)?;
    if shape.num_sites() == 1 {
        return Err(Error::UnsupportedShape("cannot trace out the only site".into()));
    }
    let mut rest = shape.dims().to_vec();
    rest.remove(site);
    let rest = SystemShape::new(rest)?;
    let n = rest.total_dim();
    let stride = shape.strides()[site];
    // full index = hi * (d*stride) + k * stride + lo
    let embed = |r: usize, k: usize| {
        let hi = r / stride;
        let lo = r % stride;
        hi * d * stride + k * stride + lo
    };
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for k in 0..d {
                acc += m[(embed(i, k), embed(j, k))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok((out, rest))
}

/// Transposes the row/column digits belonging to `site` only.
pub fn partial_transpose_raw(m: &ComplexMatrix, shape: &SystemShape, site: usize) -> Result<ComplexMatrix> {
    check_square_for_shape(m, shape)?;
    let d = shape.site_dim(site)?;
    let stride = shape.strides()[site];
    let digit = |x: usize| (x / stride) % d;
    let n = m.rows();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (dr, dc) = (digit(r), digit(c));
        let r2 = r - dr * stride + dc * stride;
        let c2 = c - dc * stride + dr * stride;
        m[(r2, c2)]
    }))
}
