use nalgebra::linalg::{SymmetricEigen, SVD};
use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

pub type RealMatrix = DMatrix<f64>;

/// Real eigenvalues sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.0.last().copied().unwrap_or(f64::NAN)
    }

    /// Largest elementwise gap between two sorted multisets of equal size.
    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: f64) -> Spectrum {
        Spectrum::from_unsorted(self.0.iter().map(|x| x * s).collect())
    }
}

fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<SymmetricEigen<Complex64, nalgebra::Dyn>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(Error::Hermiticity { defect, tol });
    }
    // Symmetrize so roundoff-level anti-Hermitian parts do not leak into the solver.
    let sym = ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    SymmetricEigen::try_new(sym.to_nalgebra(), f64::EPSILON, 0)
        .ok_or_else(|| Error::Internal("Hermitian eigensolver did not converge".into()))
}

pub fn eig_hermitian(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    let eig = hermitian_eigen(m, tol)?;
    Ok(Spectrum::from_unsorted(eig.eigenvalues.iter().copied().collect()))
}

/// Eigenpairs sorted by ascending eigenvalue; column k of the matrix is the k-th eigenvector.
pub fn eigh(m: &ComplexMatrix, tol: f64) -> Result<(Spectrum, ComplexMatrix)> {
    let eig = hermitian_eigen(m, tol)?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let n = m.rows();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((Spectrum(values), vectors))
}

/// Thin SVD: `m = u · diag(singular_values) · vᵀ`, values descending.
#[derive(Clone, Debug)]
pub struct RealSvd {
    pub u: RealMatrix,
    pub singular_values: Vec<f64>,
    pub v: RealMatrix,
}

impl RealSvd {
    pub fn reconstruct(&self) -> RealMatrix {
        let s = RealMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.singular_values.clone()));
        &self.u * s * self.v.transpose()
    }
}

pub fn svd_real(m: &RealMatrix) -> Result<RealSvd> {
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let k = m.nrows().min(m.ncols());
    if k == 0 {
        return Ok(RealSvd {
            u: RealMatrix::zeros(m.nrows(), 0),
            singular_values: vec![],
            v: RealMatrix::zeros(m.ncols(), 0),
        });
    }
    let svd = SVD::try_new(m.clone(), true, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::Internal("SVD did not converge".into()))?;
    let u = svd.u.expect("requested u");
    let v_t = svd.v_t.expect("requested v_t");
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values = order.iter().map(|&i| svd.singular_values[i].max(0.0)).collect();
    let u = RealMatrix::from_fn(m.nrows(), k, |r, c| u[(r, order[c])]);
    let v = RealMatrix::from_fn(m.ncols(), k, |r, c| v_t[(order[c], r)]);
    Ok(RealSvd {
        u,
        singular_values,
        v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::matrix::ComplexMatrix;

    #[test]
    fn diagonal_spectrum() {
        let s = eig_hermitian(&ComplexMatrix::diagonal(&[0.75, 0.25]), 1e-9).unwrap();
        assert_eq!(s.values(), &[0.25, 0.75]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let sx = ComplexMatrix::from_real(&[[0.0, 1.0], [1.0, 0.0]]);
        let s = eig_hermitian(&sx, 1e-9).unwrap();
        assert!((s.values()[0] + 1.0).abs() < 1e-15);
        assert!((s.values()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_square_and_non_hermitian() {
        assert!(matches!(
            eig_hermitian(&ComplexMatrix::zeros(2, 3), 1e-9),
            Err(Error::NotSquare { .. })
        ));
        let m = ComplexMatrix::from_real(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(eig_hermitian(&m, 1e-9), Err(Error::Hermiticity { .. })));
    }

    #[test]
    fn eigh_vectors_diagonalize() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Complex64::new(i as f64, 0.0)
            } else if i < j {
                Complex64::new(0.3, 0.2 * (i + j) as f64)
            } else {
                Complex64::new(0.3, -0.2 * (i + j) as f64)
            }
        });
        let (s, v) = eigh(&m, 1e-12).unwrap();
        let d = &(&v.adjoint() * &m) * &v;
        for i in 0..3 {
            assert!((d[(i, i)].re - s.values()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_simple_cases() {
        let z = svd_real(&RealMatrix::zeros(3, 8)).unwrap();
        assert_eq!(z.singular_values, vec![0.0, 0.0, 0.0]);
        let id = svd_real(&RealMatrix::identity(3, 3)).unwrap();
        for s in &id.singular_values {
            assert!((s - 1.0).abs() < 1e-15);
        }
        let r1 = svd_real(&RealMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.0])).unwrap();
        assert!((r1.singular_values[0] - 2.0).abs() < 1e-15);
        assert!(r1.singular_values[1].abs() < 1e-15);
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        let m = RealMatrix::from_fn(3, 8, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0 + 0.1 * j as f64);
        let svd = svd_real(&m).unwrap();
        assert!((svd.reconstruct() - &m).amax() < 1e-12);
        assert!(svd.singular_values.windows(2).all(|w| w[0] >= w[1]));
        let frob2: f64 = m.iter().map(|x| x * x).sum();
        let s2: f64 = svd.singular_values.iter().map(|x| x * x).sum();
        assert!((frob2 - s2).abs() < 1e-10);
    }

    #[test]
    fn svd_rejects_nan() {
        let m = RealMatrix::from_row_slice(1, 1, &[f64::NAN]);
        assert!(matches!(svd_real(&m), Err(Error::NonFinite)));
    }
}
