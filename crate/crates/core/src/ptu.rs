//! Partial transpose and the Y-conjugated partial transpose (PTU).
//!
//! On a qubit site, `Y·Aᵀ·Y` sends every Pauli `σ_k` to `−σ_k` and fixes the
//! identity. PTU at a qubit therefore flips the sign of exactly those
//! coefficients that carry a Pauli at that site, and has the same spectrum as
//! the plain partial transpose there.

use crate::bases::pauli;
use crate::error::{Error, Result};
use crate::kernel::{kron, partial_transpose_raw, ComplexMatrix, DensityMatrix, SystemShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformTag {
    PartialTranspose(usize),
    Ptu(usize),
    GlobalTu,
}

/// Output of a transform. Hermitian with unit trace, but possibly not positive.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedMatrix {
    pub matrix: ComplexMatrix,
    pub source_shape: SystemShape,
    pub tag: TransformTag,
}

pub fn partial_transpose(rho: &DensityMatrix, site: usize) -> Result<TransformedMatrix> {
    Ok(TransformedMatrix {
        matrix: partial_transpose_raw(rho.matrix(), rho.shape(), site)?,
        source_shape: rho.shape().clone(),
        tag: TransformTag::PartialTranspose(site),
    })
}

fn y_at(shape: &SystemShape, sites: impl Fn(usize) -> bool) -> Result<ComplexMatrix> {
    let factors = shape
        .dims()
        .iter()
        .enumerate()
        .map(|(k, &d)| if sites(k) { pauli(2) } else { Ok(ComplexMatrix::identity(d)) })
        .collect::<Result<Vec<_>>>()?;
    kron(&factors)
}

/// Partial transpose at `site` followed by conjugation with `σy` at that site.
pub fn ptu_qubit(rho: &DensityMatrix, site: usize) -> Result<TransformedMatrix> {
    let shape = rho.shape();
    shape.require_qubit(site)?;
    let pt = partial_transpose_raw(rho.matrix(), shape, site)?;
    let y = y_at(shape, |k| k == site)?;
    Ok(TransformedMatrix {
        matrix: &(&y * &pt) * &y,
        source_shape: shape.clone(),
        tag: TransformTag::Ptu(site),
    })
}

/// `Y^{⊗n} ρᵀ Y^{⊗n}` for an all-qubit state.
pub fn global_tu(rho: &DensityMatrix) -> Result<TransformedMatrix> {
    let shape = rho.shape();
    if !shape.is_all_qubits() {
        return Err(Error::UnsupportedShape(format!(
            "global TU needs an all-qubit shape, got {shape}"
        )));
    }
    let y = y_at(shape, |_| true)?;
    Ok(TransformedMatrix {
        matrix: &(&y * &rho.matrix().transpose()) * &y,
        source_shape: shape.clone(),
        tag: TransformTag::GlobalTu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hs::{decompose, decompose_matrix, gs_split, reconstruct};
    use crate::kernel::eig_hermitian;
    use crate::states::{four_qubit_xyz, ghz_state, w_state};

    #[test]
    fn ghz_ptu_spectrum() {
        let rho = ghz_state(1).unwrap();
        for site in 0..3 {
            let s = eig_hermitian(&ptu_qubit(&rho, site).unwrap().matrix, 1e-12).unwrap();
            let expected = [-0.5, 0.0, 0.0, 0.0, 0.0, 0.5, 0.5, 0.5];
            for (v, e) in s.values().iter().zip(expected) {
                assert!((v - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ptu_and_pt_share_spectrum() {
        let rho = w_state();
        for site in 0..3 {
            let a = eig_hermitian(&ptu_qubit(&rho, site).unwrap().matrix, 1e-12).unwrap();
            let b = eig_hermitian(&partial_transpose(&rho, site).unwrap().matrix, 1e-12).unwrap();
            assert!(a.max_deviation(&b) < 1e-12);
        }
    }

    // Coefficient route: negate every term with a Pauli at the pivot.
    #[test]
    fn ptu_equals_sign_flip_of_pivot_terms() {
        for rho in [ghz_state(3).unwrap(), w_state(), four_qubit_xyz()] {
            let hs = decompose(&rho).unwrap();
            for site in 0..rho.shape().num_sites() {
                let direct = ptu_qubit(&rho, site).unwrap().matrix;
                let via_hs = reconstruct(&gs_split(&hs, site).unwrap().flipped(rho.shape()));
                assert!(direct.max_abs_diff(&via_hs) < 1e-14);
                let via_g = &gs_split(&hs, site).unwrap().doubled_identity_plus_g(rho.shape()) - rho.matrix();
                assert!(direct.max_abs_diff(&via_g) < 1e-14);
            }
        }
    }

    #[test]
    fn global_tu_flips_every_pauli() {
        let rho = w_state();
        let hs = decompose(&rho).unwrap();
        let out = decompose_matrix(&global_tu(&rho).unwrap().matrix, rho.shape()).unwrap();
        for (idx, c) in hs.terms() {
            let weight = idx.iter().filter(|&&k| k != 0).count() as i32;
            assert!((out.coeff(idx) - c * (-1f64).powi(weight)).abs() < 1e-14);
        }
    }

    #[test]
    fn ptu_rejects_qudit_site() {
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        let rho = DensityMatrix::maximally_mixed(&shape);
        assert!(matches!(ptu_qubit(&rho, 1), Err(Error::NotQubit { .. })));
        assert!(ptu_qubit(&rho, 0).is_ok());
        assert!(partial_transpose(&rho, 1).is_ok());
        assert!(global_tu(&rho).is_err());
    }

    #[test]
    fn transform_preserves_trace() {
        let rho = w_state();
        let t = ptu_qubit(&rho, 1).unwrap();
        assert!((t.matrix.trace().re - 1.0).abs() < 1e-14);
        assert_eq!(t.tag, TransformTag::Ptu(1));
        assert!(t.matrix.hermiticity_defect() < 1e-15);
    }
}
