//! Random states and coefficient tensors for property tests and demos.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bases::ShapeBases;
use crate::error::Result;
use crate::hs::{reconstruct, HsDecomposition, MultiIndex};
use crate::kernel::{eig_hermitian, eigh, validate_density, ComplexMatrix, DensityMatrix, SystemShape, DEFAULT_TOL};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn ginibre<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(gaussian(rng), gaussian(rng)))
}

/// Full-rank density `GG†/tr(GG†)` from a complex Gaussian matrix.
pub fn random_density<R: Rng + ?Sized>(shape: &SystemShape, rng: &mut R) -> DensityMatrix {
    let g = ginibre(shape.total_dim(), rng);
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    validate_density(&m.scale(1.0 / tr), shape, DEFAULT_TOL).expect("Ginibre construction is a density")
}

/// Unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(d, rng);
    let h = &g + &g.adjoint();
    eigh(&h, 1e-9).expect("Hermitian by construction").1
}

/// Random Gaussian coefficients on the given indices, rescaled so `I + R` sits
/// strictly inside the positive cone: `R ← R / (‖R‖·(1+ε))` with `ε ∈ [0.01, 1)`.
fn random_on_indices<R: Rng + ?Sized>(
    shape: &SystemShape,
    indices: Vec<MultiIndex>,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let raw = HsDecomposition::from_terms(shape, indices.into_iter().map(|idx| (idx, gaussian(rng))))?;
    let d = shape.total_dim() as f64;
    // reconstruct gives (I + R)/D, so D·m − I isolates R.
    let r = &reconstruct(&raw).scale(d) - &ComplexMatrix::identity(shape.total_dim());
    let spectrum = eig_hermitian(&r, 1e-9)?;
    let radius = spectrum.min().abs().max(spectrum.max().abs());
    let hs = if radius == 0.0 {
        raw
    } else {
        let eps = rng.random_range(0.01..1.0);
        raw.scaled(1.0 / (radius * (1.0 + eps)))
    };
    validate_density(&reconstruct(&hs), shape, DEFAULT_TOL)
}

/// MDS state: only terms with a generator at every site.
pub fn random_mds<R: Rng + ?Sized>(shape: &SystemShape, rng: &mut R) -> Result<DensityMatrix> {
    let bases = ShapeBases::new(shape)?;
    let indices = bases.all_indices().into_iter().filter(|idx| idx.iter().all(|&k| k != 0)).collect();
    random_on_indices(shape, indices, rng)
}

/// State whose every non-identity term carries a Pauli at `pivot`.
pub fn random_pivot_form<R: Rng + ?Sized>(shape: &SystemShape, pivot: usize, rng: &mut R) -> Result<DensityMatrix> {
    shape.require_qubit(pivot)?;
    let bases = ShapeBases::new(shape)?;
    let indices = bases.all_indices().into_iter().filter(|idx| idx[pivot] != 0).collect();
    random_on_indices(shape, indices, rng)
}

/// Uniform point on the probability simplex.
pub fn random_probabilities<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

/// Sparse random decomposition with `l₁ ≤ 1`; at most `max_terms` non-identity terms.
pub fn random_l1_tensor<R: Rng + ?Sized>(shape: &SystemShape, max_terms: usize, rng: &mut R) -> Result<HsDecomposition> {
    let bases = ShapeBases::new(shape)?;
    let mut pool: Vec<MultiIndex> = bases.all_indices().into_iter().skip(1).collect();
    let count = rng.random_range(1..=max_terms.clamp(1, pool.len()));
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let idx = pool.swap_remove(rng.random_range(0..pool.len()));
        terms.push((idx, gaussian(rng)));
    }
    let l1: f64 = terms.iter().map(|(_, c)| c.abs()).sum();
    let target = rng.random_range(0.0..=1.0);
    HsDecomposition::from_terms(shape, terms.into_iter().map(|(i, c)| (i, c * target / l1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hs::{decompose, is_full_weight_only};
    use crate::states::is_mds;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_density_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        let rho = random_density(&shape, &mut rng);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_mds_is_mds() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for dims in [vec![2, 2, 2], vec![2, 3], vec![2, 2, 2, 2]] {
            let shape = SystemShape::new(dims).unwrap();
            let rho = random_mds(&shape, &mut rng).unwrap();
            assert!(is_mds(&rho, 1e-12));
            assert!(is_full_weight_only(&decompose(&rho).unwrap(), 1e-12));
            assert!(eig_hermitian(rho.matrix(), 1e-12).unwrap().min() > 0.0);
        }
    }

    #[test]
    fn pivot_form_has_empty_g_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shape = SystemShape::new(vec![2, 3]).unwrap();
        let hs = decompose(&random_pivot_form(&shape, 0, &mut rng).unwrap()).unwrap();
        assert!(hs.terms().all(|(idx, _)| idx[0] != 0));
        assert!(random_pivot_form(&shape, 1, &mut rng).is_err());
    }

    #[test]
    fn probabilities_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random_probabilities(8, &mut rng);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(p.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn l1_tensor_respects_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let hs = random_l1_tensor(&SystemShape::qubits(3), 10, &mut rng).unwrap();
            assert!(hs.l1_offidentity() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let u = random_unitary(5, &mut rng);
        assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);
    }
}
