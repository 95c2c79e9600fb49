use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use sepscope::certificates::{certify_l1, verify_certificate};
use sepscope::criteria::{bisect_threshold, ptu_block_minima};
use sepscope::hs::{decompose, reconstruct, svd_reduce_3q_slices, svd_reduce_qubit_qudit};
use sepscope::kernel::{eig_hermitian, eigh, kron, svd_real, validate_density, ComplexMatrix, RealMatrix, SystemShape};
use sepscope::ptu::{global_tu, partial_transpose, ptu_qubit};
use sepscope::random::{random_density, random_l1_tensor, random_mds, random_probabilities, random_unitary};
use sepscope::report::round_sig;
use sepscope::states::{ghz_diagonal, GhzDiagCoefficients, GhzDiagParams};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn spectrum(m: &ComplexMatrix) -> Vec<f64> {
    eig_hermitian(m, 1e-9).unwrap().values().to_vec()
}

fn gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn shape_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop_oneof![
        Just(vec![2, 2]),
        Just(vec![2, 2, 2]),
        Just(vec![2, 3]),
        Just(vec![3, 2]),
        Just(vec![2, 4]),
        Just(vec![2, 2, 2, 2]),
    ]
}

fn gaussian_matrix(n: usize, r: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        num_complex::Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hs_round_trip(seed in any::<u64>(), dims in shape_strategy()) {
        let shape = SystemShape::new(dims).unwrap();
        let rho = random_density(&shape, &mut rng(seed));
        prop_assert!(reconstruct(&decompose(&rho).unwrap()).max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn kron_is_associative(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, c in 1usize..3) {
        let mut r = rng(seed);
        let (x, y, z) = (gaussian_matrix(a, &mut r), gaussian_matrix(b, &mut r), gaussian_matrix(c, &mut r));
        let left = kron(&[kron(&[x.clone(), y.clone()]).unwrap(), z.clone()]).unwrap();
        let right = kron(&[x, kron(&[y, z]).unwrap()]).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn eigh_recovers_conjugated_diagonal(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let mut d: Vec<f64> = (0..n).map(|_| r.random_range(-2.0..2.0)).collect();
        let u = random_unitary(n, &mut r);
        let m = &(&u * &ComplexMatrix::diagonal(&d)) * &u.adjoint();
        let (spec, vecs) = eigh(&m, 1e-9).unwrap();
        d.sort_by(f64::total_cmp);
        prop_assert!(gap(spec.values(), &d) < 1e-10);
        let back = &(&vecs * &ComplexMatrix::diagonal(spec.values())) * &vecs.adjoint();
        prop_assert!(back.max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn svd_reconstructs_and_preserves_frobenius(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let mut r = rng(seed);
        let m = RealMatrix::from_fn(rows, cols, |_, _| r.sample(StandardNormal));
        let svd = svd_real(&m).unwrap();
        prop_assert!((svd.reconstruct() - &m).amax() < 1e-12);
        let fro: f64 = svd.singular_values.iter().map(|s| s * s).sum::<f64>();
        prop_assert!((fro - m.norm_squared()).abs() < 1e-10);
        prop_assert!(svd.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn ptu_and_pt_share_spectrum(seed in any::<u64>(), dims in shape_strategy()) {
        let shape = SystemShape::new(dims).unwrap();
        let rho = random_density(&shape, &mut rng(seed));
        for site in 0..shape.num_sites() {
            if shape.require_qubit(site).is_err() {
                prop_assert!(ptu_qubit(&rho, site).is_err());
                continue;
            }
            let a = spectrum(&ptu_qubit(&rho, site).unwrap().matrix);
            let b = spectrum(&partial_transpose(&rho, site).unwrap().matrix);
            prop_assert!(gap(&a, &b) < 1e-10);
        }
    }

    #[test]
    fn odd_mds_ptu_is_isospectral(seed in any::<u64>(), n in prop_oneof![Just(3usize), Just(5usize)]) {
        let shape = SystemShape::qubits(n);
        let rho = random_mds(&shape, &mut rng(seed)).unwrap();
        let base = spectrum(rho.matrix());
        let ptu = spectrum(&ptu_qubit(&rho, 0).unwrap().matrix);
        prop_assert!(gap(&base, &ptu) < 1e-10);
        // For odd n the global TU of an MDS state flips every term, so ρ^tu = 2I/D − ρ.
        let tu = global_tu(&rho).unwrap().matrix;
        let d = shape.total_dim() as f64;
        let flipped = &ComplexMatrix::identity(shape.total_dim()).scale(2.0 / d) - rho.matrix();
        prop_assert!(tu.max_abs_diff(&flipped) < 1e-12);
    }

    #[test]
    fn qubit_qudit_mds_flip(seed in any::<u64>(), d in 2usize..6) {
        let shape = SystemShape::new(vec![2, d]).unwrap();
        let rho = random_mds(&shape, &mut rng(seed)).unwrap();
        let ptu = spectrum(&ptu_qubit(&rho, 0).unwrap().matrix);
        let mut flipped: Vec<f64> = spectrum(rho.matrix()).iter().map(|x| 1.0 / d as f64 - x).collect();
        flipped.sort_by(f64::total_cmp);
        prop_assert!(gap(&ptu, &flipped) < 1e-10);
    }

    #[test]
    fn singular_sums_never_exceed_l1(seed in any::<u64>(), d in 2usize..5) {
        let mut r = rng(seed);
        let hs = decompose(&random_mds(&SystemShape::new(vec![2, d]).unwrap(), &mut r).unwrap()).unwrap();
        let red = svd_reduce_qubit_qudit(&hs).unwrap();
        prop_assert!(red.total_singular_sum() <= red.total_l1() + 1e-12);
        let hs = decompose(&random_mds(&SystemShape::qubits(3), &mut r).unwrap()).unwrap();
        for pivot in 0..3 {
            let red = svd_reduce_3q_slices(&hs, pivot).unwrap();
            prop_assert!(red.total_singular_sum() <= red.total_l1() + 1e-12);
        }
    }

    #[test]
    fn ghz_diag_coefficients_match_decomposition(seed in any::<u64>()) {
        let params = GhzDiagParams::from_slice(&random_probabilities(8, &mut rng(seed))).unwrap();
        let hs = decompose(&ghz_diagonal(&params)).unwrap();
        let coeffs = GhzDiagCoefficients::from_params(&params);
        for (idx, c) in coeffs.terms() {
            prop_assert!((hs.coeff(&idx) - c).abs() < 1e-12);
        }
        prop_assert!((hs.l1_offidentity() - coeffs.l1()).abs() < 1e-12);
    }

    #[test]
    fn ghz_diag_exact_minima_match_numeric(seed in any::<u64>()) {
        let params = GhzDiagParams::from_slice(&random_probabilities(8, &mut rng(seed))).unwrap();
        let rho = ghz_diagonal(&params);
        let exact = ptu_block_minima(params.p());
        for (site, e) in exact.iter().enumerate() {
            let numeric = 8.0 * eig_hermitian(&ptu_qubit(&rho, site).unwrap().matrix, 1e-9).unwrap().min();
            prop_assert!((e - numeric).abs() < 1e-10);
        }
    }

    #[test]
    fn l1_certificates_verify_with_expected_term_count(seed in any::<u64>(), dims in shape_strategy()) {
        let shape = SystemShape::new(dims).unwrap();
        let hs = random_l1_tensor(&shape, 5, &mut rng(seed)).unwrap();
        let target = validate_density(&hs.reconstruct(), &shape, 1e-9).unwrap();
        let cert = certify_l1(&hs).unwrap();
        let expected: usize = hs
            .terms()
            .filter(|(_, c)| *c != 0.0)
            .map(|(idx, _)| 1usize << (idx.iter().filter(|&&k| k != 0).count() - 1))
            .sum::<usize>()
            + 1;
        prop_assert_eq!(cert.len(), expected);
        prop_assert!(verify_certificate(&target, &cert, 1e-10).unwrap().valid);
    }

    #[test]
    fn bisection_finds_a_step(step in 0.001f64..0.999) {
        let (t, _) = bisect_threshold(|p| Ok(p > step), 64, 1e-6).unwrap();
        prop_assert!((t.unwrap() - step).abs() <= 1e-6);
    }

    #[test]
    fn rounding_is_idempotent(x in any::<f64>()) {
        let once = round_sig(x, 15);
        prop_assert_eq!(round_sig(once, 15).to_bits(), once.to_bits());
    }
}
