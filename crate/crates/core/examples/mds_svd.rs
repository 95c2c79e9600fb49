//! Maximally disordered states: the eigenvalue bound and the SVD-sharpened l1 test.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sepscope::criteria::{l1_sufficient, mds_eigen_bound, svd_sufficient};
use sepscope::hs::{decompose, HsDecomposition};
use sepscope::kernel::{SystemShape, DEFAULT_TOL};
use sepscope::random::random_mds;
use sepscope::states::four_qubit_xyz;

fn main() -> sepscope::Result<()> {
    let v = mds_eigen_bound(&four_qubit_xyz(), DEFAULT_TOL)?;
    println!("XXXX+YYYY+ZZZZ: {:?} {:?}", v.outcome, v.witness);

    // l1 = 1.4 fails, but the Z slice has singular values 0.35·√2 twice, summing below 1.
    let shape = SystemShape::qubits(3);
    let c = 0.35;
    let hs = HsDecomposition::from_terms(
        &shape,
        [(vec![1, 1, 3], c), (vec![1, 2, 3], c), (vec![2, 1, 3], c), (vec![2, 2, 3], -c)],
    )?;
    println!("l1 {:?}, svd {:?}", l1_sufficient(&hs)?.outcome, svd_sufficient(&hs)?.outcome);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dims in [vec![2, 3], vec![2, 2, 2]] {
        let shape = SystemShape::new(dims)?;
        for _ in 0..3 {
            let hs = decompose(&random_mds(&shape, &mut rng)?)?;
            let v = svd_sufficient(&hs)?;
            println!(
                "{shape}: l1 {:.3}  singular sum {:.3}  -> {:?}",
                hs.l1_offidentity(),
                v.diagnostics["singular_value_sum"],
                v.outcome
            );
        }
    }
    Ok(())
}
