//! Hilbert–Schmidt coefficients of a few states, and the round trip back.

use sepscope::hs::{decompose, reconstruct};
use sepscope::kernel::{DensityMatrix, SystemShape};
use sepscope::random::random_density;
use sepscope::report::term_label;
use sepscope::states::{four_qubit_xyz, ghz_state, w_state};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(name: &str, rho: &DensityMatrix) -> sepscope::Result<()> {
    let hs = decompose(rho)?;
    let dims = rho.shape().dims();
    println!("{name}: {} nonzero terms, l1 = {:.4}", hs.nonzero_count(), hs.l1_offidentity());
    for (idx, c) in hs.terms().filter(|(_, c)| c.abs() > 1e-12) {
        println!("  {:>6} {c:+.4}", term_label(idx, dims));
    }
    Ok(())
}

fn main() -> sepscope::Result<()> {
    show("GHZ", &ghz_state(1)?)?;
    show("W", &w_state())?;
    show("XXXX+YYYY+ZZZZ", &four_qubit_xyz())?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shape = SystemShape::new(vec![2, 3])?;
    let rho = random_density(&shape, &mut rng);
    let back = reconstruct(&decompose(&rho)?);
    println!("qubit⊗qutrit round trip error: {:.2e}", back.max_abs_diff(rho.matrix()));
    Ok(())
}
