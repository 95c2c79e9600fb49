//! Braid-group states from the Yang–Baxter gate.

use sepscope::certificates::{certify_braid_mixed, verify_certificate};
use sepscope::kernel::{eig_hermitian, DEFAULT_TOL};
use sepscope::ptu::ptu_qubit;
use sepscope::states::{braid_generator, braid_state, mix_white_noise, MixtureParams};

fn main() -> sepscope::Result<()> {
    let g1 = braid_generator(3, 1)?;
    let g2 = braid_generator(3, 2)?;
    let lhs = &(&g1 * &g2) * &g1;
    let rhs = &(&g2 * &g1) * &g2;
    println!("g1 g2 g1 - g2 g1 g2: {:.1e}", lhs.max_abs_diff(&rhs));

    let b1 = braid_state(3, 1)?;
    let m = b1.matrix().scale(8.0);
    println!("8ρ(B1):");
    for i in 0..8 {
        let row: Vec<String> = m.row(i).iter().map(|z| format!("{:>3}", z.re)).collect();
        println!("  {}", row.join(" "));
    }
    let spec = eig_hermitian(&ptu_qubit(&b1, 0)?.matrix, DEFAULT_TOL)?;
    println!("PTU spectrum {:?}", spec.values());

    for p in [0.1, 0.2] {
        let cert = certify_braid_mixed(p)?;
        let target = mix_white_noise(&b1, MixtureParams::new(p)?);
        let check = verify_certificate(&target, &cert, 1e-10)?;
        println!("p = {p}: {} product terms, valid = {}", cert.len(), check.valid);
    }
    Ok(())
}
