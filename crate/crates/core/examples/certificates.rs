//! Building, checking and saving explicit separable decompositions.

use sepscope::certificates::{certify_l1, certify_two_param, verify_certificate};
use sepscope::hs::HsDecomposition;
use sepscope::io::{certificate_to_json, certificate_from_json};
use sepscope::kernel::SystemShape;
use sepscope::states::two_param;

fn main() -> sepscope::Result<()> {
    let cert = certify_two_param(0.6, 0.8)?;
    let check = verify_certificate(&two_param(0.6, 0.8)?, &cert, 1e-10)?;
    println!("two_param(0.6, 0.8): {} terms, valid = {}", cert.len(), check.valid);

    let shape = SystemShape::qubits(3);
    let hs = HsDecomposition::from_terms(&shape, [(vec![1, 1, 1], 0.4), (vec![3, 0, 3], -0.3), (vec![0, 2, 0], 0.2)])?;
    let cert = certify_l1(&hs)?;
    let target = sepscope::kernel::validate_density(&hs.reconstruct(), &shape, 1e-12)?;
    let check = verify_certificate(&target, &cert, 1e-10)?;
    println!("l1 = 0.9: {} terms (4 + 2 + 1 + remainder), valid = {}", cert.len(), check.valid);

    let json = certificate_to_json(&cert)?;
    let back = certificate_from_json(&json)?;
    println!("json round trip valid = {}", verify_certificate(&target, &back, 1e-10)?.valid);

    let too_big = HsDecomposition::from_terms(&shape, [(vec![1, 1, 1], 0.7), (vec![3, 3, 0], 0.7)])?;
    match certify_l1(&too_big) {
        Err(e) => println!("refused: {e}"),
        Ok(_) => println!("unexpected success"),
    }
    Ok(())
}
