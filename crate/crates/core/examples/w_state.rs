//! The W state: partial-transpose spectrum, noise threshold, and the low-p certificate.

use sepscope::certificates::{certify_w_mixed, verify_certificate};
use sepscope::criteria::{noise_threshold, Detector, ThresholdOptions};
use sepscope::kernel::{eig_hermitian, DEFAULT_TOL};
use sepscope::ptu::partial_transpose;
use sepscope::states::{mix_white_noise, w_state, MixtureParams};

fn main() -> sepscope::Result<()> {
    let w = w_state();
    let pt = partial_transpose(&w, 0)?;
    let spec = eig_hermitian(&pt.matrix, DEFAULT_TOL)?;
    println!("PT spectrum: {:?}", spec.values().iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>());

    let t = noise_threshold(&w, Detector::Ppt, ThresholdOptions::default())?;
    println!("threshold {:.6} vs 3/(3+8√2) = {:.6}", t.threshold.unwrap_or(f64::NAN), 3.0 / (3.0 + 8.0 * 2f64.sqrt()));

    // Certified only up to 1/9; between 1/9 and the threshold nothing here decides.
    let p = 1.0 / 9.0;
    let cert = certify_w_mixed(p)?;
    let check = verify_certificate(&mix_white_noise(&w, MixtureParams::new(p)?), &cert, 1e-10)?;
    println!("p = 1/9: {} terms, valid = {}, deviation {:.1e}", cert.len(), check.valid, check.max_deviation);
    Ok(())
}
