//! GHZ mixed with white noise: the PTU spectrum and the point where it turns negative.

use sepscope::criteria::{noise_threshold, ppt_verdict, Detector, ThresholdOptions};
use sepscope::kernel::{eig_hermitian, DEFAULT_TOL};
use sepscope::ptu::ptu_qubit;
use sepscope::states::{ghz_state, mix_white_noise, MixtureParams};

fn main() -> sepscope::Result<()> {
    let ghz = ghz_state(1)?;
    for p in [0.0, 0.1, 0.2, 0.3, 0.6, 1.0] {
        let rho = mix_white_noise(&ghz, MixtureParams::new(p)?);
        let spec = eig_hermitian(&ptu_qubit(&rho, 0)?.matrix, DEFAULT_TOL)?;
        let verdict = ppt_verdict(&rho, DEFAULT_TOL)?;
        println!("p = {p:.1}  min PTU eigenvalue {:+.4}  (1-5p)/8 = {:+.4}  {:?}", spec.min(), (1.0 - 5.0 * p) / 8.0, verdict.outcome);
    }
    let t = noise_threshold(&ghz, Detector::Ppt, ThresholdOptions::default())?;
    println!("threshold: {:.6}", t.threshold.unwrap_or(f64::NAN));
    Ok(())
}
