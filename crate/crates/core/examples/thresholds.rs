//! Noise thresholds for each named state, plus a scan table as CSV.

use sepscope::criteria::{noise_threshold, Detector, ThresholdOptions};
use sepscope::io::StateExpr;

fn main() -> sepscope::Result<()> {
    let opts = ThresholdOptions::default();
    for expr in ["ghz:1", "braid:3:1", "w", "four_qubit_xyz", "two_param:0.6,0.6"] {
        let rho = expr.parse::<StateExpr>()?.build()?;
        let t = noise_threshold(&rho, Detector::Ppt, opts)?;
        match t.threshold {
            Some(p) => println!("{expr:<18} {p:.6}"),
            None => println!("{expr:<18} never detected"),
        }
    }
    let ghz = "ghz:1".parse::<StateExpr>()?.build()?;
    let g = noise_threshold(&ghz, Detector::Guhne, opts)?;
    println!("ghz:1 (guhne)      {:.6}", g.threshold.unwrap_or(f64::NAN));

    let coarse = ThresholdOptions { scan_points: 6, ..opts };
    println!("\np,min_site_0");
    for s in noise_threshold(&ghz, Detector::Ppt, coarse)?.scan {
        println!("{},{:.4}", s.p, s.min_pt_eigenvalues[0]);
    }
    Ok(())
}
