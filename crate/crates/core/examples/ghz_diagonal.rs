//! GHZ-diagonal states: closed-form PTU minima, the special line, and a counterexample
//! to using the leading block alone.

use sepscope::criteria::{ghz_diag_analysis, ghz_diag_noise_threshold};
use sepscope::kernel::DEFAULT_TOL;
use sepscope::states::GhzDiagParams;

fn main() -> sepscope::Result<()> {
    let third = 1.0 / 3.0;
    let cases = [
        [0.5, 0.1, 0.1, 0.1, 0.1, 0.1, 0.0, 0.0],
        [third, third, third, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.25, 0.25, 0.25, 0.05, 0.05, 0.05, 0.05, 0.05],
        [0.125; 8],
    ];
    for p in cases {
        let r = ghz_diag_analysis(&GhzDiagParams::new(p)?, DEFAULT_TOL)?;
        println!("p = {:?}", p.map(|x| (x * 1000.0).round() / 1000.0));
        println!("  exact min   {:?}", r.ptu_min_exact.map(|x| (x * 1e6).round() / 1e6));
        println!("  k=0 block   {:?}", r.ptu_min_block_formula.map(|x| (x * 1e6).round() / 1e6));
        println!("  l1 {:.3}  special {}  -> {:?}", r.l1_sum, r.special_case, r.verdict.outcome);
    }

    for q in [0.1, 0.2, 0.3] {
        let r = ghz_diag_analysis(&GhzDiagParams::ghz_with_noise(q)?, DEFAULT_TOL)?;
        println!("GHZ noise q = {q}: p1 - p2/2 - 1/4 = {:+.4} -> {:?}", r.special_case_margin.unwrap_or(f64::NAN), r.verdict.outcome);
    }
    println!("threshold via p1 = (1+7q)/8: {:.6}", ghz_diag_noise_threshold(1e-6, DEFAULT_TOL)?.unwrap_or(f64::NAN));
    Ok(())
}
