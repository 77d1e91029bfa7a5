//! Stretch check (documented, not gating): the n = 240 and n = 672 codes
//! should swap order across the threshold region. At p_phys = 0.06 the
//! larger code should do better; at 0.16 it should be no better than the
//! smaller one. 10^3 trials per point with a reduced iteration cap of
//! 100, so the check is coarse by design.
//!
//! Full-scale curves (10^4-10^5 trials, iteration cap n, n up to 2640)
//! take far longer; this is the desk-scale stand-in.

use qmargulis::decoder::DecoderConfig;
use qmargulis::margulis::search_code;
use qmargulis::sim::{run_point, TrialPolicy};
use qmargulis::{CssCode, Result};

fn ler(code: &CssCode, id: &str, p_phys: f64) -> Result<f64> {
    let cfg = DecoderConfig {
        max_iterations: 100,
        ..DecoderConfig::protocol_default(code.n)
    };
    let policy = TrialPolicy {
        min_trials: 1_000,
        target_failures: usize::MAX / 2,
        max_trials: 1_000,
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let r = run_point(code, id, p_phys, &policy, &cfg, 2024, workers)?;
    println!(
        "{id}: p_phys = {p_phys}, ler = {:.4} [{:.4}, {:.4}] ({} failures / {} trials)",
        r.ler, r.ci_low, r.ci_high, r.failures, r.trials
    );
    Ok(r.ler)
}

fn main() -> Result<()> {
    println!("searching for girth-8 instances (this is the slow part at p = 7)...");
    let small = search_code(5, 2, 3, 8, 10_000, 1)?.best_code;
    println!("p=5 code: n = {}, k = {}", small.n, small.k);
    // Seed 5 lands on the k = 4 girth-8 instance (the published
    // parameters); other seeds find girth-8 codes with larger k and
    // correspondingly weaker protection.
    let large = search_code(7, 2, 3, 8, 50_000, 5)?.best_code;
    println!(
        "p=7 code: n = {}, k = {}, girth = {:?}/{:?}",
        large.n, large.k, large.girth_x, large.girth_z
    );

    let low_small = ler(&small, "n240", 0.06)?;
    let low_large = ler(&large, "n672", 0.06)?;
    let high_small = ler(&small, "n240", 0.16)?;
    let high_large = ler(&large, "n672", 0.16)?;

    let below = low_large < low_small;
    let above = high_large >= high_small;
    println!("larger code better at 0.06:          {below}");
    println!("larger code worse-or-equal at 0.16:  {above}");
    println!(
        "consistent with a threshold between:  {}",
        below && above
    );
    println!(
        "informational only: at 10^3 trials and these blocklengths the \
         word-error curves may not cross in this window"
    );
    Ok(())
}
