//! Small logical-error-rate sweep on the girth-8 p = 5 code; CSV on
//! stdout. Full-protocol runs use min_trials = 10^4 and max_iterations =
//! n; the reduced settings here keep the example quick.

use std::io::Write;

use qmargulis::decoder::DecoderConfig;
use qmargulis::descriptor::CodeDescriptor;
use qmargulis::margulis::search_code;
use qmargulis::sim::{csv_preamble, run_sweep, TrialPolicy};
use qmargulis::Result;

fn main() -> Result<()> {
    let code = search_code(5, 2, 3, 8, 10_000, 1)?.best_code;
    let desc = CodeDescriptor::from_code(&code);
    let cfg = DecoderConfig {
        max_iterations: 100,
        ..DecoderConfig::protocol_default(code.n)
    };
    let policy = TrialPolicy {
        min_trials: 1_000,
        target_failures: 50,
        max_trials: 5_000,
    };
    let seed = 7;

    let mut stdout = std::io::stdout().lock();
    stdout.write_all(csv_preamble(&cfg, &policy, &desc.matrix_digest, seed).as_bytes())?;
    run_sweep(
        &code,
        &desc.code_id(),
        &[0.02, 0.06, 0.10],
        &policy,
        &cfg,
        seed,
        1,
        Some(&mut stdout),
    )?;
    Ok(())
}
