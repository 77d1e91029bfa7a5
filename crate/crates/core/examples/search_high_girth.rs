//! Randomized search for a girth-8 code at p = 5 with a (2,3) split,
//! reproducing the n = 240, k = 8 target instance.

use qmargulis::margulis::search_code;
use qmargulis::Result;

fn main() -> Result<()> {
    let outcome = search_code(5, 2, 3, 8, 10_000, 1)?;
    let code = &outcome.best_code;
    println!(
        "best: n = {}, k = {}, girth_x = {:?}, girth_z = {:?}",
        code.n, code.k, code.girth_x, code.girth_z
    );
    println!(
        "target girth reached: {} after {} candidates (eta = {})",
        outcome.reached_target, outcome.log.candidates_examined, outcome.best_spec.eta
    );
    println!(
        "eta sufficiency bound sqrt(7r) = {:.2} (diagnostic only)",
        outcome.log.eta_sufficiency_bound
    );
    let rejected = outcome
        .log
        .records
        .iter()
        .filter(|r| r.rejected.is_some())
        .count();
    println!("candidates rejected by the screen: {rejected}");
    Ok(())
}
