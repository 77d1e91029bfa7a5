//! Sample depolarizing errors, decode them with BP-OSD, and report the
//! failure verdict trial by trial.

use qmargulis::channel::{sample, RngStream};
use qmargulis::decoder::{decode_css, DecoderConfig, FailureChecker};
use qmargulis::margulis::search_code;
use qmargulis::Result;

fn main() -> Result<()> {
    let code = search_code(5, 2, 3, 8, 10_000, 1)?.best_code;
    let cfg = DecoderConfig::protocol_default(code.n);
    let checker = FailureChecker::new(&code);
    let p_phys = 0.05;
    let seed = 42;

    println!("decoding 20 trials at p_phys = {p_phys} on the [[{}, {}]] code", code.n, code.k);
    for trial in 0..20u64 {
        let mut rng = RngStream::new(seed, trial).rng();
        let err = sample(code.n, p_phys, &mut rng)?;
        let sx = code.hx.mat_vec(&err.ez)?;
        let sz = code.hz.mat_vec(&err.ex)?;
        let out = decode_css(&code, &sx, &sz, p_phys, &cfg)?;

        let mut rez = out.est_ez;
        rez.xor_assign(&err.ez);
        let mut rex = out.est_ex;
        rex.xor_assign(&err.ex);
        let failed = checker.is_logical_failure(&code, &rex, &rez)?;
        println!(
            "trial {trial:2}: |ex| = {:2}, |ez| = {:2}, bp converged = {}/{}, osd = {}/{}, logical failure = {}",
            err.ex.weight(),
            err.ez.weight(),
            out.x_meta.bp_converged,
            out.z_meta.bp_converged,
            out.x_meta.osd_invoked,
            out.z_meta.osd_invoked,
            failed
        );
    }
    Ok(())
}
