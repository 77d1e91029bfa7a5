//! Compare observed girth against the log n / log(2 d_c) growth quantity
//! across blocklengths. Trend inspection only; no pass/fail semantics.

use qmargulis::margulis::{build_generating_sets, EtaChoice, PairSelection};
use qmargulis::sl2::enumerate_group;
use qmargulis::tanner::{girth_scaling_report, render_report_csv, render_report_text};
use qmargulis::{assemble_code, CssCode, Result};

fn construct(p: u32) -> Result<CssCode> {
    let spec = build_generating_sets(p, 2, 3, EtaChoice::Auto, &PairSelection::Seeded(0), false)?;
    assemble_code(&enumerate_group(p)?, &spec)
}

fn main() -> Result<()> {
    let codes: Vec<CssCode> = [5, 7, 11].into_iter().map(construct).collect::<Result<_>>()?;
    let refs: Vec<&CssCode> = codes.iter().collect();
    let rows = girth_scaling_report(&refs)?;
    print!("{}", render_report_text(&rows));
    println!();
    print!("{}", render_report_csv(&rows));
    Ok(())
}
