//! Build a code from explicit parameters, report its parameters, and
//! round-trip it through a descriptor file.

use qmargulis::descriptor::CodeDescriptor;
use qmargulis::margulis::{build_generating_sets, EtaChoice, PairSelection};
use qmargulis::sl2::enumerate_group;
use qmargulis::tanner;
use qmargulis::{assemble_code, Result};

fn main() -> Result<()> {
    let p = 5;
    let spec = build_generating_sets(p, 2, 3, EtaChoice::Auto, &PairSelection::Seeded(0), false)?;
    println!(
        "p = {p}, eta = {}, |A| = {}, |B| = {}",
        spec.eta,
        spec.set_a.len(),
        spec.set_b.len()
    );

    let index = enumerate_group(p)?;
    let code = assemble_code(&index, &spec)?;
    println!(
        "n = {}, k = {}, girth_x = {:?}, girth_z = {:?}, d_c = {}",
        code.n,
        code.k,
        code.girth_x,
        code.girth_z,
        code.check_degree()
    );
    let (dc_profile, dv_profile) = tanner::degree_profile(&code.hx);
    println!("check degrees:    {dc_profile:?}");
    println!("variable degrees: {dv_profile:?}");

    let desc = CodeDescriptor::from_code(&code);
    let dir = std::env::temp_dir().join("qmargulis_example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("p5.json");
    desc.save(&path)?;
    let rebuilt = CodeDescriptor::load(&path)?.verify()?;
    println!(
        "descriptor round-trip verified: {} (digest {})",
        rebuilt.n == code.n,
        &desc.matrix_digest[..12]
    );
    Ok(())
}
