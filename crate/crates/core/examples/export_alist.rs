//! Export parity-check matrices in MacKay alist and sparse coordinate
//! formats.

use qmargulis::descriptor::{from_alist, to_alist, to_coords};
use qmargulis::margulis::{build_generating_sets, EtaChoice, PairSelection};
use qmargulis::sl2::enumerate_group;
use qmargulis::{assemble_code, Result};

fn main() -> Result<()> {
    let spec = build_generating_sets(5, 2, 3, EtaChoice::Auto, &PairSelection::Seeded(0), false)?;
    let code = assemble_code(&enumerate_group(5)?, &spec)?;

    let dir = std::env::temp_dir().join("qmargulis_example");
    std::fs::create_dir_all(&dir)?;

    let alist = to_alist(&code.hx);
    let alist_path = dir.join("p5_hx.alist");
    std::fs::write(&alist_path, &alist)?;
    println!("alist -> {} ({} bytes)", alist_path.display(), alist.len());
    for line in alist.lines().take(4) {
        let short: String = line.chars().take(60).collect();
        println!("  {short}");
    }
    assert_eq!(from_alist(&alist)?, code.hx);
    println!("alist round-trip: ok");

    let coords = to_coords(&code.hz);
    let coords_path = dir.join("p5_hz.coords");
    std::fs::write(&coords_path, &coords)?;
    println!(
        "coords -> {} ({} entries)",
        coords_path.display(),
        coords.lines().count()
    );
    Ok(())
}
