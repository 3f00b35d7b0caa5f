//! Round-trip a scheme through the TOML file format and show what the
//! validator rejects.

use phaselab::scheme::four_acb;
use phaselab::scheme_io::{from_toml, load_scheme, save_scheme, to_toml};

fn main() -> phaselab::Result<()> {
    let scheme = four_acb(0.19, 0.4)?;
    let text = to_toml(&scheme)?;
    println!("{text}");

    let dir = std::env::temp_dir().join("phaselab_scheme_demo");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("custom.toml");
    save_scheme(&path, &scheme)?;
    let back = load_scheme(&path)?;
    assert_eq!(back.stages.len(), scheme.stages.len());
    for (a, b) in back.stages.iter().zip(&scheme.stages) {
        assert_eq!(a.weight.to_bits(), b.weight.to_bits());
        assert_eq!(a.grad_weight.to_bits(), b.grad_weight.to_bits());
    }
    println!("round-trip through {} preserved every stage bit\n", path.display());

    // drift weights must sum to 1; the validator names the broken invariant
    let broken = r#"
name = "broken"
nominal_order = 2

[[stages]]
kind = "drift"
weight = 0.7

[[stages]]
kind = "kick"
weight = 1.0

[[stages]]
kind = "drift"
weight = 0.7
"#;
    match from_toml(broken) {
        Err(e) => println!("rejected as expected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
