//! Inspects the Lab gamut (hull of the eight sRGB corners) and rescales
//! out-of-gamut colors radially toward its center.
//!
//! ```text
//! cargo run -p regioncolor --example lab_gamut
//! ```

use regioncolor::colorspace::{make_lab_gamut, srgb_corners};
use regioncolor::ColorPoint;

fn main() -> regioncolor::Result<()> {
    let gamut = make_lab_gamut();
    println!(
        "{} facets, diameter {:.4}, center {:?}",
        gamut.halfspaces().len(),
        gamut.diameter(),
        gamut.center().coords()
    );
    for (corner, lab) in srgb_corners().iter().zip(gamut.extreme_points()) {
        println!(
            "  {} at {:?}",
            corner.to_hex()?,
            lab.coords().map(|c| (c * 100.0).round() / 100.0)
        );
    }

    for p in [
        ColorPoint::lab(50.0, 150.0, 0.0),
        ColorPoint::lab(50.0, 0.0, -200.0),
        ColorPoint::lab(120.0, 30.0, 30.0),
        ColorPoint::lab(60.0, 10.0, 10.0),
    ] {
        let q = gamut.project(&p)?;
        println!(
            "{:?} inside {} -> {:?}",
            p.coords(),
            gamut.contains(&p)?,
            q.coords().map(|c| (c * 1e4).round() / 1e4)
        );
    }
    Ok(())
}
