//! Converts a few sRGB colors to Lab and back.
//!
//! ```text
//! cargo run -p regioncolor --example convert_colors
//! ```

use regioncolor::colorspace::{lab_to_srgb, srgb_to_lab};
use regioncolor::ColorPoint;

fn main() -> regioncolor::Result<()> {
    let samples = [
        ("white", [255.0, 255.0, 255.0]),
        ("red", [255.0, 0.0, 0.0]),
        ("teal", [0.0, 128.0, 128.0]),
        ("mid gray", [119.0, 119.0, 119.0]),
    ];
    for (name, [r, g, b]) in samples {
        let srgb = ColorPoint::srgb(r, g, b);
        let lab = srgb_to_lab(&srgb)?;
        let back = lab_to_srgb(&lab)?;
        let [l, a, bb] = lab.coords();
        println!(
            "{name:>8} {} -> L {l:7.3} a {a:8.3} b {bb:8.3} -> {}",
            srgb.to_hex()?,
            back.to_hex()?
        );
    }
    Ok(())
}
