//! Evaluates the energy and descent directions of a small coloring, and
//! shows that pushing colors apart lowers the energy.
//!
//! ```text
//! cargo run -p regioncolor --example quality_gradient
//! ```

use regioncolor::colorspace::make_srgb_gamut;
use regioncolor::quality::{gradient, quality};
use regioncolor::{ColorSpace, Coloring, RegionGraph};

fn main() -> regioncolor::Result<()> {
    // A path 0 - 1 - 2; the ends are not adjacent.
    let graph = RegionGraph::from_edge_list(3, &[(0, 1), (1, 2)])?;
    let gamut = make_srgb_gamut();
    let chi = Coloring::new(
        ColorSpace::Srgb,
        vec![
            [60.0, 60.0, 60.0],
            [128.0, 128.0, 128.0],
            [200.0, 200.0, 200.0],
        ],
    )?;
    let q = quality(&chi, &graph, &gamut)?;
    println!("q = {q:.6e}");
    for (i, d) in gradient(&chi, &graph, &gamut)?.iter().enumerate() {
        println!("descent at {i}: {:?}", d.map(|c| format!("{c:.3e}")));
    }

    let spread = Coloring::new(
        ColorSpace::Srgb,
        vec![[0.0; 3], [128.0, 128.0, 128.0], [255.0; 3]],
    )?;
    println!("spread out: q = {:.6e}", quality(&spread, &graph, &gamut)?);
    Ok(())
}
