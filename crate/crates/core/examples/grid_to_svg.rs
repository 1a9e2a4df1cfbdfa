//! Reads a labeled grid, builds its region graph, optimizes a Lab coloring
//! and writes an SVG map.
//!
//! ```text
//! cargo run -p regioncolor --example grid_to_svg -- map.svg
//! ```

use regioncolor::cli::{render_grid_svg, PaletteDocument};
use regioncolor::colorspace::make_lab_gamut;
use regioncolor::optimizer::optimize;
use regioncolor::{ColorSpace, GridPartition, OptimizerConfig, RegionGraph};

const PARTITION: &str = include_str!("../tests/fixtures/partition18.csv");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "map.svg".into());
    let grid = GridPartition::parse_csv(PARTITION)?;
    let graph = RegionGraph::from_grid(&grid, false);
    println!(
        "{} x {} grid, {} regions, {} adjacencies",
        grid.rows(),
        grid.cols(),
        graph.n(),
        graph.edge_count()
    );

    let gamut = make_lab_gamut();
    let config = OptimizerConfig::new(ColorSpace::Lab).with_seed(7);
    let (chi, report) = optimize(&graph, &gamut, &config)?;
    let palette =
        PaletteDocument::from_coloring(&chi, &graph, &gamut, report.final_quality, config.seed)?;
    std::fs::write(
        &out,
        render_grid_svg(&grid, &palette.hex_colors(), 16, false),
    )?;
    println!("wrote {out}");
    Ok(())
}
