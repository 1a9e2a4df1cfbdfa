//! Optimizes the 18-region demo triangulation in both color spaces and
//! prints the resulting palette and separation statistics.
//!
//! ```text
//! cargo run -p regioncolor --example optimize_triangulation --release
//! ```

use regioncolor::cli::{parse_edge_list, separation_stats};
use regioncolor::colorspace::{gamut_for, lab_to_srgb};
use regioncolor::optimizer::optimize_multistart;
use regioncolor::{ColorSpace, OptimizerConfig};

const TRIANGULATION: &str = include_str!("../tests/fixtures/triangulation18.toml");

fn main() -> regioncolor::Result<()> {
    let graph = parse_edge_list(TRIANGULATION)?;
    for space in [ColorSpace::Srgb, ColorSpace::Lab] {
        let gamut = gamut_for(space);
        let config = OptimizerConfig::new(space).with_seed(1);
        let (chi, report) = optimize_multistart(&graph, &gamut, &config, 4)?;
        let stats = separation_stats(&chi, &graph);
        println!(
            "{space}: best seed {}, q {:.4e}, {} iterations, min adjacent {:.2}, min pair {:.2}",
            report.seed,
            report.final_quality,
            report.iterations_used,
            stats.min_adjacent.unwrap_or(0.0),
            stats.min_pair.unwrap_or(0.0)
        );
        let hex: Vec<String> = chi
            .iter()
            .map(|p| match space {
                ColorSpace::Srgb => p.to_hex(),
                ColorSpace::Lab => lab_to_srgb(&p)?.to_hex(),
            })
            .collect::<regioncolor::Result<_>>()?;
        println!("  {}", hex.join(" "));
    }
    Ok(())
}
