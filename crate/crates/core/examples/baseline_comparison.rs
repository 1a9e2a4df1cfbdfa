//! Compares optimized colorings of the demo triangulation with random
//! baselines by their smallest adjacent-pair distance.
//!
//! ```text
//! cargo run -p regioncolor --example baseline_comparison --release
//! ```

use regioncolor::cli::{parse_edge_list, separation_stats};
use regioncolor::colorspace::gamut_for;
use regioncolor::optimizer::{optimize, random_baseline};
use regioncolor::{ColorSpace, OptimizerConfig};

const TRIANGULATION: &str = include_str!("../tests/fixtures/triangulation18.toml");

fn main() -> regioncolor::Result<()> {
    let graph = parse_edge_list(TRIANGULATION)?;
    for space in [ColorSpace::Srgb, ColorSpace::Lab] {
        let gamut = gamut_for(space);
        let min_adj =
            |chi: &regioncolor::Coloring| separation_stats(chi, &graph).min_adjacent.unwrap();

        let mut random: Vec<f64> = (0..100)
            .map(|s| min_adj(&random_baseline(&graph, &gamut, 1000 + s)))
            .collect();
        random.sort_by(f64::total_cmp);
        let median = 0.5 * (random[49] + random[50]);

        let optimized: Vec<f64> = (0..10)
            .map(|seed| {
                let (chi, _) =
                    optimize(&graph, &gamut, &OptimizerConfig::new(space).with_seed(seed))?;
                Ok(min_adj(&chi))
            })
            .collect::<regioncolor::Result<_>>()?;
        let worst = optimized.iter().cloned().fold(f64::INFINITY, f64::min);
        println!(
            "{space}: random median {median:.2}, optimized worst {worst:.2} (ratio {:.2})",
            worst / median
        );
    }
    Ok(())
}
