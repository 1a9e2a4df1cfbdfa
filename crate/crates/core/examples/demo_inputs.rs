//! Regenerates the demo inputs shipped in `tests/fixtures/`:
//!
//! - `triangulation18.toml`: Delaunay triangulation of 18 seeded sites in the
//!   unit square, as an edge-list document.
//! - `partition18.csv`: a 30 x 40 grid labeled by nearest site, i.e. a
//!   rasterized Voronoi map whose region graph is close to the same
//!   triangulation.
//!
//! ```text
//! cargo run -p regioncolor --example demo_inputs -- crates/core/tests/fixtures
//! ```

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regioncolor::cli::EdgeListDocument;
use regioncolor::RegionGraph;

const SITES: usize = 18;
const SEED: u64 = 2007;
const ROWS: usize = 30;
const COLS: usize = 40;

fn sites() -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..SITES)
        .map(|_| [rng.random::<f64>(), rng.random::<f64>()])
        .collect()
}

/// Brute-force Delaunay: a triangle is kept when no other site lies strictly
/// inside its circumcircle. Fine for a couple dozen sites.
fn delaunay_edges(p: &[[f64; 2]]) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let [ax, ay] = p[i];
                let [bx, by] = p[j];
                let [cx, cy] = p[k];
                let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
                if d.abs() < 1e-12 {
                    continue;
                }
                let a2 = ax * ax + ay * ay;
                let b2 = bx * bx + by * by;
                let c2 = cx * cx + cy * cy;
                let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
                let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
                let r2 = (ax - ux).powi(2) + (ay - uy).powi(2);
                let empty = (0..n)
                    .filter(|&m| m != i && m != j && m != k)
                    .all(|m| (p[m][0] - ux).powi(2) + (p[m][1] - uy).powi(2) > r2 * (1.0 + 1e-12));
                if empty {
                    edges.extend([(i, j), (j, k), (i, k)]);
                }
            }
        }
    }
    edges
}

fn voronoi_grid(p: &[[f64; 2]]) -> String {
    let mut out = String::new();
    for r in 0..ROWS {
        let row: Vec<String> = (0..COLS)
            .map(|c| {
                let x = (c as f64 + 0.5) / COLS as f64;
                let y = (r as f64 + 0.5) / ROWS as f64;
                let nearest = (0..p.len())
                    .min_by(|&a, &b| {
                        let da = (p[a][0] - x).powi(2) + (p[a][1] - y).powi(2);
                        let db = (p[b][0] - x).powi(2) + (p[b][1] - y).powi(2);
                        da.total_cmp(&db)
                    })
                    .unwrap();
                nearest.to_string()
            })
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("crates/core/tests/fixtures"));
    std::fs::create_dir_all(&dir)?;

    let p = sites();
    let graph = RegionGraph::from_edge_list(SITES, &delaunay_edges(&p))?;
    let stats = graph.degree_stats();
    println!(
        "triangulation: {} regions, {} edges, degree min {} max {} mean {:.3}",
        graph.n(),
        graph.edge_count(),
        stats.min,
        stats.max,
        stats.mean
    );
    std::fs::write(
        dir.join("triangulation18.toml"),
        EdgeListDocument::from_graph(&graph).to_toml()?,
    )?;
    std::fs::write(dir.join("partition18.csv"), voronoi_grid(&p))?;
    println!("wrote {}", dir.display());
    Ok(())
}
