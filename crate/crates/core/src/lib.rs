//! Color assignment for region graphs.
//!
//! Regions of a partitioned map or graph become vertices of a *region graph*.
//! Each vertex is embedded as a point in a color space (sRGB or CIELAB) by
//! minimizing a repulsive energy: every pair of colors repels with an
//! inverse fourth-power force, and adjacent regions additionally repel with a
//! long-range inverse-distance force. Points are confined to the displayable
//! gamut by rescaling toward a fixed interior center.
//!
//! The crate is organized as:
//!
//! - [`colorspace`]: sRGB/Lab conversion and convex gamut geometry.
//! - [`regiongraph`]: region graphs from edge lists or labeled grids.
//! - [`quality`]: the energy and its exact gradient.
//! - [`optimizer`]: randomized hill climbing and random baselines.
//! - [`cli`]: file formats, SVG rendering and the `regioncolor` command line.
//!
//! ```
//! use regioncolor::colorspace::make_lab_gamut;
//! use regioncolor::optimizer::{optimize, OptimizerConfig};
//! use regioncolor::regiongraph::RegionGraph;
//!
//! let graph = RegionGraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
//! let gamut = make_lab_gamut();
//! let config = OptimizerConfig::new(gamut.space()).with_seed(7);
//! let (coloring, report) = optimize(&graph, &gamut, &config).unwrap();
//! assert_eq!(coloring.len(), 3);
//! assert!(report.final_quality > 0.0);
//! ```

pub mod cli;
pub mod colorspace;
mod error;
pub mod optimizer;
pub mod quality;
pub mod regiongraph;
mod vec3;

pub use colorspace::{ColorPoint, ColorSpace, Gamut};
pub use error::{Error, Result};
pub use optimizer::{OptimizerConfig, RunReport};
pub use quality::Coloring;
pub use regiongraph::{GridPartition, RegionGraph};
