//! Palette and edge-list documents.
//!
//! Both are TOML documents (UTF-8, one document per file). An edge list:
//!
//! ```toml
//! n = 3
//! edges = [[0, 1], [1, 2]]
//! ```
//!
//! A palette:
//!
//! ```toml
//! space = "lab"
//! quality = 0.0123
//! seed = 7
//!
//! [[colors]]
//! region = 0
//! original_label = 4
//! coords = [53.2, 80.1, 67.2]
//! srgb_hex = "#FF0000"
//! ```
//!
//! `original_label` is omitted when the graph did not come from a grid.

use serde::{Deserialize, Serialize};

use crate::colorspace::{lab_to_srgb, ColorSpace, Gamut};
use crate::error::{Error, Result};
use crate::quality::Coloring;
use crate::regiongraph::RegionGraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl EdgeListDocument {
    pub fn from_graph(graph: &RegionGraph) -> Self {
        Self {
            n: graph.n(),
            edges: graph.edges().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("edge list: {}", e.message())))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_graph(&self) -> Result<RegionGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[i, j]| (i, j)).collect();
        RegionGraph::from_edge_list(self.n, &edges)
    }
}

/// Parses an edge-list document straight into a graph.
pub fn parse_edge_list(text: &str) -> Result<RegionGraph> {
    EdgeListDocument::parse(text)?.to_graph()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaletteEntry {
    pub region: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub original_label: Option<i64>,
    pub coords: [f64; 3],
    pub srgb_hex: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaletteDocument {
    pub space: ColorSpace,
    pub quality: f64,
    pub seed: u64,
    pub colors: Vec<PaletteEntry>,
}

fn is_hex_color(s: &str) -> bool {
    s.len() == 7
        && s.starts_with('#')
        && s[1..]
            .chars()
            .all(|c| c.is_ascii_digit() || ('A'..='F').contains(&c))
}

impl PaletteDocument {
    /// Builds a palette for `chi`. Lab colors are projected into `gamut`
    /// before conversion so the sRGB rendering is always defined.
    pub fn from_coloring(
        chi: &Coloring,
        graph: &RegionGraph,
        gamut: &Gamut,
        quality: f64,
        seed: u64,
    ) -> Result<Self> {
        chi.check_compatible(graph, gamut)?;
        let colors = chi
            .iter()
            .enumerate()
            .map(|(region, p)| {
                let p = gamut.project(&p)?;
                let srgb = match p.space() {
                    ColorSpace::Srgb => p,
                    ColorSpace::Lab => lab_to_srgb(&p)?,
                };
                Ok(PaletteEntry {
                    region,
                    original_label: graph.region_ids().map(|ids| ids[region]),
                    coords: p.coords(),
                    srgb_hex: srgb.to_hex()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            space: chi.space(),
            quality,
            seed,
            colors,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self =
            toml::from_str(text).map_err(|e| Error::Parse(format!("palette: {}", e.message())))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_toml(&self) -> Result<String> {
        self.validate()?;
        if i64::try_from(self.seed).is_err() {
            return Err(Error::Validation(format!(
                "seed {} does not fit a signed 64-bit document integer",
                self.seed
            )));
        }
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Entries must be listed by region index with well-formed hex colors.
    pub fn validate(&self) -> Result<()> {
        if self.colors.is_empty() {
            return Err(Error::Validation("palette has no colors".into()));
        }
        for (i, entry) in self.colors.iter().enumerate() {
            if entry.region != i {
                return Err(Error::Validation(format!(
                    "palette entry {i} is for region {}",
                    entry.region
                )));
            }
            if !is_hex_color(&entry.srgb_hex) {
                return Err(Error::Validation(format!(
                    "region {i}: `{}` is not a #RRGGBB color",
                    entry.srgb_hex
                )));
            }
            if entry.coords.iter().any(|c| !c.is_finite()) {
                return Err(Error::Validation(format!(
                    "region {i}: non-finite coordinates"
                )));
            }
        }
        Ok(())
    }

    pub fn to_coloring(&self) -> Result<Coloring> {
        Coloring::new(self.space, self.colors.iter().map(|c| c.coords).collect())
    }

    pub fn hex_colors(&self) -> Vec<String> {
        self.colors.iter().map(|c| c.srgb_hex.clone()).collect()
    }
}
