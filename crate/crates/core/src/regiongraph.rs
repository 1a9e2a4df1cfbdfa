//! Region graphs: one vertex per region, an edge wherever two regions touch.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Simple undirected graph over regions `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionGraph {
    adjacency: Vec<Vec<usize>>,
    region_ids: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

impl RegionGraph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range indices are
    /// rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation(
                "a region graph needs at least one region".into(),
            ));
        }
        let mut sets = vec![BTreeSet::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Validation(format!(
                    "edge ({i}, {j}) references a region outside 0..{n}"
                )));
            }
            if i == j {
                return Err(Error::Validation(format!("self-loop on region {i}")));
            }
            sets[i].insert(j);
            sets[j].insert(i);
        }
        Ok(Self {
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            region_ids: None,
        })
    }

    /// Region graph of a labeled grid. Cells sharing a side are adjacent;
    /// with `diagonal` set, cells sharing only a corner are adjacent too.
    /// All cells carrying one label form a single region, connected or not.
    pub fn from_grid(grid: &GridPartition, diagonal: bool) -> Self {
        let n = grid.region_count();
        let mut sets = vec![BTreeSet::new(); n];
        let offsets: &[(isize, isize)] = if diagonal {
            &[(0, 1), (1, 0), (1, 1), (1, -1)]
        } else {
            &[(0, 1), (1, 0)]
        };
        for r in 0..grid.rows {
            for c in 0..grid.cols {
                let a = grid.region_at(r, c);
                for &(dr, dc) in offsets {
                    let (rr, cc) = (r as isize + dr, c as isize + dc);
                    if rr < 0 || cc < 0 || rr as usize >= grid.rows || cc as usize >= grid.cols {
                        continue;
                    }
                    let b = grid.region_at(rr as usize, cc as usize);
                    if a != b {
                        sets[a].insert(b);
                        sets[b].insert(a);
                    }
                }
            }
        }
        Self {
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            region_ids: Some(grid.original_labels.clone()),
        }
    }

    /// Number of regions.
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Sorted neighbor indices of region `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Original labels when the graph came from a grid, indexed by region.
    pub fn region_ids(&self) -> Option<&[i64]> {
        self.region_ids.as_deref()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees = self.adjacency.iter().map(Vec::len);
        DegreeStats {
            min: degrees.clone().min().unwrap_or(0),
            max: degrees.clone().max().unwrap_or(0),
            mean: degrees.sum::<usize>() as f64 / self.n() as f64,
        }
    }
}

/// A rectangular grid of non-negative region labels.
///
/// Labels are renumbered to `0..k` in row-major order of first appearance;
/// the original labels are kept for output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPartition {
    rows: usize,
    cols: usize,
    cells: Vec<usize>,
    original_labels: Vec<i64>,
}

impl GridPartition {
    pub fn new(labels: Vec<Vec<i64>>) -> Result<Self> {
        let rows = labels.len();
        let cols = labels.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::Validation("grid is empty".into()));
        }
        let mut index: HashMap<i64, usize> = HashMap::new();
        let mut original_labels = Vec::new();
        let mut cells = Vec::with_capacity(rows * cols);
        for (r, row) in labels.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Validation(format!(
                    "grid row {r} has {} cells, expected {cols}",
                    row.len()
                )));
            }
            for &label in row {
                if label < 0 {
                    return Err(Error::Validation(format!(
                        "negative label {label} in row {r}"
                    )));
                }
                let id = *index.entry(label).or_insert_with(|| {
                    original_labels.push(label);
                    original_labels.len() - 1
                });
                cells.push(id);
            }
        }
        Ok(Self {
            rows,
            cols,
            cells,
            original_labels,
        })
    }

    /// Parses comma-separated integer labels, one grid row per line. Blank
    /// lines are ignored.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut labels = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|field| {
                    field.trim().parse::<i64>().map_err(|e| {
                        Error::Parse(format!(
                            "line {}: bad label `{}`: {e}",
                            lineno + 1,
                            field.trim()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            labels.push(row);
        }
        Self::new(labels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of distinct labels.
    pub fn region_count(&self) -> usize {
        self.original_labels.len()
    }

    /// Canonical region index of a cell.
    pub fn region_at(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.cols + col]
    }

    /// Original label of canonical region `region`.
    pub fn original_label(&self, region: usize) -> i64 {
        self.original_labels[region]
    }

    /// Original labels as a row-major matrix.
    pub fn labels(&self) -> Vec<Vec<i64>> {
        self.cells
            .chunks(self.cols)
            .map(|row| row.iter().map(|&id| self.original_labels[id]).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let labels = self.labels();
        let t = (0..self.cols)
            .map(|c| (0..self.rows).map(|r| labels[r][c]).collect())
            .collect();
        Self::new(t).expect("transpose of a valid grid is valid")
    }
}
