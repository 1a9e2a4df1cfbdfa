//! The coloring energy and its gradient.
//!
//! For a coloring with pairwise distances `d_ij`, `n` regions, neighbor sets
//! `N_i`, gamut diameter `Δ` and dimension `D = 3`:
//!
//! ```text
//! q = Σ_i ( Σ_{j≠i} d_ij^-(D+1)  +  n^(1+1/D) / Δ^D · Σ_{j∈N_i} 1 / (d_ij |N_i|) )
//! ```
//!
//! Smaller is better. The first term spreads all colors apart locally; the
//! second pushes adjacent regions toward opposite ends of the gamut.
//! Distances are floored at `1e-9 · Δ` so coincident colors give a large
//! but finite energy.

use crate::colorspace::{ColorPoint, ColorSpace, Gamut, DIMENSION};
use crate::error::{Error, Result};
use crate::regiongraph::RegionGraph;
use crate::vec3::{self, Vec3};

/// Distance floor as a fraction of the gamut diameter.
pub const DISTANCE_FLOOR_FRACTION: f64 = 1e-9;

/// One color per region, all in the same space.
#[derive(Clone, Debug, PartialEq)]
pub struct Coloring {
    space: ColorSpace,
    points: Vec<[f64; 3]>,
}

impl Coloring {
    pub fn new(space: ColorSpace, points: Vec<[f64; 3]>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(Error::Domain(format!("non-finite coordinates {p:?}")));
        }
        Ok(Self { space, points })
    }

    pub fn from_points(points: &[ColorPoint]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Validation("empty coloring".into()));
        };
        let space = first.space();
        for p in points {
            Error::check_space(space, p.space())?;
        }
        Ok(Self {
            space,
            points: points.iter().map(ColorPoint::coords).collect(),
        })
    }

    pub fn space(&self) -> ColorSpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> ColorPoint {
        ColorPoint::new(self.space, self.points[i]).expect("coloring coordinates are finite")
    }

    pub fn coords(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [[f64; 3]] {
        &mut self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = ColorPoint> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Fails unless this coloring has one point per region of `graph` and
    /// lives in the same space as `gamut`.
    pub fn check_compatible(&self, graph: &RegionGraph, gamut: &Gamut) -> Result<()> {
        Error::check_space(gamut.space(), self.space)?;
        if self.len() != graph.n() {
            return Err(Error::Validation(format!(
                "coloring has {} colors but the graph has {} regions",
                self.len(),
                graph.n()
            )));
        }
        Ok(())
    }
}

/// Weight `n^(1+1/D) / Δ^D` of the adjacency term.
pub fn adjacency_weight(n: usize, diameter: f64) -> f64 {
    let d = DIMENSION as f64;
    (n as f64).powf(1.0 + 1.0 / d) / diameter.powi(DIMENSION as i32)
}

fn floored_distance(a: Vec3, b: Vec3, floor: f64) -> f64 {
    vec3::dist(a, b).max(floor)
}

/// Contribution of each region to `q`, in region order. Their sum is `q`.
pub fn region_terms(points: &[[f64; 3]], graph: &RegionGraph, diameter: f64) -> Vec<f64> {
    let n = points.len();
    let floor = DISTANCE_FLOOR_FRACTION * diameter;
    let weight = adjacency_weight(n, diameter);
    let power = DIMENSION as i32 + 1;
    (0..n)
        .map(|i| {
            let mut repulsion = 0.0;
            for j in (0..n).filter(|&j| j != i) {
                repulsion += floored_distance(points[i], points[j], floor).powi(-power);
            }
            let neighbors = graph.neighbors(i);
            let mut adjacency = 0.0;
            for &j in neighbors {
                adjacency +=
                    1.0 / (floored_distance(points[i], points[j], floor) * neighbors.len() as f64);
            }
            repulsion + weight * adjacency
        })
        .collect()
}

/// `q` for raw coordinates and an explicit diameter.
pub fn quality_with_diameter(points: &[[f64; 3]], graph: &RegionGraph, diameter: f64) -> f64 {
    region_terms(points, graph, diameter).into_iter().sum()
}

/// Evaluates `q(χ)` for a coloring within a gamut.
pub fn quality(chi: &Coloring, graph: &RegionGraph, gamut: &Gamut) -> Result<f64> {
    chi.check_compatible(graph, gamut)?;
    Ok(quality_with_diameter(&chi.points, graph, gamut.diameter()))
}

/// Descent direction `-∂q/∂x_i` at region `i`.
///
/// Every other region pushes `i` away along the unit vector `u` from it with
/// strength `2(D+1) / d^(D+2)`; a neighbor adds `w (1/|N_i| + 1/|N_j|) / d^2`
/// where `w` is [`adjacency_weight`]. Pairs closer than the distance floor
/// contribute nothing.
pub fn descent_at(points: &[[f64; 3]], graph: &RegionGraph, diameter: f64, i: usize) -> [f64; 3] {
    let n = points.len();
    let floor = DISTANCE_FLOOR_FRACTION * diameter;
    let weight = adjacency_weight(n, diameter);
    let d_plus_1 = (DIMENSION + 1) as f64;
    let mut out = [0.0; 3];
    for j in (0..n).filter(|&j| j != i) {
        let diff = vec3::sub(points[i], points[j]);
        let d = vec3::norm(diff);
        if d < floor {
            continue;
        }
        let mut strength = 2.0 * d_plus_1 / d.powi(DIMENSION as i32 + 2);
        if graph.is_adjacent(i, j) {
            let inv_degrees = 1.0 / graph.degree(i) as f64 + 1.0 / graph.degree(j) as f64;
            strength += weight * inv_degrees / (d * d);
        }
        out = vec3::add(out, vec3::scale(diff, strength / d));
    }
    out
}

/// Descent directions for every region.
pub fn gradient(chi: &Coloring, graph: &RegionGraph, gamut: &Gamut) -> Result<Vec<[f64; 3]>> {
    chi.check_compatible(graph, gamut)?;
    Ok((0..chi.len())
        .map(|i| descent_at(&chi.points, graph, gamut.diameter(), i))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorspace::{make_lab_gamut, make_srgb_gamut};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn two_points(d: f64) -> Vec<[f64; 3]> {
        vec![[0.0, 0.0, 0.0], [d, 0.0, 0.0]]
    }

    /// Literal transcription of the energy: full double sum, no sharing with
    /// the implementation above.
    fn oracle_quality(points: &[[f64; 3]], edges: &[(usize, usize)], delta: f64) -> f64 {
        let n = points.len();
        let dist = |i: usize, j: usize| -> f64 {
            (0..3)
                .map(|k| (points[i][k] - points[j][k]).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let nbrs = |i: usize| -> Vec<usize> {
            let mut v: Vec<usize> = edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == i {
                        Some(b)
                    } else if b == i {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            v.sort();
            v.dedup();
            v
        };
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if j != i {
                    q += 1.0 / dist(i, j).powf(4.0);
                }
            }
            let ni = nbrs(i);
            let norm = (n as f64).powf(4.0 / 3.0) / delta.powf(3.0);
            for &j in &ni {
                q += norm / (dist(i, j) * ni.len() as f64);
            }
        }
        q
    }

    #[test]
    fn two_isolated_regions() {
        let g = RegionGraph::from_edge_list(2, &[]).unwrap();
        for d in [1.0f64, 10.0, 200.0] {
            assert_relative_eq!(
                quality_with_diameter(&two_points(d), &g, 441.0),
                2.0 / d.powi(4),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn one_edge() {
        let g = RegionGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        let delta: f64 = 441.673;
        for d in [1.0f64, 50.0, 441.0] {
            let expected = 2.0 / d.powi(4) + 2.0 * 2f64.powf(4.0 / 3.0) / (delta.powi(3) * d);
            assert_relative_eq!(
                quality_with_diameter(&two_points(d), &g, delta),
                expected,
                max_relative = 1e-13
            );
            assert_relative_eq!(
                quality_with_diameter(&two_points(d), &g, delta),
                oracle_quality(&two_points(d), &[(0, 1)], delta),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn single_region_is_zero() {
        let g = RegionGraph::from_edge_list(1, &[]).unwrap();
        assert_eq!(quality_with_diameter(&[[3.0, 4.0, 5.0]], &g, 100.0), 0.0);
        assert_eq!(descent_at(&[[3.0, 4.0, 5.0]], &g, 100.0, 0), [0.0; 3]);
    }

    #[test]
    fn coincident_points_are_finite() {
        let g = RegionGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        let pts = vec![[1.0, 1.0, 1.0]; 2];
        let q = quality_with_diameter(&pts, &g, 100.0);
        assert!(q.is_finite() && q > 0.0);
        assert_eq!(descent_at(&pts, &g, 100.0, 0), [0.0; 3]);
    }

    #[test]
    fn symmetric_pair_pushes_apart() {
        let g = RegionGraph::from_edge_list(2, &[(0, 1)]).unwrap();
        let pts = two_points(30.0);
        let a = descent_at(&pts, &g, 441.0, 0);
        let b = descent_at(&pts, &g, 441.0, 1);
        assert!(a[0] < 0.0);
        assert_eq!(a, vec3::scale(b, -1.0));
    }

    #[test]
    fn middle_point_feels_no_axial_force() {
        let g = RegionGraph::from_edge_list(3, &[]).unwrap();
        let pts = vec![[0.0, 0.0, 0.0], [10.0, 0.0, 0.0], [20.0, 0.0, 0.0]];
        let v = descent_at(&pts, &g, 100.0, 1);
        assert!(v[0].abs() < 1e-18);
    }

    #[test]
    fn space_and_size_are_checked() {
        let g = RegionGraph::from_edge_list(2, &[]).unwrap();
        let chi = Coloring::new(ColorSpace::Srgb, two_points(5.0)).unwrap();
        assert!(matches!(
            quality(&chi, &g, &make_lab_gamut()),
            Err(Error::SpaceMismatch { .. })
        ));
        let g3 = RegionGraph::from_edge_list(3, &[]).unwrap();
        assert!(matches!(
            quality(&chi, &g3, &make_srgb_gamut()),
            Err(Error::Validation(_))
        ));
    }

    fn random_instance(
        seed: u64,
        n: usize,
        density: f64,
        lo: f64,
        hi: f64,
    ) -> (Vec<[f64; 3]>, RegionGraph, Vec<(usize, usize)>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<[f64; 3]> = (0..n)
            .map(|_| [0, 1, 2].map(|_| rng.random_range(lo..hi)))
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(density) {
                    edges.push((i, j));
                }
            }
        }
        let g = RegionGraph::from_edge_list(n, &edges).unwrap();
        (pts, g, edges)
    }

    #[test]
    fn quality_matches_literal_oracle() {
        for seed in 0..10 {
            let (pts, g, edges) = random_instance(seed, 9, 0.4, 0.0, 255.0);
            assert_relative_eq!(
                quality_with_diameter(&pts, &g, 441.673),
                oracle_quality(&pts, &edges, 441.673),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let delta = 441.673;
        let h = 1e-4 * delta;
        for seed in 0..20 {
            let (pts, g, edges) = random_instance(100 + seed, 6, 0.5, 0.0, 255.0);
            for i in 0..pts.len() {
                let analytic = descent_at(&pts, &g, delta, i);
                let mut fd = [0.0; 3];
                for k in 0..3 {
                    let mut plus = pts.clone();
                    let mut minus = pts.clone();
                    plus[i][k] += h;
                    minus[i][k] -= h;
                    fd[k] = -(oracle_quality(&plus, &edges, delta)
                        - oracle_quality(&minus, &edges, delta))
                        / (2.0 * h);
                }
                let err = vec3::dist(analytic, fd) / vec3::norm(fd);
                assert!(err < 1e-5, "seed {seed} region {i}: relative error {err:e}");
            }
        }
    }

    /// Per-region one-sided force: each region only sees its own terms.
    fn one_sided_descent(points: &[[f64; 3]], g: &RegionGraph, delta: f64, i: usize) -> [f64; 3] {
        let n = points.len();
        let w = adjacency_weight(n, delta);
        let mut out = [0.0; 3];
        for j in (0..n).filter(|&j| j != i) {
            let diff = vec3::sub(points[i], points[j]);
            let d = vec3::norm(diff);
            let mut len = 4.0 / d.powi(5);
            if g.is_adjacent(i, j) {
                len += w / (g.degree(i) as f64 * d * d);
            }
            out = vec3::add(out, vec3::scale(diff, len / d));
        }
        out
    }

    #[test]
    fn one_sided_form_is_a_descent_direction_for_pure_repulsion() {
        // Without edges the two forms differ by exactly a factor of two.
        let (pts, _, _) = random_instance(3, 7, 0.0, 0.0, 255.0);
        let g = RegionGraph::from_edge_list(7, &[]).unwrap();
        for i in 0..7 {
            let exact = descent_at(&pts, &g, 441.0, i);
            let one_sided = one_sided_descent(&pts, &g, 441.0, i);
            for k in 0..3 {
                assert_relative_eq!(exact[k], 2.0 * one_sided[k], max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn regions_separating_lowers_quality() {
        let g = RegionGraph::from_edge_list(2, &[]).unwrap();
        let mut last = f64::INFINITY;
        for d in [1.0, 2.0, 5.0, 50.0, 400.0] {
            let q = quality_with_diameter(&two_points(d), &g, 441.0);
            assert!(q < last);
            last = q;
        }
    }

    #[test]
    fn automorphism_permutes_terms() {
        // Cycle 0-1-2-3-0; rotation by one is an automorphism.
        let g = RegionGraph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (pts, _, _) = random_instance(9, 4, 0.0, 0.0, 255.0);
        let perm = |i: usize| (i + 1) % 4;
        let mut moved = vec![[0.0; 3]; 4];
        for i in 0..4 {
            moved[perm(i)] = pts[i];
        }
        let a = region_terms(&pts, &g, 441.0);
        let b = region_terms(&moved, &g, 441.0);
        for i in 0..4 {
            assert_relative_eq!(a[i], b[perm(i)], max_relative = 1e-14);
            let ga = descent_at(&pts, &g, 441.0, i);
            let gb = descent_at(&moved, &g, 441.0, perm(i));
            for k in 0..3 {
                assert_relative_eq!(ga[k], gb[k], max_relative = 1e-12, epsilon = 1e-300);
            }
        }
    }

    fn rotate(p: [f64; 3], angle: f64) -> [f64; 3] {
        let (s, c) = angle.sin_cos();
        [c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]]
    }

    proptest! {
        #[test]
        fn isometry_invariance(seed in 0u64..1000, angle in 0.0f64..std::f64::consts::TAU, shift in -100.0f64..100.0) {
            let (pts, g, _) = random_instance(seed, 8, 0.3, 0.0, 255.0);
            let moved: Vec<[f64; 3]> = pts.iter().map(|&p| vec3::add(rotate(p, angle), [shift, -shift, 2.0 * shift])).collect();
            let q0 = quality_with_diameter(&pts, &g, 441.0);
            let q1 = quality_with_diameter(&moved, &g, 441.0);
            prop_assert!(((q0 - q1) / q0).abs() < 1e-12);
        }

        #[test]
        fn scale_covariance(seed in 0u64..1000, s in 0.1f64..20.0) {
            let (pts, g, _) = random_instance(seed, 8, 0.3, 0.0, 255.0);
            let scaled: Vec<[f64; 3]> = pts.iter().map(|&p| vec3::scale(p, s)).collect();
            let q0 = quality_with_diameter(&pts, &g, 441.0);
            let q1 = quality_with_diameter(&scaled, &g, 441.0 * s);
            prop_assert!((q1 / (q0 * s.powi(-4)) - 1.0).abs() < 1e-10);
        }
    }
}
