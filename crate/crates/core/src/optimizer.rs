//! Randomized hill climbing over colorings.
//!
//! Each iteration visits the regions in index order and proposes, for each,
//! a random jump, a swap with one other region, and a fixed-length step
//! along the descent direction (rescaled back into the gamut). The jump is a
//! uniform point in the ball of radius `step · Δ` around the current color,
//! rescaled into the gamut like the gradient step. Radial rescaling alone
//! pins boundary points whose descent direction points away from the
//! center, so the jump is what lets colors slide along the gamut surface. A proposal is
//! kept only if it strictly lowers the energy. An iteration that keeps
//! nothing halves the step (by default); the run stops once the step falls
//! below its threshold or the iteration budget is spent.
//!
//! Randomness comes from ChaCha8 seeded with [`OptimizerConfig::seed`] via
//! `SeedableRng::seed_from_u64`, so runs are reproducible across platforms.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::colorspace::{ColorSpace, Gamut};
use crate::error::{Error, Result};
use crate::quality::{descent_at, quality_with_diameter, Coloring};
use crate::regiongraph::RegionGraph;
use crate::vec3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub seed: u64,
    /// Initial step length as a fraction of the gamut diameter.
    pub step_init_fraction: f64,
    pub step_decay: f64,
    /// Threshold below which the run stops, as a fraction of the diameter.
    pub step_min_fraction: f64,
    pub max_iterations: usize,
    pub space: ColorSpace,
}

impl OptimizerConfig {
    pub fn new(space: ColorSpace) -> Self {
        Self {
            seed: 0,
            step_init_fraction: 0.1,
            step_decay: 0.5,
            step_min_fraction: 1e-4,
            max_iterations: 10_000,
            space,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok_steps = self.step_min_fraction > 0.0
            && self.step_min_fraction < self.step_init_fraction
            && self.step_init_fraction <= 1.0;
        if !ok_steps {
            return Err(Error::Validation(format!(
                "need 0 < step_min ({}) < step_init ({}) <= 1",
                self.step_min_fraction, self.step_init_fraction
            )));
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return Err(Error::Validation(format!(
                "step decay {} must lie in (0, 1)",
                self.step_decay
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Validation(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Accepted moves by type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCounts {
    pub jump: usize,
    pub swap: usize,
    pub gradient: usize,
}

impl MoveCounts {
    pub fn total(&self) -> usize {
        self.jump + self.swap + self.gradient
    }

    fn add(&mut self, other: MoveCounts) {
        self.jump += other.jump;
        self.swap += other.swap;
        self.gradient += other.gradient;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub final_quality: f64,
    pub iterations_used: usize,
    pub accepted_moves: MoveCounts,
    /// Energy of the initial coloring followed by the energy after each
    /// iteration.
    pub quality_trace: Vec<f64>,
    pub final_step_fraction: f64,
    /// True when the run ended because the step fell below its threshold.
    pub converged: bool,
}

/// Uniform sample from the gamut by rejection from its bounding box.
pub fn sample_in_gamut<R: Rng + ?Sized>(gamut: &Gamut, rng: &mut R) -> [f64; 3] {
    let (lo, hi) = gamut.bounding_box();
    loop {
        let x = [0, 1, 2].map(|k| lo[k] + (hi[k] - lo[k]) * rng.random::<f64>());
        if gamut.contains_coords(x) {
            return x;
        }
    }
}

/// Independent uniform colors from the gamut, one per region.
pub fn init_random(graph: &RegionGraph, gamut: &Gamut, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    init_with(graph, gamut, &mut rng)
}

fn init_with<R: Rng + ?Sized>(graph: &RegionGraph, gamut: &Gamut, rng: &mut R) -> Coloring {
    let points = (0..graph.n())
        .map(|_| sample_in_gamut(gamut, rng))
        .collect();
    Coloring::new(gamut.space(), points).expect("gamut samples are finite")
}

/// Random baseline coloring. In sRGB every channel is an independent
/// uniform integer in `0..=255`; in Lab colors are uniform over the hull.
pub fn random_baseline(graph: &RegionGraph, gamut: &Gamut, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match gamut.space() {
        ColorSpace::Srgb => {
            let points = (0..graph.n())
                .map(|_| [0, 1, 2].map(|_| f64::from(rng.random_range(0u8..=255))))
                .collect();
            Coloring::new(ColorSpace::Srgb, points).expect("integer channels are finite")
        }
        ColorSpace::Lab => init_with(graph, gamut, &mut rng),
    }
}

/// Uniform point in the unit ball.
fn unit_ball<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [0, 1, 2].map(|_| 2.0 * rng.random::<f64>() - 1.0);
        if vec3::dot(v, v) <= 1.0 {
            return v;
        }
    }
}

struct State<'a> {
    graph: &'a RegionGraph,
    gamut: &'a Gamut,
    points: &'a mut [[f64; 3]],
    quality: f64,
}

impl State<'_> {
    fn evaluate(&self) -> f64 {
        quality_with_diameter(self.points, self.graph, self.gamut.diameter())
    }

    /// Replaces the color of `i`; keeps the change only on strict improvement.
    fn try_replace(&mut self, i: usize, candidate: [f64; 3]) -> bool {
        let old = std::mem::replace(&mut self.points[i], candidate);
        let q = self.evaluate();
        if q < self.quality {
            self.quality = q;
            true
        } else {
            self.points[i] = old;
            false
        }
    }

    fn try_swap(&mut self, i: usize, j: usize) -> bool {
        self.points.swap(i, j);
        let q = self.evaluate();
        if q < self.quality {
            self.quality = q;
            true
        } else {
            self.points.swap(i, j);
            false
        }
    }

    fn sweep<R: Rng + ?Sized>(&mut self, step_fraction: f64, rng: &mut R) -> MoveCounts {
        let n = self.points.len();
        let step = step_fraction * self.gamut.diameter();
        let mut accepted = MoveCounts::default();
        for i in 0..n {
            let jump = self
                .gamut
                .project_coords(vec3::add(self.points[i], vec3::scale(unit_ball(rng), step)));
            if self.try_replace(i, jump) {
                accepted.jump += 1;
            }

            if n > 1 {
                let r = rng.random_range(0..n - 1);
                let j = if r >= i { r + 1 } else { r };
                if self.try_swap(i, j) {
                    accepted.swap += 1;
                }
            }

            let dir = descent_at(self.points, self.graph, self.gamut.diameter(), i);
            let len = vec3::norm(dir);
            if len > 0.0 && len.is_finite() {
                let moved = vec3::add(self.points[i], vec3::scale(dir, step / len));
                let candidate = self.gamut.project_coords(moved);
                if self.try_replace(i, candidate) {
                    accepted.gradient += 1;
                }
            }
        }
        accepted
    }
}

/// One sweep over all regions with step length `step_fraction · Δ`.
/// Returns the accepted moves; `chi` is updated in place.
pub fn iterate<R: Rng + ?Sized>(
    chi: &mut Coloring,
    graph: &RegionGraph,
    gamut: &Gamut,
    step_fraction: f64,
    rng: &mut R,
) -> Result<MoveCounts> {
    chi.check_compatible(graph, gamut)?;
    let quality = quality_with_diameter(chi.coords(), graph, gamut.diameter());
    let mut state = State {
        graph,
        gamut,
        points: chi.coords_mut(),
        quality,
    };
    Ok(state.sweep(step_fraction, rng))
}

/// Runs hill climbing from a random start.
pub fn optimize(
    graph: &RegionGraph,
    gamut: &Gamut,
    config: &OptimizerConfig,
) -> Result<(Coloring, RunReport)> {
    config.validate()?;
    Error::check_space(config.space, gamut.space())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut chi = init_with(graph, gamut, &mut rng);
    let initial = quality_with_diameter(chi.coords(), graph, gamut.diameter());
    let mut state = State {
        graph,
        gamut,
        points: chi.coords_mut(),
        quality: initial,
    };

    let mut step = config.step_init_fraction;
    let mut trace = vec![initial];
    let mut totals = MoveCounts::default();
    let mut iterations_used = 0;
    let mut converged = false;
    while iterations_used < config.max_iterations {
        iterations_used += 1;
        let accepted = state.sweep(step, &mut rng);
        totals.add(accepted);
        trace.push(state.quality);
        if accepted.total() == 0 {
            step *= config.step_decay;
            if step < config.step_min_fraction {
                converged = true;
                break;
            }
        }
    }

    let report = RunReport {
        seed: config.seed,
        final_quality: state.quality,
        iterations_used,
        accepted_moves: totals,
        quality_trace: trace,
        final_step_fraction: step,
        converged,
    };
    Ok((chi, report))
}

/// Runs `restarts` optimizations with seeds `seed, seed+1, ...` on separate
/// threads and keeps the lowest energy; ties go to the lower seed.
pub fn optimize_multistart(
    graph: &RegionGraph,
    gamut: &Gamut,
    config: &OptimizerConfig,
    restarts: usize,
) -> Result<(Coloring, RunReport)> {
    if restarts == 0 {
        return Err(Error::Validation("restarts must be at least 1".into()));
    }
    config.validate()?;
    let results: Vec<Result<(Coloring, RunReport)>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..restarts as u64)
            .map(|k| {
                let cfg = config.clone().with_seed(config.seed.wrapping_add(k));
                scope.spawn(move || optimize(graph, gamut, &cfg))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("optimizer thread panicked"))
            .collect()
    });
    let mut best: Option<(Coloring, RunReport)> = None;
    for result in results {
        let (chi, report) = result?;
        let better = match &best {
            None => true,
            Some((_, b)) => {
                report.final_quality < b.final_quality
                    || (report.final_quality == b.final_quality && report.seed < b.seed)
            }
        };
        if better {
            best = Some((chi, report));
        }
    }
    Ok(best.expect("at least one restart"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorspace::{make_lab_gamut, make_srgb_gamut};
    use crate::quality::quality;

    fn k(n: usize) -> RegionGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        RegionGraph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn config_validation() {
        let base = OptimizerConfig::new(ColorSpace::Lab);
        assert!(base.validate().is_ok());
        let mut c = base.clone();
        c.step_decay = 1.0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.step_min_fraction = 0.2;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.step_init_fraction = 1.5;
        assert!(c.validate().is_err());
        let mut c = base;
        c.max_iterations = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn init_random_is_deterministic_and_in_gamut() {
        let g = k(5);
        for gamut in [make_srgb_gamut(), make_lab_gamut()] {
            let a = init_random(&g, &gamut, 11);
            let b = init_random(&g, &gamut, 11);
            assert_eq!(a, b);
            assert_ne!(a, init_random(&g, &gamut, 12));
            assert!(a.iter().all(|p| gamut.contains(&p).unwrap()));
        }
        let single = RegionGraph::from_edge_list(1, &[]).unwrap();
        assert_eq!(init_random(&single, &make_lab_gamut(), 0).len(), 1);
    }

    #[test]
    fn lab_samples_match_the_hull_moments() {
        // Mean and standard deviation of a uniform 100^3 grid over the hull,
        // computed independently with a Delaunay point-location test.
        const MEAN: [f64; 3] = [58.623513, 15.080874, 7.007978];
        const STD: [f64; 3] = [19.381262, 35.745781, 37.416829];
        let n = 10_000;
        let g = RegionGraph::from_edge_list(n, &[]).unwrap();
        let chi = init_random(&g, &make_lab_gamut(), 99);
        for k in 0..3 {
            let mean = chi.coords().iter().map(|p| p[k]).sum::<f64>() / n as f64;
            let se = STD[k] / (n as f64).sqrt();
            assert!((mean - MEAN[k]).abs() < 3.0 * se, "axis {k}: mean {mean}");
        }
    }

    #[test]
    fn srgb_baseline_has_integer_channels() {
        let g = k(20);
        let gamut = make_srgb_gamut();
        let chi = random_baseline(&g, &gamut, 3);
        for p in chi.coords() {
            for c in p {
                assert_eq!(c.fract(), 0.0);
                assert!((0.0..=255.0).contains(c));
            }
        }
        assert_eq!(chi, random_baseline(&g, &gamut, 3));
        let lab = random_baseline(&g, &make_lab_gamut(), 3);
        assert!(lab.iter().all(|p| make_lab_gamut().contains(&p).unwrap()));
    }

    #[test]
    fn single_region_never_moves() {
        let g = RegionGraph::from_edge_list(1, &[]).unwrap();
        let gamut = make_lab_gamut();
        let mut chi = init_random(&g, &gamut, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let counts = iterate(&mut chi, &g, &gamut, 0.1, &mut rng).unwrap();
        assert_eq!(counts.total(), 0);

        let config = OptimizerConfig::new(ColorSpace::Lab);
        let (_, report) = optimize(&g, &gamut, &config).unwrap();
        assert_eq!(report.final_quality, 0.0);
        assert!(report.converged);
        // 0.1 halved until below 1e-4: ceil(log2(1000)) = 10 sweeps.
        assert_eq!(report.iterations_used, 10);
    }

    #[test]
    fn coincident_pair_takes_the_jump() {
        let g = RegionGraph::from_edge_list(2, &[]).unwrap();
        let gamut = make_srgb_gamut();
        let mut chi = Coloring::new(ColorSpace::Srgb, vec![[100.0; 3]; 2]).unwrap();
        let before = quality(&chi, &g, &gamut).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let counts = iterate(&mut chi, &g, &gamut, 0.1, &mut rng).unwrap();
        assert!(counts.jump >= 1);
        assert!(quality(&chi, &g, &gamut).unwrap() < before);
    }

    #[test]
    fn opposite_corners_reject_the_gradient_step() {
        let g = k(2);
        let gamut = make_srgb_gamut();
        let pts = vec![[0.0; 3], [255.0; 3]];
        // Direct evaluation: the step points outward along the diagonal and
        // projects back onto the same corner, so q is unchanged.
        let dir = descent_at(&pts, &g, gamut.diameter(), 0);
        let len = vec3::norm(dir);
        let moved = vec3::add(pts[0], vec3::scale(dir, 0.1 * gamut.diameter() / len));
        let proj = gamut.project_coords(moved);
        assert!(vec3::dist(proj, pts[0]) < 1e-9);
        let q0 = quality_with_diameter(&pts, &g, gamut.diameter());
        let q1 = quality_with_diameter(&[proj, pts[1]], &g, gamut.diameter());
        assert!(q1 >= q0 - 1e-15 * q0);

        let mut chi = Coloring::new(ColorSpace::Srgb, pts).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let counts = iterate(&mut chi, &g, &gamut, 0.1, &mut rng).unwrap();
        assert_eq!(counts.gradient, 0);
        assert_eq!(counts.total(), 0);
    }

    #[test]
    fn optimize_contracts() {
        let g = RegionGraph::from_edge_list(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)],
        )
        .unwrap();
        for gamut in [make_srgb_gamut(), make_lab_gamut()] {
            let config = OptimizerConfig::new(gamut.space()).with_seed(42);
            let (chi, report) = optimize(&g, &gamut, &config).unwrap();
            assert!(report.quality_trace.windows(2).all(|w| w[1] <= w[0]));
            assert!(chi.iter().all(|p| gamut.contains(&p).unwrap()));
            assert!(report.converged);
            assert_eq!(report.quality_trace.len(), report.iterations_used + 1);
            assert_eq!(report.final_quality, *report.quality_trace.last().unwrap());
            let (chi2, report2) = optimize(&g, &gamut, &config).unwrap();
            assert_eq!(chi, chi2);
            assert_eq!(report, report2);
        }
    }

    #[test]
    fn budget_limits_iterations() {
        let g = k(4);
        let gamut = make_lab_gamut();
        let mut config = OptimizerConfig::new(ColorSpace::Lab).with_seed(3);
        config.max_iterations = 2;
        let (_, report) = optimize(&g, &gamut, &config).unwrap();
        assert!(report.iterations_used <= 2);
    }

    #[test]
    fn space_mismatch_is_rejected() {
        let config = OptimizerConfig::new(ColorSpace::Srgb);
        assert!(matches!(
            optimize(&k(2), &make_lab_gamut(), &config),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn multistart_picks_the_best_seed() {
        let g = k(5);
        let gamut = make_srgb_gamut();
        let config = OptimizerConfig::new(ColorSpace::Srgb).with_seed(10);
        let (_, best) = optimize_multistart(&g, &gamut, &config, 3).unwrap();
        let singles: Vec<f64> = (10..13)
            .map(|s| {
                optimize(&g, &gamut, &config.clone().with_seed(s))
                    .unwrap()
                    .1
                    .final_quality
            })
            .collect();
        let min = singles.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(best.final_quality, min);
        assert!(optimize_multistart(&g, &gamut, &config, 0).is_err());
    }

    #[test]
    fn k2_reaches_opposite_corners() {
        let g = k(2);
        let gamut = make_srgb_gamut();
        let (chi, _) = optimize(
            &g,
            &gamut,
            &OptimizerConfig::new(ColorSpace::Srgb).with_seed(1),
        )
        .unwrap();
        let d = crate::colorspace::distance(&chi.point(0), &chi.point(1)).unwrap();
        assert!(d >= 0.99 * 255.0 * 3f64.sqrt(), "distance {d}");
    }
}
