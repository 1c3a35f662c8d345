//! Seeded samplers for `Γ(n, p)` and `X(n, p)` and the Monte Carlo
//! experiments built on them.
//!
//! Trial `t` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `t`, so every trial is reproducible on its own and the aggregate
//! does not depend on how trials are scheduled across threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{neighborhood_stats, pair_count, pairs, Graph, MixedGraph, PairState};
use crate::iso::{find_nontrivial_automorphism, is_self_converse};

pub const DEFAULT_EPSILON: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("trial budget must be at least 1")]
    ZeroTrials,
    #[error("epsilon {0} is outside (0, 1)")]
    Epsilon(f64),
    #[error("the degree/codegree experiment is defined for p = 1/4, got {0}")]
    Lemma1Probability(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub epsilon: f64,
}

impl ExperimentConfig {
    pub fn new(n: usize, p: f64, trials: u64, seed: u64) -> Self {
        Self {
            n,
            p,
            trials,
            seed,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn with_epsilon(self, epsilon: f64) -> Self {
        Self { epsilon, ..self }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(ExperimentError::Probability(self.p));
        }
        if self.trials == 0 {
            return Err(ExperimentError::ZeroTrials);
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(ExperimentError::Epsilon(self.epsilon));
        }
        Ok(())
    }
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn coin<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    rng.gen::<f64>() < p
}

/// `Γ(n, p)`: one uniform draw per pair, pairs in lexicographic order.
pub fn sample_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges = pairs(n).filter(|_| coin(rng, p)).collect();
    Graph::from_normalized(n, edges)
}

/// `X(n, p)`: per pair, draw the arc `min → max` then the arc `max → min`;
/// both present make an edge.
pub fn sample_mixed<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> MixedGraph {
    let mut states = Vec::with_capacity(pair_count(n));
    for _ in 0..pair_count(n) {
        let forward = coin(rng, p);
        let backward = coin(rng, p);
        states.push(match (forward, backward) {
            (true, true) => PairState::Edge,
            (true, false) => PairState::Forward,
            (false, true) => PairState::Backward,
            (false, false) => PairState::None,
        });
    }
    MixedGraph::from_pair_states(n, &states).expect("one state per pair")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub estimate: f64,
    pub successes: u64,
    pub trials: u64,
    pub stderr: f64,
    /// Named distributions, value -> number of trials.
    pub histograms: BTreeMap<String, BTreeMap<u64, u64>>,
    /// Named scalar statistics.
    pub statistics: BTreeMap<String, f64>,
}

impl ExperimentReport {
    fn from_counts(successes: u64, trials: u64) -> Self {
        let estimate = successes as f64 / trials as f64;
        Self {
            estimate,
            successes,
            trials,
            stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
            histograms: BTreeMap::new(),
            statistics: BTreeMap::new(),
        }
    }

    fn histogram(&mut self, name: &str, values: impl IntoIterator<Item = u64>) {
        let h = self.histograms.entry(name.to_string()).or_default();
        for v in values {
            *h.entry(v).or_insert(0) += 1;
        }
    }
}

/// Runs `trial` for every index in parallel, returning outcomes in index order.
fn run_trials<T, F>(cfg: &ExperimentConfig, trial: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| trial(&mut trial_rng(cfg.seed, t)))
        .collect()
}

/// Fraction of sampled `Γ(n, p)` with no non-identity automorphism.
///
/// The `moved_vertices` histogram records, for symmetric samples, how many
/// vertices the first automorphism found moves.
pub fn run_asymmetry_experiment(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let moved: Vec<Option<u64>> = run_trials(cfg, |rng| {
        let g = sample_graph(cfg.n, cfg.p, rng);
        find_nontrivial_automorphism(&g).map(|f| f.moved_points() as u64)
    });
    let successes = moved.iter().filter(|m| m.is_none()).count() as u64;
    let mut report = ExperimentReport::from_counts(successes, cfg.trials);
    report.histogram("moved_vertices", moved.into_iter().flatten());
    Ok(report)
}

/// Fraction of sampled `Γ(n, 1/4)` with minimum degree at least
/// `(n/4)(1 - ε)` and every codegree at most `(n/8)(1 + ε)`.
pub fn run_lemma1_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    if cfg.p != 0.25 {
        return Err(ExperimentError::Lemma1Probability(cfg.p));
    }
    let n = cfg.n as f64;
    let degree_floor = n / 4.0 * (1.0 - cfg.epsilon);
    let codegree_ceiling = n / 8.0 * (1.0 + cfg.epsilon);

    let samples: Vec<(u64, u64, u64)> = run_trials(cfg, |rng| {
        let g = sample_graph(cfg.n, cfg.p, rng);
        let stats = neighborhood_stats(&g);
        (
            stats.min_degree as u64,
            stats.max_codegree as u64,
            2 * g.edge_count() as u64,
        )
    });
    let successes = samples
        .iter()
        .filter(|&&(d, c, _)| d as f64 >= degree_floor && c as f64 <= codegree_ceiling)
        .count() as u64;

    let mut report = ExperimentReport::from_counts(successes, cfg.trials);
    report.histogram("min_degree", samples.iter().map(|s| s.0));
    report.histogram("max_codegree", samples.iter().map(|s| s.1));
    let degree_sum: u64 = samples.iter().map(|s| s.2).sum();
    let mean_degree = if cfg.n == 0 {
        0.0
    } else {
        degree_sum as f64 / (n * cfg.trials as f64)
    };
    report.statistics.insert("mean_degree".into(), mean_degree);
    report
        .statistics
        .insert("min_degree_threshold".into(), degree_floor);
    report
        .statistics
        .insert("max_codegree_threshold".into(), codegree_ceiling);
    report.statistics.insert(
        "observed_max_codegree".into(),
        samples.iter().map(|s| s.1).max().unwrap_or(0) as f64,
    );
    Ok(report)
}

/// Fraction of sampled `X(n, p)` isomorphic to their converse.
pub fn run_selfconverse_experiment(
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let moved: Vec<Option<u64>> = run_trials(cfg, |rng| {
        let x = sample_mixed(cfg.n, cfg.p, rng);
        is_self_converse(&x).map.map(|f| {
            debug_assert!(x.symmetric_subgraph().is_automorphism(&f));
            f.moved_points() as u64
        })
    });
    let successes = moved.iter().filter(|m| m.is_some()).count() as u64;
    let mut report = ExperimentReport::from_counts(successes, cfg.trials);
    report.histogram("witness_moved_vertices", moved.into_iter().flatten());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let ok = ExperimentConfig::new(5, 0.5, 10, 1);
        assert!(ok.validate().is_ok());
        assert_eq!(
            ExperimentConfig::new(5, 1.5, 10, 1).validate(),
            Err(ExperimentError::Probability(1.5))
        );
        assert_eq!(
            ExperimentConfig::new(5, 0.5, 0, 1).validate(),
            Err(ExperimentError::ZeroTrials)
        );
        assert_eq!(
            ok.with_epsilon(1.0).validate(),
            Err(ExperimentError::Epsilon(1.0))
        );
        assert_eq!(
            run_lemma1_experiment(&ok),
            Err(ExperimentError::Lemma1Probability(0.5))
        );
        assert_eq!(
            run_asymmetry_experiment(&ExperimentConfig::new(5, 0.25, 0, 1)),
            Err(ExperimentError::ZeroTrials)
        );
    }

    #[test]
    fn extreme_probabilities() {
        let mut rng = trial_rng(3, 0);
        assert_eq!(sample_graph(6, 0.0, &mut rng), Graph::empty(6));
        assert_eq!(sample_graph(6, 1.0, &mut rng), Graph::complete(6));
        assert_eq!(sample_mixed(6, 0.0, &mut rng), MixedGraph::empty(6));
        let full = sample_mixed(6, 1.0, &mut rng);
        assert_eq!(full.edge_count(), 15);
        assert_eq!(full.arc_count(), 0);
    }

    #[test]
    fn draw_counts_are_fixed() {
        // Sampling consumes exactly one f64 per pair (two for mixed graphs).
        let mut a = trial_rng(9, 4);
        let mut b = trial_rng(9, 4);
        sample_graph(7, 0.3, &mut a);
        for _ in 0..21 {
            b.gen::<f64>();
        }
        assert_eq!(a.gen::<u64>(), b.gen::<u64>());

        sample_mixed(7, 0.3, &mut a);
        for _ in 0..42 {
            b.gen::<f64>();
        }
        assert_eq!(a.gen::<u64>(), b.gen::<u64>());
    }

    #[test]
    fn trials_are_independent_streams() {
        let g0 = sample_graph(30, 0.5, &mut trial_rng(1, 0));
        let g1 = sample_graph(30, 0.5, &mut trial_rng(1, 1));
        assert_ne!(g0, g1);
        assert_eq!(g0, sample_graph(30, 0.5, &mut trial_rng(1, 0)));
    }

    #[test]
    fn edge_density_concentrates() {
        let n = 1000;
        let g = sample_graph(n, 0.25, &mut trial_rng(11, 0));
        let m = pair_count(n) as f64;
        let sigma = (m * 0.25 * 0.75).sqrt();
        assert!((g.edge_count() as f64 - 0.25 * m).abs() < 5.0 * sigma);
    }

    #[test]
    fn mixed_pair_states_uniform_at_half() {
        let mut counts = [0u64; 4];
        let mut rng = trial_rng(5, 0);
        let samples = 2000;
        for _ in 0..samples {
            for s in sample_mixed(6, 0.5, &mut rng).pair_states() {
                counts[s.digit() as usize] += 1;
            }
        }
        let total = (samples * 15) as f64;
        let sigma = (total * 0.25 * 0.75).sqrt();
        for c in counts {
            assert!((c as f64 - total / 4.0).abs() < 5.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn degenerate_orders() {
        let r = run_asymmetry_experiment(&ExperimentConfig::new(1, 0.25, 20, 0)).unwrap();
        assert_eq!(r.estimate, 1.0);
        let r = run_asymmetry_experiment(&ExperimentConfig::new(2, 0.25, 20, 0)).unwrap();
        assert_eq!(r.estimate, 0.0);
        assert_eq!(r.histograms["moved_vertices"], BTreeMap::from([(2, 20)]));

        let r = run_lemma1_experiment(&ExperimentConfig::new(2, 0.25, 50, 0)).unwrap();
        assert_eq!(r.histograms["max_codegree"], BTreeMap::from([(0, 50)]));

        let r = run_selfconverse_experiment(&ExperimentConfig::new(2, 0.5, 100, 7)).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = ExperimentConfig::new(7, 0.5, 300, 42);
        let a = run_selfconverse_experiment(&cfg).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| run_selfconverse_experiment(&cfg).unwrap());
        assert_eq!(a, b);
        assert!(a.successes <= a.trials);
        assert!((0.0..=1.0).contains(&a.estimate));
    }
}
