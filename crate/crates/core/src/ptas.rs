//! Sampling-based approximation scheme for k-means and k-median.
//!
//! One restart builds `k` centers. At step `i` it D²-samples `N` points
//! against the centers chosen so far, picks an `M`-point subset `T` of that
//! sample, and adds the centroid `m(T)` as the next center. The whole
//! procedure is repeated `restarts` times and the cheapest center set wins.
//!
//! How `T` is picked is the [`SubsetStrategy`]:
//!
//! - [`SubsetStrategy::Exhaustive`] tries every subset at every step and
//!   scores complete `k`-tuples by final cost. Subsets are multisets of
//!   point indices (the sample is drawn with replacement), enumerated once
//!   each in lexicographic order of their sorted index tuple. Every branch
//!   draws its own sample, so the work grows like `C(N, M)^k`.
//! - [`SubsetStrategy::RandomTrials`] draws `R` random subsets per step and
//!   greedily keeps the one with the lowest partial cost `Δ(P, C ∪ {m(T)})`.
//!   [`SubsetDraw`] decides how those subsets are drawn.
//!
//! [`find_k_means`] runs on the squared Euclidean kernel directly;
//! [`find_k_median`] accepts any [`Dissimilarity`].

use std::time::Instant;

use log::warn;
use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::divergence::{centroid_of, cluster_cost, Dissimilarity, MeasureConstants, SqEuclidean};
use crate::error::{Error, Result};
use crate::point::{Dataset, Point};
use crate::rng::RngStream;
use crate::sampler::{CenterSet, D2Sampler};

/// Invariant factor constant used by the squared Euclidean analysis.
pub const MAIN_TEXT_ETA: f64 = 20.0;

/// Largest number of leaves an exhaustive search is allowed to visit.
pub const MAX_EXHAUSTIVE_LEAVES: f64 = 1e9;

/// Failure probability used when sizing samples from the sampling property.
const SAMPLING_DELTA: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetStrategy {
    Exhaustive,
    RandomTrials(usize),
}

/// How [`SubsetStrategy::RandomTrials`] draws a subset of the sample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetDraw {
    /// `M` distinct sample positions, uniformly.
    #[default]
    Uniform,
    /// A uniformly chosen sample position and the `M - 1` sample positions
    /// nearest to it (ties by position). Uniform subsets of a sample that
    /// mixes several clusters are almost never drawn from one cluster.
    Anchored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalePreset {
    /// Sample sizes from the worst-case analysis.
    PaperExact,
    /// Small constants that run in seconds.
    Desk,
    /// Caller-chosen constants.
    Custom,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PtasConfig {
    pub k: usize,
    pub epsilon: f64,
    /// Points D²-sampled per step (`N`).
    pub sample_size: usize,
    /// Points per candidate subset (`M`).
    pub subset_size: usize,
    pub restarts: usize,
    pub strategy: SubsetStrategy,
    #[serde(default)]
    pub subset_draw: SubsetDraw,
    pub eta: f64,
    pub preset: ScalePreset,
    /// Worker threads for restarts; 0 or 1 runs sequentially.
    #[serde(default)]
    pub threads: usize,
    /// Measure constants the paper-scale sizes were derived from; `None`
    /// means the squared Euclidean main-text constants.
    #[serde(default)]
    pub derived_from: Option<MeasureConstants>,
}

fn ceil_count(x: f64) -> usize {
    // Shave float noise so exact integers do not round up.
    (x * (1.0 - 1e-12)).ceil().max(1.0) as usize
}

fn clamp_epsilon(epsilon: f64) -> f64 {
    if epsilon > 0.5 {
        warn!("epsilon {epsilon} exceeds 1/2; clamping");
        0.5
    } else {
        epsilon
    }
}

impl PtasConfig {
    /// Squared Euclidean constants: `N = ⌈51200 k / ε³⌉`, `M = ⌈100 / ε⌉`,
    /// `2^k` restarts, exhaustive subsets.
    pub fn paper_kmeans(k: usize, epsilon: f64) -> Self {
        let epsilon = clamp_epsilon(epsilon);
        PtasConfig {
            k,
            epsilon,
            sample_size: ceil_count(51200.0 * k as f64 / epsilon.powi(3)),
            subset_size: ceil_count(100.0 / epsilon),
            restarts: restarts_for(k),
            strategy: SubsetStrategy::Exhaustive,
            subset_draw: SubsetDraw::Uniform,
            eta: MAIN_TEXT_ETA,
            preset: ScalePreset::PaperExact,
            threads: 0,
            derived_from: None,
        }
    }

    /// Constants derived from a measure's `alpha`, `beta` and sampling size
    /// `f(γ, δ)`: `η = 2α²/β² (1 + 1/β)`, `M = ⌈f(ε/η, 0.2)⌉`,
    /// `N = ⌈24 η α β k f(ε/η, 0.2) / ε²⌉`.
    pub fn paper<D: Dissimilarity + ?Sized>(k: usize, epsilon: f64, measure: &D) -> Self {
        let epsilon = clamp_epsilon(epsilon);
        let c = measure.constants();
        let eta = c.eta();
        let f = measure.sampling_size(epsilon / eta, SAMPLING_DELTA);
        PtasConfig {
            k,
            epsilon,
            sample_size: ceil_count(
                24.0 * eta * c.alpha * c.beta * k as f64 * f / (epsilon * epsilon),
            ),
            subset_size: ceil_count(f),
            restarts: restarts_for(k),
            strategy: SubsetStrategy::Exhaustive,
            subset_draw: SubsetDraw::Uniform,
            eta,
            preset: ScalePreset::PaperExact,
            threads: 0,
            derived_from: Some(c),
        }
    }

    /// `N = 100`, `M = 10`, 50 random subsets per step, 8 restarts.
    pub fn desk(k: usize, epsilon: f64) -> Self {
        PtasConfig {
            k,
            epsilon: clamp_epsilon(epsilon),
            sample_size: 100,
            subset_size: 10,
            restarts: 8,
            strategy: SubsetStrategy::RandomTrials(50),
            subset_draw: SubsetDraw::Anchored,
            eta: MAIN_TEXT_ETA,
            preset: ScalePreset::Desk,
            threads: 0,
            derived_from: None,
        }
    }

    pub fn custom(k: usize, epsilon: f64, sample_size: usize, subset_size: usize) -> Self {
        PtasConfig {
            k,
            epsilon: clamp_epsilon(epsilon),
            sample_size,
            subset_size,
            restarts: restarts_for(k),
            strategy: SubsetStrategy::Exhaustive,
            subset_draw: SubsetDraw::Uniform,
            eta: MAIN_TEXT_ETA,
            preset: ScalePreset::Custom,
            threads: 0,
            derived_from: None,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_strategy(mut self, strategy: SubsetStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_subset_draw(mut self, draw: SubsetDraw) -> Self {
        self.subset_draw = draw;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    /// Same settings for a different `k` and `ε`. Paper-scale sizes and the
    /// restart count are recomputed; other presets keep their sizes.
    pub fn rescaled(&self, k: usize, epsilon: f64) -> Self {
        if self.preset == ScalePreset::PaperExact {
            let fresh = match self.derived_from {
                None => Self::paper_kmeans(k, epsilon),
                Some(c) => Self::paper(k, epsilon, &Declared(c)),
            };
            return PtasConfig {
                threads: self.threads,
                strategy: self.strategy,
                subset_draw: self.subset_draw,
                ..fresh
            };
        }
        PtasConfig {
            k,
            epsilon: clamp_epsilon(epsilon),
            ..self.clone()
        }
    }

    /// Checks ranges; clamps `ε` to `1/2`.
    pub fn validated(&self) -> Result<PtasConfig> {
        let mut cfg = self.clone();
        if cfg.k == 0 {
            return Err(Error::Config("k must be >= 1".into()));
        }
        if cfg.epsilon.is_nan() || cfg.epsilon <= 0.0 || !cfg.epsilon.is_finite() {
            return Err(Error::Config(format!(
                "epsilon must be positive, got {}",
                cfg.epsilon
            )));
        }
        cfg.epsilon = clamp_epsilon(cfg.epsilon);
        if cfg.sample_size == 0 || cfg.subset_size == 0 {
            return Err(Error::Config("sample and subset sizes must be >= 1".into()));
        }
        if cfg.subset_size > cfg.sample_size {
            return Err(Error::Config(format!(
                "subset size M = {} exceeds sample size N = {}",
                cfg.subset_size, cfg.sample_size
            )));
        }
        if cfg.restarts == 0 {
            return Err(Error::Config("restarts must be >= 1".into()));
        }
        if cfg.strategy == SubsetStrategy::RandomTrials(0) {
            return Err(Error::Config("random trials must be >= 1".into()));
        }
        Ok(cfg)
    }

    /// `ln C(N, M)`.
    pub fn ln_subsets_per_step(&self) -> f64 {
        ln_binomial(self.sample_size as u64, self.subset_size as u64)
    }

    /// Upper bound on leaves an exhaustive run visits on `n` points:
    /// `restarts * min(C(N, M), C(n + M - 1, M))^k`.
    pub fn exhaustive_leaf_bound(&self, n: usize) -> f64 {
        let m = self.subset_size as u64;
        let per_step = self
            .ln_subsets_per_step()
            .min(ln_binomial(n as u64 + m - 1, m));
        self.restarts as f64 * (per_step * self.k as f64).exp()
    }
}

fn restarts_for(k: usize) -> usize {
    1usize.checked_shl(k as u32).unwrap_or(usize::MAX)
}

/// `ln C(n, m)`, summed term by term.
pub fn ln_binomial(n: u64, m: u64) -> f64 {
    if m > n {
        return f64::NEG_INFINITY;
    }
    let m = m.min(n - m);
    (0..m)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

/// Stand-in measure carrying only constants, for recomputing sizes.
struct Declared(MeasureConstants);

impl Dissimilarity for Declared {
    fn eval(&self, _: &[f64], _: &[f64]) -> Result<f64> {
        Err(Error::UnsupportedMeasure("constants only".into()))
    }

    fn constants(&self) -> MeasureConstants {
        self.0
    }
}

/// One step of a restart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    /// D²-sampled point indices, in draw order.
    pub sample: Vec<usize>,
    /// Point indices of the chosen subset, sorted.
    pub subset: Vec<usize>,
    pub center: Point,
    /// Cost after adding `center`.
    pub partial_cost: f64,
    /// The step ran on an all-zero potential and was filled in.
    pub filled: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub method: String,
    pub seed: u64,
    pub stream_id: u64,
    pub restarts: usize,
    pub best_restart: usize,
    pub subsets_examined: u64,
    pub strategy: Option<SubsetStrategy>,
    /// Lloyd iterations, or the `k` that won in [`find_best_over_k`].
    pub iterations: usize,
    pub cost_history: Vec<f64>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    pub centers: Vec<Point>,
    pub assignment: Vec<usize>,
    pub cost: f64,
    pub meta: RunMeta,
    /// Per-step trace of the winning restart (PTAS runs only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<IterationTrace>,
}

impl ClusteringResult {
    pub fn from_centers<D: Dissimilarity + ?Sized>(
        dataset: &Dataset,
        measure: &D,
        centers: Vec<Point>,
        meta: RunMeta,
    ) -> Result<Self> {
        let a = cluster_cost(measure, dataset, &centers)?;
        Ok(ClusteringResult {
            centers,
            assignment: a.labels,
            cost: a.cost,
            meta,
            trace: Vec::new(),
        })
    }
}

fn check_inputs<D: Dissimilarity + ?Sized>(dataset: &Dataset, measure: &D, k: usize) -> Result<()> {
    if dataset.len() < k {
        return Err(Error::InsufficientPoints {
            n: dataset.len(),
            k,
        });
    }
    let domain = measure.domain();
    for p in dataset.points() {
        domain.check(p)?;
    }
    Ok(())
}

struct Restart {
    cost: f64,
    centers: Vec<Point>,
    trace: Vec<IterationTrace>,
    examined: u64,
}

struct Engine<'a, D: ?Sized> {
    dataset: &'a Dataset,
    measure: &'a D,
    config: &'a PtasConfig,
}

impl<D: Dissimilarity + ?Sized> Engine<'_, D> {
    /// Completes a zero-potential set to `k` centers using data points not
    /// already present, falling back to repeats when none remain.
    fn fill(&self, set: &mut CenterSet, trace: &mut Vec<IterationTrace>) -> Result<()> {
        let mut candidates = self.dataset.points().iter().enumerate();
        while set.len() < self.config.k {
            let next = candidates
                .by_ref()
                .find(|(_, p)| !set.centers().iter().any(|c| c == *p))
                .map(|(i, p)| (i, p.clone()));
            let (i, p) = next.unwrap_or_else(|| (0, self.dataset.point(0).clone()));
            set.add_center(p.clone(), self.dataset, self.measure)?;
            trace.push(IterationTrace {
                sample: Vec::new(),
                subset: vec![i],
                center: p,
                partial_cost: set.cost(),
                filled: true,
            });
        }
        Ok(())
    }

    fn random_trials(&self, stream: &RngStream, trials: usize) -> Result<Restart> {
        let (n_sample, m) = (self.config.sample_size, self.config.subset_size);
        let mut sample_rng = stream.substream(0).generator();
        // One trial stream per step, so a larger R only appends trials.
        let trials_stream = stream.substream(1);
        let mut set = CenterSet::empty(self.dataset);
        let mut trace = Vec::with_capacity(self.config.k);
        let mut examined = 0u64;
        for step in 0..self.config.k {
            let mut trial_rng = trials_stream.substream(step as u64).generator();
            if !set.is_empty() && set.total_potential() == 0.0 {
                self.fill(&mut set, &mut trace)?;
                break;
            }
            let sample = set.sampler().draw_many(&mut sample_rng, n_sample)?;
            let mut best: Option<(f64, Vec<usize>, Point)> = None;
            for _ in 0..trials {
                let subset = match self.config.subset_draw {
                    SubsetDraw::Uniform => random_subset(&mut trial_rng, &sample, m),
                    SubsetDraw::Anchored => {
                        anchored_subset(&mut trial_rng, self.dataset, self.measure, &sample, m)?
                    }
                };
                let center = centroid_of(self.dataset, &subset)?;
                let score = set.cost_with(&center, self.dataset, self.measure)?;
                examined += 1;
                if best.as_ref().is_none_or(|b| score < b.0) {
                    best = Some((score, subset, center));
                }
            }
            let (_, subset, center) = best.expect("at least one trial");
            set.add_center(center.clone(), self.dataset, self.measure)?;
            trace.push(IterationTrace {
                sample,
                subset,
                center,
                partial_cost: set.cost(),
                filled: false,
            });
        }
        Ok(Restart {
            cost: set.cost(),
            centers: set.centers().to_vec(),
            trace,
            examined,
        })
    }

    fn exhaustive(&self, stream: &RngStream) -> Result<Restart> {
        let mut rng = stream.substream(0).generator();
        let mut best: Option<Restart> = None;
        let mut path = Vec::with_capacity(self.config.k);
        let mut examined = 0u64;
        self.explore(
            CenterSet::empty(self.dataset),
            &mut rng,
            &mut path,
            &mut best,
            &mut examined,
        )?;
        let mut best = best.expect("search visits at least one leaf");
        best.examined = examined;
        Ok(best)
    }

    fn explore(
        &self,
        set: CenterSet,
        rng: &mut ChaCha8Rng,
        path: &mut Vec<IterationTrace>,
        best: &mut Option<Restart>,
        examined: &mut u64,
    ) -> Result<()> {
        let depth = set.len();
        let leaf = |set: &CenterSet, path: &[IterationTrace], best: &mut Option<Restart>| {
            let cost = set.cost();
            if best.as_ref().is_none_or(|b| cost < b.cost) {
                *best = Some(Restart {
                    cost,
                    centers: set.centers().to_vec(),
                    trace: path.to_vec(),
                    examined: 0,
                });
            }
        };
        if depth == self.config.k {
            leaf(&set, path, best);
            return Ok(());
        }
        if depth > 0 && set.total_potential() == 0.0 {
            let mut filled = set;
            let mark = path.len();
            self.fill(&mut filled, path)?;
            leaf(&filled, path, best);
            path.truncate(mark);
            return Ok(());
        }
        let sampler: D2Sampler = set.sampler();
        let sample = sampler.draw_many(rng, self.config.sample_size)?;
        for subset in multisets(&sample, self.config.subset_size) {
            *examined += 1;
            let center = centroid_of(self.dataset, &subset)?;
            let child = set
                .clone()
                .with_center(center.clone(), self.dataset, self.measure)?;
            path.push(IterationTrace {
                sample: sample.clone(),
                subset,
                center,
                partial_cost: child.cost(),
                filled: false,
            });
            self.explore(child, rng, path, best, examined)?;
            path.pop();
        }
        Ok(())
    }

    fn restart(&self, stream: &RngStream) -> Result<Restart> {
        match self.config.strategy {
            SubsetStrategy::Exhaustive => self.exhaustive(stream),
            SubsetStrategy::RandomTrials(r) => self.random_trials(stream, r),
        }
    }
}

/// `m` distinct sample positions, mapped to point indices and sorted.
fn random_subset<R: Rng + ?Sized>(rng: &mut R, sample: &[usize], m: usize) -> Vec<usize> {
    let mut subset: Vec<usize> = index::sample(rng, sample.len(), m)
        .into_iter()
        .map(|p| sample[p])
        .collect();
    subset.sort_unstable();
    subset
}

fn anchored_subset<R: Rng + ?Sized, D: Dissimilarity + ?Sized>(
    rng: &mut R,
    dataset: &Dataset,
    measure: &D,
    sample: &[usize],
    m: usize,
) -> Result<Vec<usize>> {
    let anchor = dataset.point(sample[rng.random_range(0..sample.len())]);
    let mut by_distance = sample
        .iter()
        .enumerate()
        .map(|(pos, &i)| Ok((measure.eval(dataset.point(i), anchor)?, pos)))
        .collect::<Result<Vec<(f64, usize)>>>()?;
    by_distance.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut subset: Vec<usize> = by_distance[..m]
        .iter()
        .map(|&(_, pos)| sample[pos])
        .collect();
    subset.sort_unstable();
    Ok(subset)
}

/// Every distinct size-`m` sub-multiset of `sample`, as sorted index tuples
/// in lexicographic order.
pub fn multisets(sample: &[usize], m: usize) -> Vec<Vec<usize>> {
    let mut values: Vec<usize> = sample.to_vec();
    values.sort_unstable();
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    for v in values {
        match distinct.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => distinct.push((v, 1)),
        }
    }
    fn rec(
        distinct: &mut [(usize, usize)],
        start: usize,
        remaining: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for j in start..distinct.len() {
            if distinct[j].1 == 0 {
                continue;
            }
            distinct[j].1 -= 1;
            current.push(distinct[j].0);
            rec(distinct, j, remaining - 1, current, out);
            current.pop();
            distinct[j].1 += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut distinct, 0, m, &mut Vec::with_capacity(m), &mut out);
    out
}

/// One restart of the scheme, with its per-step trace.
pub fn run_one_restart<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    config: &PtasConfig,
    stream: &RngStream,
) -> Result<ClusteringResult> {
    let start = Instant::now();
    let config = config.validated()?;
    check_inputs(dataset, measure, config.k)?;
    guard_exhaustive(&config, dataset.len())?;
    let engine = Engine {
        dataset,
        measure,
        config: &config,
    };
    let run = engine.restart(stream)?;
    finish(dataset, measure, &config, stream, run, 1, 0, start)
}

fn guard_exhaustive(config: &PtasConfig, n: usize) -> Result<()> {
    if config.strategy == SubsetStrategy::Exhaustive {
        let bound = config.exhaustive_leaf_bound(n);
        if bound > MAX_EXHAUSTIVE_LEAVES {
            return Err(Error::TooLarge(format!(
                "exhaustive search over up to {bound:.3e} leaves (N = {}, M = {}, k = {})",
                config.sample_size, config.subset_size, config.k
            )));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    config: &PtasConfig,
    stream: &RngStream,
    run: Restart,
    restarts: usize,
    best_restart: usize,
    start: Instant,
) -> Result<ClusteringResult> {
    let meta = RunMeta {
        method: "ptas".into(),
        seed: stream.seed,
        stream_id: stream.stream_id,
        restarts,
        best_restart,
        subsets_examined: run.examined,
        strategy: Some(config.strategy),
        iterations: config.k,
        cost_history: run.trace.iter().map(|t| t.partial_cost).collect(),
        seconds: 0.0,
    };
    let mut result = ClusteringResult::from_centers(dataset, measure, run.centers, meta)?;
    result.trace = run.trace;
    result.meta.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Best of `config.restarts` independent restarts; restart `r` runs on
/// `stream.substream(r)`. Ties go to the lowest restart index.
pub fn find_k_median<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    config: &PtasConfig,
    stream: &RngStream,
) -> Result<ClusteringResult> {
    let start = Instant::now();
    let config = config.validated()?;
    check_inputs(dataset, measure, config.k)?;
    guard_exhaustive(&config, dataset.len())?;
    let engine = Engine {
        dataset,
        measure,
        config: &config,
    };
    let run_one = |r: usize| {
        engine
            .restart(&stream.substream(r as u64))
            .map(|run| (r, run))
    };

    let runs: Vec<(usize, Restart)> = if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..config.restarts)
                .into_par_iter()
                .map(run_one)
                .collect::<Result<_>>()
        })?
    } else {
        (0..config.restarts).map(run_one).collect::<Result<_>>()?
    };

    let examined: u64 = runs.iter().map(|(_, r)| r.examined).sum();
    let (best_restart, mut best) = runs
        .into_iter()
        .min_by(|a, b| a.1.cost.total_cmp(&b.1.cost).then(a.0.cmp(&b.0)))
        .expect("restarts >= 1");
    best.examined = examined;
    finish(
        dataset,
        measure,
        &config,
        stream,
        best,
        config.restarts,
        best_restart,
        start,
    )
}

/// [`find_k_median`] on the squared Euclidean kernel.
pub fn find_k_means(
    dataset: &Dataset,
    config: &PtasConfig,
    stream: &RngStream,
) -> Result<ClusteringResult> {
    find_k_median(dataset, &SqEuclidean, config, stream)
}

/// k-means++ seeding: `k` single-point D² draws.
pub fn kmeanspp_seed<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    k: usize,
    stream: &RngStream,
) -> Result<ClusteringResult> {
    let start = Instant::now();
    if k == 0 {
        return Err(Error::Config("k must be >= 1".into()));
    }
    check_inputs(dataset, measure, k)?;
    let mut rng = stream.generator();
    let mut set = CenterSet::empty(dataset);
    for _ in 0..k {
        let i = set.sampler().draw(&mut rng);
        set.add_center(dataset.point(i).clone(), dataset, measure)?;
    }
    let meta = RunMeta {
        method: "kmeans++".into(),
        seed: stream.seed,
        stream_id: stream.stream_id,
        restarts: 1,
        iterations: k,
        ..RunMeta::default()
    };
    let mut result =
        ClusteringResult::from_centers(dataset, measure, set.centers().to_vec(), meta)?;
    result.meta.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Runs the scheme for every `i = 1..=k` with `ε' = ε / ((1 + ε/2) k)` and
/// returns all `k` results, index `i - 1` holding the `i`-center run.
pub fn candidates_over_k<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    config: &PtasConfig,
    stream: &RngStream,
) -> Result<Vec<ClusteringResult>> {
    let config = config.validated()?;
    let k = config.k;
    let scaled = config.epsilon / ((1.0 + config.epsilon / 2.0) * k as f64);
    (1..=k)
        .map(|i| {
            let cfg = config.rescaled(i, scaled);
            find_k_median(dataset, measure, &cfg, &stream.substream(i as u64))
        })
        .collect()
}

/// Cheapest of [`candidates_over_k`]; ties go to the smaller center count.
/// `meta.iterations` records the winning count.
pub fn find_best_over_k<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    config: &PtasConfig,
    stream: &RngStream,
) -> Result<ClusteringResult> {
    let start = Instant::now();
    let candidates = candidates_over_k(dataset, measure, config, stream)?;
    let (i, mut best) = candidates
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1.cost.total_cmp(&b.1.cost).then(a.0.cmp(&b.0)))
        .expect("k >= 1");
    best.meta.method = "ptas-best-over-k".into();
    best.meta.iterations = i + 1;
    best.meta.seconds = start.elapsed().as_secs_f64();
    Ok(best)
}

/// Matches each center to a distinct ground-truth cluster `j` with
/// `Δ(O_j, c) <= factor * Δ(O_j, m(O_j))`. Returns the cluster index per
/// center, or `None` if no such matching exists.
pub fn match_centers_to_clusters<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    labels: &[usize],
    centers: &[Point],
    factor: f64,
) -> Result<Option<Vec<usize>>> {
    let clusters = labels.iter().copied().max().map_or(0, |m| m + 1);
    let members: Vec<Vec<&[f64]>> = (0..clusters)
        .map(|j| {
            labels
                .iter()
                .zip(dataset.points())
                .filter(|(l, _)| **l == j)
                .map(|(_, p)| p.coords())
                .collect()
        })
        .collect();
    let mut optimal = Vec::with_capacity(clusters);
    for m in &members {
        optimal.push(if m.is_empty() {
            f64::NAN
        } else {
            crate::divergence::single_center_cost(measure, m, &crate::divergence::centroid(m)?)?
        });
    }
    let mut ok = vec![vec![false; clusters]; centers.len()];
    for (l, c) in centers.iter().enumerate() {
        for j in 0..clusters {
            if members[j].is_empty() {
                continue;
            }
            let cost = crate::divergence::single_center_cost(measure, &members[j], c)?;
            ok[l][j] = cost <= factor * optimal[j] * (1.0 + 1e-12) + 1e-12;
        }
    }
    fn assign(l: usize, ok: &[Vec<bool>], used: &mut [bool], out: &mut Vec<usize>) -> bool {
        if l == ok.len() {
            return true;
        }
        for j in 0..used.len() {
            if ok[l][j] && !used[j] {
                used[j] = true;
                out.push(j);
                if assign(l + 1, ok, used, out) {
                    return true;
                }
                out.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; clusters];
    let mut out = Vec::new();
    Ok(assign(0, &ok, &mut used, &mut out).then_some(out))
}
