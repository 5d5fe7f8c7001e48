//! Ground truth for small instances, and the classical baseline.
//!
//! [`optimal_bruteforce`] enumerates every assignment of points to `k`
//! labels and prices each cluster at its mean, which is exact for any
//! measure with the centroid property. [`lloyd`] is the usual alternating
//! heuristic. [`irreducibility`] and [`inaba_trial`] measure the two
//! quantities the approximation guarantee is phrased in.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::divergence::{
    centroid, cluster_cost, single_center_cost, Dissimilarity, PropertyKind, PropertyReport,
};
use crate::error::{Error, Result};
use crate::point::{Dataset, Point};
use crate::ptas::{kmeanspp_seed, ClusteringResult, RunMeta};
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_points: usize,
    pub max_k: usize,
    /// Fix point 0 to label 0; removes one factor of `k` from the search.
    pub pin_first_point: bool,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_points: 14,
            max_k: 4,
            pin_first_point: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub optimal_cost: f64,
    pub optimal_partition: Vec<usize>,
    /// Means of the non-empty clusters, indexed by label.
    pub centers: Vec<Option<Point>>,
    pub assignments_examined: u64,
}

impl OracleResult {
    /// Centers of the non-empty clusters.
    pub fn nonempty_centers(&self) -> Vec<Point> {
        self.centers.iter().flatten().cloned().collect()
    }
}

fn require_centroid<D: Dissimilarity + ?Sized>(measure: &D) -> Result<()> {
    if measure.constants().exact_centroid {
        Ok(())
    } else {
        Err(Error::UnsupportedMeasure(
            "mean is not the optimal single center".into(),
        ))
    }
}

/// Sum of `D(p, mean)` over every non-empty label class.
fn partition_cost<D: Dissimilarity + ?Sized>(
    measure: &D,
    dataset: &Dataset,
    labels: &[usize],
    k: usize,
    members: &mut [Vec<usize>],
) -> Result<(f64, Vec<Option<Point>>)> {
    members.iter_mut().for_each(Vec::clear);
    for (i, &l) in labels.iter().enumerate() {
        members[l].push(i);
    }
    let mut total = 0.0;
    let mut centers = Vec::with_capacity(k);
    for m in members.iter() {
        if m.is_empty() {
            centers.push(None);
            continue;
        }
        let pts: Vec<&[f64]> = m.iter().map(|&i| dataset.point(i).coords()).collect();
        let c = centroid(&pts)?;
        total += single_center_cost(measure, &pts, &c)?;
        centers.push(Some(c));
    }
    Ok((total, centers))
}

/// Exact `Δ_k(P)` with the default limits (`n <= 14`, `k <= 4`).
pub fn optimal_bruteforce<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    k: usize,
    measure: &D,
) -> Result<OracleResult> {
    optimal_bruteforce_with(dataset, k, measure, &OracleLimits::default())
}

pub fn optimal_bruteforce_with<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    k: usize,
    measure: &D,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    require_centroid(measure)?;
    if k == 0 {
        return Err(Error::Config("k must be >= 1".into()));
    }
    let n = dataset.len();
    if n > limits.max_points {
        return Err(Error::TooLarge(format!(
            "n = {n} exceeds cap {}",
            limits.max_points
        )));
    }
    let mut members = vec![Vec::with_capacity(n); k.min(n).max(1)];
    if k >= n {
        let labels: Vec<usize> = (0..n).collect();
        let (cost, centers) = partition_cost(measure, dataset, &labels, n, &mut members)?;
        return Ok(OracleResult {
            optimal_cost: cost,
            optimal_partition: labels,
            centers,
            assignments_examined: 1,
        });
    }
    if k > limits.max_k {
        return Err(Error::TooLarge(format!(
            "k = {k} exceeds cap {}",
            limits.max_k
        )));
    }
    let mut members = vec![Vec::with_capacity(n); k];
    let first_free = usize::from(limits.pin_first_point);
    let mut labels = vec![0usize; n];
    let mut best: Option<(f64, Vec<usize>, Vec<Option<Point>>)> = None;
    let mut examined = 0u64;
    loop {
        examined += 1;
        let (cost, centers) = partition_cost(measure, dataset, &labels, k, &mut members)?;
        if best.as_ref().is_none_or(|b| cost < b.0) {
            best = Some((cost, labels.clone(), centers));
        }
        // Odometer over labels[first_free..], least significant digit last.
        let mut pos = n;
        loop {
            if pos == first_free {
                let (optimal_cost, optimal_partition, centers) = best.expect("one assignment");
                return Ok(OracleResult {
                    optimal_cost,
                    optimal_partition,
                    centers,
                    assignments_examined: examined,
                });
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
        }
    }
}

/// Lloyd iterations from `initial_centers` until the assignment stops
/// changing or `max_iters` updates have run. A center whose cluster empties
/// keeps its previous position. `meta.cost_history` starts with the cost of
/// the initial centers and gains one entry per update.
pub fn lloyd<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    initial_centers: &[Point],
    max_iters: usize,
) -> Result<ClusteringResult> {
    let start = Instant::now();
    require_centroid(measure)?;
    if initial_centers.is_empty() {
        return Err(Error::Config("initial centers must be non-empty".into()));
    }
    let mut centers = initial_centers.to_vec();
    let mut current = cluster_cost(measure, dataset, &centers)?;
    let mut history = vec![current.cost];
    let mut iterations = 0;
    while iterations < max_iters {
        for (j, c) in centers.iter_mut().enumerate() {
            let pts: Vec<&[f64]> = current
                .labels
                .iter()
                .zip(dataset.points())
                .filter(|(l, _)| **l == j)
                .map(|(_, p)| p.coords())
                .collect();
            if !pts.is_empty() {
                *c = centroid(&pts)?;
            }
        }
        iterations += 1;
        let next = cluster_cost(measure, dataset, &centers)?;
        history.push(next.cost);
        let converged = next.labels == current.labels;
        current = next;
        if converged {
            break;
        }
    }
    let meta = RunMeta {
        method: "lloyd".into(),
        restarts: 1,
        iterations,
        cost_history: history,
        seconds: start.elapsed().as_secs_f64(),
        ..RunMeta::default()
    };
    Ok(ClusteringResult {
        centers,
        assignment: current.labels,
        cost: current.cost,
        meta,
        trace: Vec::new(),
    })
}

/// Best of `runs` k-means++ seedings each refined by Lloyd. Run `r` seeds
/// from `stream.substream(r)`; ties go to the lowest run index.
pub fn best_of_seeded_lloyd<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    k: usize,
    runs: usize,
    max_iters: usize,
    stream: &RngStream,
) -> Result<ClusteringResult> {
    let start = Instant::now();
    if runs == 0 {
        return Err(Error::Config("runs must be >= 1".into()));
    }
    let mut best: Option<(usize, ClusteringResult)> = None;
    for r in 0..runs {
        let seed = kmeanspp_seed(dataset, measure, k, &stream.substream(r as u64))?;
        let refined = lloyd(dataset, measure, &seed.centers, max_iters)?;
        if best.as_ref().is_none_or(|b| refined.cost < b.1.cost) {
            best = Some((r, refined));
        }
    }
    let (r, mut result) = best.expect("runs >= 1");
    result.meta.method = "kmeans++/lloyd".into();
    result.meta.seed = stream.seed;
    result.meta.stream_id = stream.stream_id;
    result.meta.restarts = runs;
    result.meta.best_restart = r;
    result.meta.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityMode {
    Exact,
    /// Best of `runs` seeded Lloyd runs per center count.
    Approximate {
        runs: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub k: usize,
    pub delta_km1: f64,
    pub delta_k: f64,
    /// `Δ_{k-1} / Δ_k - 1`; 0 when both vanish, infinite when only `Δ_k` does.
    pub gamma: f64,
    pub approximate: bool,
}

pub fn gamma_from(delta_km1: f64, delta_k: f64) -> f64 {
    if delta_k == 0.0 {
        if delta_km1 == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (delta_km1 / delta_k - 1.0).max(0.0)
    }
}

pub fn irreducibility<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    k: usize,
    measure: &D,
    mode: IrreducibilityMode,
) -> Result<IrreducibilityReport> {
    if k < 2 {
        return Err(Error::Config("irreducibility needs k >= 2".into()));
    }
    let (delta_km1, delta_k, approximate) = match mode {
        IrreducibilityMode::Exact => {
            let a = optimal_bruteforce(dataset, k - 1, measure)?.optimal_cost;
            let b = optimal_bruteforce(dataset, k, measure)?.optimal_cost;
            (a, b, false)
        }
        IrreducibilityMode::Approximate { runs, seed } => {
            let stream = RngStream::new(seed);
            let a = best_of_seeded_lloyd(dataset, measure, k - 1, runs, 100, &stream.substream(0))?
                .cost;
            let b =
                best_of_seeded_lloyd(dataset, measure, k, runs, 100, &stream.substream(1))?.cost;
            // Any (k-1)-center solution is also a k-center solution.
            (a, b.min(a), true)
        }
    };
    Ok(IrreducibilityReport {
        k,
        delta_km1,
        delta_k,
        gamma: gamma_from(delta_km1, delta_k),
        approximate,
    })
}

/// Mean of `m` uniform draws (with replacement) against the
/// `1 + 1/(δ m)` bound, repeated `trials` times. `worst_ratio` is the worst
/// `Δ(P, m(S)) / Δ_1(P)`; `tolerance` carries `δ`.
pub fn inaba_trial<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    m: usize,
    delta: f64,
    trials: u64,
    stream: &RngStream,
) -> Result<PropertyReport> {
    if m == 0 {
        return Err(Error::Config("sample size must be >= 1".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Config(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    sampling_trial(
        dataset,
        measure,
        m,
        1.0 / (delta * m as f64),
        delta,
        trials,
        stream,
    )
}

/// Success rate of `Δ(P, m(S)) <= (1 + γ) Δ_1(P)` for uniform samples of
/// size `m`.
pub fn sampling_trial<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    m: usize,
    gamma: f64,
    delta: f64,
    trials: u64,
    stream: &RngStream,
) -> Result<PropertyReport> {
    let points = dataset.points();
    let mean = centroid(points)?;
    let optimal = single_center_cost(measure, points, &mean)?;
    let bound = (1.0 + gamma) * optimal;
    let mut rng = stream.generator();
    let mut report = PropertyReport::new(PropertyKind::Sampling, delta);
    let mut draw = Vec::with_capacity(m);
    for _ in 0..trials {
        draw.clear();
        draw.extend((0..m).map(|_| points[rng.random_range(0..points.len())].coords()));
        let c = centroid(&draw)?;
        let cost = single_center_cost(measure, points, &c)?;
        let ratio = if optimal > 0.0 { cost / optimal } else { 1.0 };
        report.record(cost <= bound * (1.0 + 1e-12), ratio);
    }
    Ok(report)
}

/// Checks `D(c_i, c_j) >= β ε (r_i + r_j)` for every ordered pair of
/// non-empty optimal clusters, where `r_i` is the average cost in cluster
/// `i`.
pub fn check_center_separation<D: Dissimilarity + ?Sized>(
    dataset: &Dataset,
    measure: &D,
    oracle: &OracleResult,
    epsilon: f64,
) -> Result<bool> {
    let beta = measure.constants().beta;
    let mut stats = Vec::new();
    for (label, c) in oracle.centers.iter().enumerate() {
        let Some(c) = c else { continue };
        let pts: Vec<&[f64]> = oracle
            .optimal_partition
            .iter()
            .zip(dataset.points())
            .filter(|(l, _)| **l == label)
            .map(|(_, p)| p.coords())
            .collect();
        let r = single_center_cost(measure, &pts, c)? / pts.len() as f64;
        stats.push((c, r));
    }
    for (i, (ci, ri)) in stats.iter().enumerate() {
        for (j, (cj, rj)) in stats.iter().enumerate() {
            if i != j && measure.eval(ci, cj)? < beta * epsilon * (ri + rj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
