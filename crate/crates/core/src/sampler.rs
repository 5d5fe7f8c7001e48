//! D²-sampling against a growing set of centers.
//!
//! A [`CenterSet`] caches each point's potential `D(p, C)`, the cost of the
//! point against its nearest center. Sampling draws point `p` with
//! probability `D(p, C) / sum_x D(x, C)`. With no centers every point has
//! weight 1, so the first draw is uniform.

use rand::Rng;

use crate::divergence::{Dissimilarity, PropertyKind, PropertyReport};
use crate::error::{Error, Result};
use crate::point::{Dataset, Point};
use crate::rng::RngStream;

#[derive(Clone, Debug, PartialEq)]
pub struct CenterSet {
    centers: Vec<Point>,
    potentials: Vec<f64>,
    nearest: Vec<usize>,
    total_potential: f64,
}

impl CenterSet {
    /// Empty center set over `dataset`: unit potential per point.
    pub fn empty(dataset: &Dataset) -> Self {
        let n = dataset.len();
        CenterSet {
            centers: Vec::new(),
            potentials: vec![1.0; n],
            nearest: vec![usize::MAX; n],
            total_potential: n as f64,
        }
    }

    pub fn from_centers<D: Dissimilarity + ?Sized>(
        dataset: &Dataset,
        measure: &D,
        centers: &[Point],
    ) -> Result<Self> {
        let mut set = Self::empty(dataset);
        for c in centers {
            set.add_center(c.clone(), dataset, measure)?;
        }
        Ok(set)
    }

    pub fn centers(&self) -> &[Point] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Per-point `min_c D(p, c)`; all ones while the set is empty.
    pub fn potentials(&self) -> &[f64] {
        &self.potentials
    }

    /// Index of each point's nearest center (lowest index on ties).
    /// Meaningless while the set is empty.
    pub fn nearest(&self) -> &[usize] {
        &self.nearest
    }

    /// `sum_p D(p, C)`, or `n` while the set is empty.
    pub fn total_potential(&self) -> f64 {
        self.total_potential
    }

    /// Clustering cost of the current centers; zero while empty.
    pub fn cost(&self) -> f64 {
        if self.centers.is_empty() {
            0.0
        } else {
            self.total_potential
        }
    }

    /// Adds `center` and lowers each potential to `min(old, D(p, center))`.
    pub fn add_center<D: Dissimilarity + ?Sized>(
        &mut self,
        center: Point,
        dataset: &Dataset,
        measure: &D,
    ) -> Result<()> {
        measure.domain().check(&center)?;
        let first = self.centers.is_empty();
        let idx = self.centers.len();
        let mut total = 0.0;
        for (i, p) in dataset.points().iter().enumerate() {
            let v = measure.eval(p, &center)?;
            if first || v < self.potentials[i] {
                self.potentials[i] = v;
                self.nearest[i] = idx;
            }
            total += self.potentials[i];
        }
        self.total_potential = total;
        self.centers.push(center);
        Ok(())
    }

    /// Same as [`add_center`](Self::add_center), by value.
    pub fn with_center<D: Dissimilarity + ?Sized>(
        mut self,
        center: Point,
        dataset: &Dataset,
        measure: &D,
    ) -> Result<Self> {
        self.add_center(center, dataset, measure)?;
        Ok(self)
    }

    /// Cost the set would have after adding `center`, without mutating it.
    pub fn cost_with<D: Dissimilarity + ?Sized>(
        &self,
        center: &[f64],
        dataset: &Dataset,
        measure: &D,
    ) -> Result<f64> {
        let first = self.centers.is_empty();
        let mut total = 0.0;
        for (i, p) in dataset.points().iter().enumerate() {
            let v = measure.eval(p, center)?;
            total += if first { v } else { v.min(self.potentials[i]) };
        }
        Ok(total)
    }

    /// Potentials recomputed from scratch.
    pub fn recompute_potentials<D: Dissimilarity + ?Sized>(
        &self,
        dataset: &Dataset,
        measure: &D,
    ) -> Result<Vec<f64>> {
        if self.centers.is_empty() {
            return Ok(vec![1.0; dataset.len()]);
        }
        dataset
            .points()
            .iter()
            .map(|p| {
                self.centers
                    .iter()
                    .try_fold(f64::INFINITY, |best, c| Ok(best.min(measure.eval(p, c)?)))
            })
            .collect()
    }

    pub fn distribution(&self) -> D2Distribution {
        let n = self.potentials.len();
        if self.total_potential > 0.0 {
            let probabilities = self
                .potentials
                .iter()
                .map(|v| v / self.total_potential)
                .collect();
            D2Distribution {
                probabilities,
                zero_potential: false,
            }
        } else {
            D2Distribution {
                probabilities: vec![1.0 / n as f64; n],
                zero_potential: true,
            }
        }
    }

    pub fn sampler(&self) -> D2Sampler {
        D2Sampler::new(self)
    }
}

/// Exact D²-sampling probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct D2Distribution {
    pub probabilities: Vec<f64>,
    /// All points sit on a center; the distribution fell back to uniform.
    pub zero_potential: bool,
}

/// Categorical sampler by inversion of the cumulative potential.
#[derive(Clone, Debug)]
pub struct D2Sampler {
    cumulative: Vec<f64>,
    last_positive: usize,
    zero_potential: bool,
}

impl D2Sampler {
    pub fn new(set: &CenterSet) -> Self {
        let zero_potential = set.total_potential.is_nan() || set.total_potential <= 0.0;
        let mut cumulative = Vec::with_capacity(set.potentials.len());
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (i, &w) in set.potentials.iter().enumerate() {
            let w = if zero_potential { 1.0 } else { w };
            if w > 0.0 {
                last_positive = i;
            }
            acc += w;
            cumulative.push(acc);
        }
        D2Sampler {
            cumulative,
            last_positive,
            zero_potential,
        }
    }

    pub fn zero_potential(&self) -> bool {
        self.zero_potential
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("non-empty dataset");
        let u = rng.random::<f64>() * total;
        let idx = self.cumulative.partition_point(|&c| c <= u);
        idx.min(self.last_positive)
    }

    /// `count` independent draws, with replacement.
    pub fn draw_many<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Result<Vec<usize>> {
        if count == 0 {
            return Err(Error::Config("sample count must be >= 1".into()));
        }
        Ok((0..count).map(|_| self.draw(rng)).collect())
    }
}

/// `count` D²-sampled point indices drawn from a fresh generator on `stream`.
pub fn d2_sample(set: &CenterSet, stream: &RngStream, count: usize) -> Result<Vec<usize>> {
    set.sampler().draw_many(&mut stream.generator(), count)
}

/// L∞ tolerance for an empirical frequency check with `trials` draws:
/// 0.05 at 10³ draws shrinking as `1/sqrt(trials)`, floored at 0.01.
pub fn empirical_tolerance(trials: u64) -> f64 {
    (0.05 * (1000.0 / trials as f64).sqrt()).max(0.01)
}

/// Compares empirical draw frequencies with the exact distribution.
/// `worst_ratio` carries the L∞ distance.
pub fn empirical_distribution_check(
    set: &CenterSet,
    stream: &RngStream,
    trials: u64,
) -> Result<PropertyReport> {
    if trials < 1000 {
        return Err(Error::Config(format!(
            "need at least 1000 trials, got {trials}"
        )));
    }
    let exact = set.distribution();
    let sampler = set.sampler();
    let mut rng = stream.generator();
    let mut counts = vec![0u64; exact.probabilities.len()];
    for _ in 0..trials {
        counts[sampler.draw(&mut rng)] += 1;
    }
    let linf = counts
        .iter()
        .zip(&exact.probabilities)
        .map(|(&c, &p)| (c as f64 / trials as f64 - p).abs())
        .fold(0.0, f64::max);
    let tolerance = empirical_tolerance(trials);
    Ok(PropertyReport {
        property: PropertyKind::Sampling,
        trials,
        violations: u64::from(linf > tolerance),
        worst_ratio: linf,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergence::{Divergence, SqEuclidean};

    fn line(xs: &[f64]) -> Dataset {
        Dataset::from_rows(&xs.iter().map(|&x| [x]).collect::<Vec<_>>()).unwrap()
    }

    fn pt(x: f64) -> Point {
        Point::new(vec![x]).unwrap()
    }

    #[test]
    fn distribution_against_single_center() {
        let data = line(&[0.0, 1.0, 3.0]);
        let set = CenterSet::from_centers(&data, &SqEuclidean, &[pt(0.0)]).unwrap();
        let dist = set.distribution();
        assert_eq!(dist.probabilities, vec![0.0, 0.1, 0.9]);
        assert!(!dist.zero_potential);
    }

    #[test]
    fn empty_set_is_uniform() {
        let data = line(&[0.0, 1.0, 3.0, 7.0]);
        let dist = CenterSet::empty(&data).distribution();
        assert_eq!(dist.probabilities, vec![0.25; 4]);
        assert!(!dist.zero_potential);
    }

    #[test]
    fn zero_potential_falls_back_to_uniform() {
        let data = line(&[0.0, 1.0]);
        let set = CenterSet::from_centers(&data, &SqEuclidean, &[pt(0.0), pt(1.0)]).unwrap();
        let dist = set.distribution();
        assert_eq!(dist.probabilities, vec![0.5, 0.5]);
        assert!(dist.zero_potential);
        let report = empirical_distribution_check(&set, &RngStream::new(3), 20_000).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn add_center_examples() {
        let data = line(&[0.0, 4.0]);
        let set = CenterSet::empty(&data)
            .with_center(pt(0.0), &data, &SqEuclidean)
            .unwrap();
        assert_eq!(set.potentials(), &[0.0, 16.0]);
        let dup = set
            .clone()
            .with_center(pt(0.0), &data, &SqEuclidean)
            .unwrap();
        assert_eq!(dup.potentials(), set.potentials());
        assert_eq!(dup.nearest(), set.nearest());
        let both = set.with_center(pt(4.0), &data, &SqEuclidean).unwrap();
        assert_eq!(both.potentials(), &[0.0, 0.0]);
        assert_eq!(both.total_potential(), 0.0);
    }

    #[test]
    fn add_center_checks_domain() {
        let data = Dataset::from_rows_in(&[[0.5]], crate::point::Domain::StrictlyPositive).unwrap();
        let kl = Divergence::kullback_leibler(0.5).unwrap();
        let mut set = CenterSet::empty(&data);
        assert!(matches!(
            set.add_center(pt(-1.0), &data, &kl),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zero_count_is_rejected() {
        let data = line(&[0.0, 1.0]);
        assert!(d2_sample(&CenterSet::empty(&data), &RngStream::new(1), 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_per_stream() {
        let data = line(&[0.0, 1.0, 3.0, 9.0, 10.0]);
        let set = CenterSet::from_centers(&data, &SqEuclidean, &[pt(3.0)]).unwrap();
        let a = d2_sample(&set, &RngStream::with_stream(11, 2), 50).unwrap();
        let b = d2_sample(&set, &RngStream::with_stream(11, 2), 50).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains(&2), "a point on a center has zero probability");
    }

    #[test]
    fn empirical_check_rejects_few_trials() {
        let data = line(&[0.0, 1.0]);
        assert!(
            empirical_distribution_check(&CenterSet::empty(&data), &RngStream::new(1), 999)
                .is_err()
        );
    }

    #[test]
    fn tolerance_schedule() {
        assert!((empirical_tolerance(1000) - 0.05).abs() < 1e-12);
        assert_eq!(empirical_tolerance(100_000), 0.01);
    }
}
