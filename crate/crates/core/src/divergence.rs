//! Dissimilarity measures and their checkable structural properties.
//!
//! Every measure here is a Bregman divergence (squared Euclidean and
//! Mahalanobis included), so the coordinate-wise mean of a point set is its
//! optimal single center. Each measure also declares the constants the
//! sampling algorithm relies on:
//!
//! - `alpha`: approximate triangle inequality, `D(p,q) <= alpha * (D(p,r) + D(r,q))`
//! - `beta`: approximate symmetry, `beta * D(q,p) <= D(p,q) <= D(q,p) / beta`
//! - `mu`: similarity to a Mahalanobis distance, `mu * D_U <= D <= D_U`
//!
//! The `check_*` functions test those declarations on concrete inputs.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{Dataset, Domain, Point};

/// Relative slack used by the symmetry and triangle checks.
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Property constants a measure declares about itself.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureConstants {
    pub alpha: f64,
    pub beta: f64,
    pub mu: Option<f64>,
    pub exact_centroid: bool,
}

impl MeasureConstants {
    pub const METRIC_SQUARED: MeasureConstants = MeasureConstants {
        alpha: 2.0,
        beta: 1.0,
        mu: None,
        exact_centroid: true,
    };

    fn mu_similar(mu: f64) -> Self {
        MeasureConstants {
            alpha: 2.0 / mu,
            beta: mu,
            mu: Some(mu),
            exact_centroid: true,
        }
    }

    /// `2 alpha^2 / beta^2 * (1 + 1/beta)`.
    pub fn eta(&self) -> f64 {
        2.0 * self.alpha * self.alpha / (self.beta * self.beta) * (1.0 + 1.0 / self.beta)
    }
}

/// A dissimilarity `D(p, q) >= 0` usable by the samplers, the approximation
/// scheme, and the oracle.
pub trait Dissimilarity: Send + Sync {
    fn eval(&self, p: &[f64], q: &[f64]) -> Result<f64>;

    fn constants(&self) -> MeasureConstants;

    /// Domain every input point must lie in.
    fn domain(&self) -> Domain {
        Domain::Unrestricted
    }

    /// Uniform sample size after which the sample mean is a `(1 + gamma)`
    /// approximate 1-median with probability at least `1 - delta`.
    fn sampling_size(&self, gamma: f64, delta: f64) -> f64 {
        match self.constants().mu {
            Some(mu) => 1.0 / (mu * gamma * delta),
            None => 1.0 / (gamma * delta),
        }
    }
}

fn check_dims(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    Ok(())
}

#[inline]
fn squared_euclidean(p: &[f64], q: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (a, b) in p.iter().zip(q) {
        let diff = a - b;
        sum += diff * diff;
    }
    sum
}

/// Squared Euclidean distance as a standalone kernel.
///
/// This is the measure the k-means specialization runs on; [`Divergence`]
/// with [`DivergenceKind::SquaredEuclidean`] computes the same values through
/// the generic path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SqEuclidean;

impl Dissimilarity for SqEuclidean {
    #[inline]
    fn eval(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        check_dims(p, q)?;
        Ok(squared_euclidean(p, q))
    }

    fn constants(&self) -> MeasureConstants {
        MeasureConstants::METRIC_SQUARED
    }
}

/// Symmetric positive definite matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpdMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SpdMatrix {
    /// Validates symmetry and positive definiteness (via Cholesky).
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::NotPositiveDefinite("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotPositiveDefinite(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotPositiveDefinite("non-finite entry".into()));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let (a, b) = (data[i * dim + j], data[j * dim + i]);
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::NotPositiveDefinite(format!(
                        "asymmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
            }
        }
        let m = nalgebra::DMatrix::from_row_slice(dim, dim, &data);
        if m.cholesky().is_none() {
            return Err(Error::NotPositiveDefinite(
                "Cholesky factorization failed".into(),
            ));
        }
        Ok(SpdMatrix { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    /// `c * I`; panics unless `c > 0`.
    pub fn scaled_identity(dim: usize, c: f64) -> Self {
        assert!(c > 0.0 && c.is_finite(), "scale must be positive");
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c;
        }
        SpdMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    /// `(p - q)^T A (p - q)`.
    pub fn quadratic_form(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        check_dims(p, q)?;
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        let mut sum = 0.0;
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            let mut inner = 0.0;
            for j in 0..self.dim {
                inner += row[j] * (p[j] - q[j]);
            }
            sum += (p[i] - q[i]) * inner;
        }
        Ok(sum)
    }

    /// `A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

type ScalarFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradientFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A strictly convex generator `phi` together with its caller-supplied
/// gradient. No numerical differentiation is attempted.
#[derive(Clone)]
pub struct BregmanGenerator {
    name: String,
    phi: Arc<ScalarFn>,
    gradient: Arc<GradientFn>,
}

impl BregmanGenerator {
    pub fn new(
        name: impl Into<String>,
        phi: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        BregmanGenerator {
            name: name.into(),
            phi: Arc::new(phi),
            gradient: Arc::new(gradient),
        }
    }

    /// `phi(x) = x^T A x`, whose divergence is the Mahalanobis distance `D_A`.
    pub fn quadratic(matrix: SpdMatrix) -> Self {
        let m1 = matrix.clone();
        let m2 = matrix;
        Self::new(
            "quadratic",
            move |x| x.iter().zip(m1.apply(x)).map(|(a, b)| a * b).sum(),
            move |x| m2.apply(x).into_iter().map(|v| 2.0 * v).collect(),
        )
    }

    /// `phi(x) = ||x||^2`.
    pub fn squared_norm() -> Self {
        Self::new(
            "squared_norm",
            |x| x.iter().map(|v| v * v).sum(),
            |x| x.iter().map(|v| 2.0 * v).collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `phi(p) - phi(q) - grad phi(q) . (p - q)`, clamped at zero.
    pub fn divergence(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        check_dims(p, q)?;
        if p == q {
            return Ok(0.0);
        }
        let grad = (self.gradient)(q);
        if grad.len() != q.len() {
            return Err(Error::DimensionMismatch {
                expected: q.len(),
                got: grad.len(),
            });
        }
        let linear: f64 = grad
            .iter()
            .zip(p.iter().zip(q))
            .map(|(g, (a, b))| g * (a - b))
            .sum();
        Ok(((self.phi)(p) - (self.phi)(q) - linear).max(0.0))
    }
}

impl fmt::Debug for BregmanGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BregmanGenerator")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum DivergenceKind {
    SquaredEuclidean,
    Mahalanobis(SpdMatrix),
    /// Generalized KL: `sum p ln(p/q) - sum (p - q)`.
    KullbackLeibler,
    /// `sum p/q - ln(p/q) - 1`.
    ItakuraSaito,
    GenericBregman {
        generator: BregmanGenerator,
        domain: Domain,
    },
}

/// A dissimilarity measure plus its declared property constants.
#[derive(Clone, Debug)]
pub struct Divergence {
    kind: DivergenceKind,
    constants: MeasureConstants,
}

fn validate_mu(mu: f64) -> Result<f64> {
    if mu > 0.0 && mu <= 1.0 {
        Ok(mu)
    } else {
        Err(Error::Config(format!("mu must lie in (0, 1], got {mu}")))
    }
}

impl Divergence {
    pub fn squared_euclidean() -> Self {
        Divergence {
            kind: DivergenceKind::SquaredEuclidean,
            constants: MeasureConstants::METRIC_SQUARED,
        }
    }

    pub fn mahalanobis(matrix: SpdMatrix) -> Self {
        Divergence {
            kind: DivergenceKind::Mahalanobis(matrix),
            constants: MeasureConstants::METRIC_SQUARED,
        }
    }

    /// Kullback-Leibler with a declared similarity constant `mu`.
    pub fn kullback_leibler(mu: f64) -> Result<Self> {
        Ok(Divergence {
            kind: DivergenceKind::KullbackLeibler,
            constants: MeasureConstants::mu_similar(validate_mu(mu)?),
        })
    }

    pub fn itakura_saito(mu: f64) -> Result<Self> {
        Ok(Divergence {
            kind: DivergenceKind::ItakuraSaito,
            constants: MeasureConstants::mu_similar(validate_mu(mu)?),
        })
    }

    pub fn bregman(generator: BregmanGenerator, mu: f64, domain: Domain) -> Result<Self> {
        Ok(Divergence {
            kind: DivergenceKind::GenericBregman { generator, domain },
            constants: MeasureConstants::mu_similar(validate_mu(mu)?),
        })
    }

    pub fn kind(&self) -> &DivergenceKind {
        &self.kind
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            DivergenceKind::SquaredEuclidean => "sqeuclid",
            DivergenceKind::Mahalanobis(_) => "mahalanobis",
            DivergenceKind::KullbackLeibler => "kl",
            DivergenceKind::ItakuraSaito => "itakura-saito",
            DivergenceKind::GenericBregman { .. } => "bregman",
        }
    }

    /// Same measure with a different declared `mu` (and hence `alpha`, `beta`).
    /// Only meaningful for Bregman kinds; metric kinds are returned unchanged.
    pub fn with_mu(mut self, mu: f64) -> Result<Self> {
        if self.constants.mu.is_some() {
            self.constants = MeasureConstants::mu_similar(validate_mu(mu)?);
        }
        Ok(self)
    }

    fn check_positive(p: &[f64], q: &[f64]) -> Result<()> {
        for (i, (&a, &b)) in p.iter().zip(q).enumerate() {
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::Domain(format!(
                    "coordinate {i} must be strictly positive (got {a}, {b})"
                )));
            }
        }
        Ok(())
    }
}

impl Dissimilarity for Divergence {
    fn eval(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        check_dims(p, q)?;
        match &self.kind {
            DivergenceKind::SquaredEuclidean => Ok(squared_euclidean(p, q)),
            DivergenceKind::Mahalanobis(a) => a.quadratic_form(p, q),
            DivergenceKind::KullbackLeibler => {
                Self::check_positive(p, q)?;
                let mut sum = 0.0;
                for (&a, &b) in p.iter().zip(q) {
                    sum += a * (a / b).ln() - a + b;
                }
                Ok(sum.max(0.0))
            }
            DivergenceKind::ItakuraSaito => {
                Self::check_positive(p, q)?;
                let mut sum = 0.0;
                for (&a, &b) in p.iter().zip(q) {
                    let ratio = a / b;
                    sum += ratio - ratio.ln() - 1.0;
                }
                Ok(sum.max(0.0))
            }
            DivergenceKind::GenericBregman { generator, domain } => {
                domain.check(p)?;
                domain.check(q)?;
                generator.divergence(p, q)
            }
        }
    }

    fn constants(&self) -> MeasureConstants {
        self.constants
    }

    fn domain(&self) -> Domain {
        match &self.kind {
            DivergenceKind::SquaredEuclidean | DivergenceKind::Mahalanobis(_) => {
                Domain::Unrestricted
            }
            DivergenceKind::KullbackLeibler | DivergenceKind::ItakuraSaito => {
                Domain::StrictlyPositive
            }
            DivergenceKind::GenericBregman { domain, .. } => *domain,
        }
    }
}

/// Coordinate-wise arithmetic mean.
pub fn centroid<P: AsRef<[f64]>>(points: &[P]) -> Result<Point> {
    let first = points.first().ok_or(Error::EmptySet)?.as_ref();
    let d = first.len();
    let mut sum = vec![0.0; d];
    for p in points {
        let p = p.as_ref();
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
        for (s, v) in sum.iter_mut().zip(p) {
            *s += v;
        }
    }
    let n = points.len() as f64;
    sum.iter_mut().for_each(|s| *s /= n);
    Ok(Point::from_vec_unchecked(sum))
}

/// Centroid of `dataset[indices]`, summed in the order given.
pub fn centroid_of(dataset: &Dataset, indices: &[usize]) -> Result<Point> {
    let refs: Vec<&[f64]> = indices.iter().map(|&i| dataset.point(i).coords()).collect();
    centroid(&refs)
}

/// Nearest-center assignment and total cost of a center set.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub cost: f64,
    pub labels: Vec<usize>,
    pub point_costs: Vec<f64>,
}

/// `sum_p min_c D(p, c)`, with ties going to the lowest center index.
pub fn cluster_cost<D: Dissimilarity + ?Sized>(
    measure: &D,
    dataset: &Dataset,
    centers: &[Point],
) -> Result<Assignment> {
    if centers.is_empty() {
        return Err(Error::Config("center set must be non-empty".into()));
    }
    let mut labels = Vec::with_capacity(dataset.len());
    let mut point_costs = Vec::with_capacity(dataset.len());
    let mut cost = 0.0;
    for p in dataset.points() {
        let mut best = (0usize, f64::INFINITY);
        for (j, c) in centers.iter().enumerate() {
            let v = measure.eval(p, c)?;
            if v < best.1 {
                best = (j, v);
            }
        }
        labels.push(best.0);
        point_costs.push(best.1);
        cost += best.1;
    }
    Ok(Assignment {
        cost,
        labels,
        point_costs,
    })
}

/// `sum_p D(p, c)` for a single center.
pub fn single_center_cost<D: Dissimilarity + ?Sized, P: AsRef<[f64]>>(
    measure: &D,
    points: &[P],
    c: &[f64],
) -> Result<f64> {
    let mut sum = 0.0;
    for p in points {
        sum += measure.eval(p.as_ref(), c)?;
    }
    Ok(sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Symmetry,
    Triangle,
    Centroid,
    MuSimilarity,
    Sampling,
}

/// Outcome of checking one structural property over a number of trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub trials: u64,
    pub violations: u64,
    pub worst_ratio: f64,
    pub tolerance: f64,
}

impl PropertyReport {
    pub fn new(property: PropertyKind, tolerance: f64) -> Self {
        PropertyReport {
            property,
            trials: 0,
            violations: 0,
            worst_ratio: 0.0,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        1.0 - self.violations as f64 / self.trials as f64
    }

    /// Records one trial. `ratio` feeds `worst_ratio` (max).
    pub fn record(&mut self, ok: bool, ratio: f64) {
        self.trials += 1;
        if !ok {
            self.violations += 1;
        }
        if ratio.is_finite() && ratio > self.worst_ratio {
            self.worst_ratio = ratio;
        }
    }

    pub fn merge(&mut self, other: &PropertyReport) {
        self.trials += other.trials;
        self.violations += other.violations;
        self.worst_ratio = self.worst_ratio.max(other.worst_ratio);
    }
}

#[inline]
fn le_rel(a: f64, b: f64) -> bool {
    a <= b + RELATIVE_TOLERANCE * a.abs().max(b.abs())
}

/// Residual of `sum D(p, c) = Delta_1(P) + |P| D(m(P), c)`, relative to
/// `max(1, LHS)`.
pub fn check_centroid_property<D: Dissimilarity + ?Sized>(
    measure: &D,
    points: &[Point],
    c: &Point,
    tolerance: f64,
) -> Result<PropertyReport> {
    let mean = centroid(points)?;
    let lhs = single_center_cost(measure, points, c)?;
    let delta_1 = single_center_cost(measure, points, &mean)?;
    let rhs = delta_1 + points.len() as f64 * measure.eval(&mean, c)?;
    let residual = (lhs - rhs).abs() / lhs.max(1.0);
    let mut report = PropertyReport::new(PropertyKind::Centroid, tolerance);
    report.record(residual <= tolerance, residual);
    Ok(report)
}

/// `beta D(q,p) <= D(p,q) <= D(q,p) / beta` with the declared `beta`.
pub fn check_symmetry<D: Dissimilarity + ?Sized>(
    measure: &D,
    p: &[f64],
    q: &[f64],
) -> Result<bool> {
    let beta = measure.constants().beta;
    let forward = measure.eval(p, q)?;
    let backward = measure.eval(q, p)?;
    Ok(le_rel(beta * backward, forward) && le_rel(forward, backward / beta))
}

/// `D(p,q) <= alpha (D(p,r) + D(r,q))` with the declared `alpha`.
pub fn check_triangle<D: Dissimilarity + ?Sized>(
    measure: &D,
    p: &[f64],
    q: &[f64],
    r: &[f64],
) -> Result<bool> {
    let alpha = measure.constants().alpha;
    let direct = measure.eval(p, q)?;
    let via = measure.eval(p, r)? + measure.eval(r, q)?;
    Ok(le_rel(direct, alpha * via))
}

/// Empirical sandwich `mu_hat D_U <= D <= D_U` over sample pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuSimilarityReport {
    pub report: PropertyReport,
    /// `min D / D_U` over pairs with `D_U > 0`.
    pub mu_hat: f64,
    /// `max D / D_U`; at most 1 when the upper bound holds.
    pub max_ratio: f64,
    pub upper_bound_holds: bool,
    pub declared_mu: Option<f64>,
}

pub fn check_mu_similarity<D: Dissimilarity + ?Sized>(
    measure: &D,
    upper: &SpdMatrix,
    samples: &[(Point, Point)],
) -> Result<MuSimilarityReport> {
    let declared = measure.constants().mu;
    let mut report = PropertyReport::new(PropertyKind::MuSimilarity, RELATIVE_TOLERANCE);
    let mut mu_hat = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    let mut upper_ok = true;
    for (p, q) in samples {
        let d_phi = measure.eval(p, q)?;
        let d_u = upper.quadratic_form(p, q)?;
        if d_u == 0.0 {
            continue;
        }
        let ratio = d_phi / d_u;
        mu_hat = mu_hat.min(ratio);
        max_ratio = max_ratio.max(ratio);
        let upper_pair = le_rel(d_phi, d_u);
        upper_ok &= upper_pair;
        let lower_pair = declared.is_none_or(|mu| le_rel(mu * d_u, d_phi));
        report.record(upper_pair && lower_pair, ratio);
    }
    Ok(MuSimilarityReport {
        report,
        mu_hat,
        max_ratio,
        upper_bound_holds: upper_ok,
        declared_mu: declared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn squared_euclidean_examples() {
        let d = Divergence::squared_euclidean();
        assert_eq!(d.eval(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 25.0);
        assert_eq!(SqEuclidean.eval(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 25.0);
        assert!(matches!(
            d.eval(&[0.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch {
                expected: 1,
                got: 2
            })
        ));
    }

    #[test]
    fn identity_mahalanobis_matches_squared_euclidean_exactly() {
        let m = Divergence::mahalanobis(SpdMatrix::identity(3));
        let p = [0.3, -1.7, 2.25];
        let q = [1.1, 0.4, -0.9];
        assert_eq!(m.eval(&p, &q).unwrap(), SqEuclidean.eval(&p, &q).unwrap());
    }

    #[test]
    fn kl_example_value() {
        let kl = Divergence::kullback_leibler(0.5).unwrap();
        let v = kl.eval(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
        // 0.5 ln 2 + 0.5 ln(2/3), evaluated independently
        assert_relative_eq!(v, 0.143_841_036_225_890_1, epsilon = 1e-12);
        assert!(matches!(
            kl.eval(&[0.5, 0.5], &[0.0, 1.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            kl.eval(&[-0.5, 0.5], &[0.5, 1.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn itakura_saito_identity_and_value() {
        let is = Divergence::itakura_saito(0.5).unwrap();
        assert_eq!(is.eval(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
        // 2/1 - ln 2 - 1
        assert_relative_eq!(
            is.eval(&[2.0], &[1.0]).unwrap(),
            1.0 - 2f64.ln(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn spd_matrix_validation() {
        assert!(SpdMatrix::new(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).is_ok());
        assert!(matches!(
            SpdMatrix::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]]),
            Err(Error::NotPositiveDefinite(_))
        ));
        assert!(SpdMatrix::new(vec![vec![1.0, 0.5], vec![0.0, 1.0]]).is_err());
        assert!(SpdMatrix::new(vec![vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn centroid_examples() {
        assert_eq!(
            centroid(&[pt(&[0.0, 0.0]), pt(&[2.0, 0.0])]).unwrap(),
            pt(&[1.0, 0.0])
        );
        assert_eq!(
            centroid(&[pt(&[1.0, 2.0, 3.0])]).unwrap(),
            pt(&[1.0, 2.0, 3.0])
        );
        let rect = [
            pt(&[0.0, 0.0]),
            pt(&[0.0, 2.0]),
            pt(&[3.0, 0.0]),
            pt(&[3.0, 2.0]),
        ];
        assert_eq!(centroid(&rect).unwrap(), pt(&[1.5, 1.0]));
        assert!(matches!(centroid::<Point>(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn cluster_cost_examples() {
        let d = Divergence::squared_euclidean();
        let line = Dataset::from_rows(&[[0.0], [1.0], [4.0], [5.0]]).unwrap();
        let a = cluster_cost(&d, &line, &[pt(&[0.5]), pt(&[4.5])]).unwrap();
        assert_eq!(a.cost, 1.0);
        assert_eq!(a.labels, vec![0, 0, 1, 1]);

        let all = line.points().to_vec();
        assert_eq!(cluster_cost(&d, &line, &all).unwrap().cost, 0.0);

        let two = Dataset::from_rows(&[[0.0, 0.0], [2.0, 0.0]]).unwrap();
        assert_eq!(
            cluster_cost(&d, &two, &[pt(&[1.0, 1.0])]).unwrap().cost,
            4.0
        );
    }

    #[test]
    fn ties_go_to_lowest_center_index() {
        let d = Divergence::squared_euclidean();
        let data = Dataset::from_rows(&[[1.0]]).unwrap();
        let a = cluster_cost(&d, &data, &[pt(&[2.0]), pt(&[0.0])]).unwrap();
        assert_eq!(a.labels, vec![0]);
    }

    #[test]
    fn centroid_property_exact_case() {
        let d = Divergence::squared_euclidean();
        let r = check_centroid_property(
            &d,
            &[pt(&[0.0, 0.0]), pt(&[2.0, 0.0])],
            &pt(&[1.0, 1.0]),
            0.0,
        )
        .unwrap();
        assert!(r.passed());
        assert_eq!(r.worst_ratio, 0.0);
    }

    #[test]
    fn symmetry_examples() {
        let d = Divergence::squared_euclidean();
        assert!(check_symmetry(&d, &[0.1, 7.0], &[-3.0, 2.0]).unwrap());
        let kl = Divergence::kullback_leibler(1.0).unwrap();
        assert!(!check_symmetry(&kl, &[0.5, 0.5], &[0.1, 0.9]).unwrap());
        let kl = Divergence::kullback_leibler(0.5).unwrap();
        assert!(check_symmetry(&kl, &[0.5, 0.5], &[0.1, 0.9]).unwrap());
    }

    #[test]
    fn triangle_equality_case_is_tight() {
        let d = Divergence::squared_euclidean();
        assert!(check_triangle(&d, &[0.0], &[2.0], &[1.0]).unwrap());
        let direct = d.eval(&[0.0], &[2.0]).unwrap();
        let via = d.eval(&[0.0], &[1.0]).unwrap() + d.eval(&[1.0], &[2.0]).unwrap();
        assert_eq!(direct / (2.0 * via), 1.0);
    }

    #[test]
    fn mahalanobis_as_bregman_is_tightly_sandwiched() {
        let a = SpdMatrix::new(vec![vec![2.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let b = Divergence::bregman(
            BregmanGenerator::quadratic(a.clone()),
            1.0,
            Domain::Unrestricted,
        )
        .unwrap();
        let samples = vec![
            (pt(&[0.0, 1.0]), pt(&[2.0, -1.0])),
            (pt(&[3.0, 3.0]), pt(&[3.0, 3.0])),
            (pt(&[-1.5, 0.25]), pt(&[0.5, 0.75])),
        ];
        let r = check_mu_similarity(&b, &a, &samples).unwrap();
        assert!(r.upper_bound_holds);
        assert_relative_eq!(r.mu_hat, 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.max_ratio, 1.0, epsilon = 1e-12);
        assert_eq!(r.report.trials, 2);
    }

    #[test]
    fn squared_norm_bregman_is_squared_euclidean() {
        let b = Divergence::bregman(BregmanGenerator::squared_norm(), 1.0, Domain::Unrestricted)
            .unwrap();
        let r = check_mu_similarity(
            &b,
            &SpdMatrix::identity(2),
            &[
                (pt(&[1.0, 2.0]), pt(&[-0.5, 4.0])),
                (pt(&[0.0, 0.0]), pt(&[3.0, 4.0])),
            ],
        )
        .unwrap();
        assert_relative_eq!(r.mu_hat, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eta_for_metric_measures_is_sixteen() {
        assert_eq!(MeasureConstants::METRIC_SQUARED.eta(), 16.0);
        let kl = Divergence::kullback_leibler(0.5).unwrap();
        assert_eq!(kl.constants().alpha, 4.0);
        assert_eq!(kl.constants().beta, 0.5);
        assert!(Divergence::kullback_leibler(0.0).is_err());
        assert!(Divergence::kullback_leibler(1.5).is_err());
    }

    #[test]
    fn sampling_size_uses_mu() {
        assert_relative_eq!(SqEuclidean.sampling_size(0.1, 0.2), 50.0, epsilon = 1e-12);
        let is = Divergence::itakura_saito(0.5).unwrap();
        assert_relative_eq!(is.sampling_size(0.1, 0.2), 100.0, epsilon = 1e-12);
    }
}
