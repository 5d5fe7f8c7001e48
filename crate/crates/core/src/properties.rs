//! Randomized property suites over a measure's domain.
//!
//! Each suite draws points uniformly from a sampling box and reports how
//! often a declared property failed, plus the worst observed ratio
//! (a ratio above 1 is a violation for symmetry and triangle suites).

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::divergence::{
    centroid, check_centroid_property, check_mu_similarity, single_center_cost, Dissimilarity,
    Divergence, DivergenceKind, MuSimilarityReport, PropertyKind, PropertyReport, SpdMatrix,
    RELATIVE_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::point::{Domain, Point};
use crate::rng::RngStream;

/// Half-width of the box used for unrestricted domains.
pub const UNRESTRICTED_HALF_WIDTH: f64 = 10.0;

/// Bounds points are drawn from for a given domain.
pub fn sampling_bounds(domain: Domain) -> (f64, f64) {
    match domain {
        Domain::Unrestricted => (-UNRESTRICTED_HALF_WIDTH, UNRESTRICTED_HALF_WIDTH),
        Domain::StrictlyPositive => match Domain::DEFAULT_BOX {
            Domain::Box { lo, hi } => (lo, hi),
            _ => unreachable!(),
        },
        Domain::Box { lo, hi } => (lo, hi),
    }
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, domain: Domain, dim: usize) -> Point {
    let (lo, hi) = sampling_bounds(domain);
    let coords = (0..dim).map(|_| rng.random_range(lo..=hi)).collect();
    Point::new(coords).expect("finite coordinates")
}

/// Shape of a randomized suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub domain: Domain,
    pub dim: usize,
    pub trials: u64,
}

pub fn symmetry_suite<D: Dissimilarity + ?Sized>(
    measure: &D,
    suite: &SuiteConfig,
    stream: &RngStream,
) -> Result<PropertyReport> {
    let beta = measure.constants().beta;
    let mut rng = stream.generator();
    let mut report = PropertyReport::new(PropertyKind::Symmetry, RELATIVE_TOLERANCE);
    for _ in 0..suite.trials {
        let p = random_point(&mut rng, suite.domain, suite.dim);
        let q = random_point(&mut rng, suite.domain, suite.dim);
        let forward = measure.eval(&p, &q)?;
        let backward = measure.eval(&q, &p)?;
        let ratio = if forward == 0.0 && backward == 0.0 {
            0.0
        } else {
            (beta * backward / forward).max(beta * forward / backward)
        };
        report.record(ratio <= 1.0 + RELATIVE_TOLERANCE, ratio);
    }
    Ok(report)
}

pub fn triangle_suite<D: Dissimilarity + ?Sized>(
    measure: &D,
    suite: &SuiteConfig,
    stream: &RngStream,
) -> Result<PropertyReport> {
    let alpha = measure.constants().alpha;
    let mut rng = stream.generator();
    let mut report = PropertyReport::new(PropertyKind::Triangle, RELATIVE_TOLERANCE);
    for _ in 0..suite.trials {
        let p = random_point(&mut rng, suite.domain, suite.dim);
        let q = random_point(&mut rng, suite.domain, suite.dim);
        let r = random_point(&mut rng, suite.domain, suite.dim);
        let direct = measure.eval(&p, &q)?;
        let via = alpha * (measure.eval(&p, &r)? + measure.eval(&r, &q)?);
        let ratio = if direct == 0.0 { 0.0 } else { direct / via };
        report.record(ratio <= 1.0 + RELATIVE_TOLERANCE, ratio);
    }
    Ok(report)
}

/// `sets` random point sets of `set_size` points, each against a random
/// center; `worst_ratio` is the worst relative residual.
pub fn centroid_suite<D: Dissimilarity + ?Sized>(
    measure: &D,
    suite: &SuiteConfig,
    set_size: usize,
    tolerance: f64,
    stream: &RngStream,
) -> Result<PropertyReport> {
    let mut rng = stream.generator();
    let mut report = PropertyReport::new(PropertyKind::Centroid, tolerance);
    for _ in 0..suite.trials {
        let points: Vec<Point> = (0..set_size)
            .map(|_| random_point(&mut rng, suite.domain, suite.dim))
            .collect();
        let c = random_point(&mut rng, suite.domain, suite.dim);
        report.merge(&check_centroid_property(measure, &points, &c, tolerance)?);
    }
    Ok(report)
}

/// `Σ D(p, m(P)) <= Σ D(p, c)` for random sets and `centers_per_set`
/// random candidates `c`.
pub fn mean_minimality_suite<D: Dissimilarity + ?Sized>(
    measure: &D,
    suite: &SuiteConfig,
    set_size: usize,
    centers_per_set: usize,
    stream: &RngStream,
) -> Result<PropertyReport> {
    let mut rng = stream.generator();
    let mut report = PropertyReport::new(PropertyKind::Centroid, RELATIVE_TOLERANCE);
    for _ in 0..suite.trials {
        let points: Vec<Point> = (0..set_size)
            .map(|_| random_point(&mut rng, suite.domain, suite.dim))
            .collect();
        let at_mean = single_center_cost(measure, &points, &centroid(&points)?)?;
        for _ in 0..centers_per_set {
            let c = random_point(&mut rng, suite.domain, suite.dim);
            let other = single_center_cost(measure, &points, &c)?;
            let ratio = if other == 0.0 { 0.0 } else { at_mean / other };
            report.record(at_mean <= other * (1.0 + RELATIVE_TOLERANCE), ratio);
        }
    }
    Ok(report)
}

/// `D(p, q) >= 0` and `D(p, p) <= identity_tolerance`.
pub fn nonnegativity_suite<D: Dissimilarity + ?Sized>(
    measure: &D,
    suite: &SuiteConfig,
    identity_tolerance: f64,
    stream: &RngStream,
) -> Result<PropertyReport> {
    let mut rng = stream.generator();
    let mut report = PropertyReport::new(PropertyKind::Symmetry, identity_tolerance);
    for _ in 0..suite.trials {
        let p = random_point(&mut rng, suite.domain, suite.dim);
        let q = random_point(&mut rng, suite.domain, suite.dim);
        let self_cost = measure.eval(&p, &p)?;
        let cross = measure.eval(&p, &q)?;
        report.record(
            cross >= 0.0 && (0.0..=identity_tolerance).contains(&self_cost),
            self_cost,
        );
    }
    Ok(report)
}

/// Upper matrix `U` used to sandwich a measure on a box.
///
/// `I` for squared Euclidean, `A` for Mahalanobis, `(1/lo) I` for KL and
/// `(1/lo²) I` for Itakura-Saito. Generic Bregman generators need an
/// explicit matrix.
pub fn default_upper_matrix(measure: &Divergence, domain: Domain, dim: usize) -> Result<SpdMatrix> {
    let (lo, _) = sampling_bounds(domain);
    match measure.kind() {
        DivergenceKind::SquaredEuclidean => Ok(SpdMatrix::identity(dim)),
        DivergenceKind::Mahalanobis(a) => Ok(a.clone()),
        DivergenceKind::KullbackLeibler | DivergenceKind::ItakuraSaito if lo <= 0.0 => Err(
            Error::Config("μ-similarity needs a strictly positive box".into()),
        ),
        DivergenceKind::KullbackLeibler => Ok(SpdMatrix::scaled_identity(dim, 1.0 / lo)),
        DivergenceKind::ItakuraSaito => Ok(SpdMatrix::scaled_identity(dim, 1.0 / (lo * lo))),
        DivergenceKind::GenericBregman { .. } => Err(Error::Config(
            "generic Bregman measures need an explicit upper matrix".into(),
        )),
    }
}

/// Lower bound on `D / D_U` for the matrix from [`default_upper_matrix`],
/// from the smallest Hessian eigenvalue of the generator on the box:
/// `lo / (2 hi)` for KL and `lo² / (2 hi²)` for Itakura-Saito.
pub fn mu_floor(measure: &Divergence, domain: Domain) -> Option<f64> {
    let (lo, hi) = sampling_bounds(domain);
    if lo <= 0.0 {
        return None;
    }
    match measure.kind() {
        DivergenceKind::KullbackLeibler => Some(lo / (2.0 * hi)),
        DivergenceKind::ItakuraSaito => Some(lo * lo / (2.0 * hi * hi)),
        _ => None,
    }
}

/// Empirical `μ̂` from `suite.trials` random pairs in the suite's domain.
/// The infimum is only approached in a limit, so `μ̂` overestimates it.
pub fn calibrate_mu<D: Dissimilarity + ?Sized>(
    measure: &D,
    upper: &SpdMatrix,
    suite: &SuiteConfig,
    stream: &RngStream,
) -> Result<MuSimilarityReport> {
    let mut rng = stream.generator();
    let samples: Vec<(Point, Point)> = (0..suite.trials)
        .map(|_| {
            (
                random_point(&mut rng, suite.domain, suite.dim),
                random_point(&mut rng, suite.domain, suite.dim),
            )
        })
        .collect();
    check_mu_similarity(measure, upper, &samples)
}

/// Symmetry, triangle, centroid, and (for Bregman kinds on a box) the
/// μ-similarity sandwich, each over `suite.trials` draws.
pub fn standard_suite(
    measure: &Divergence,
    suite: &SuiteConfig,
    stream: &RngStream,
) -> Result<Vec<PropertyReport>> {
    let centroid_tolerance = match measure.kind() {
        DivergenceKind::SquaredEuclidean | DivergenceKind::Mahalanobis(_) => 1e-9,
        _ => 1e-8,
    };
    let centroid_sets = SuiteConfig {
        trials: (suite.trials / 100).max(1),
        ..*suite
    };
    let mut reports = vec![
        symmetry_suite(measure, suite, &stream.substream(0))?,
        triangle_suite(measure, suite, &stream.substream(1))?,
        centroid_suite(
            measure,
            &centroid_sets,
            50,
            centroid_tolerance,
            &stream.substream(2),
        )?,
    ];
    if measure.constants().mu.is_some() {
        if let Ok(upper) = default_upper_matrix(measure, suite.domain, suite.dim) {
            reports.push(calibrate_mu(measure, &upper, suite, &stream.substream(3))?.report);
        }
    }
    Ok(reports)
}
