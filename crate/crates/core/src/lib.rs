//! D²-sampling approximation schemes for k-means and k-median.
//!
//! The crate clusters points under squared Euclidean distance, Mahalanobis
//! distances, and μ-similar Bregman divergences (Kullback-Leibler,
//! Itakura-Saito, or any caller-supplied generator). Next to the
//! approximation scheme it ships the machinery to check it:
//!
//! - [`divergence`]: measures, centroids, costs, and structural property checks
//! - [`sampler`]: D²-sampling with incrementally maintained potentials
//! - [`ptas`]: the sampling-based approximation scheme and a k-means++ baseline
//! - [`oracle`]: exact brute force, Lloyd, irreducibility, sampling-lemma trials
//! - [`properties`]: randomized property suites over a domain
//! - [`experiment`]: CSV ingestion, planted mixtures, and JSON run reports
//!
//! ```
//! use d2ptas::{find_k_means, optimal_bruteforce, Dataset, PtasConfig, RngStream, SqEuclidean};
//!
//! let data = Dataset::from_rows(&[[0.0], [1.0], [4.0], [5.0]]).unwrap();
//! let config = PtasConfig::custom(2, 0.5, 8, 2).with_restarts(4);
//! let result = find_k_means(&data, &config, &RngStream::new(3)).unwrap();
//! let oracle = optimal_bruteforce(&data, 2, &SqEuclidean).unwrap();
//! assert_eq!(result.cost, oracle.optimal_cost);
//! ```

pub mod divergence;
pub mod error;
pub mod experiment;
pub mod oracle;
pub mod point;
pub mod properties;
pub mod ptas;
pub mod rng;
pub mod sampler;

pub use divergence::{
    centroid, cluster_cost, BregmanGenerator, Dissimilarity, Divergence, DivergenceKind,
    MeasureConstants, PropertyKind, PropertyReport, SpdMatrix, SqEuclidean,
};
pub use error::{Error, Result};
pub use oracle::{lloyd, optimal_bruteforce, OracleResult};
pub use point::{Dataset, Domain, Point};
pub use ptas::{
    find_best_over_k, find_k_means, find_k_median, kmeanspp_seed, run_one_restart,
    ClusteringResult, PtasConfig, ScalePreset, SubsetDraw, SubsetStrategy,
};
pub use rng::RngStream;
pub use sampler::{CenterSet, D2Distribution};
