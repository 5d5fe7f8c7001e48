//! Experiment plumbing: CSV points, planted mixtures, and JSON reports.
//!
//! A run is fully described by an [`ExperimentSpec`]; [`run_experiment`]
//! turns it into a [`RunReport`]. Two runs of the same spec produce the same
//! report apart from the `seconds` fields.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::divergence::{Divergence, DivergenceKind, PropertyReport, SpdMatrix};
use crate::error::{Error, Result};
use crate::oracle::{best_of_seeded_lloyd, lloyd, optimal_bruteforce, OracleLimits};
use crate::point::{Dataset, Domain, Point};
use crate::properties::{
    calibrate_mu, default_upper_matrix, mu_floor, standard_suite, SuiteConfig,
};
use crate::ptas::{find_k_median, kmeanspp_seed, PtasConfig, SubsetDraw, SubsetStrategy};
use crate::rng::RngStream;

/// Paper-scale runs whose per-step subset count exceeds this are refused.
pub const MAX_PAPER_SUBSETS: f64 = 1e9;

const LLOYD_MAX_ITERS: usize = 100;

// ---------------------------------------------------------------------------
// CSV

/// Reads comma-separated points. A first line whose first token is not a
/// number is treated as a header.
pub fn ingest_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    ingest_csv_in(path, Domain::Unrestricted)
}

pub fn ingest_csv_in(path: impl AsRef<Path>, domain: Domain) -> Result<Dataset> {
    parse_csv(File::open(path)?, domain)
}

pub fn parse_csv<R: Read>(reader: R, domain: Domain) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let first = record.get(0).unwrap_or("");
        if rows.is_empty() && width.is_none() && first.parse::<f64>().is_err() {
            // Header line.
            width = Some(record.len());
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::RaggedRows {
                line,
                expected,
                got: record.len(),
            });
        }
        let row = record
            .iter()
            .map(|tok| {
                tok.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Parse {
                        line,
                        message: format!("invalid number {tok:?}"),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyFile);
    }
    Dataset::from_rows_in(&rows, domain)
}

/// 17 significant digits, enough for every `f64` to round-trip.
pub fn format_coordinate(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(dataset: &Dataset, mut out: W) -> Result<()> {
    let mut line = String::new();
    for p in dataset.points() {
        line.clear();
        for (i, v) in p.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&format_coordinate(*v));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()?;
    Ok(())
}

fn write_labels<W: Write>(labels: &[usize], mut out: W) -> Result<()> {
    for l in labels {
        writeln!(out, "{l}")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a `d x d` matrix, one row per line, and validates it.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<SpdMatrix> {
    let data = ingest_csv(path)?;
    SpdMatrix::new(data.points().iter().map(|p| p.to_vec()).collect())
}

// ---------------------------------------------------------------------------
// Planted mixtures

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlantedParams {
    pub clusters: usize,
    pub per_cluster: usize,
    pub dim: usize,
    /// Minimum center spacing, in units of `sigma`.
    pub separation: f64,
    pub sigma: f64,
}

impl Default for PlantedParams {
    fn default() -> Self {
        PlantedParams {
            clusters: 3,
            per_cluster: 100,
            dim: 2,
            separation: 10.0,
            sigma: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedInstance {
    pub dataset: Dataset,
    pub labels: Vec<usize>,
    pub centers: Vec<Point>,
}

/// Isotropic Gaussian blobs with centers at least `separation * sigma`
/// apart. Points are emitted cluster by cluster.
pub fn generate_planted(params: &PlantedParams, stream: &RngStream) -> Result<PlantedInstance> {
    let PlantedParams {
        clusters,
        per_cluster,
        dim,
        separation,
        sigma,
    } = *params;
    if clusters == 0 || per_cluster == 0 || dim == 0 {
        return Err(Error::Config(
            "clusters, per-cluster count and dimension must be >= 1".into(),
        ));
    }
    if !(separation > 0.0 && sigma > 0.0 && separation.is_finite() && sigma.is_finite()) {
        return Err(Error::Config(
            "separation and sigma must be positive".into(),
        ));
    }
    let min_gap = separation * sigma;
    let side = 2.0 * min_gap * (clusters as f64).powf(1.0 / dim as f64);
    let mut rng = stream.generator();
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(clusters);
    let mut attempts = 0;
    while centers.len() < clusters && attempts < 10_000 {
        attempts += 1;
        let c: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..side)).collect();
        let far = centers.iter().all(|o| {
            o.iter()
                .zip(&c)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                >= min_gap
        });
        if far {
            centers.push(c);
        }
    }
    if centers.len() < clusters {
        // Evenly spaced along the first axis always satisfies the gap.
        centers = (0..clusters)
            .map(|j| {
                let mut c = vec![0.0; dim];
                c[0] = j as f64 * min_gap;
                c
            })
            .collect();
    }
    let mut points = Vec::with_capacity(clusters * per_cluster);
    let mut labels = Vec::with_capacity(clusters * per_cluster);
    for (j, c) in centers.iter().enumerate() {
        for _ in 0..per_cluster {
            let coords = c
                .iter()
                .map(|&m| m + sigma * rng.sample::<f64, _>(StandardNormal))
                .collect();
            points.push(Point::new(coords)?);
            labels.push(j);
        }
    }
    Ok(PlantedInstance {
        dataset: Dataset::new(points, Domain::Unrestricted)?,
        labels,
        centers: centers.into_iter().map(Point::new).collect::<Result<_>>()?,
    })
}

// ---------------------------------------------------------------------------
// Specs

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Cluster,
    Oracle,
    Properties,
    Seedbench,
    Generate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    Sqeuclid,
    Mahalanobis { matrix: PathBuf },
    Kl,
    ItakuraSaito,
}

impl FromStr for MeasureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqeuclid" => Ok(MeasureSpec::Sqeuclid),
            "kl" => Ok(MeasureSpec::Kl),
            "itakura-saito" => Ok(MeasureSpec::ItakuraSaito),
            _ => match s.strip_prefix("mahalanobis:") {
                Some(path) if !path.is_empty() => Ok(MeasureSpec::Mahalanobis { matrix: path.into() }),
                _ => Err(Error::Config(format!(
                    "unknown measure {s:?}; expected sqeuclid, mahalanobis:FILE, kl or itakura-saito"
                ))),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetChoice {
    Paper,
    Desk,
}

impl FromStr for PresetChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(PresetChoice::Paper),
            "desk" => Ok(PresetChoice::Desk),
            _ => Err(Error::Config(format!(
                "unknown preset {s:?}; expected paper or desk"
            ))),
        }
    }
}

/// Parses `exhaustive` or `random:R`.
pub fn parse_strategy(s: &str) -> Result<SubsetStrategy> {
    if s == "exhaustive" {
        return Ok(SubsetStrategy::Exhaustive);
    }
    s.strip_prefix("random:")
        .and_then(|r| r.parse::<usize>().ok())
        .filter(|&r| r > 0)
        .map(SubsetStrategy::RandomTrials)
        .ok_or_else(|| {
            Error::Config(format!(
                "invalid strategy {s:?}; expected exhaustive or random:R"
            ))
        })
}

/// Parses `uniform` or `anchored`.
pub fn parse_subset_draw(s: &str) -> Result<SubsetDraw> {
    match s {
        "uniform" => Ok(SubsetDraw::Uniform),
        "anchored" => Ok(SubsetDraw::Anchored),
        _ => Err(Error::Config(format!(
            "invalid subset draw {s:?}; expected uniform or anchored"
        ))),
    }
}

/// Parses `LO:HI` into a box domain.
pub fn parse_domain(s: &str) -> Result<Domain> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Config(format!("invalid domain {s:?}; expected LO:HI")))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("invalid domain bound {v:?}")))
    };
    Domain::boxed(parse(lo)?, parse(hi)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub generator: PlantedParams,
    pub measure: MeasureSpec,
    pub mu: Option<f64>,
    pub domain: Option<Domain>,
    pub k: usize,
    pub epsilon: f64,
    pub preset: PresetChoice,
    pub strategy: Option<SubsetStrategy>,
    pub subset_draw: Option<SubsetDraw>,
    pub restarts: Option<usize>,
    pub seed: u64,
    pub threads: usize,
    pub trials: u64,
    /// Seeded Lloyd runs in the baseline.
    pub lloyd_runs: usize,
    pub output: Option<PathBuf>,
    pub labels_output: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            command: Command::Cluster,
            input: None,
            generator: PlantedParams::default(),
            measure: MeasureSpec::Sqeuclid,
            mu: None,
            domain: None,
            k: 3,
            epsilon: 0.5,
            preset: PresetChoice::Desk,
            strategy: None,
            subset_draw: None,
            restarts: None,
            seed: 0,
            threads: 0,
            trials: 20,
            lloyd_runs: 100,
            output: None,
            labels_output: None,
        }
    }
}

impl ExperimentSpec {
    fn box_domain(&self) -> Domain {
        self.domain.unwrap_or(Domain::DEFAULT_BOX)
    }

    /// Builds the measure. KL and Itakura-Saito without `--mu` declare the
    /// smaller of the calibrated `μ̂` and the Hessian floor on the box.
    pub fn build_measure(&self, dim: usize) -> Result<Divergence> {
        let placeholder = |mu: Option<f64>| mu.unwrap_or(1.0);
        let measure = match &self.measure {
            MeasureSpec::Sqeuclid => return Ok(Divergence::squared_euclidean()),
            MeasureSpec::Mahalanobis { matrix } => {
                let a = read_matrix(matrix)?;
                if a.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: a.dim(),
                    });
                }
                return Ok(Divergence::mahalanobis(a));
            }
            MeasureSpec::Kl => Divergence::kullback_leibler(placeholder(self.mu))?,
            MeasureSpec::ItakuraSaito => Divergence::itakura_saito(placeholder(self.mu))?,
        };
        if self.mu.is_some() {
            return Ok(measure);
        }
        let domain = self.box_domain();
        let upper = default_upper_matrix(&measure, domain, dim)?;
        let suite = SuiteConfig {
            domain,
            dim,
            trials: 10_000,
        };
        let mu_hat = calibrate_mu(
            &measure,
            &upper,
            &suite,
            &RngStream::new(self.seed).substream(77),
        )?
        .mu_hat;
        let mu = mu_floor(&measure, domain).map_or(mu_hat, |floor| floor.min(mu_hat));
        measure.with_mu(mu.min(1.0))
    }

    fn load_dataset(&self, measure_domain: Domain) -> Result<(Dataset, Option<Vec<usize>>)> {
        match &self.input {
            Some(path) => Ok((ingest_csv_in(path, measure_domain)?, None)),
            None => {
                let planted =
                    generate_planted(&self.generator, &RngStream::new(self.seed).substream(1))?;
                let data = Dataset::new(planted.dataset.points().to_vec(), measure_domain)?;
                Ok((data, Some(planted.labels)))
            }
        }
    }

    fn ptas_config(&self, measure: &Divergence) -> Result<PtasConfig> {
        let mut cfg = match self.preset {
            PresetChoice::Desk => PtasConfig::desk(self.k, self.epsilon),
            PresetChoice::Paper => {
                let cfg = match measure.kind() {
                    DivergenceKind::SquaredEuclidean => {
                        PtasConfig::paper_kmeans(self.k, self.epsilon)
                    }
                    _ => PtasConfig::paper(self.k, self.epsilon, measure),
                };
                let ln_subsets = cfg.ln_subsets_per_step();
                if ln_subsets > MAX_PAPER_SUBSETS.ln() {
                    return Err(Error::TooLarge(format!(
                        "paper preset needs N = {}, M = {}, C(N, M) = {} subsets per step \
                         (limit {MAX_PAPER_SUBSETS:e}); use --preset desk",
                        cfg.sample_size,
                        cfg.subset_size,
                        format_huge(ln_subsets)
                    )));
                }
                cfg
            }
        };
        if let Some(s) = self.strategy {
            cfg.strategy = s;
        }
        if let Some(d) = self.subset_draw {
            cfg.subset_draw = d;
        }
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        cfg.threads = self.threads;
        Ok(cfg)
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub cost: f64,
    /// `cost / min cost` across the report; infinite (null) when the
    /// minimum is 0 and this cost is not.
    pub ratio: f64,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub spec: ExperimentSpec,
    pub results: BTreeMap<String, MethodResult>,
    pub properties: Vec<PropertyReport>,
    pub seed: u64,
    pub version: String,
}

impl RunReport {
    fn new(spec: &ExperimentSpec) -> Self {
        RunReport {
            spec: spec.clone(),
            results: BTreeMap::new(),
            properties: Vec::new(),
            seed: spec.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    fn add(&mut self, method: &str, cost: f64, seconds: f64) {
        self.results.insert(
            method.to_string(),
            MethodResult {
                cost,
                ratio: 1.0,
                seconds,
            },
        );
    }

    fn finalize_ratios(&mut self) {
        let best = self
            .results
            .values()
            .map(|r| r.cost)
            .fold(f64::INFINITY, f64::min);
        for r in self.results.values_mut() {
            r.ratio = if r.cost == best {
                1.0
            } else if best > 0.0 {
                r.cost / best
            } else {
                f64::INFINITY
            };
        }
    }

    /// Copy with every timing field zeroed.
    pub fn without_timing(&self) -> RunReport {
        let mut r = self.clone();
        r.results.values_mut().for_each(|m| m.seconds = 0.0);
        r
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        if !self.results.is_empty() {
            let _ = writeln!(
                out,
                "{:<18} {:>16} {:>10} {:>10}",
                "method", "cost", "ratio", "seconds"
            );
            for (name, r) in &self.results {
                let _ = writeln!(
                    out,
                    "{name:<18} {:>16.6} {:>10.4} {:>10.3}",
                    r.cost, r.ratio, r.seconds
                );
            }
        }
        for p in &self.properties {
            let _ = writeln!(
                out,
                "{:<14} trials={:<8} violations={:<6} worst={:.6e} tol={:.1e}",
                format!("{:?}", p.property),
                p.trials,
                p.violations,
                p.worst_ratio,
                p.tolerance
            );
        }
        out
    }
}

/// Executes `spec`. `generate` writes its CSV (and labels) to the spec's
/// output paths and returns an empty report.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunReport> {
    let mut report = RunReport::new(spec);
    let base = RngStream::new(spec.seed);
    match spec.command {
        Command::Generate => {
            let planted = generate_planted(&spec.generator, &base.substream(1))?;
            let out = spec
                .output
                .as_ref()
                .ok_or_else(|| Error::Config("generate needs --output".into()))?;
            write_csv(&planted.dataset, BufWriter::new(File::create(out)?))?;
            if let Some(labels) = &spec.labels_output {
                write_labels(&planted.labels, BufWriter::new(File::create(labels)?))?;
            }
        }
        Command::Properties => {
            let dim = spec.generator.dim;
            let measure = spec.build_measure(dim)?;
            let domain = match measure.kind() {
                DivergenceKind::SquaredEuclidean | DivergenceKind::Mahalanobis(_) => {
                    spec.domain.unwrap_or(Domain::Unrestricted)
                }
                _ => spec.box_domain(),
            };
            let suite = SuiteConfig {
                domain,
                dim,
                trials: spec.trials,
            };
            report.properties = standard_suite(&measure, &suite, &base.substream(2))?;
        }
        Command::Oracle => {
            let (data, _) = spec_dataset(spec)?;
            let measure = spec.build_measure(data.dim())?;
            let t = Instant::now();
            let r = optimal_bruteforce(&data, spec.k, &measure)?;
            report.add("oracle", r.optimal_cost, t.elapsed().as_secs_f64());
        }
        Command::Cluster => {
            let (data, _) = spec_dataset(spec)?;
            let measure = spec.build_measure(data.dim())?;
            let cfg = spec.ptas_config(&measure)?;
            let ptas = find_k_median(&data, &measure, &cfg, &base.substream(3))?;
            report.add("ptas", ptas.cost, ptas.meta.seconds);
            let baseline = best_of_seeded_lloyd(
                &data,
                &measure,
                spec.k,
                spec.lloyd_runs,
                LLOYD_MAX_ITERS,
                &base.substream(4),
            )?;
            report.add("kmeans++/lloyd", baseline.cost, baseline.meta.seconds);
            let limits = OracleLimits::default();
            if data.len() <= limits.max_points && spec.k <= limits.max_k {
                let t = Instant::now();
                let r = optimal_bruteforce(&data, spec.k, &measure)?;
                report.add("oracle", r.optimal_cost, t.elapsed().as_secs_f64());
            }
        }
        Command::Seedbench => {
            let (data, _) = spec_dataset(spec)?;
            let measure = spec.build_measure(data.dim())?;
            let runs = spec.trials.max(1);
            let (mut seeding, mut refined) = (0.0, 0.0);
            let t = Instant::now();
            for r in 0..runs {
                let s = kmeanspp_seed(&data, &measure, spec.k, &base.substream(5).substream(r))?;
                seeding += s.cost;
                refined += lloyd(&data, &measure, &s.centers, LLOYD_MAX_ITERS)?.cost;
            }
            let per_run = t.elapsed().as_secs_f64() / runs as f64;
            report.add("kmeans++", seeding / runs as f64, per_run);
            report.add("kmeans++/lloyd", refined / runs as f64, per_run);
            let cfg = spec.ptas_config(&measure)?;
            let ptas = find_k_median(&data, &measure, &cfg, &base.substream(3))?;
            report.add("ptas", ptas.cost, ptas.meta.seconds);
        }
    }
    report.finalize_ratios();
    Ok(report)
}

/// Formats `e^ln_value` in scientific notation, beyond `f64` range if needed.
pub fn format_huge(ln_value: f64) -> String {
    let log10 = ln_value / std::f64::consts::LN_10;
    let mut exponent = log10.floor();
    let mut mantissa = (10f64.powf(log10 - exponent) * 1000.0).round() / 1000.0;
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    format!("{mantissa:.3}e{}", exponent as i64)
}

fn spec_dataset(spec: &ExperimentSpec) -> Result<(Dataset, Option<Vec<usize>>)> {
    let domain = match spec.measure {
        MeasureSpec::Kl | MeasureSpec::ItakuraSaito => Domain::StrictlyPositive,
        _ => Domain::Unrestricted,
    };
    spec.load_dataset(domain)
}

/// Writes the report JSON to `path`.
pub fn write_report(report: &RunReport, path: impl AsRef<Path>) -> Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    f.write_all(report.to_json()?.as_bytes())?;
    f.write_all(b"\n")?;
    f.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_basic_and_header() {
        let d = parse_csv("0,0\n2,0\n".as_bytes(), Domain::Unrestricted).unwrap();
        assert_eq!((d.len(), d.dim()), (2, 2));
        let d = parse_csv("x,y\n1,2\n3,4\n".as_bytes(), Domain::Unrestricted).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.point(1).coords(), &[3.0, 4.0]);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let err = parse_csv("1,2\n3,4\n5\n".as_bytes(), Domain::Unrestricted).unwrap_err();
        assert!(
            matches!(
                err,
                Error::RaggedRows {
                    line: 3,
                    expected: 2,
                    got: 1
                }
            ),
            "{err:?}"
        );
        let err = parse_csv("1,2\n3,abc\n".as_bytes(), Domain::Unrestricted).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        assert!(matches!(
            parse_csv("".as_bytes(), Domain::Unrestricted),
            Err(Error::EmptyFile)
        ));
        assert!(matches!(
            parse_csv("a,b\n".as_bytes(), Domain::Unrestricted),
            Err(Error::EmptyFile)
        ));
    }

    #[test]
    fn flag_parsers() {
        assert_eq!(
            parse_strategy("exhaustive").unwrap(),
            SubsetStrategy::Exhaustive
        );
        assert_eq!(
            parse_strategy("random:50").unwrap(),
            SubsetStrategy::RandomTrials(50)
        );
        assert!(parse_strategy("random:0").is_err());
        assert!(parse_strategy("greedy").is_err());
        assert_eq!(parse_subset_draw("anchored").unwrap(), SubsetDraw::Anchored);
        assert!(parse_subset_draw("nearest").is_err());
        assert_eq!(
            parse_domain("0.1:0.9").unwrap(),
            Domain::Box { lo: 0.1, hi: 0.9 }
        );
        assert!(parse_domain("0.9:0.1").is_err());
        assert!(parse_domain("0.5").is_err());
        assert_eq!("kl".parse::<MeasureSpec>().unwrap(), MeasureSpec::Kl);
        assert_eq!(
            "mahalanobis:a.csv".parse::<MeasureSpec>().unwrap(),
            MeasureSpec::Mahalanobis {
                matrix: "a.csv".into()
            }
        );
        assert!("mahalanobis:".parse::<MeasureSpec>().is_err());
        assert!("paper".parse::<PresetChoice>().is_ok());
    }

    #[test]
    fn planted_single_blob() {
        let p = PlantedParams {
            clusters: 1,
            per_cluster: 10,
            ..PlantedParams::default()
        };
        let inst = generate_planted(&p, &RngStream::new(1)).unwrap();
        assert_eq!(inst.labels, vec![0; 10]);
        assert!(generate_planted(
            &PlantedParams {
                separation: 0.0,
                ..p
            },
            &RngStream::new(1)
        )
        .is_err());
    }

    #[test]
    fn planted_centers_are_separated() {
        let p = PlantedParams {
            clusters: 5,
            per_cluster: 2,
            dim: 2,
            separation: 10.0,
            sigma: 0.5,
        };
        let inst = generate_planted(&p, &RngStream::new(9)).unwrap();
        for (i, a) in inst.centers.iter().enumerate() {
            for b in &inst.centers[i + 1..] {
                let d: f64 = a
                    .iter()
                    .zip(b.iter())
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt();
                assert!(d >= 5.0);
            }
        }
    }

    #[test]
    fn paper_preset_is_refused() {
        let spec = ExperimentSpec {
            preset: PresetChoice::Paper,
            ..ExperimentSpec::default()
        };
        let err = spec
            .ptas_config(&Divergence::squared_euclidean())
            .unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("N = 1228800") && msg.contains("M = 200"),
            "{msg}"
        );
        assert!(!msg.contains("inf"), "{msg}");
        assert_eq!(format_huge(1e3f64.ln()), "1.000e3");
    }

    #[test]
    fn ratios_are_relative_to_minimum() {
        let mut r = RunReport::new(&ExperimentSpec::default());
        r.add("a", 2.0, 0.0);
        r.add("b", 3.0, 0.0);
        r.finalize_ratios();
        assert_eq!(r.results["a"].ratio, 1.0);
        assert_eq!(r.results["b"].ratio, 1.5);
    }
}
