use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use d2ptas::experiment::{
    parse_domain, parse_strategy, parse_subset_draw, run_experiment, write_report, Command,
    ExperimentSpec, MeasureSpec, PlantedParams, PresetChoice,
};
use d2ptas::{Domain, SubsetDraw, SubsetStrategy};

#[derive(Parser, Debug)]
#[command(name = "d2ptas", version, about = "D²-sampling clustering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// CSV of points; a planted mixture is generated when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report JSON path (CSV path for `generate`).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 3)]
    k: usize,
    #[arg(long, global = true, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, global = true, default_value = "desk", value_parser = parse_preset)]
    preset: PresetChoice,
    /// `exhaustive` or `random:R`.
    #[arg(long, global = true, value_parser = strategy)]
    strategy: Option<SubsetStrategy>,
    /// How random trials draw subsets: `anchored` or `uniform`.
    #[arg(long, global = true, value_parser = subset_draw)]
    subset_draw: Option<SubsetDraw>,
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// `sqeuclid`, `mahalanobis:FILE`, `kl` or `itakura-saito`.
    #[arg(long, global = true, default_value = "sqeuclid", value_parser = measure)]
    measure: MeasureSpec,
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// `LO:HI` box for sampling and μ calibration.
    #[arg(long, global = true, value_parser = domain)]
    domain: Option<Domain>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for restarts; 0 or 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 20)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 100)]
    lloyd_runs: usize,

    #[arg(long, global = true, default_value_t = 3)]
    clusters: usize,
    #[arg(long, global = true, default_value_t = 100)]
    per_cluster: usize,
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,
    #[arg(long, global = true, default_value_t = 10.0)]
    separation: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    sigma: f64,
    /// Where `generate` writes ground-truth labels.
    #[arg(long, global = true)]
    labels: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Run the approximation scheme against the baselines.
    Cluster,
    /// Exact optimum by enumeration.
    Oracle,
    /// Randomized structural checks of a measure.
    Properties,
    /// k-means++ seeding and Lloyd averages next to the scheme.
    Seedbench,
    /// Write a planted Gaussian mixture as CSV.
    Generate,
}

fn parse_preset(s: &str) -> Result<PresetChoice, String> {
    s.parse().map_err(|e: d2ptas::Error| e.to_string())
}

fn strategy(s: &str) -> Result<SubsetStrategy, String> {
    parse_strategy(s).map_err(|e| e.to_string())
}

fn subset_draw(s: &str) -> Result<SubsetDraw, String> {
    parse_subset_draw(s).map_err(|e| e.to_string())
}

fn measure(s: &str) -> Result<MeasureSpec, String> {
    s.parse().map_err(|e: d2ptas::Error| e.to_string())
}

fn domain(s: &str) -> Result<Domain, String> {
    parse_domain(s).map_err(|e| e.to_string())
}

impl Cli {
    fn spec(self) -> ExperimentSpec {
        let command = match self.command {
            Cmd::Cluster => Command::Cluster,
            Cmd::Oracle => Command::Oracle,
            Cmd::Properties => Command::Properties,
            Cmd::Seedbench => Command::Seedbench,
            Cmd::Generate => Command::Generate,
        };
        ExperimentSpec {
            command,
            input: self.input,
            generator: PlantedParams {
                clusters: self.clusters,
                per_cluster: self.per_cluster,
                dim: self.dim,
                separation: self.separation,
                sigma: self.sigma,
            },
            measure: self.measure,
            mu: self.mu,
            domain: self.domain,
            k: self.k,
            epsilon: self.epsilon,
            preset: self.preset,
            strategy: self.strategy,
            subset_draw: self.subset_draw,
            restarts: self.restarts,
            seed: self.seed,
            threads: self.threads,
            trials: self.trials,
            lloyd_runs: self.lloyd_runs,
            output: self.output,
            labels_output: self.labels,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("D2PTAS_LOG")).init();
    // clap exits with status 2 on usage errors.
    let spec = Cli::parse().spec();
    match execute(&spec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("d2ptas: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(spec: &ExperimentSpec) -> d2ptas::Result<()> {
    let report = run_experiment(spec)?;
    if spec.command == Command::Generate {
        return Ok(());
    }
    match &spec.output {
        Some(path) => {
            write_report(&report, path)?;
            print!("{}", report.summary_table());
        }
        None => {
            eprint!("{}", report.summary_table());
            println!("{}", report.to_json()?);
        }
    }
    Ok(())
}
