// End to end: write a planted mixture to CSV, read it back, and run a
// seeded experiment that compares the scheme with its baselines.

use d2ptas::experiment::{
    generate_planted, ingest_csv, run_experiment, write_csv, Command, ExperimentSpec, PlantedParams,
};
use d2ptas::RngStream;

pub fn run_example() -> d2ptas::Result<()> {
    let dir = std::env::temp_dir().join(format!("d2ptas-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("blobs.csv");

    let params = PlantedParams {
        clusters: 3,
        per_cluster: 60,
        dim: 2,
        separation: 10.0,
        sigma: 1.0,
    };
    let planted = generate_planted(&params, &RngStream::new(11))?;
    write_csv(&planted.dataset, std::fs::File::create(&csv)?)?;
    let back = ingest_csv(&csv)?;
    assert_eq!(back.points(), planted.dataset.points());
    println!("wrote and re-read {} points", back.len());

    for command in [Command::Cluster, Command::Seedbench] {
        let spec = ExperimentSpec {
            command,
            input: Some(csv.clone()),
            k: 3,
            seed: 42,
            trials: 10,
            ..ExperimentSpec::default()
        };
        let report = run_experiment(&spec)?;
        println!("{command:?}:\n{}", report.summary_table());
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> d2ptas::Result<()> {
    run_example()
}
