// The sampling scheme for k-means at desk scale, next to seeded Lloyd, and
// its exhaustive form on an instance small enough to enumerate.

use d2ptas::experiment::{generate_planted, PlantedParams};
use d2ptas::oracle::best_of_seeded_lloyd;
use d2ptas::{find_k_means, optimal_bruteforce, Dataset, PtasConfig, RngStream, SqEuclidean};

pub fn run_example() -> d2ptas::Result<()> {
    let params = PlantedParams {
        clusters: 3,
        per_cluster: 100,
        dim: 2,
        separation: 10.0,
        sigma: 1.0,
    };
    let planted = generate_planted(&params, &RngStream::new(3))?;
    let data = &planted.dataset;

    let config = PtasConfig::desk(3, 0.5);
    let ptas = find_k_means(data, &config, &RngStream::new(4))?;
    let lloyd = best_of_seeded_lloyd(data, &SqEuclidean, 3, 100, 100, &RngStream::new(5))?;
    println!(
        "desk preset: cost {:.3} in {:.3}s",
        ptas.cost, ptas.meta.seconds
    );
    println!("best of 100 seeded Lloyd: cost {:.3}", lloyd.cost);
    for (i, step) in ptas.trace.iter().enumerate() {
        println!(
            "  step {i}: center {} partial cost {:.3}",
            step.center, step.partial_cost
        );
    }

    let paper = PtasConfig::paper_kmeans(3, 0.5);
    println!(
        "paper constants for k = 3: N = {}, M = {}",
        paper.sample_size, paper.subset_size
    );

    let tiny = Dataset::from_rows(&[[0.0], [1.0], [4.0], [5.0], [9.0], [10.0]])?;
    let exhaustive = PtasConfig::custom(3, 0.5, 60, 2);
    let r = find_k_means(&tiny, &exhaustive, &RngStream::new(6))?;
    let opt = optimal_bruteforce(&tiny, 3, &SqEuclidean)?;
    println!(
        "exhaustive on 6 points: cost {} vs optimum {} after {} subsets",
        r.cost, opt.optimal_cost, r.meta.subsets_examined
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> d2ptas::Result<()> {
    run_example()
}
