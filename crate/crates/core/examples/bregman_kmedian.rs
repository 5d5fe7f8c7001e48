// k-median under KL, Itakura-Saito and a Mahalanobis distance, with the
// best-over-k wrapper picking the number of centers actually needed.

use d2ptas::{
    find_best_over_k, find_k_median, optimal_bruteforce, Dataset, Divergence, Domain, PtasConfig,
    RngStream, SpdMatrix, SubsetStrategy,
};

pub fn run_example() -> d2ptas::Result<()> {
    let rows = [
        [0.12, 0.20],
        [0.15, 0.22],
        [0.11, 0.25],
        [0.52, 0.48],
        [0.55, 0.50],
        [0.50, 0.45],
        [0.85, 0.80],
        [0.88, 0.82],
        [0.82, 0.86],
    ];
    let data = Dataset::from_rows_in(&rows, Domain::StrictlyPositive)?;
    let config = PtasConfig::custom(3, 0.5, 40, 2).with_strategy(SubsetStrategy::RandomTrials(30));

    let measures = [
        Divergence::kullback_leibler(0.05)?,
        Divergence::itakura_saito(0.005)?,
        Divergence::mahalanobis(SpdMatrix::new(vec![vec![1.0, 0.3], vec![0.3, 2.0]])?),
    ];
    for m in &measures {
        let r = find_k_median(&data, m, &config, &RngStream::new(1))?;
        let opt = optimal_bruteforce(&data, 3, m)?;
        println!(
            "{:>14}: cost {:.5} (optimum {:.5}), labels {:?}",
            m.name(),
            r.cost,
            opt.optimal_cost,
            r.assignment
        );
    }

    let best = find_best_over_k(&data, &measures[0], &config, &RngStream::new(2))?;
    println!(
        "best over k: {} centers, cost {:.5}",
        best.meta.iterations, best.cost
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> d2ptas::Result<()> {
    run_example()
}
