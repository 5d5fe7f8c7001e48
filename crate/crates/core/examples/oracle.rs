// Exact optima by enumeration, Lloyd refinement, irreducibility, and the
// sample-mean lemma.

use d2ptas::oracle::{inaba_trial, irreducibility, IrreducibilityMode};
use d2ptas::{lloyd, optimal_bruteforce, Dataset, Point, RngStream, SqEuclidean};

pub fn run_example() -> d2ptas::Result<()> {
    let data = Dataset::from_rows(&[[0.0], [1.0], [4.0], [5.0]])?;
    let opt = optimal_bruteforce(&data, 2, &SqEuclidean)?;
    println!(
        "optimum {} with partition {:?} ({} assignments)",
        opt.optimal_cost, opt.optimal_partition, opt.assignments_examined
    );

    let init = [Point::new(vec![1.0])?, Point::new(vec![4.0])?];
    let refined = lloyd(&data, &SqEuclidean, &init, 20)?;
    println!("Lloyd from {{1, 4}}: costs {:?}", refined.meta.cost_history);

    let irr = irreducibility(&data, 2, &SqEuclidean, IrreducibilityMode::Exact)?;
    println!(
        "Δ1 = {}, Δ2 = {}, γ = {}",
        irr.delta_km1, irr.delta_k, irr.gamma
    );

    let grid: Vec<[f64; 1]> = (0..12).map(|i| [i as f64]).collect();
    let grid = Dataset::from_rows(&grid)?;
    let irr = irreducibility(&grid, 4, &SqEuclidean, IrreducibilityMode::Exact)?;
    println!("12 grid points, k = 4: γ = {}", irr.gamma);

    let trial = inaba_trial(&grid, &SqEuclidean, 25, 0.2, 2000, &RngStream::new(1))?;
    println!(
        "25-point sample means within 1.2x: {:.3} of trials",
        trial.success_rate()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> d2ptas::Result<()> {
    run_example()
}
