// D²-sampling against a growing center set.

use d2ptas::sampler::{d2_sample, empirical_distribution_check};
use d2ptas::{CenterSet, Dataset, Point, RngStream, SqEuclidean};

pub fn run_example() -> d2ptas::Result<()> {
    let data = Dataset::from_rows(&[[0.0], [1.0], [3.0], [9.0], [10.0]])?;
    let mut set = CenterSet::empty(&data);
    println!("no centers: {:?}", set.distribution().probabilities);

    set.add_center(Point::new(vec![0.0])?, &data, &SqEuclidean)?;
    println!("center at 0: {:?}", set.distribution().probabilities);
    println!("draws: {:?}", d2_sample(&set, &RngStream::new(7), 10)?);

    set.add_center(Point::new(vec![9.5])?, &data, &SqEuclidean)?;
    let dist = set.distribution();
    println!(
        "centers at 0 and 9.5: {:?} (total {})",
        dist.probabilities,
        set.total_potential()
    );

    let check = empirical_distribution_check(&set, &RngStream::new(8), 100_000)?;
    println!(
        "L-inf gap after 1e5 draws: {:.4} (tolerance {})",
        check.worst_ratio, check.tolerance
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> d2ptas::Result<()> {
    run_example()
}
