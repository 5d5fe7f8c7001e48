// Evaluating measures, checking the centroid identity, and calibrating μ
// for a Bregman divergence on a box.

use d2ptas::divergence::check_centroid_property;
use d2ptas::properties::{
    calibrate_mu, default_upper_matrix, mu_floor, standard_suite, SuiteConfig,
};
use d2ptas::{Dissimilarity, Divergence, Domain, Point, RngStream, SpdMatrix};

pub fn run_example() -> d2ptas::Result<()> {
    let p = Point::new(vec![0.5, 0.5])?;
    let q = Point::new(vec![0.25, 0.75])?;
    let a = SpdMatrix::new(vec![vec![2.0, 0.5], vec![0.5, 1.0]])?;
    let measures = [
        Divergence::squared_euclidean(),
        Divergence::mahalanobis(a),
        Divergence::kullback_leibler(0.5)?,
        Divergence::itakura_saito(0.5)?,
    ];
    for m in &measures {
        println!(
            "{:>14}  D(p, q) = {:.6}  D(q, p) = {:.6}",
            m.name(),
            m.eval(&p, &q)?,
            m.eval(&q, &p)?
        );
    }

    // Σ D(x, c) = Σ D(x, mean) + |P| D(mean, c) for every measure above.
    let set: Vec<Point> = [[0.2, 0.3], [0.6, 0.4], [0.35, 0.8]]
        .iter()
        .map(|v| Point::new(v.to_vec()))
        .collect::<d2ptas::Result<_>>()?;
    let c = Point::new(vec![0.7, 0.7])?;
    for m in &measures {
        let r = check_centroid_property(m, &set, &c, 1e-9)?;
        println!("{:>14}  centroid residual {:.1e}", m.name(), r.worst_ratio);
    }

    let domain = Domain::DEFAULT_BOX;
    let kl = Divergence::kullback_leibler(1.0)?;
    let upper = default_upper_matrix(&kl, domain, 2)?;
    let suite = SuiteConfig {
        domain,
        dim: 2,
        trials: 10_000,
    };
    // The sampled ratio only bounds the infimum from above, so declare the
    // smaller of it and the curvature floor of the box.
    let mu_hat = calibrate_mu(&kl, &upper, &suite, &RngStream::new(1))?.mu_hat;
    let mu = mu_floor(&kl, domain).map_or(mu_hat, |f| f.min(mu_hat));
    let kl = kl.with_mu(mu)?;
    println!(
        "kl on [0.1, 0.9]^2: sampled mu {mu_hat:.4}, declared {mu:.4}, alpha {:.2}",
        kl.constants().alpha
    );
    for report in standard_suite(&kl, &suite, &RngStream::new(2))? {
        println!(
            "  {:?}: {} violations in {} trials",
            report.property, report.violations, report.trials
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> d2ptas::Result<()> {
    run_example()
}
