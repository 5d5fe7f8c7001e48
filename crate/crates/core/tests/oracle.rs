use d2ptas::oracle::{
    best_of_seeded_lloyd, check_center_separation, gamma_from, inaba_trial, irreducibility, lloyd,
    optimal_bruteforce_with, IrreducibilityMode, OracleLimits,
};
use d2ptas::{
    optimal_bruteforce, BregmanGenerator, Dataset, Divergence, Domain, Error, Point, RngStream,
    SqEuclidean,
};
use proptest::prelude::*;
use rand::Rng;

fn line(xs: &[f64]) -> Dataset {
    Dataset::from_rows(&xs.iter().map(|&x| [x]).collect::<Vec<_>>()).unwrap()
}

fn pt(x: f64) -> Point {
    Point::new(vec![x]).unwrap()
}

fn random_instance(n: usize, d: usize, stream: &RngStream) -> Dataset {
    let mut rng = stream.generator();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(0.0..10.0)).collect())
        .collect();
    Dataset::from_rows(&rows).unwrap()
}

#[test]
fn four_point_fixture() {
    let data = line(&[0.0, 1.0, 4.0, 5.0]);
    let r = optimal_bruteforce(&data, 2, &SqEuclidean).unwrap();
    assert_eq!(r.optimal_cost, 1.0);
    assert_eq!(r.optimal_partition, vec![0, 0, 1, 1]);
    assert_eq!(r.nonempty_centers(), vec![pt(0.5), pt(4.5)]);
}

#[test]
fn single_cluster_and_saturated_cases() {
    let data = line(&[0.0, 1.0, 4.0, 5.0]);
    assert_eq!(
        optimal_bruteforce(&data, 1, &SqEuclidean)
            .unwrap()
            .optimal_cost,
        17.0
    );
    assert_eq!(
        optimal_bruteforce(&data, 4, &SqEuclidean)
            .unwrap()
            .optimal_cost,
        0.0
    );
    assert_eq!(
        optimal_bruteforce(&data, 6, &SqEuclidean)
            .unwrap()
            .optimal_cost,
        0.0
    );
}

#[test]
fn caps_and_unsupported_measures() {
    let big = random_instance(15, 1, &RngStream::new(1));
    assert!(matches!(
        optimal_bruteforce(&big, 2, &SqEuclidean),
        Err(Error::TooLarge(_))
    ));
    let small = random_instance(8, 1, &RngStream::new(1));
    assert!(matches!(
        optimal_bruteforce(&small, 5, &SqEuclidean),
        Err(Error::TooLarge(_))
    ));
    // Every Bregman divergence keeps the mean as its centroid.
    let generic =
        Divergence::bregman(BregmanGenerator::squared_norm(), 1.0, Domain::Unrestricted).unwrap();
    assert!(optimal_bruteforce(&small, 2, &generic).is_ok());
}

#[test]
fn lloyd_examples() {
    let data = line(&[0.0, 1.0, 4.0, 5.0]);
    let r = lloyd(&data, &SqEuclidean, &[pt(1.0), pt(4.0)], 50).unwrap();
    assert_eq!(r.cost, 1.0);
    assert_eq!(r.meta.cost_history, vec![2.0, 1.0]);
    let r = lloyd(&data, &SqEuclidean, &[pt(0.5), pt(4.5)], 50).unwrap();
    assert_eq!(r.meta.iterations, 1);
    assert_eq!(r.cost, 1.0);
}

#[test]
fn lloyd_keeps_the_center_of_an_empty_cluster() {
    let data = line(&[0.0, 1.0]);
    let r = lloyd(&data, &SqEuclidean, &[pt(0.5), pt(100.0)], 10).unwrap();
    assert_eq!(r.centers[1], pt(100.0));
    assert_eq!(r.cost, 0.5);
}

#[test]
fn irreducibility_cases() {
    let pairs = line(&[0.0, 1.0, 4.0, 5.0]);
    let r = irreducibility(&pairs, 2, &SqEuclidean, IrreducibilityMode::Exact).unwrap();
    assert_eq!((r.delta_km1, r.delta_k, r.gamma), (17.0, 1.0, 16.0));
    assert!(!r.approximate);

    let same = line(&[3.0; 5]);
    let r = irreducibility(&same, 3, &SqEuclidean, IrreducibilityMode::Exact).unwrap();
    assert_eq!((r.delta_km1, r.delta_k, r.gamma), (0.0, 0.0, 0.0));

    // Twelve grid points: three groups of four cost 15, four groups of
    // three cost 8.
    let grid = line(&(0..12).map(f64::from).collect::<Vec<_>>());
    let r = irreducibility(&grid, 4, &SqEuclidean, IrreducibilityMode::Exact).unwrap();
    assert_eq!((r.delta_km1, r.delta_k), (15.0, 8.0));
    assert_eq!(r.gamma, 0.875);

    let approx = irreducibility(
        &pairs,
        2,
        &SqEuclidean,
        IrreducibilityMode::Approximate { runs: 10, seed: 1 },
    )
    .unwrap();
    assert!(approx.approximate);
    assert_eq!(approx.gamma, 16.0);

    assert_eq!(gamma_from(3.0, 0.0), f64::INFINITY);
    assert!(irreducibility(&pairs, 1, &SqEuclidean, IrreducibilityMode::Exact).is_err());
}

#[test]
fn irreducible_instances_have_separated_centers() {
    let epsilon = 0.5;
    let mut irreducible = 0;
    for i in 0..60 {
        let stream = RngStream::new(300 + i);
        let n = 6 + (i as usize % 5);
        let k = 2 + (i as usize % 2);
        let data = random_instance(n, 2, &stream);
        let report = irreducibility(&data, k, &SqEuclidean, IrreducibilityMode::Exact).unwrap();
        if report.gamma < epsilon {
            continue;
        }
        irreducible += 1;
        let oracle = optimal_bruteforce(&data, k, &SqEuclidean).unwrap();
        assert!(
            check_center_separation(&data, &SqEuclidean, &oracle, epsilon).unwrap(),
            "instance {i}"
        );
    }
    assert!(
        irreducible >= 10,
        "only {irreducible} irreducible instances"
    );
}

#[test]
fn inaba_cases() {
    let single = line(&[2.5]);
    assert_eq!(
        inaba_trial(&single, &SqEuclidean, 3, 0.2, 100, &RngStream::new(1))
            .unwrap()
            .violations,
        0
    );
    let data = random_instance(50, 2, &RngStream::new(2));
    let huge = inaba_trial(&data, &SqEuclidean, 5000, 0.2, 200, &RngStream::new(3)).unwrap();
    assert!(huge.success_rate() >= 0.99);
    let standard = inaba_trial(&data, &SqEuclidean, 25, 0.2, 2000, &RngStream::new(4)).unwrap();
    assert!(standard.success_rate() >= 1.0 - 0.2 - 0.05);
}

#[test]
fn lloyd_baseline_recovers_planted_subsample() {
    use d2ptas::experiment::{generate_planted, PlantedParams};
    let params = PlantedParams {
        clusters: 3,
        per_cluster: 100,
        dim: 2,
        separation: 10.0,
        sigma: 1.0,
    };
    let planted = generate_planted(&params, &RngStream::new(5)).unwrap();
    let picks: Vec<usize> = (0..3)
        .flat_map(|j| (0..4).map(move |t| j * 100 + t * 7))
        .collect();
    let sub = planted.dataset.subset(&picks).unwrap();
    let truth: Vec<usize> = picks.iter().map(|&i| planted.labels[i]).collect();
    let oracle = optimal_bruteforce(&sub, 3, &SqEuclidean).unwrap();
    let lloyd = best_of_seeded_lloyd(&sub, &SqEuclidean, 3, 20, 100, &RngStream::new(6)).unwrap();
    for labels in [&oracle.optimal_partition, &lloyd.assignment] {
        for a in 0..truth.len() {
            for b in 0..truth.len() {
                assert_eq!(truth[a] == truth[b], labels[a] == labels[b]);
            }
        }
    }
}

fn small_instance() -> impl Strategy<Value = (Vec<Vec<f64>>, usize)> {
    (2usize..9, 1usize..4).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 2), n),
            Just(k),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lloyd_is_monotone_and_never_beats_the_oracle((rows, k) in small_instance(), seed in any::<u64>()) {
        let data = Dataset::from_rows(&rows).unwrap();
        let k = k.min(data.len());
        let init = d2ptas::kmeanspp_seed(&data, &SqEuclidean, k, &RngStream::new(seed)).unwrap();
        let r = lloyd(&data, &SqEuclidean, &init.centers, 100).unwrap();
        for w in r.meta.cost_history.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        let oracle = optimal_bruteforce(&data, k, &SqEuclidean).unwrap().optimal_cost;
        prop_assert!(oracle <= r.cost * (1.0 + 1e-12));
    }

    #[test]
    fn optimum_is_monotone_in_k((rows, _) in small_instance()) {
        let data = Dataset::from_rows(&rows).unwrap();
        let mut previous = f64::INFINITY;
        for k in 1..=4.min(data.len()) {
            let cost = optimal_bruteforce(&data, k, &SqEuclidean).unwrap().optimal_cost;
            prop_assert!(cost <= previous * (1.0 + 1e-12));
            previous = cost;
        }
    }

    #[test]
    fn pinning_the_first_point_is_lossless((rows, k) in small_instance()) {
        let data = Dataset::from_rows(&rows).unwrap();
        let pinned = optimal_bruteforce_with(&data, k, &SqEuclidean, &OracleLimits::default()).unwrap();
        let full = OracleLimits { pin_first_point: false, ..OracleLimits::default() };
        let unpinned = optimal_bruteforce_with(&data, k, &SqEuclidean, &full).unwrap();
        prop_assert_eq!(pinned.optimal_cost, unpinned.optimal_cost);
        prop_assert!(pinned.assignments_examined <= unpinned.assignments_examined);
    }
}
