mod common;

use common::*;
use contextspace::tables::Outcome;
use contextspace::{
    build_space, estimate, read_records, simulate, write_records, Angle, ContextFamily, ContextWeights,
    SimulationConfig, TrialRecord,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn optimal_singlet() -> ContextFamily {
    let a = [0.0, std::f64::consts::FRAC_PI_2].map(|x| Angle::new(x).unwrap());
    let b = [std::f64::consts::FRAC_PI_4, -std::f64::consts::FRAC_PI_4].map(|x| Angle::new(x).unwrap());
    ContextFamily::singlet(&a, &b).unwrap()
}

fn csv_bytes(records: &[TrialRecord]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_records(records.iter().copied(), &mut buf).unwrap();
    buf
}

#[test]
fn same_seed_same_bytes() {
    let cfg = SimulationConfig::new(optimal_singlet(), ContextWeights::uniform(2, 2), 5_000, 42).unwrap();
    let a: Vec<_> = simulate(&cfg).collect();
    let b: Vec<_> = simulate(&cfg).collect();
    assert_eq!(csv_bytes(&a), csv_bytes(&b));
    let other = SimulationConfig { seed: 43, ..cfg };
    assert_ne!(csv_bytes(&a), csv_bytes(&simulate(&other).collect::<Vec<_>>()));
}

#[test]
fn prefix_stability() {
    // a shorter run is a prefix of a longer one with the same seed
    let cfg = SimulationConfig::new(optimal_singlet(), ContextWeights::uniform(2, 2), 2_000, 7).unwrap();
    let long: Vec<_> = simulate(&cfg).collect();
    let short: Vec<_> = simulate(&SimulationConfig { trials: 500, ..cfg }).collect();
    assert_eq!(&long[..500], &short[..]);
}

#[test]
fn gate_frequencies_within_five_sigma() {
    let n = 10_000u64;
    let u = [0.2, 0.8];
    let v = [0.5, 0.3, 0.2];
    let mut rng = StdRng::seed_from_u64(3);
    let family = random_family(&mut rng, 2, 3);
    let seeds = 120u64;
    let mut ok = 0;
    for seed in 0..seeds {
        let cfg = SimulationConfig::new(
            family.clone(),
            ContextWeights::new(u.to_vec(), v.to_vec()).unwrap(),
            n,
            seed,
        )
        .unwrap();
        let records: Vec<_> = simulate(&cfg).collect();
        let est = estimate(&records, 2, 3).unwrap();
        let within = |freq: &[f64], w: &[f64]| {
            freq.iter()
                .zip(w)
                .all(|(f, p)| (f - p).abs() <= 5.0 * (p * (1.0 - p) / n as f64).sqrt())
        };
        if within(&est.gate_a, &u) && within(&est.gate_b, &v) {
            ok += 1;
        }
    }
    assert!(ok * 100 >= seeds * 99, "{ok}/{seeds}");
}

#[test]
fn empirical_absolute_chsh_stays_below_one() {
    let cfg = SimulationConfig::new(optimal_singlet(), ContextWeights::uniform(2, 2), 200_000, 11).unwrap();
    let records: Vec<_> = simulate(&cfg).collect();
    let est = estimate(&records, 2, 2).unwrap();
    let s = est.max_chsh().unwrap();
    let se: f64 = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|&(i, j)| est.context(i, j).unwrap().absolute_stderr.powi(2))
        .sum::<f64>()
        .sqrt();
    assert!(s.value_absolute.abs() <= 1.0 + 3.0 * se);
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let c = est.context(i, j).unwrap();
        assert!((c.absolute - c.conditional / 4.0).abs() <= 0.01);
    }
}

#[test]
fn csv_round_trip_is_exact() {
    let mut rng = StdRng::seed_from_u64(99);
    let family = random_family(&mut rng, 3, 2);
    let weights = random_weights(&mut rng, 3, 2);
    let cfg = SimulationConfig::new(family, weights, 3_000, 5).unwrap();
    let records: Vec<_> = simulate(&cfg).collect();
    let bytes = csv_bytes(&records);
    let back = read_records(&bytes[..], 3, 2).unwrap();
    assert_eq!(back, records);
    assert_eq!(csv_bytes(&back), bytes);
    let a = serde_json::to_string(&estimate(&records, 3, 2).unwrap()).unwrap();
    let b = serde_json::to_string(&estimate(&back, 3, 2).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn zero_probability_outcomes_never_drawn() {
    let mut tables = std::collections::BTreeMap::new();
    tables.insert((1, 1), contextspace::validate_table([0.0, 0.6, 0.4, 0.0]).unwrap());
    let family = ContextFamily::from_tables(1, 1, &tables).unwrap();
    let cfg = SimulationConfig::new(family, ContextWeights::uniform(1, 1), 20_000, 1).unwrap();
    for r in simulate(&cfg) {
        assert_ne!(r.a, r.b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn records_respect_exclusivity(seed in any::<u64>(), m in 1usize..4, n in 1usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let cfg = SimulationConfig::new(random_family(&mut rng, m, n), random_weights(&mut rng, m, n), 500, seed).unwrap();
        for (k, r) in simulate(&cfg).enumerate() {
            prop_assert_eq!(r.trial_id, k as u64);
            prop_assert!((1..=m).contains(&r.eta_a) && (1..=n).contains(&r.eta_b));
            for i in 1..=m {
                prop_assert_eq!(r.a_value(i) != 0, i == r.eta_a);
            }
            for j in 1..=n {
                prop_assert_eq!(r.b_value(j) != 0, j == r.eta_b);
            }
        }
    }

    #[test]
    fn estimates_are_consistent_probabilities(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let family = random_family(&mut rng, 2, 2);
        let space = build_space(family.clone(), random_weights(&mut rng, 2, 2)).unwrap();
        let cfg = SimulationConfig::new(family, space.weights().clone(), 2_000, seed).unwrap();
        let records: Vec<_> = simulate(&cfg).collect();
        let est = contextspace::estimate_partial(&records, 2, 2).unwrap();
        let total: u64 = est.contexts.iter().flatten().map(|c| c.count).sum();
        prop_assert_eq!(total, 2_000);
        for c in est.contexts.iter().flatten() {
            let s: f64 = c.p_hat.iter().sum();
            prop_assert!((s - 1.0).abs() <= 1e-12);
            let corr: f64 = Outcome::CANONICAL.iter().map(|o| o.product() * c.p_hat[o.index()]).sum();
            prop_assert!((corr - c.conditional).abs() <= 1e-12);
        }
        prop_assert!((est.gate_a.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}
