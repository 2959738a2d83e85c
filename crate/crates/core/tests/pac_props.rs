use mclearn::dimensions::graph_dim;
use mclearn::learners::{Erm, ErmPolicy};
use mclearn::pac_sim::{
    approximation_error, badlb_distribution, draw_sample_seeded, exact_failure_probability, failure_rate,
    random_bijection_experiment, relabeled_approximation_error, true_error, DiscreteDistribution,
};
use mclearn::{Budget, HypothesisClass, Label};
use proptest::collection::vec;
use proptest::prelude::*;

fn b() -> Budget {
    Budget::default()
}

/// A distribution over `d x k` from raw non-negative weights, one per pair.
fn dist_from(d: usize, k: usize, weights: &[f64]) -> DiscreteDistribution {
    let total: f64 = weights.iter().sum();
    let entries = (0..d * k).map(|i| (i / k, (i % k) as Label, weights[i] / total));
    DiscreteDistribution::new(d, k, entries).unwrap()
}

fn weights(d: usize, k: usize) -> impl Strategy<Value = Vec<f64>> {
    vec(0.0..1.0f64, d * k).prop_filter("some mass", |w| w.iter().sum::<f64>() > 1e-3)
}

proptest! {
    #[test]
    fn true_error_is_affine_in_the_distribution(
        w1 in weights(3, 3),
        w2 in weights(3, 3),
        mix in 0.0..=1.0f64,
        table in vec(0..3u32, 3),
    ) {
        let (d1, d2) = (dist_from(3, 3, &w1), dist_from(3, 3, &w2));
        let mixed = DiscreteDistribution::new(
            3,
            3,
            d1.entries().iter().map(|&(x, y, p)| (x, y, mix * p))
                .chain(d2.entries().iter().map(|&(x, y, p)| (x, y, (1.0 - mix) * p))),
        )
        .unwrap();
        let h = mclearn::Hypothesis::new(table);
        let expect = mix * true_error(&h, &d1).unwrap() + (1.0 - mix) * true_error(&h, &d2).unwrap();
        prop_assert!((true_error(&h, &mixed).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn approximation_error_is_relabeling_covariant(
        tables in vec(vec(0..4u32, 3), 1..6),
        w in weights(3, 4),
        perm_seed in any::<u64>(),
    ) {
        use rand::{seq::SliceRandom, SeedableRng};
        let c = HypothesisClass::new(3, 4, tables).unwrap();
        let dist = dist_from(3, 4, &w);
        let mut phi: Vec<Label> = (0..4).collect();
        phi.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let mut inverse = [0; 4];
        for (y, &t) in phi.iter().enumerate() {
            inverse[t as usize] = y as Label;
        }
        let moved = HypothesisClass::new(3, 4, c.hypotheses().iter().map(|h| h.relabel(&phi).table().to_vec())).unwrap();
        let pulled = DiscreteDistribution::new(
            3,
            4,
            dist.entries().iter().map(|&(x, y, p)| (x, inverse[y as usize], p)),
        )
        .unwrap();
        let a = approximation_error(&moved, &dist).unwrap();
        prop_assert!((a - approximation_error(&c, &pulled).unwrap()).abs() < 1e-12);
        prop_assert!((a - relabeled_approximation_error(&c, &phi, &dist)).abs() < 1e-12);
    }

    #[test]
    fn distribution_json_round_trip(w in weights(2, 3)) {
        let dist = dist_from(2, 3, &w);
        prop_assert_eq!(DiscreteDistribution::from_json(&dist.to_json()).unwrap(), dist);
    }
}

/// Probability of failure by summing over every ordered sample.
fn brute_failure(erm: &Erm<'_>, dist: &DiscreteDistribution, m: usize, eps: f64) -> f64 {
    let support = dist.entries();
    let floor = approximation_error(erm.class(), dist).unwrap();
    let n = support.len();
    let mut total = 0.0;
    for code in 0..n.pow(m as u32) {
        let mut rest = code;
        let mut prob = 1.0;
        let mut sample = Vec::with_capacity(m);
        for _ in 0..m {
            let (x, y, p) = support[rest % n];
            rest /= n;
            prob *= p;
            sample.push((x, y));
        }
        let h = erm.class().get(erm.fit(&sample).index);
        if true_error(h, dist).unwrap() - floor > eps + 1e-12 {
            total += prob;
        }
    }
    total
}

#[test]
fn exact_failure_probability_matches_ordered_enumeration() {
    let cantor = HypothesisClass::cantor(4).unwrap();
    let w = graph_dim(&cantor, &b()).unwrap().1;
    let dist = badlb_distribution(&w.set, &w.f, 4, cantor.k(), 0.2).unwrap();
    let full = HypothesisClass::full(3, 2, &b()).unwrap();
    let target = full.get(5).clone();
    let skewed = DiscreteDistribution::labeled_by(&target, 2, &[0.6, 0.3, 0.1]).unwrap();
    for (c, dist) in [(&cantor, &dist), (&full, &skewed)] {
        for policy in [
            ErmPolicy::Generic,
            ErmPolicy::Bad { witness: None },
            ErmPolicy::GoodObservedLabels { defaults: None },
        ] {
            let erm = Erm::new(&policy, c, &b()).unwrap();
            for m in 1..=5 {
                for eps in [0.05, 0.2, 0.35] {
                    let exact = exact_failure_probability(&erm, dist, m, eps, &b()).unwrap();
                    let brute = brute_failure(&erm, dist, m as usize, eps);
                    assert!((exact - brute).abs() < 1e-12, "{} m={m} eps={eps}: {exact} vs {brute}", policy.name());
                }
            }
        }
    }
}

#[test]
fn wilson_interval_covers_the_exact_failure_probability() {
    let c = HypothesisClass::cantor(5).unwrap();
    let w = graph_dim(&c, &b()).unwrap().1;
    let dist = badlb_distribution(&w.set, &w.f, 5, c.k(), 0.2).unwrap();
    let bad = Erm::new(&ErmPolicy::Bad { witness: None }, &c, &b()).unwrap();
    let m = 8;
    let exact = exact_failure_probability(&bad, &dist, m, 0.2, &b()).unwrap();
    let seeds = 60;
    let covered = (0..seeds)
        .filter(|&seed| {
            let r = failure_rate(&bad, &dist, m, 0.2, 400, seed).unwrap();
            r.lower <= exact && exact <= r.upper
        })
        .count();
    // nominal coverage is 95%; 60 seeds leave room for sampling noise
    assert!(covered as f64 / seeds as f64 >= 0.85, "covered {covered} of {seeds}");
}

#[test]
fn failure_rate_decreases_with_sample_size() {
    let c = HypothesisClass::cantor(4).unwrap();
    let w = graph_dim(&c, &b()).unwrap().1;
    let dist = badlb_distribution(&w.set, &w.f, 4, c.k(), 0.25).unwrap();
    let bad = Erm::new(&ErmPolicy::Bad { witness: None }, &c, &b()).unwrap();
    for m in [2u64, 4, 8, 16] {
        let small = failure_rate(&bad, &dist, m, 0.25, 1000, 5).unwrap();
        let large = failure_rate(&bad, &dist, 2 * m, 0.25, 1000, 5).unwrap();
        assert!(large.rate <= small.rate + 3.0 * (small.upper - small.lower), "m={m}");
    }
}

#[test]
fn sampling_and_experiments_are_reproducible() {
    let full = HypothesisClass::full(2, 3, &b()).unwrap();
    let dist = DiscreteDistribution::labeled_by(full.get(4), 3, &[0.5, 0.5]).unwrap();
    assert_eq!(draw_sample_seeded(&dist, 20, 3), draw_sample_seeded(&dist, 20, 3));
    let consts = HypothesisClass::constants(2, 4).unwrap();
    let balanced = dist_from(2, 4, &[1.0; 8]);
    let a = random_bijection_experiment(&consts, &balanced, 0.5, 200, 8).unwrap();
    let b2 = random_bijection_experiment(&consts, &balanced, 0.5, 200, 8).unwrap();
    assert_eq!(a, b2);
    assert!(a.chern.value >= 0.0 && a.chern.value <= 1.0);
}
