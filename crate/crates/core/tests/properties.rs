use std::collections::BTreeSet;

use num_traits::{One, Zero};
use proptest::prelude::*;
use randmono::exact::{brute_force_distribution, brute_force_distribution_graded, krull_dimension, prob_ideal_er, prob_ideal_graded};
use randmono::experiments::{estimate, wilson_interval, Property, Z95};
use randmono::rational::rational;
use randmono::sampling::{CfParams, ErParams, GeneralParams, GradedParams, Sampler, Seed};
use randmono::topology::{cf_distribution_table, stanley_reisner_complex, stanley_reisner_ideal, z2_homology, SimplicialComplex};
use randmono::{enumerate_monomials, EnumMode, Monomial, MonomialIdeal, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..8).prop_flat_map(|den| (0..=den).prop_map(move |num| rational(num, den)))
}

fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..4, 1u32..4).prop_flat_map(|(n, d)| {
        let all = enumerate_monomials(n, d, EnumMode::UpTo);
        proptest::sample::subsequence(all.clone(), 0..=all.len().min(5))
            .prop_map(move |gens| randmono::ideal::minimalize(&randmono::MonomialSet::new(n, d, gens).unwrap()))
    })
}

/// Largest vertex set containing no generator's support.
fn dimension_by_subsets(ideal: &MonomialIdeal) -> usize {
    let n = ideal.num_vars();
    let masks = ideal.support_masks();
    (0u32..1 << n)
        .filter(|s| masks.iter().all(|&g| g & s != g))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn er_formula_matches_oracle(nd in prop::sample::select(vec![(1usize, 4u32), (2, 2), (2, 3), (3, 2)]), p in small_rational()) {
        let params = ErParams::new(nd.0, nd.1, p).unwrap();
        let dist = brute_force_distribution(&params).unwrap();
        let mut total = Rational::zero();
        for (ideal, q) in &dist {
            prop_assert_eq!(prob_ideal_er(ideal, &params).unwrap(), q.clone());
            total += q.value();
        }
        prop_assert!(total.is_one());
    }

    #[test]
    fn graded_formula_matches_oracle(p1 in small_rational(), p2 in small_rational(), p3 in small_rational()) {
        let params = GradedParams::new(2, 3, vec![p1, p2, p3]).unwrap();
        for (ideal, q) in brute_force_distribution_graded(&params).unwrap() {
            prop_assert_eq!(prob_ideal_graded(&ideal, &params).unwrap(), q);
        }
    }

    #[test]
    fn krull_dimension_by_subsets(ideal in ideal_strategy()) {
        prop_assert_eq!(krull_dimension(&ideal), dimension_by_subsets(&ideal));
    }

    #[test]
    fn equal_probabilities_give_equal_draws(n in 1usize..4, d in 1u32..5, p in 0.0f64..=1.0, master: u64, sample in 0u64..1000) {
        let seed = Seed::new(master);
        let er = ErParams::new(n, d, p).unwrap();
        let a = Sampler::er(&er).unwrap().sample(&seed, sample);
        let b = Sampler::graded(&er.to_graded()).unwrap().sample(&seed, sample);
        let c = Sampler::general(&GeneralParams::from_er(&er)).unwrap().sample(&seed, sample);
        prop_assert_eq!(&a.ideal, &b.ideal);
        prop_assert_eq!(&a.ideal, &c.ideal);
    }

    #[test]
    fn cf_three_ways_agree(p0 in small_rational(), p1 in small_rational(), p2 in small_rational()) {
        let cf = CfParams::new(3, vec![p0, p1, p2]).unwrap();
        let rows = cf_distribution_table(&cf).unwrap();
        let mut total = Rational::zero();
        for r in &rows {
            prop_assert!(r.agrees(), "{}", r.complex);
            total += r.formula.value();
        }
        prop_assert!(total.is_one());
    }

    #[test]
    fn stanley_reisner_round_trip(faces in proptest::collection::btree_set(0u32..16, 0..10)) {
        let mut closed: BTreeSet<u32> = [0].into_iter().collect();
        for f in faces {
            let mut sub = f;
            loop {
                closed.insert(sub);
                if sub == 0 { break; }
                sub = (sub - 1) & f;
            }
        }
        let y = SimplicialComplex::from_faces(4, closed).unwrap();
        let ideal = stanley_reisner_ideal(&y).unwrap();
        prop_assert_eq!(stanley_reisner_complex(&ideal).unwrap(), y.clone());
        let total: u64 = z2_homology(&y).unwrap().iter().sum();
        let relabeled: u64 = z2_homology(&y.relabel(&[2, 0, 3, 1])).unwrap().iter().sum();
        prop_assert_eq!(total, relabeled);
    }
}

#[test]
fn set_size_moments() {
    let (n, d, p) = (2usize, 3u32, 0.3);
    let sampler = Sampler::er(&ErParams::new(n, d, p).unwrap()).unwrap();
    let m = sampler.monomials().len() as f64;
    let trials = 20_000u64;
    let draws = sampler.sample_batch(&Seed::new(99), trials);
    let sizes: Vec<f64> = draws.iter().map(|s| s.set.len() as f64).collect();
    let mean = sizes.iter().sum::<f64>() / trials as f64;
    let var = sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
    let sd_mean = (m * p * (1.0 - p) / trials as f64).sqrt();
    assert!((mean - m * p).abs() < 4.0 * sd_mean, "mean {mean}");
    assert!((var / (m * p * (1.0 - p)) - 1.0).abs() < 0.05, "variance {var}");

    let x = Monomial::new(vec![1, 0]);
    let y = Monomial::new(vec![0, 1]);
    let (mut nx, mut ny, mut nxy) = (0.0, 0.0, 0.0);
    for s in &draws {
        let (a, b) = (s.set.contains(&x), s.set.contains(&y));
        nx += f64::from(u8::from(a));
        ny += f64::from(u8::from(b));
        nxy += f64::from(u8::from(a && b));
    }
    let t = trials as f64;
    let cov = nxy / t - (nx / t) * (ny / t);
    assert!(cov.abs() < 4.0 * p * (1.0 - p) / t.sqrt(), "covariance {cov}");
}

#[test]
fn wilson_coverage() {
    let truth = 1.0 / 32.0;
    let reps = 300u64;
    let covered = (0..reps)
        .filter(|&k| {
            let r = estimate(Property::ZeroIdeal, 2, 2, 0.5, 400, Seed::with_stream(5, k)).unwrap();
            let (lo, hi) = wilson_interval(r.successes, r.samples, Z95);
            lo <= truth && truth <= hi
        })
        .count();
    assert!(covered as f64 / reps as f64 >= 0.93, "coverage {covered}/{reps}");
}

#[test]
fn expected_generators_grow_with_degree() {
    for p in [rational(1, 2), rational(1, 3)] {
        let means: Vec<Rational> = (2..=4)
            .map(|d| {
                brute_force_distribution(&ErParams::new(2, d, p.clone()).unwrap())
                    .unwrap()
                    .iter()
                    .map(|(i, q)| q.value() * Rational::from_integer(i.total_betti_1().into()))
                    .sum()
            })
            .collect();
        assert!(means.windows(2).all(|w| w[0] < w[1]), "{means:?}");
    }
}
