use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use majorkit_core::birkhoff::{
    random_column_stochastic_with, random_doubly_stochastic_with, random_matrix_with, random_permutation,
    random_zero_sum_with,
};
use majorkit_core::io::{
    matrix_from_csv, matrix_from_json, matrix_to_csv, matrix_to_json, operator_from_json, operator_to_json,
};
use majorkit_core::matrix::{check_directional, is_strong_witness};
use majorkit_core::propcheck::{random_cs_preserver, run_property, SuiteConfig, PROPERTY_NAMES};
use majorkit_core::reduce::{reduce_diag_scale, reduce_shift_normalize, theta, ReductionOptions};
use majorkit_core::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn planted_pair(seed: u64, n: usize, m: usize) -> (RMatrix, RMatrix, RMatrix) {
    let mut r = rng(seed);
    let b = random_matrix_with(n, m, 4, &mut r);
    let k = r.gen_range(1..=n + 1);
    let d = random_doubly_stochastic_with(n, k, &mut r);
    (d.mul(&b).unwrap(), b, d)
}

fn perturbed_pair(seed: u64, n: usize, m: usize) -> (RMatrix, RMatrix) {
    let (a, b, _) = planted_pair(seed, n, m);
    let mut r = rng(seed ^ 0xABCD);
    let cols: Vec<RVector> = (0..m).map(|_| random_zero_sum_with(n, &mut r)).collect();
    (a.add(&RMatrix::from_columns(&cols).unwrap()).unwrap(), b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planted_pairs_hold_with_verified_witness(seed: u64, n in 1usize..=5, m in 1usize..=4) {
        let (a, b, _) = planted_pair(seed, n, m);
        let v = check_strong(&a, &b).unwrap();
        prop_assert!(v.holds());
        prop_assert!(is_strong_witness(&a, &b, v.witness().unwrap()));
        prop_assert!(v.verify(&a, &b));
    }

    #[test]
    fn every_verdict_carries_a_valid_certificate(seed: u64, n in 1usize..=4, m in 1usize..=3) {
        let (a, b) = perturbed_pair(seed, n, m);
        prop_assert!(check_strong(&a, &b).unwrap().verify(&a, &b));
        prop_assert!(check_weak(&a, &b).unwrap().verify(&a, &b));
    }

    #[test]
    fn strong_implies_weak_directional_and_columnwise(seed: u64, n in 1usize..=4, m in 1usize..=3) {
        let (a, b) = perturbed_pair(seed, n, m);
        if check_strong(&a, &b).unwrap().holds() {
            prop_assert!(check_weak(&a, &b).unwrap().holds());
            prop_assert!(!check_directional(&a, &b, 16, seed).unwrap().is_negative());
            for j in 0..m {
                prop_assert!(check_vector_majorization(&a.column(j), &b.column(j)).unwrap());
            }
        }
    }

    #[test]
    fn single_column_strong_matches_vector(seed: u64, n in 1usize..=6) {
        let (a, b) = perturbed_pair(seed, n, 1);
        let vector = check_vector_majorization(&a.column(0), &b.column(0)).unwrap();
        prop_assert_eq!(check_strong(&a, &b).unwrap().holds(), vector);
    }

    #[test]
    fn hlp_chain_rebuilds_witness(seed: u64, n in 1usize..=8) {
        let (a, b, _) = planted_pair(seed, n, 1);
        let (a, b) = (a.column(0), b.column(0));
        let w = hlp_witness(&a, &b).unwrap();
        let mut t = RMatrix::identity(n);
        for step in &w.chain {
            t = step.to_matrix(n).mul(&t).unwrap();
        }
        let rebuilt = w.sort_a.inverse().to_matrix().mul(&t).unwrap().mul(&w.sort_b.to_matrix()).unwrap();
        prop_assert_eq!(&rebuilt, &w.matrix);
        prop_assert_eq!(w.matrix.mul_vec(&b).unwrap(), a);
    }

    #[test]
    fn permuted_rows_are_equivalent(seed: u64, n in 1usize..=6, m in 1usize..=4) {
        let mut r = rng(seed);
        let b = random_matrix_with(n, m, 3, &mut r);
        let p = random_permutation(n, &mut r);
        let a = p.permute_rows(&b);
        let q = check_strong_equiv(&a, &b).unwrap();
        prop_assert_eq!(q.permute_rows(&b), a.clone());
        prop_assert!(check_strong(&a, &b).unwrap().holds());
        prop_assert!(check_strong(&b, &a).unwrap().holds());
    }

    #[test]
    fn birkhoff_reconstructs(seed: u64, n in 1usize..=7, k in 1usize..=6) {
        let d = random_doubly_stochastic_with(n, k, &mut rng(seed));
        let dec = birkhoff_decompose(&d).unwrap();
        prop_assert_eq!(dec.reconstruct(n), d);
        prop_assert!(dec.terms.len() <= BirkhoffDecomposition::max_terms(n));
        prop_assert!(dec.terms.iter().all(|(w, _)| w.is_positive()));
    }

    #[test]
    fn reductions_preserve_the_verdict(seed: u64, n in 1usize..=4, m in 1usize..=3, planted: bool) {
        let (a, b) = if planted {
            let (a, b, _) = planted_pair(seed, n, m);
            (a, b)
        } else {
            perturbed_pair(seed, n, m)
        };
        let base = check_strong(&a, &b).unwrap().holds();
        let opts = ReductionOptions::default();
        for red in [reduce_shift_normalize(&a, &b, &opts).unwrap(), reduce_diag_scale(&a, &b, &opts).unwrap()] {
            prop_assert!(red.b.is_column_stochastic());
            prop_assert_eq!(check_strong(&red.a, &red.b).unwrap().holds(), base);
            prop_assert_eq!(red.certificate.replay(&a, &b).unwrap(), (red.a.clone(), red.b.clone()));
        }
    }

    #[test]
    fn theta_is_column_stochastic(seed: u64, n in 1usize..=5, m in 1usize..=4) {
        let mut r = rng(seed);
        let a = RMatrix::from_fn(n, m, |_, _| int(r.gen_range(0..=3)));
        prop_assert!(theta(&a).unwrap().is_column_stochastic());
    }

    #[test]
    fn vectorized_grid_round_trip(seed: u64, n in 1usize..=4, m in 1usize..=3) {
        let mut r = rng(seed);
        let g = random_cs_preserver(n, m, &mut r);
        let back = OperatorGrid::from_vectorized(n, m, &g.to_vectorized()).unwrap();
        prop_assert_eq!(&back, &g);
        let by_callback = OperatorGrid::from_fn(n, m, |x| g.apply(x)).unwrap();
        prop_assert_eq!(&by_callback, &g);
        let json = operator_to_json(&Operator::Grid(g.clone()));
        prop_assert_eq!(operator_from_json(&json).unwrap(), Operator::Grid(g));
    }

    #[test]
    fn matrix_text_round_trip(seed: u64, n in 1usize..=5, m in 1usize..=5) {
        let a = random_matrix_with(n, m, 9, &mut rng(seed));
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a.clone());
        prop_assert_eq!(matrix_from_csv(&matrix_to_csv(&a)).unwrap(), a);
    }

    #[test]
    fn cs_preservers_fix_no_counterexample(seed: u64, n in 1usize..=3, m in 1usize..=2) {
        let mut r = rng(seed);
        let g = random_cs_preserver(n, m, &mut r);
        prop_assert!(is_cs_preserver(&g));
        let spec = RelationSpec::new(RelationKind::Strong, Domain::ColumnStochastic);
        let report = fuzz_preserver(&Operator::Grid(g), spec, 40, seed).unwrap();
        prop_assert!(report.counterexample.is_none());
    }

    #[test]
    fn generated_pairs_satisfy_their_relation(seed: u64, n in 1usize..=4) {
        for (kind, domain) in [
            (RelationKind::Vector, Domain::All),
            (RelationKind::Vector, Domain::Distributions),
            (RelationKind::Vector, Domain::ZeroSum),
            (RelationKind::Vector, Domain::ZeroOne),
        ] {
            let (a, b) = gen_pair(RelationSpec::new(kind, domain), n, 1, seed).unwrap();
            prop_assert!(check_vector_majorization(&a.column(0), &b.column(0)).unwrap());
        }
    }
}

#[test]
fn counterexamples_reverify_from_transcript() {
    let mut r = rng(11);
    for _ in 0..10 {
        let g = majorkit_core::propcheck::random_cs_violator(3, 2, &mut r);
        let op = Operator::Grid(g);
        let spec = RelationSpec::new(RelationKind::Strong, Domain::ColumnStochastic);
        if let Some(cx) = fuzz_preserver(&op, spec, 200, 5).unwrap().counterexample {
            assert!(cx.reverify().unwrap());
            assert!(cx.reverify_against(&op).unwrap());
        }
    }
}

#[test]
fn example_operator_fixes_column_stochastic() {
    let mut r = rng(12);
    let phi = majorkit_core::preservers::last_example_operator();
    for _ in 0..20 {
        let c = random_column_stochastic_with(2, 2, &mut r);
        assert_eq!(phi.apply(&c).unwrap(), c);
    }
}

#[test]
fn property_replay_is_deterministic() {
    let cfg = SuiteConfig {
        cases: 20,
        ..SuiteConfig::default()
    };
    for name in PROPERTY_NAMES {
        let first = run_property(name, &cfg, 99, &|a, b| Ok(check_strong(a, b)?.holds())).unwrap();
        let again = run_property(name, &cfg, 99, &|a, b| Ok(check_strong(a, b)?.holds())).unwrap();
        assert_eq!(first, again);
        assert!(first.passed(), "{name}");
    }
}

#[test]
fn broken_checker_is_caught() {
    let cfg = SuiteConfig {
        cases: 40,
        ..SuiteConfig::default()
    };
    let broken = |a: &RMatrix, _: &RMatrix| Ok(a.get(0, 0) > &Rational::one());
    let report = lemma_suite(&cfg, &broken).unwrap();
    assert!(!report.passed());
    let failing: Vec<_> = report.properties.iter().filter(|p| !p.passed()).collect();
    assert!(failing.iter().all(|p| p.first_failure.is_some()));
}
