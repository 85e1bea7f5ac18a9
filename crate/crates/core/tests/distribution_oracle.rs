use proptest::prelude::*;
use rescue_core::distribution::{expected_successes, prob_all_success, success_count_pmf};
use rescue_core::ProbabilityVector;

/// P(Y = k) by summing over all 2^n success patterns.
fn enumerate_pmf(p: &[f64]) -> Vec<f64> {
    let n = p.len();
    let mut mass = vec![0.0; n + 1];
    for pattern in 0u32..(1 << n) {
        let mut prob = 1.0;
        for (i, &pi) in p.iter().enumerate() {
            prob *= if pattern >> i & 1 == 1 { pi } else { 1.0 - pi };
        }
        mass[pattern.count_ones() as usize] += prob;
    }
    mass
}

fn probs(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        prop_oneof![8 => 0.0..=1.0f64, 1 => Just(0.0), 1 => Just(1.0)],
        1..=max_len,
    )
}

proptest! {
    #[test]
    fn pmf_matches_enumeration(p in probs(12)) {
        let pmf = success_count_pmf(&ProbabilityVector::new(p.clone()).unwrap());
        for (k, (got, want)) in pmf.mass().iter().zip(enumerate_pmf(&p)).enumerate() {
            prop_assert!((got - want).abs() <= 1e-12, "k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn pmf_is_normalized(p in probs(20)) {
        let pmf = success_count_pmf(&ProbabilityVector::new(p).unwrap());
        prop_assert!(pmf.mass().iter().all(|&m| m >= 0.0));
        prop_assert!((pmf.total() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn pmf_moments_match_closed_forms(p in probs(20)) {
        let pv = ProbabilityVector::new(p).unwrap();
        let pmf = success_count_pmf(&pv);
        prop_assert!((pmf.mean() - expected_successes(&pv)).abs() <= 1e-10);
        prop_assert!((pmf.all_success() - prob_all_success(&pv)).abs() <= 1e-12);
    }

    #[test]
    fn metrics_ignore_order(p in probs(12), seed in any::<u64>()) {
        let mut shuffled = p.clone();
        // Fisher-Yates driven by a small LCG; any permutation will do.
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = ProbabilityVector::new(p).unwrap();
        let b = ProbabilityVector::new(shuffled).unwrap();
        prop_assert!((expected_successes(&a) - expected_successes(&b)).abs() <= 1e-12);
        prop_assert!((prob_all_success(&a) - prob_all_success(&b)).abs() <= 1e-12);
    }
}
