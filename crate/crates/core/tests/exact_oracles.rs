use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use seqdefense::analytics::{
    expected_resets, markov_oracle, oracle_tail, resets_tail, total_captures_pmf,
};

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

fn pow(x: &BigRational, k: u64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// `p = num / 1000` as an exact rational.
fn ratio(num: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(1000))
}

fn exact_negative_binomial(n: u64, m: u64, p: &BigRational) -> BigRational {
    let q = BigRational::one() - p;
    BigRational::from_integer(binom(n - 1, m - 1)) * pow(p, n - m) * pow(&q, m)
}

/// Exact reset distribution by enumerating the two-state chain over rationals.
fn exact_reset_pmf(n: u64, p: &BigRational) -> Vec<BigRational> {
    let q = BigRational::one() - p;
    let len = n as usize + 2;
    let mut center = vec![BigRational::zero(); len];
    let mut circle = vec![BigRational::zero(); len];
    center[0] = BigRational::one();
    for _ in 0..n {
        let mut nc = vec![BigRational::zero(); len];
        let mut nr = vec![BigRational::zero(); len];
        for k in 0..len - 1 {
            nr[k] += &center[k] + p * &circle[k];
            nc[k + 1] += &q * &circle[k];
        }
        center = nc;
        circle = nr;
    }
    center.into_iter().zip(circle).map(|(a, b)| a + b).collect()
}

#[test]
fn negative_binomial_matches_exact_rationals() {
    for num in [1, 137, 500, 639, 871, 999] {
        let pr = ratio(num);
        let p = num as f64 / 1000.0;
        for n in 1..=30 {
            for m in 1..=n {
                let exact = exact_negative_binomial(n, m, &pr).to_f64().unwrap();
                let got = total_captures_pmf(n, m, p).unwrap();
                assert!(
                    (got - exact).abs() <= 1e-12,
                    "n={n} m={m} p={p}: {got} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn reset_tail_matches_exact_enumeration() {
    for num in [50, 333, 639, 950] {
        let pr = ratio(num);
        let p = num as f64 / 1000.0;
        for n in 1..=30u64 {
            let pmf = exact_reset_pmf(n, &pr);
            let mut tail = BigRational::zero();
            let mut mean = BigRational::zero();
            for m in (0..pmf.len()).rev() {
                mean += BigRational::from_integer(BigInt::from(m)) * &pmf[m];
                let t = tail.to_f64().unwrap();
                if m as u64 <= n {
                    assert!(
                        (resets_tail(n, m as u64, p) - t).abs() <= 1e-12,
                        "n={n} m={m}"
                    );
                }
                tail += &pmf[m];
            }
            assert!((expected_resets(n, p) - mean.to_f64().unwrap()).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_tail_matches_dp(p in 0.0..=1.0f64, n in 1u64..120) {
        let pmf = markov_oracle(n, p);
        for m in 0..=n {
            prop_assert!((resets_tail(n, m, p) - oracle_tail(&pmf, m)).abs() <= 1e-10);
        }
        let total: f64 = pmf.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn expected_resets_bounded(p in 0.0..=1.0f64, n in 1u64..400) {
        let e = expected_resets(n, p);
        prop_assert!(e >= 0.0 && e <= n as f64 / 2.0 + 1.0);
    }
}
