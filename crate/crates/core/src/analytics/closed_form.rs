use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::params::GameParams;
use crate::strategy::{capture_circle_radius, optimize_engagement};

/// `theta_max / pi` for a defender on the capture circle.
pub fn p_star(params: &GameParams) -> Result<f64> {
    let sol = optimize_engagement(capture_circle_radius(params), params)?;
    Ok(p_star_from_theta(sol.theta_max))
}

pub fn p_star_from_theta(theta_max: f64) -> f64 {
    (theta_max / PI).clamp(0.0, 1.0)
}

/// `k ln x`, taken as 0 when `k = 0` so that `0^0 = 1`.
fn k_ln(k: u64, x: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * x.ln()
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "capture probability {p} outside [0, 1]"
        )))
    }
}

/// Probability that a run of consecutive captures between resets has length `k`:
/// `p^(k-1) (1 - p)`.
pub fn travel_pmf(k: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    if k < 1 {
        return Err(Error::Domain("travel length must be at least 1".into()));
    }
    if p >= 1.0 {
        return Err(Error::Domain(
            "travel length is unbounded when p = 1".into(),
        ));
    }
    Ok((k_ln(k - 1, p) + (1.0 - p).ln()).exp())
}

/// Probability that `n` games are covered by exactly `m` travels ending in a
/// breach: `C(n-1, m-1) p^(n-m) (1-p)^m`, evaluated in log space.
pub fn total_captures_pmf(n: u64, m: u64, p: f64) -> Result<f64> {
    check_p(p)?;
    if m < 1 || m > n {
        return Err(Error::Domain(format!(
            "need 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    Ok((ln_binomial(n - 1, m - 1) + k_ln(n - m, p) + k_ln(m, 1.0 - p)).exp())
}

/// `P(S_N > m)`, the probability of more than `m` resets in the first `N` games:
/// `sum_{j=m+1}^{N-m-1} C(j-1, m) p^(j-m-1) (1-p)^(m+1)`; zero when the range is empty.
pub fn resets_tail(n: u64, m: u64, p: f64) -> f64 {
    if n < m + 2 || m + 1 > n - m - 1 {
        return 0.0;
    }
    let tail = k_ln(m + 1, 1.0 - p);
    (m + 1..=n - m - 1)
        .map(|j| (ln_binomial(j - 1, m) + k_ln(j - m - 1, p) + tail).exp())
        .sum()
}

/// `E[S_N] = sum_{m >= 0} P(S_N > m)`.
pub fn expected_resets(n: u64, p: f64) -> f64 {
    (0..=n / 2).map(|m| resets_tail(n, m, p)).sum()
}

/// `100 (N - E[S_N]) / N`.
pub fn expected_percentage(n: u64, p: f64) -> f64 {
    assert!(n >= 1, "horizon must be at least 1");
    100.0 * (n as f64 - expected_resets(n, p)) / n as f64
}

/// `100 / (2 - p)`, the long-run capture percentage.
pub fn asymptotic_percentage(p: f64) -> f64 {
    100.0 / (2.0 - p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "n")]
pub enum Horizon {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaptureStats {
    pub p_star: f64,
    pub theta_max: f64,
    pub horizon: Horizon,
    /// `None` for the infinite horizon.
    pub expected_resets: Option<f64>,
    pub expected_percentage: f64,
}

pub fn capture_stats(theta_max: f64, horizon: Horizon) -> Result<CaptureStats> {
    let p = p_star_from_theta(theta_max);
    let (expected_resets, expected_percentage) = match horizon {
        Horizon::Finite(0) => return Err(Error::Domain("horizon must be at least 1".into())),
        Horizon::Finite(n) => (Some(expected_resets(n, p)), expected_percentage(n, p)),
        Horizon::Infinite => (None, asymptotic_percentage(p)),
    };
    Ok(CaptureStats {
        p_star: p,
        theta_max,
        horizon,
        expected_resets,
        expected_percentage,
    })
}
