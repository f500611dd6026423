use serde::Serialize;

use crate::engine::SessionRecord;
use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Cross-session statistics of the capture percentage after the first `n` games.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrefixStat {
    pub n: usize,
    pub mean: f64,
    pub std_err: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Mean and normal-approximation 95% interval of the running capture
/// percentage, for every prefix length.
pub fn aggregate_sessions(records: &[SessionRecord]) -> Result<Vec<PrefixStat>> {
    let first = records.first().ok_or(Error::EmptyInput)?;
    let len = first.outcomes.len();
    if let Some(bad) = records.iter().find(|r| r.outcomes.len() != len) {
        return Err(Error::LengthMismatch {
            expected: len,
            found: bad.outcomes.len(),
        });
    }
    let k = records.len() as f64;
    let mut sum = vec![0.0; len];
    let mut sum_sq = vec![0.0; len];
    for r in records {
        for (i, v) in r.prefix_percentages().into_iter().enumerate() {
            sum[i] += v;
            sum_sq[i] += v * v;
        }
    }
    Ok((0..len)
        .map(|i| {
            let mean = sum[i] / k;
            let var = if records.len() > 1 {
                ((sum_sq[i] - k * mean * mean) / (k - 1.0)).max(0.0)
            } else {
                0.0
            };
            let std_err = (var / k).sqrt();
            PrefixStat {
                n: i + 1,
                mean,
                std_err,
                ci_lo: mean - Z95 * std_err,
                ci_hi: mean + Z95 * std_err,
            }
        })
        .collect())
}
