//! Capture statistics for sequential games: per-game capture probability,
//! the reset process and its expectation, Monte Carlo aggregation and
//! parameter sweeps.

mod closed_form;
mod markov;
mod sessions;
mod sweep;

pub use closed_form::{
    asymptotic_percentage, capture_stats, expected_percentage, expected_resets, p_star,
    p_star_from_theta, resets_tail, total_captures_pmf, travel_pmf, CaptureStats, Horizon,
};
pub use markov::{expected_percentage_curve, markov_oracle, oracle_tail};
pub use sessions::{aggregate_sessions, PrefixStat};
pub use sweep::{
    level_set_slope, sweep, GridAxis, LevelSetFit, ParamValues, SweepParam, SweepRow, SweepSpec,
};
