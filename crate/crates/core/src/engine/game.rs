use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{wrap_angle, Point2};
use crate::params::GameParams;
use crate::strategy::{
    capture_circle_radius, optimize_engagement, DefenderState, EngagementSolution,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GameResult {
    Capture,
    Breach,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GameOutcome {
    pub result: GameResult,
    pub arrival_angle: f64,
    /// `None` when the defender started at the target center.
    pub defender_angle_before: Option<f64>,
    pub defender_state_after: DefenderState,
    /// World-frame capture location, on the capture circle.
    pub capture_point: Option<Point2>,
}

impl GameOutcome {
    pub fn state_before(&self) -> DefenderState {
        match self.defender_angle_before {
            None => DefenderState::AtCenter,
            Some(angle) => DefenderState::OnCaptureCircle { angle },
        }
    }
}

/// Outcomes of `N` sequential arrivals drawn from one seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionRecord {
    pub params: GameParams,
    pub seed: u64,
    pub outcomes: Vec<GameOutcome>,
    pub n_capture: usize,
    pub n_breach: usize,
}

impl SessionRecord {
    /// `100 * captures / n` after each of the first `n = 1..=N` games.
    pub fn prefix_percentages(&self) -> Vec<f64> {
        let mut captures = 0usize;
        self.outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| {
                if o.result == GameResult::Capture {
                    captures += 1;
                }
                100.0 * captures as f64 / (i + 1) as f64
            })
            .collect()
    }
}

/// Arrival angle of game `index` under `seed`, uniform on `[-pi, pi)`.
///
/// Each index reads its own ChaCha stream, so draws do not depend on how
/// many other games were generated or in which order.
pub fn arrival_angle(seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.random_range(-PI..PI)
}

/// Event-level game loop with the engagement solution for a defender on the
/// capture circle computed once.
#[derive(Debug, Clone)]
pub struct Engine {
    params: GameParams,
    solution: EngagementSolution,
}

impl Engine {
    pub fn new(params: GameParams) -> Result<Self> {
        let solution = optimize_engagement(capture_circle_radius(&params), &params)?;
        Ok(Self { params, solution })
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    /// Optimal engagement for a defender on the capture circle, canonical frame.
    pub fn solution(&self) -> &EngagementSolution {
        &self.solution
    }

    pub fn theta_max(&self) -> f64 {
        self.solution.theta_max
    }

    /// Resolves one game.
    ///
    /// From the center the defender always wins and ends on the capture
    /// circle at the arrival bearing. From the capture circle it wins iff the
    /// angular separation is at most `theta_max` (inclusive); the capture
    /// then happens at `theta_A + s phi`, `s` being the side the defender
    /// came from. A loss sends the defender back to the center.
    pub fn play_game(&self, state: DefenderState, theta_a: f64) -> GameOutcome {
        let theta_a = wrap_angle(theta_a);
        let r_cc = capture_circle_radius(&self.params);
        match state {
            DefenderState::AtCenter => GameOutcome {
                result: GameResult::Capture,
                arrival_angle: theta_a,
                defender_angle_before: None,
                defender_state_after: DefenderState::OnCaptureCircle { angle: theta_a },
                capture_point: Some(Point2::polar(r_cc, theta_a)),
            },
            DefenderState::OnCaptureCircle { angle } => {
                let sep = wrap_angle(angle - theta_a);
                if sep.abs() <= self.solution.theta_max {
                    let side = if sep >= 0.0 { 1.0 } else { -1.0 };
                    let after = wrap_angle(theta_a + side * self.solution.phi);
                    GameOutcome {
                        result: GameResult::Capture,
                        arrival_angle: theta_a,
                        defender_angle_before: Some(angle),
                        defender_state_after: DefenderState::OnCaptureCircle { angle: after },
                        capture_point: Some(Point2::polar(r_cc, after)),
                    }
                } else {
                    GameOutcome {
                        result: GameResult::Breach,
                        arrival_angle: theta_a,
                        defender_angle_before: Some(angle),
                        defender_state_after: DefenderState::AtCenter,
                        capture_point: None,
                    }
                }
            }
        }
    }

    /// Plays `n` arrivals starting from the center.
    pub fn run_session(&self, n: usize, seed: u64) -> SessionRecord {
        let mut state = DefenderState::AtCenter;
        let mut outcomes = Vec::with_capacity(n);
        for i in 0..n {
            let outcome = self.play_game(state, arrival_angle(seed, i as u64));
            state = outcome.defender_state_after;
            outcomes.push(outcome);
        }
        let n_capture = outcomes
            .iter()
            .filter(|o| o.result == GameResult::Capture)
            .count();
        SessionRecord {
            params: self.params,
            seed,
            n_breach: outcomes.len() - n_capture,
            n_capture,
            outcomes,
        }
    }

    /// `trials` independent sessions with seeds `base_seed, base_seed + 1, ...`,
    /// returned in seed order.
    pub fn run_sessions(&self, n: usize, trials: usize, base_seed: u64) -> Vec<SessionRecord> {
        (0..trials as u64)
            .into_par_iter()
            .map(|k| self.run_session(n, base_seed.wrapping_add(k)))
            .collect()
    }
}
