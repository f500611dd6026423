//! Sequential game loop and its kinematic oracle.
//!
//! [`Engine`] resolves each game at the event level from the cached
//! engagement solution on the capture circle. [`simulate_kinematic`] replays
//! a single game with a fixed-step integrator of the first-order dynamics and
//! is used to cross-check the event-level verdicts.

mod game;
mod kinematic;

pub use game::{arrival_angle, Engine, GameOutcome, GameResult, SessionRecord};
pub use kinematic::{
    simulate_kinematic, verify_outcome_agreement, AgreementReport, KinematicConfig, Phase, Sample,
    Terminal, Trajectory,
};
