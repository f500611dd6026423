//! Sequential perimeter-defense game.
//!
//! One defender guards a circular target of radius `r_T` against intruders
//! that appear one at a time, uniformly at random, on the outer boundary of a
//! sensing annulus of width `rho_T`. The intruder is slower (speed ratio
//! `nu < 1`) but can sense the defender within `rho_A`, and uses that to drag
//! captures as far from the target as possible.
//!
//! The crate is layered bottom-up:
//!
//! - [`params`] and [`geometry`]: validated parameters, planar points, the
//!   Apollonius circle and its breach/capture classification.
//! - [`strategy`]: guarded arc, engagement surface, the `theta_max`
//!   optimization and the evasion endpoint on the capture circle.
//! - [`engine`]: the event-level game loop over sequential arrivals and a
//!   fixed-step kinematic integrator that replays single games as an oracle.
//! - [`analytics`]: closed-form capture statistics, the exact Markov-chain
//!   oracle, Monte Carlo aggregation and parameter sweeps.
//!
//! ```
//! use seqdefense::{analytics, GameParams};
//!
//! let params = GameParams::new(5.0, 10.0, 1.0, 0.8).unwrap();
//! let p = analytics::p_star(&params).unwrap();
//! let pct = analytics::asymptotic_percentage(p);
//! assert!(pct > 50.0 && pct < 100.0);
//! ```

pub mod analytics;
pub mod engine;
mod error;
pub mod geometry;
pub mod params;
pub mod search;
pub mod strategy;

pub use error::{Clause, Error, Result};
pub use geometry::{ApolloniusCircle, CircleClass, Point2};
pub use params::GameParams;
pub use strategy::{DefenderState, EngagementCandidate, EngagementSolution};
