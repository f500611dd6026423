use rayon::prelude::*;
use serde::Serialize;

use super::game::{Engine, GameResult};
use crate::error::{Error, Result};
use crate::geometry::{
    apollonius, breach_margin_point, classify, farthest_point_from_origin, wrap_angle, CircleClass,
    Point2,
};
use crate::params::GameParams;
use crate::strategy::{center_engagement, DefenderState};

/// Time limit of a replay, in units of `r_T + rho_T`.
pub const TIMEOUT_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinematicConfig {
    pub dt: f64,
    pub eps_capture: f64,
}

impl KinematicConfig {
    /// `dt = 1e-4 (r_T + rho_T)`, `eps_capture = 1e-3`.
    pub fn for_params(params: &GameParams) -> Self {
        Self {
            dt: 1e-4 * params.outer_radius(),
            eps_capture: 1e-3,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, value) in [("dt", self.dt), ("eps_capture", self.eps_capture)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }
}

/// Information state of the intruder: before detection it only knows its own
/// position, afterwards it sees the defender.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Partial,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub x_a: Point2,
    pub x_d: Point2,
    pub phase: Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "point", rename_all = "snake_case")]
pub enum Terminal {
    /// Midpoint of the two agents when they came within `eps_capture`.
    CaptureAt(Point2),
    BreachAt(Point2),
}

impl Terminal {
    pub fn result(&self) -> GameResult {
        match self {
            Terminal::CaptureAt(_) => GameResult::Capture,
            Terminal::BreachAt(_) => GameResult::Breach,
        }
    }

    pub fn point(&self) -> Point2 {
        match *self {
            Terminal::CaptureAt(p) | Terminal::BreachAt(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub dt: f64,
    /// Step ends plus every event instant, in time order. The last sample is
    /// the terminal state.
    pub samples: Vec<Sample>,
    pub terminal: Terminal,
    pub detection_time: Option<f64>,
    /// Apollonius class seen by the intruder at detection.
    pub detection_class: Option<CircleClass>,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory always has a terminal sample")
    }
}

/// Straight-line mover at constant speed that stops at its goal.
#[derive(Debug, Clone, Copy)]
struct Mover {
    pos: Point2,
    goal: Point2,
    speed: f64,
}

impl Mover {
    fn remaining(&self) -> f64 {
        self.pos.distance(self.goal)
    }

    fn arrival_in(&self) -> f64 {
        let d = self.remaining();
        if d == 0.0 {
            f64::INFINITY
        } else {
            d / self.speed
        }
    }

    fn velocity(&self) -> Point2 {
        let d = self.remaining();
        if d == 0.0 {
            Point2::ORIGIN
        } else {
            (self.goal - self.pos) * (self.speed / d)
        }
    }

    fn advance(&mut self, h: f64) {
        if h >= self.arrival_in() {
            self.pos = self.goal;
        } else {
            self.pos = self.pos + self.velocity() * h;
        }
    }
}

/// First `s` in `[0, h]` with `|p + s v| <= radius`, `p`/`v` relative
/// position and velocity.
fn entry_time(p: Point2, v: Point2, radius: f64, h: f64) -> Option<f64> {
    let c = p.norm_sq() - radius * radius;
    if c <= 0.0 {
        return Some(0.0);
    }
    let a = v.norm_sq();
    let b = 2.0 * p.dot(v);
    if a == 0.0 || b >= 0.0 {
        return None;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let q = 0.5 * (-b + disc.sqrt());
    let s = c / q;
    (s <= h).then_some(s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Event {
    Detection,
    Capture,
    Breach,
}

/// Where the defender heads before any detection, and whether it plans a capture.
fn defender_plan(engine: &Engine, state: DefenderState, theta_a: f64) -> Result<(Point2, bool)> {
    let p = engine.params();
    match state {
        DefenderState::AtCenter => {
            let eng = center_engagement(p)?;
            Ok((eng.x_d_eng.rotate(theta_a), true))
        }
        DefenderState::OnCaptureCircle { angle } => {
            let sep = wrap_angle(angle - theta_a);
            if sep.abs() <= engine.theta_max() {
                let cand = engine.solution().candidate;
                let cand = if sep >= 0.0 { cand } else { cand.mirrored() };
                Ok((cand.x_d_eng.rotate(theta_a), true))
            } else {
                Ok((Point2::ORIGIN, false))
            }
        }
    }
}

/// Replays one game in continuous time.
///
/// Both agents move in straight lines at constant speed between decision
/// points, so positions inside a step are exact and events are located by
/// solving the distance quadratics rather than by checking step ends. The
/// intruder starts on the sensing boundary at `theta_a` and runs radially
/// inward. Detection at distance `rho_A` switches it to full information: it
/// classifies its Apollonius circle and heads for the farthest point from the
/// target when capture is guaranteed, or for the max-margin breach point
/// otherwise. A defender that planned a capture then runs to the intruder's
/// chosen point; one that conceded heads to the center throughout.
pub fn simulate_kinematic(
    engine: &Engine,
    state: DefenderState,
    theta_a: f64,
    config: KinematicConfig,
) -> Result<Trajectory> {
    replay(engine, state, theta_a, config, true)
}

fn replay(
    engine: &Engine,
    state: DefenderState,
    theta_a: f64,
    config: KinematicConfig,
    record: bool,
) -> Result<Trajectory> {
    config.validate()?;
    let p = engine.params();
    let t_max = TIMEOUT_FACTOR * p.outer_radius();
    let breach_radius = p.r_t() + p.length_tol();

    let (plan_goal, pursue) = defender_plan(engine, state, theta_a)?;
    let mut att = Mover {
        pos: Point2::polar(p.outer_radius(), theta_a),
        goal: Point2::ORIGIN,
        speed: p.nu(),
    };
    let mut def = Mover {
        pos: state.position(p),
        goal: plan_goal,
        speed: 1.0,
    };
    let mut phase = Phase::Partial;
    let mut detection_time = None;
    let mut detection_class = None;
    let mut t = 0.0;
    let mut samples = Vec::new();
    let push = |samples: &mut Vec<Sample>, t, att: &Mover, def: &Mover, phase, force: bool| {
        if record || force {
            samples.push(Sample {
                t,
                x_a: att.pos,
                x_d: def.pos,
                phase,
            });
        }
    };
    push(&mut samples, t, &att, &def, phase, false);

    while t < t_max {
        let mut left = config.dt;
        while left > 0.0 {
            let h = left.min(att.arrival_in()).min(def.arrival_in());
            let va = att.velocity();
            let rel = att.pos - def.pos;
            let vrel = va - def.velocity();

            let mut next: Option<(f64, Event)> = None;
            let mut consider = |s: Option<f64>, e: Event| {
                if let Some(s) = s {
                    if next.is_none_or(|(best, _)| s < best) {
                        next = Some((s, e));
                    }
                }
            };
            consider(entry_time(rel, vrel, config.eps_capture, h), Event::Capture);
            consider(entry_time(att.pos, va, breach_radius, h), Event::Breach);
            if phase == Phase::Partial {
                consider(entry_time(rel, vrel, p.rho_a(), h), Event::Detection);
            }

            let Some((s, event)) = next else {
                att.advance(h);
                def.advance(h);
                t += h;
                left -= h;
                continue;
            };
            att.advance(s);
            def.advance(s);
            t += s;
            left -= s;
            match event {
                Event::Capture => {
                    let mid = (att.pos + def.pos) * 0.5;
                    push(&mut samples, t, &att, &def, phase, true);
                    return Ok(finish(
                        config,
                        samples,
                        Terminal::CaptureAt(mid),
                        detection_time,
                        detection_class,
                    ));
                }
                Event::Breach => {
                    push(&mut samples, t, &att, &def, phase, true);
                    return Ok(finish(
                        config,
                        samples,
                        Terminal::BreachAt(att.pos),
                        detection_time,
                        detection_class,
                    ));
                }
                Event::Detection => {
                    phase = Phase::Full;
                    detection_time = Some(t);
                    let circle = apollonius(att.pos, def.pos, p);
                    let class = classify(&circle, p);
                    detection_class = Some(class);
                    att.goal = if class.breach_possible() {
                        breach_margin_point(att.pos, def.pos, p).1
                    } else {
                        farthest_point_from_origin(&circle)?
                    };
                    if pursue {
                        def.goal = att.goal;
                    }
                    push(&mut samples, t, &att, &def, phase, false);
                }
            }
        }
        push(&mut samples, t, &att, &def, phase, false);
    }
    Err(Error::NoTermination { t_max })
}

fn finish(
    config: KinematicConfig,
    samples: Vec<Sample>,
    terminal: Terminal,
    detection_time: Option<f64>,
    detection_class: Option<CircleClass>,
) -> Trajectory {
    Trajectory {
        dt: config.dt,
        samples,
        terminal,
        detection_time,
        detection_class,
    }
}

/// Angular distance from the capture threshold below which a game counts as
/// a boundary case and is left out of the agreement tally.
pub const BOUNDARY_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub n_games: usize,
    /// Games farther than [`BOUNDARY_MARGIN`] from the threshold.
    pub n_compared: usize,
    pub n_agree: usize,
    /// Indices of compared games whose verdicts differ or whose replay failed.
    pub disagreements: Vec<usize>,
    /// Largest distance between a kinematic capture point and the event-level one.
    pub max_capture_discrepancy: f64,
    /// Largest defender distance from the center at breach time.
    pub max_breach_defender_residual: f64,
}

impl AgreementReport {
    pub fn agreement_fraction(&self) -> f64 {
        if self.n_compared == 0 {
            1.0
        } else {
            self.n_agree as f64 / self.n_compared as f64
        }
    }

    /// Full verdict agreement, capture points within `capture_bound` and the
    /// defender within `center_bound` of the center at every breach.
    pub fn passes(&self, capture_bound: f64, center_bound: f64) -> bool {
        self.disagreements.is_empty()
            && self.max_capture_discrepancy <= capture_bound
            && self.max_breach_defender_residual <= center_bound
    }
}

struct GameCheck {
    compared: bool,
    agree: bool,
    capture_gap: f64,
    center_gap: f64,
}

/// Replays the first `n_games` of the session for `seed` kinematically and
/// compares each against the event-level outcome.
pub fn verify_outcome_agreement(
    engine: &Engine,
    n_games: usize,
    seed: u64,
    config: KinematicConfig,
) -> Result<AgreementReport> {
    config.validate()?;
    let session = engine.run_session(n_games, seed);
    let checks: Vec<GameCheck> = session
        .outcomes
        .par_iter()
        .map(|o| {
            let state = o.state_before();
            let compared = match state {
                DefenderState::AtCenter => true,
                DefenderState::OnCaptureCircle { angle } => {
                    let sep = wrap_angle(angle - o.arrival_angle).abs();
                    (sep - engine.theta_max()).abs() > BOUNDARY_MARGIN
                }
            };
            let mut check = GameCheck {
                compared,
                agree: false,
                capture_gap: 0.0,
                center_gap: 0.0,
            };
            let Ok(traj) = replay(engine, state, o.arrival_angle, config, false) else {
                return check;
            };
            check.agree = traj.terminal.result() == o.result;
            if !check.agree {
                return check;
            }
            match (traj.terminal, o.capture_point) {
                (Terminal::CaptureAt(x), Some(expected)) => {
                    check.capture_gap = x.distance(expected);
                }
                (Terminal::BreachAt(_), None) => {
                    check.center_gap = traj.last().x_d.norm();
                }
                _ => check.agree = false,
            }
            check
        })
        .collect();

    let mut report = AgreementReport {
        n_games,
        n_compared: 0,
        n_agree: 0,
        disagreements: Vec::new(),
        max_capture_discrepancy: 0.0,
        max_breach_defender_residual: 0.0,
    };
    for (i, c) in checks.iter().enumerate() {
        if !c.compared {
            continue;
        }
        report.n_compared += 1;
        if c.agree {
            report.n_agree += 1;
            report.max_capture_discrepancy = report.max_capture_discrepancy.max(c.capture_gap);
            report.max_breach_defender_residual =
                report.max_breach_defender_residual.max(c.center_gap);
        } else {
            report.disagreements.push(i);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn engine() -> Engine {
        Engine::new(GameParams::new(5.0, 10.0, 1.0, 0.8).unwrap()).unwrap()
    }

    fn cfg() -> KinematicConfig {
        KinematicConfig {
            dt: 1e-3,
            eps_capture: 1e-3,
        }
    }

    #[test]
    fn entry_time_cases() {
        // head-on approach from distance 3 at unit speed reaches radius 1 at s = 2
        let s = entry_time(Point2::new(3.0, 0.0), Point2::new(-1.0, 0.0), 1.0, 5.0).unwrap();
        assert!((s - 2.0).abs() < 1e-15);
        assert_eq!(
            entry_time(Point2::new(3.0, 0.0), Point2::new(-1.0, 0.0), 1.0, 1.5),
            None
        );
        assert_eq!(
            entry_time(Point2::new(3.0, 0.0), Point2::new(1.0, 0.0), 1.0, 5.0),
            None
        );
        assert_eq!(
            entry_time(Point2::new(3.0, 0.0), Point2::new(0.0, 1.0), 1.0, 5.0),
            None
        );
        assert_eq!(
            entry_time(Point2::new(0.5, 0.0), Point2::ORIGIN, 1.0, 5.0),
            Some(0.0)
        );
        // grazing miss
        assert_eq!(
            entry_time(Point2::new(3.0, 1.5), Point2::new(-1.0, 0.0), 1.0, 10.0),
            None
        );
    }

    #[test]
    fn rejects_bad_config() {
        let e = engine();
        for (dt, eps) in [(0.0, 1e-3), (1e-3, 0.0), (f64::NAN, 1e-3), (-1.0, 1e-3)] {
            let r = simulate_kinematic(
                &e,
                DefenderState::AtCenter,
                0.0,
                KinematicConfig {
                    dt,
                    eps_capture: eps,
                },
            );
            assert!(matches!(r, Err(Error::InvalidParameter { .. })));
        }
    }

    #[test]
    fn from_center_captures_on_ray() {
        let e = engine();
        let theta = 1.234;
        let tr = simulate_kinematic(&e, DefenderState::AtCenter, theta, cfg()).unwrap();
        let expected = e
            .play_game(DefenderState::AtCenter, theta)
            .capture_point
            .unwrap();
        assert_eq!(tr.terminal.result(), GameResult::Capture);
        assert!(tr.terminal.point().distance(expected) < 5e-3);
        assert_eq!(tr.detection_class, Some(CircleClass::CaptureGuaranteed));
        let (_, tau_max) = crate::strategy::engagement_domain(e.params()).unwrap();
        assert!((tr.detection_time.unwrap() - tau_max).abs() < 1e-9);
    }

    #[test]
    fn capture_bound_matches_engine() {
        let e = engine();
        for (theta_d, theta_a) in [(0.3, 0.0), (-1.0, 0.5), (2.0, 0.1), (0.0, 0.0), (-2.5, 3.0)] {
            let state = DefenderState::OnCaptureCircle { angle: theta_d };
            let o = e.play_game(state, theta_a);
            assert_eq!(o.result, GameResult::Capture);
            let tr = simulate_kinematic(&e, state, theta_a, cfg()).unwrap();
            assert_eq!(
                tr.terminal.result(),
                GameResult::Capture,
                "{theta_d} {theta_a}"
            );
            let gap = tr.terminal.point().distance(o.capture_point.unwrap());
            assert!(gap < 5e-3, "{gap}");
        }
    }

    #[test]
    fn breach_bound_defender_home() {
        let e = engine();
        let state = DefenderState::OnCaptureCircle { angle: 0.0 };
        let tr = simulate_kinematic(&e, state, PI, cfg()).unwrap();
        let Terminal::BreachAt(x) = tr.terminal else {
            panic!("expected breach, got {:?}", tr.terminal);
        };
        assert!((x.norm() - e.params().r_t()).abs() < 1e-6);
        assert!(tr.last().x_d.norm() < 1e-3);
    }

    #[test]
    fn step_displacements_bounded() {
        let e = engine();
        let nu = e.params().nu();
        for (state, th) in [
            (DefenderState::AtCenter, 0.4),
            (DefenderState::OnCaptureCircle { angle: 1.0 }, 0.0),
            (DefenderState::OnCaptureCircle { angle: 0.0 }, 3.0),
        ] {
            let tr = simulate_kinematic(&e, state, th, cfg()).unwrap();
            for w in tr.samples.windows(2) {
                let dt = w[1].t - w[0].t;
                assert!(dt >= 0.0 && dt <= tr.dt * (1.0 + 1e-9));
                assert!(w[0].x_a.distance(w[1].x_a) <= nu * tr.dt * (1.0 + 1e-9));
                assert!(w[0].x_d.distance(w[1].x_d) <= tr.dt * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn full_phase_stays_in_dominance_region() {
        let e = engine();
        let nu = e.params().nu();
        let tr = simulate_kinematic(
            &e,
            DefenderState::OnCaptureCircle { angle: 1.5 },
            0.2,
            cfg(),
        )
        .unwrap();
        let first = tr
            .samples
            .iter()
            .position(|s| s.phase == Phase::Full)
            .unwrap();
        let eng = tr.samples[first];
        for s in &tr.samples[first..] {
            let x = s.x_a;
            assert!(nu * x.distance(eng.x_d) >= x.distance(eng.x_a) - 1e-9);
        }
    }

    #[test]
    fn no_detection_before_engagement() {
        let e = engine();
        let state = DefenderState::OnCaptureCircle { angle: 1.9 };
        let tr = simulate_kinematic(&e, state, 0.0, cfg()).unwrap();
        let tau = e.solution().candidate.tau;
        assert!((tr.detection_time.unwrap() - tau).abs() < 1e-9);
    }

    #[test]
    fn small_agreement_run() {
        let e = engine();
        let r = verify_outcome_agreement(&e, 60, 11, cfg()).unwrap();
        assert_eq!(r.n_games, 60);
        assert!(r.passes(5e-3, 1e-3), "{r:?}");
        assert!(r.n_compared >= 55);
    }
}
