//! Equilibrium strategies: guarded arc, engagement surface, the `theta_max`
//! optimization and the evasion endpoint on the capture circle.
//!
//! Everything here is expressed in the canonical frame where the intruder
//! appears at `(r_T + rho_T, 0)` and runs radially inward, so its position at
//! time `tau` is `(r_T + rho_T - nu tau, 0)`. Engagement bearings are solved
//! on `[0, pi]`; the mirror image handles defenders below the x-axis.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{acos_checked, apollonius, Point2};
use crate::params::GameParams;
use crate::search;

/// Residual allowed on the engagement-surface equation and on tangency.
pub const SURFACE_TOL: f64 = 1e-9;
/// Coarse grid size for the engagement-time search.
pub const OPT_GRID: usize = 1024;
/// Golden-section stopping width in `tau`.
pub const OPT_TAU_TOL: f64 = 1e-9;

/// Where the defender is when a new intruder appears.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DefenderState {
    AtCenter,
    /// On the capture circle (radius `r_T + 2 gamma rho_A`) at `angle`.
    OnCaptureCircle {
        angle: f64,
    },
}

impl DefenderState {
    pub fn position(&self, params: &GameParams) -> Point2 {
        match *self {
            DefenderState::AtCenter => Point2::ORIGIN,
            DefenderState::OnCaptureCircle { angle } => {
                Point2::polar(capture_circle_radius(params), angle)
            }
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            DefenderState::AtCenter => None,
            DefenderState::OnCaptureCircle { angle } => Some(angle),
        }
    }
}

/// Radius `r_T + 2 gamma rho_A` of the circle on which all equilibrium captures happen.
pub fn capture_circle_radius(params: &GameParams) -> f64 {
    params.r_t() + 2.0 * params.gamma() * params.rho_a()
}

/// Radius below which the guarded arc is the whole circle.
pub fn full_guard_radius(params: &GameParams) -> f64 {
    params.rho_t() / params.nu() - params.r_t()
}

/// Largest arrival-angle separation a defender at radius `r` can guard.
///
/// Returns `pi` up to `rho_T/nu - r_T` (inclusive), the closed form beyond.
pub fn guarded_arc(r: f64, params: &GameParams) -> Result<f64> {
    let outer = params.outer_radius();
    if !(0.0..=outer).contains(&r) {
        return Err(Error::OutOfRange {
            what: "defender radius",
            value: r,
            lo: 0.0,
            hi: outer,
        });
    }
    if r <= full_guard_radius(params) {
        return Ok(PI);
    }
    let (r_t, nu) = (params.r_t(), params.nu());
    let big = outer;
    let f1 = (r_t + nu * r).powi(2) - (big - nu * r_t).powi(2);
    let f2 = (big + nu * r_t).powi(2) - (nu * r - r_t).powi(2);
    let x = f1 * f2 / (16.0 * nu * nu * r_t * r_t * r * big);
    // x is a squared cosine; tiny negatives at the threshold are roundoff
    let c = if (-1e-12..0.0).contains(&x) {
        0.0
    } else {
        x.sqrt()
    };
    Ok(2.0 * acos_checked("guarded arc", c)?)
}

/// Intruder distance from the origin at time `tau`, `r_T + rho_T - nu tau`.
pub fn intruder_range(tau: f64, params: &GameParams) -> f64 {
    params.outer_radius() - params.nu() * tau
}

/// Right-hand side of the engagement-surface equation: the value
/// `sin^2(theta/2)` must take for the Apollonius circle at time `tau` to be
/// tangent to the target.
pub fn engagement_rhs(tau: f64, params: &GameParams) -> f64 {
    let a = intruder_range(tau, params);
    let (r_t, rho_a) = (params.r_t(), params.rho_a());
    let (beta, gamma) = (params.beta(), params.gamma());
    ((r_t + gamma * rho_a).powi(2) - (a - beta * rho_a).powi(2)) / (4.0 * beta * rho_a * a)
}

/// Interval of engagement times on which the surface equation is solvable.
///
/// `rhs >= 0` iff `|a - beta rho_A| <= r_T + gamma rho_A`, and `rhs <= 1` iff
/// `a + beta rho_A >= r_T + gamma rho_A`, where `a` is the intruder range.
/// Together with `r_T < a <= r_T + rho_T` this gives
/// `a in [r_T + (gamma - beta) rho_A, r_T + (beta + gamma) rho_A]`.
pub fn engagement_domain(params: &GameParams) -> Result<(f64, f64)> {
    let (r_t, rho_a, nu) = (params.r_t(), params.rho_a(), params.nu());
    let (beta, gamma) = (params.beta(), params.gamma());
    let a_hi = (r_t + (beta + gamma) * rho_a).min(params.outer_radius());
    let a_lo = (r_t + (gamma - beta) * rho_a).max(beta * rho_a - r_t - gamma * rho_a);
    if !(a_lo > r_t && a_lo <= a_hi) {
        return Err(Error::EmptyDomain);
    }
    let tau_min = (params.outer_radius() - a_hi) / nu;
    let tau_max = (params.outer_radius() - a_lo) / nu;
    let tol = 1e-9;
    let (lo, hi) = (
        engagement_rhs(tau_min, params),
        engagement_rhs(tau_max, params),
    );
    if !(lo > -tol && lo < 1.0 + tol && hi > -tol && hi < 1.0 + tol) {
        return Err(Error::EmptyDomain);
    }
    Ok((tau_min, tau_max))
}

/// Engagement bearing `theta in [0, pi]` on the intruder's sensing circle for
/// engagement time `tau`.
pub fn engagement_theta(tau: f64, params: &GameParams) -> Result<f64> {
    let rhs = engagement_rhs(tau, params);
    if !(-SURFACE_TOL..=1.0 + SURFACE_TOL).contains(&rhs) {
        return Err(Error::InfeasibleTau { tau, rhs });
    }
    Ok(2.0 * rhs.clamp(0.0, 1.0).sqrt().asin())
}

/// A point `(tau, theta)` of the engagement surface with the positions it implies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngagementCandidate {
    pub tau: f64,
    pub theta: f64,
    pub x_a_eng: Point2,
    pub x_d_eng: Point2,
}

impl EngagementCandidate {
    /// Candidate on the positive-bearing branch for engagement time `tau`.
    pub fn at(tau: f64, params: &GameParams) -> Result<Self> {
        let theta = engagement_theta(tau, params)?;
        Ok(Self::from_parts(tau, theta, params))
    }

    fn from_parts(tau: f64, theta: f64, params: &GameParams) -> Self {
        let x_a_eng = Point2::new(intruder_range(tau, params), 0.0);
        Self {
            tau,
            theta,
            x_a_eng,
            x_d_eng: x_a_eng + Point2::polar(params.rho_a(), theta),
        }
    }

    /// `|sin^2(theta/2) - rhs(tau)|`.
    pub fn surface_residual(&self, params: &GameParams) -> f64 {
        ((self.theta / 2.0).sin().powi(2) - engagement_rhs(self.tau, params)).abs()
    }

    /// `| |x_C| - (r_T + gamma rho_A) |` for the Apollonius circle at engagement.
    pub fn tangency_residual(&self, params: &GameParams) -> f64 {
        let c = apollonius(self.x_a_eng, self.x_d_eng, params);
        (c.center.norm() - (params.r_t() + params.gamma() * params.rho_a())).abs()
    }

    /// Reflection across the intruder's ray.
    pub fn mirrored(&self) -> Self {
        Self {
            tau: self.tau,
            theta: -self.theta,
            x_a_eng: self.x_a_eng.mirror(),
            x_d_eng: self.x_d_eng.mirror(),
        }
    }
}

/// Engagement used by a defender starting at the target center: it parks at
/// `(r_T - rho_A/(1 + nu))` on the intruder's ray and meets it head-on, which
/// is the `theta = pi` end of the engagement surface.
pub fn center_engagement(params: &GameParams) -> Result<EngagementCandidate> {
    let (_, tau_max) = engagement_domain(params)?;
    Ok(EngagementCandidate::from_parts(tau_max, PI, params))
}

/// Reach geometry of an engagement point for a defender at radius `r`.
#[derive(Debug, Clone, Copy)]
struct Reach {
    r_eng: f64,
    phi_eng: f64,
    /// Cosine of the largest defender-to-engagement bearing difference that
    /// still allows arrival by `tau` (law of cosines).
    arg: f64,
}

fn reach(tau: f64, theta: f64, r: f64, params: &GameParams) -> Reach {
    let a = intruder_range(tau, params);
    let rho_a = params.rho_a();
    let r_eng = ((a - rho_a).powi(2) + 4.0 * a * rho_a * (theta / 2.0).cos().powi(2)).sqrt();
    // bearing of the engagement point; equals asin(rho_A sin(theta) / r_eng) when it lies in x > 0
    let phi_eng = (rho_a * theta.sin()).atan2(a + rho_a * theta.cos());
    let arg = (r_eng * r_eng + r * r - tau * tau) / (2.0 * r_eng * r);
    Reach {
        r_eng,
        phi_eng,
        arg,
    }
}

fn check_candidate(tau: f64, theta: f64, params: &GameParams) -> Result<()> {
    let rhs = engagement_rhs(tau, params);
    let residual = ((theta / 2.0).sin().powi(2) - rhs).abs();
    if residual > SURFACE_TOL || !(-SURFACE_TOL..=1.0 + SURFACE_TOL).contains(&rhs) {
        return Err(Error::InvalidCandidate { residual });
    }
    Ok(())
}

/// Largest initial angular separation from which a defender at radius `r`
/// can reach the engagement point `(tau, theta)` in time `tau`.
///
/// Saturates at `pi` when the whole circle of radius `r` is within reach, and
/// is 0 when the point is out of reach from everywhere.
pub fn theta_max_at(tau: f64, theta: f64, r: f64, params: &GameParams) -> Result<f64> {
    check_candidate(tau, theta, params)?;
    if !(r > 0.0 && r <= params.outer_radius()) {
        return Err(Error::OutOfRange {
            what: "defender radius",
            value: r,
            lo: 0.0,
            hi: params.outer_radius(),
        });
    }
    let g = reach(tau, theta, r, params);
    if g.arg < -1.0 - crate::geometry::TRIG_CLAMP_TOL {
        return Ok(PI.min(PI + g.phi_eng));
    }
    if g.arg > 1.0 + crate::geometry::TRIG_CLAMP_TOL {
        return Ok(0.0);
    }
    let v = acos_checked("theta_max", g.arg)? + g.phi_eng;
    Ok(v.clamp(0.0, PI))
}

/// Search objective: the uncapped reach angle, continued past `arg = -1` by
/// the amount of spare time so that saturated stretches still rank by slack.
fn reach_objective(tau: f64, r: f64, params: &GameParams) -> f64 {
    let theta = match engagement_theta(tau, params) {
        Ok(t) => t,
        Err(_) => return f64::NEG_INFINITY,
    };
    let g = reach(tau, theta, r, params);
    if g.arg > 1.0 {
        -g.arg
    } else if g.arg < -1.0 {
        PI + g.phi_eng + (-1.0 - g.arg)
    } else {
        g.arg.acos() + g.phi_eng
    }
}

/// The maximizing engagement for a defender at radius `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngagementSolution {
    pub r: f64,
    pub candidate: EngagementCandidate,
    pub theta_max: f64,
    pub r_eng: f64,
    pub phi_eng: f64,
    /// Capture point in the canonical frame.
    pub x_p: Point2,
    /// Bearing of the Apollonius center and of `x_p`.
    pub phi: f64,
}

/// Maximizes `theta_max` over the engagement surface for a defender at `r`.
///
/// The surface is one-dimensional once `theta` is eliminated, so this is a
/// 1024-point grid in `tau` followed by golden-section refinement to 1e-9.
pub fn optimize_engagement(r: f64, params: &GameParams) -> Result<EngagementSolution> {
    let hi = params.outer_radius() - params.rho_a();
    if !(r > 0.0 && r <= hi * (1.0 + 1e-12)) {
        return Err(Error::OutOfRange {
            what: "defender radius",
            value: r,
            lo: 0.0,
            hi,
        });
    }
    let (tau_min, tau_max) = engagement_domain(params)?;
    let (tau, _) = search::grid_then_golden(
        |t| reach_objective(t, r, params),
        tau_min,
        tau_max,
        OPT_GRID,
        OPT_TAU_TOL,
    );
    let candidate = EngagementCandidate::at(tau, params)?;
    let theta_max = theta_max_at(candidate.tau, candidate.theta, r, params)?;
    let g = reach(candidate.tau, candidate.theta, r, params);
    let (x_p, phi) = evasion_point(&candidate, params);
    Ok(EngagementSolution {
        r,
        candidate,
        theta_max,
        r_eng: g.r_eng,
        phi_eng: g.phi_eng,
        x_p,
        phi,
    })
}

/// `r <= r_T + rho_T - rho_A`: a defender this close in reaches any engagement
/// point it is within `theta_max` of without being detected on the way.
pub fn sufficiency_holds(r: f64, params: &GameParams) -> bool {
    r >= 0.0 && r <= params.outer_radius() - params.rho_a() + params.length_tol()
}

/// Capture point `x_p` and its bearing `phi` for an engagement that starts on
/// the surface: the intruder runs to the point of its Apollonius circle
/// farthest from the target.
pub fn evasion_point(candidate: &EngagementCandidate, params: &GameParams) -> (Point2, f64) {
    let c = apollonius(candidate.x_a_eng, candidate.x_d_eng, params);
    let phi = c.center.angle();
    let x_p = c.center + Point2::polar(params.gamma() * params.rho_a(), phi);
    (x_p, phi)
}

/// Smallest clearance `|x_D(t) - x_A(t)| - rho_A` over `samples` instants in
/// `[0, tau_eng)` for a defender starting at `r u(theta_d)` that moves
/// straight to the engagement point at full speed and then waits.
///
/// Positive means the intruder never senses the defender before engagement.
pub fn detection_clearance(
    solution: &EngagementSolution,
    theta_d: f64,
    params: &GameParams,
    samples: usize,
) -> f64 {
    let start = Point2::polar(solution.r, theta_d);
    let target = solution.candidate.x_d_eng;
    let len = start.distance(target);
    let dir = if len > 0.0 {
        (target - start) * (1.0 / len)
    } else {
        Point2::ORIGIN
    };
    let tau = solution.candidate.tau;
    (0..samples)
        .map(|k| {
            let t = tau * k as f64 / samples as f64;
            let x_d = start + dir * t.min(len);
            let x_a = Point2::new(intruder_range(t, params), 0.0);
            x_d.distance(x_a) - params.rho_a()
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{classify, CircleClass};

    fn working() -> GameParams {
        GameParams::new(5.0, 10.0, 1.0, 0.8).unwrap()
    }

    #[test]
    fn capture_circle_value() {
        let p = working();
        assert!((capture_circle_radius(&p) - (5.0 + 2.0 * 0.8 / 0.36)).abs() < 1e-12);
        assert!((capture_circle_radius(&p) - 9.444_444_444_4).abs() < 1e-9);
        let z = GameParams::unchecked(5.0, 10.0, 0.0, 0.8);
        assert_eq!(capture_circle_radius(&z), 5.0);
    }

    #[test]
    fn capture_circle_inside_full_guard() {
        let p = working();
        assert!(capture_circle_radius(&p) < p.rho_t() / p.nu());
    }

    #[test]
    fn guarded_arc_branches() {
        let p = working();
        assert_eq!(guarded_arc(0.0, &p).unwrap(), PI);
        assert_eq!(guarded_arc(7.5, &p).unwrap(), PI);
        let g = guarded_arc(capture_circle_radius(&p), &p).unwrap();
        assert!(g > 0.0 && g < PI);
        assert!(matches!(
            guarded_arc(15.01, &p),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            guarded_arc(-0.1, &p),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn guarded_arc_continuous_at_threshold() {
        let p = working();
        let g = guarded_arc(7.5 + 1e-9, &p).unwrap();
        assert!((g - PI).abs() < 1e-3);
    }

    #[test]
    fn domain_working_values() {
        let p = working();
        let (lo, hi) = engagement_domain(&p).unwrap();
        // beta + gamma = nu / (1 - nu) = 4
        assert!((lo - 7.5).abs() < 1e-12);
        let expected_hi = (10.0 - (p.gamma() - p.beta())) / 0.8;
        assert!((hi - expected_hi).abs() < 1e-12);
        assert!(engagement_theta(lo, &p).unwrap().abs() < 1e-6);
        assert!((engagement_theta(hi, &p).unwrap() - PI).abs() < 1e-6);
    }

    #[test]
    fn theta_zero_at_tau_min() {
        let p = working();
        let tau = (p.rho_t() - (p.beta() + p.gamma()) * p.rho_a()) / p.nu();
        assert!(engagement_rhs(tau, &p).abs() < 1e-12);
        // sqrt turns 1e-16 roundoff in the rhs into ~1e-8 in theta
        assert!(engagement_theta(tau, &p).unwrap() < 1e-7);
    }

    #[test]
    fn infeasible_tau() {
        let p = working();
        assert!(matches!(
            engagement_theta(0.0, &p),
            Err(Error::InfeasibleTau { .. })
        ));
        assert!(matches!(
            engagement_theta(14.0, &p),
            Err(Error::InfeasibleTau { .. })
        ));
    }

    #[test]
    fn domain_samples_feasible() {
        let p = working();
        let (lo, hi) = engagement_domain(&p).unwrap();
        let mut prev: Option<f64> = None;
        for k in 0..1000 {
            let tau = lo + (hi - lo) * k as f64 / 999.0;
            let rhs = engagement_rhs(tau, &p);
            assert!((-1e-12..=1.0 + 1e-12).contains(&rhs));
            let th = engagement_theta(tau, &p).unwrap();
            if let Some(q) = prev {
                // sqrt-type growth near the ends; still no jumps at this spacing
                assert!((th - q).abs() < 0.2);
            }
            prev = Some(th);
            let c = EngagementCandidate::at(tau, &p).unwrap();
            assert!(c.tangency_residual(&p) < 1e-9);
            let circle = apollonius(c.x_a_eng, c.x_d_eng, &p);
            assert_eq!(classify(&circle, &p), CircleClass::CaptureGuaranteed);
        }
    }

    #[test]
    fn reconstructed_center_norm() {
        let p = working();
        let c = EngagementCandidate::at(9.3, &p).unwrap();
        let circle = apollonius(c.x_a_eng, c.x_d_eng, &p);
        assert!((circle.center.norm() - 7.222_222_222_2).abs() < 1e-9);
    }

    #[test]
    fn theta_max_collinear_limit() {
        let p = working();
        // defender on the engagement point's ray, exactly tau closer to the origin
        let c = EngagementCandidate::at(8.0, &p).unwrap();
        let r_eng = c.x_d_eng.norm();
        let r = r_eng - c.tau;
        assert!(r > 0.0);
        let tm = theta_max_at(c.tau, c.theta, r, &p).unwrap();
        let phi_eng = c.x_d_eng.angle();
        assert!((tm - phi_eng).abs() < 1e-6, "{tm} vs {phi_eng}");
    }

    #[test]
    fn theta_max_rejects_off_surface() {
        let p = working();
        let c = EngagementCandidate::at(10.0, &p).unwrap();
        assert!(matches!(
            theta_max_at(c.tau, c.theta + 0.01, 9.0, &p),
            Err(Error::InvalidCandidate { .. })
        ));
    }

    #[test]
    fn r_eng_matches_norm() {
        let p = working();
        let (lo, hi) = engagement_domain(&p).unwrap();
        for k in 0..100 {
            let tau = lo + (hi - lo) * (k as f64 + 0.5) / 100.0;
            let c = EngagementCandidate::at(tau, &p).unwrap();
            let g = reach(c.tau, c.theta, 9.0, &p);
            assert!((c.x_d_eng.norm() - g.r_eng).abs() < 1e-9);
            assert!((c.x_d_eng.angle() - g.phi_eng).abs() < 1e-12);
        }
    }

    #[test]
    fn optimizer_beats_audit_grid() {
        let p = working();
        let r = capture_circle_radius(&p);
        let sol = optimize_engagement(r, &p).unwrap();
        assert!(sol.theta_max > 0.0 && sol.theta_max < PI);
        let (lo, hi) = engagement_domain(&p).unwrap();
        for k in 0..5000 {
            let tau = lo + (hi - lo) * k as f64 / 4999.0;
            let th = engagement_theta(tau, &p).unwrap();
            let v = theta_max_at(tau, th, r, &p).unwrap();
            assert!(
                sol.theta_max >= v - 1e-7,
                "tau {tau}: {v} > {}",
                sol.theta_max
            );
        }
    }

    #[test]
    fn solution_invariants() {
        let p = working();
        let sol = optimize_engagement(capture_circle_radius(&p), &p).unwrap();
        assert!((sol.x_p.norm() - capture_circle_radius(&p)).abs() < 1e-9);
        assert!((sol.r_eng - sol.candidate.x_d_eng.norm()).abs() < 1e-9);
        assert!(sol.candidate.surface_residual(&p) < 1e-9);
        assert!(sol.candidate.tangency_residual(&p) < 1e-9);
        // the reach triangle is tight at theta_D = theta_max
        let start = Point2::polar(sol.r, sol.theta_max);
        assert!((start.distance(sol.candidate.x_d_eng) - sol.candidate.tau).abs() < 1e-6);
    }

    #[test]
    fn out_of_range_radius() {
        let p = working();
        assert!(optimize_engagement(0.0, &p).is_err());
        assert!(optimize_engagement(14.5, &p).is_err());
        assert!(optimize_engagement(14.0, &p).is_ok());
    }

    #[test]
    fn sufficiency() {
        let p = working();
        assert!(sufficiency_holds(capture_circle_radius(&p), &p));
        assert!(sufficiency_holds(14.0, &p));
        assert!(!sufficiency_holds(15.0, &p));
    }

    #[test]
    fn evasion_dead_ahead() {
        let p = working();
        let (lo, _) = engagement_domain(&p).unwrap();
        let c = EngagementCandidate::at(lo, &p).unwrap();
        assert!(c.theta < 1e-7);
        let (x_p, phi) = evasion_point(&c, &p);
        assert!(phi.abs() < 1e-7);
        assert!((x_p - Point2::new(capture_circle_radius(&p), 0.0)).norm() < 1e-6);
        // exactly collinear: theta = 0 by construction
        let exact = EngagementCandidate::from_parts(lo, 0.0, &p);
        let (x_p, phi) = evasion_point(&exact, &p);
        assert_eq!(phi, 0.0);
        assert!((x_p - Point2::new(capture_circle_radius(&p), 0.0)).norm() < 1e-9);
    }

    #[test]
    fn evasion_alignment() {
        let p = working();
        let (lo, hi) = engagement_domain(&p).unwrap();
        for k in 0..100 {
            let tau = lo + (hi - lo) * k as f64 / 99.0;
            let c = EngagementCandidate::at(tau, &p).unwrap();
            let (x_p, phi) = evasion_point(&c, &p);
            assert!((x_p.norm() - capture_circle_radius(&p)).abs() < 1e-9);
            let x_c = apollonius(c.x_a_eng, c.x_d_eng, &p).center;
            assert!((Point2::unit(phi).dot(x_c) - x_c.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn mirror_symmetry() {
        let p = working();
        let c = EngagementCandidate::at(10.5, &p).unwrap();
        let m = c.mirrored();
        let (x_p, phi) = evasion_point(&c, &p);
        let (x_pm, phim) = evasion_point(&m, &p);
        assert!((x_pm - x_p.mirror()).norm() < 1e-12);
        assert!((phim + phi).abs() < 1e-12);
    }

    #[test]
    fn center_engagement_on_surface() {
        let p = working();
        let c = center_engagement(&p).unwrap();
        let expected = p.r_t() - p.rho_a() / (1.0 + p.nu());
        assert!((c.x_d_eng.x - expected).abs() < 1e-12);
        assert!(c.x_d_eng.y.abs() < 1e-12);
        assert!(c.surface_residual(&p) < 1e-9);
        assert!(c.tangency_residual(&p) < 1e-9);
        // reachable from the center before the intruder gets there
        assert!(expected <= c.tau);
    }

    #[test]
    fn non_detection_working_params() {
        let p = working();
        let sol = optimize_engagement(capture_circle_radius(&p), &p).unwrap();
        for k in 0..=50 {
            let th = sol.theta_max * k as f64 / 50.0;
            assert!(detection_clearance(&sol, th, &p, 10_000) >= -1e-6);
        }
    }
}
