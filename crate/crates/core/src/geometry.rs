//! Planar primitives and the Apollonius-circle construction.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::GameParams;
use crate::search;

/// Slack allowed on acos/asin arguments before they count as a logic error.
pub const TRIG_CLAMP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// `r * [cos(angle), sin(angle)]`.
    pub fn polar(r: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(r * c, r * s)
    }

    /// Unit vector at `angle`.
    pub fn unit(angle: f64) -> Self {
        Self::polar(1.0, angle)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Bearing in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Reflection across the x-axis.
    pub fn mirror(self) -> Self {
        Self::new(self.x, -self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Maps an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let w = (a + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

fn clamp_unit(what: &'static str, x: f64) -> Result<f64> {
    if !(-1.0 - TRIG_CLAMP_TOL..=1.0 + TRIG_CLAMP_TOL).contains(&x) {
        return Err(Error::Numerical { what, value: x });
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// `acos` that tolerates roundoff just outside `[-1, 1]` and rejects anything larger.
pub fn acos_checked(what: &'static str, x: f64) -> Result<f64> {
    clamp_unit(what, x).map(f64::acos)
}

/// `asin` with the same clamping policy as [`acos_checked`].
pub fn asin_checked(what: &'static str, x: f64) -> Result<f64> {
    clamp_unit(what, x).map(f64::asin)
}

/// Locus of points `x` with `|x - x_A| = nu |x - x_D|`; its interior is the
/// intruder's dominance region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApolloniusCircle {
    pub center: Point2,
    pub radius: f64,
    pub nu: f64,
}

impl ApolloniusCircle {
    /// Point on the circle at bearing `angle` measured from the center.
    pub fn boundary_point(&self, angle: f64) -> Point2 {
        self.center + Point2::polar(self.radius, angle)
    }
}

/// Apollonius circle for intruder `x_a` and defender `x_d`:
/// center `alpha x_A - beta x_D`, radius `gamma |x_A - x_D|`.
pub fn apollonius(x_a: Point2, x_d: Point2, params: &GameParams) -> ApolloniusCircle {
    ApolloniusCircle {
        center: x_a * params.alpha() - x_d * params.beta(),
        radius: params.gamma() * x_a.distance(x_d),
        nu: params.nu(),
    }
}

/// Outcome class of an Apollonius circle relative to the target and the
/// outer boundary of the sensing annulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CircleClass {
    CaptureGuaranteed,
    BreachPossible,
    ExitPossible,
    BreachAndExit,
}

impl CircleClass {
    pub fn breach_possible(self) -> bool {
        matches!(
            self,
            CircleClass::BreachPossible | CircleClass::BreachAndExit
        )
    }
}

/// Sign tests against the target (`|x_C| >= r_T + r_C`) and the outer
/// boundary (`|x_C| <= r_T + rho_T - r_C`). Tangency counts as safe, with a
/// relative tolerance of `1e-9 (r_T + rho_T)`.
pub fn classify(circle: &ApolloniusCircle, params: &GameParams) -> CircleClass {
    let tol = params.length_tol();
    let d = circle.center.norm();
    let breach = d < params.r_t() + circle.radius - tol;
    let exit = d > params.outer_radius() - circle.radius + tol;
    match (breach, exit) {
        (false, false) => CircleClass::CaptureGuaranteed,
        (true, false) => CircleClass::BreachPossible,
        (false, true) => CircleClass::ExitPossible,
        (true, true) => CircleClass::BreachAndExit,
    }
}

/// Number of samples in the angular scan of [`breach_margin_point`].
pub const BREACH_SCAN_SAMPLES: usize = 2048;

/// Maximizes `nu |x - x_D| - |x - x_A|` over the target boundary.
///
/// A positive margin means the point is strictly inside the dominance region,
/// i.e. the intruder reaches it first; the maximizer is the intruder's breach
/// aim point.
pub fn breach_margin_point(x_a: Point2, x_d: Point2, params: &GameParams) -> (f64, Point2) {
    let r_t = params.r_t();
    let nu = params.nu();
    let margin = |psi: f64| {
        let x = Point2::polar(r_t, psi);
        nu * x.distance(x_d) - x.distance(x_a)
    };

    let n = BREACH_SCAN_SAMPLES;
    let step = 2.0 * PI / n as f64;
    let start = x_a.angle();
    let mut best_k = 0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..n {
        let m = margin(start + step * k as f64);
        if m > best {
            best = m;
            best_k = k;
        }
    }
    let centre = start + step * best_k as f64;
    let (psi, m) = search::golden_section_max(margin, centre - step, centre + step, 1e-10);
    let (psi, m) = if m >= best { (psi, m) } else { (centre, best) };
    (m, Point2::polar(r_t, psi))
}

/// Point of `circle` farthest from the origin.
pub fn farthest_point_from_origin(circle: &ApolloniusCircle) -> Result<Point2> {
    let d = circle.center.norm();
    if d == 0.0 || !d.is_finite() {
        return Err(Error::DegenerateCenter);
    }
    Ok(circle.center + circle.center * (circle.radius / d))
}
