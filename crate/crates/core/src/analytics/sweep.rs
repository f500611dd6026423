use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::closed_form::{asymptotic_percentage, expected_percentage, p_star};
use crate::error::{Error, Result};
use crate::params::GameParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    RT,
    RhoT,
    RhoA,
    Nu,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::RT => "r_t",
            SweepParam::RhoT => "rho_t",
            SweepParam::RhoA => "rho_a",
            SweepParam::Nu => "nu",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "r_t" | "rt" => Ok(SweepParam::RT),
            "rho_t" | "rhot" => Ok(SweepParam::RhoT),
            "rho_a" | "rhoa" => Ok(SweepParam::RhoA),
            "nu" => Ok(SweepParam::Nu),
            other => Err(Error::Domain(format!("unknown sweep parameter `{other}`"))),
        }
    }
}

/// One grid axis: `steps` evenly spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridAxis {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn values(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.lo],
            n => (0..n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

/// Parses `param=lo:hi:steps`.
impl FromStr for GridAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("malformed grid `{s}`, expected param=lo:hi:steps"));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        let [lo, hi, steps] = parts.as_slice() else {
            return Err(bad());
        };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let steps: usize = steps.trim().parse().map_err(|_| bad())?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err(bad());
        }
        Ok(GridAxis {
            param: name.parse()?,
            lo,
            hi,
            steps,
        })
    }
}

/// Raw parameter values, not necessarily satisfying the assumption.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamValues {
    pub r_t: f64,
    pub rho_t: f64,
    pub rho_a: f64,
    pub nu: f64,
}

impl ParamValues {
    pub fn get(&self, p: SweepParam) -> f64 {
        match p {
            SweepParam::RT => self.r_t,
            SweepParam::RhoT => self.rho_t,
            SweepParam::RhoA => self.rho_a,
            SweepParam::Nu => self.nu,
        }
    }

    pub fn with(mut self, p: SweepParam, v: f64) -> Self {
        match p {
            SweepParam::RT => self.r_t = v,
            SweepParam::RhoT => self.rho_t = v,
            SweepParam::RhoA => self.rho_a = v,
            SweepParam::Nu => self.nu = v,
        }
        self
    }

    pub fn validate(&self) -> Result<GameParams> {
        GameParams::new(self.r_t, self.rho_t, self.rho_a, self.nu)
    }
}

impl From<GameParams> for ParamValues {
    fn from(p: GameParams) -> Self {
        Self {
            r_t: p.r_t(),
            rho_t: p.rho_t(),
            rho_a: p.rho_a(),
            nu: p.nu(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub base: ParamValues,
    pub axes: [GridAxis; 2],
    /// Finite horizons to report besides the asymptote.
    pub horizons: Vec<u64>,
}

impl SweepSpec {
    pub fn new(base: ParamValues, axes: [GridAxis; 2], horizons: Vec<u64>) -> Result<Self> {
        if axes[0].param == axes[1].param {
            return Err(Error::Domain(format!(
                "both grid axes vary `{}`",
                axes[0].param
            )));
        }
        if horizons.contains(&0) {
            return Err(Error::Domain("horizons must be at least 1".into()));
        }
        Ok(Self {
            base,
            axes,
            horizons,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub params: ParamValues,
    pub feasible: bool,
    pub theta_max: Option<f64>,
    pub p_star: Option<f64>,
    /// One entry per requested horizon; `None` when infeasible.
    pub percentages: Vec<Option<f64>>,
    pub asymptotic: Option<f64>,
}

fn evaluate(values: ParamValues, horizons: &[u64]) -> SweepRow {
    let p = values.validate().and_then(|gp| p_star(&gp));
    match p {
        Ok(p) => SweepRow {
            params: values,
            feasible: true,
            theta_max: Some(p * std::f64::consts::PI),
            p_star: Some(p),
            percentages: horizons
                .iter()
                .map(|&n| Some(expected_percentage(n, p)))
                .collect(),
            asymptotic: Some(asymptotic_percentage(p)),
        },
        Err(_) => SweepRow {
            params: values,
            feasible: false,
            theta_max: None,
            p_star: None,
            percentages: vec![None; horizons.len()],
            asymptotic: None,
        },
    }
}

/// Evaluates every grid point, first axis outer, second inner. Points that
/// violate the parametric assumption come back with `feasible = false`.
pub fn sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    let [a, b] = spec.axes;
    let points: Vec<ParamValues> = a
        .values()
        .into_iter()
        .flat_map(|u| {
            b.values()
                .into_iter()
                .map(move |v| spec.base.with(a.param, u).with(b.param, v))
        })
        .collect();
    points
        .into_par_iter()
        .map(|v| evaluate(v, &spec.horizons))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSetFit {
    pub target: f64,
    /// `(rho_A, rho_T)` points on the contour.
    pub points: Vec<(f64, f64)>,
    /// Fit `rho_T = slope rho_A + intercept`.
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
    /// `max_residual` over the `rho_T` extent of the contour.
    pub relative_residual: f64,
}

fn percentage_at(v: ParamValues, horizon: Option<u64>) -> Option<f64> {
    let p = v.validate().and_then(|gp| p_star(&gp)).ok()?;
    Some(match horizon {
        Some(n) => expected_percentage(n, p),
        None => asymptotic_percentage(p),
    })
}

/// Bisection iterations in `rho_T`; 60 halvings exhaust double precision on any bracket.
const BISECTION_STEPS: usize = 60;

/// Locates the contour `percentage = target` of a `rho_A`-by-`rho_T` sweep
/// and fits a straight line `rho_T(rho_A)` to it.
///
/// Each `rho_A` column is scanned in increasing `rho_T` for the first pair of
/// adjacent feasible rows that brackets the target; the crossing is then
/// refined by bisection with fresh evaluations. `horizon = None` uses the
/// asymptotic percentage.
pub fn level_set_slope(
    rows: &[SweepRow],
    target: f64,
    horizon: Option<u64>,
) -> Result<LevelSetFit> {
    let not_found = || Error::ContourNotFound { target };
    let mut columns: BTreeMap<u64, Vec<&SweepRow>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.feasible) {
        columns.entry(r.params.rho_a.to_bits()).or_default().push(r);
    }

    let mut points = Vec::new();
    for col in columns.values_mut() {
        col.sort_by(|x, y| x.params.rho_t.total_cmp(&y.params.rho_t));
        let vals: Vec<Option<f64>> = col
            .iter()
            .map(|r| percentage_at(r.params, horizon))
            .collect();
        let bracket = (1..col.len()).find_map(|i| {
            let (f0, f1) = (vals[i - 1]?, vals[i]?);
            let (d0, d1) = (f0 - target, f1 - target);
            (d0 * d1 <= 0.0 && f0 != f1).then_some((col[i - 1].params, col[i].params, d0))
        });
        let Some((lo_v, hi_v, d_lo)) = bracket else {
            continue;
        };
        let (mut lo, mut hi) = (lo_v.rho_t, hi_v.rho_t);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            let Some(f) = percentage_at(lo_v.with(SweepParam::RhoT, mid), horizon) else {
                break;
            };
            if (f - target) * d_lo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        points.push((lo_v.rho_a, 0.5 * (lo + hi)));
    }
    if points.len() < 2 {
        return Err(not_found());
    }

    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(not_found());
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).abs())
        .fold(0.0, f64::max);
    let (ymin, ymax) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
            (a.min(p.1), b.max(p.1))
        });
    let span = ymax - ymin;
    Ok(LevelSetFit {
        target,
        points,
        slope,
        intercept,
        max_residual,
        relative_residual: if span > 0.0 {
            max_residual / span
        } else {
            f64::INFINITY
        },
    })
}
