use std::fmt;

/// Which part of the parametric assumption failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    /// `(1 + 2nu/(1 - nu^2)) rho_A <= rho_T`: the intruder cannot escape the sensing region.
    First,
    /// `nu r_T + 2 rho_A nu^2/(1 - nu^2) <= rho_T`: the defender gets home in time after a loss.
    Second,
    /// `0 < nu < 1`.
    Speed,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::First => "first",
            Clause::Second => "second",
            Clause::Speed => "speed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("parametric assumption violated ({which} clause): {lhs} > {bound}")]
    AssumptionViolated { which: Clause, lhs: f64, bound: f64 },

    #[error("circle is centered at the origin; farthest point is undefined")]
    DegenerateCenter,

    #[error("{what} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("engagement time {tau} is infeasible (sin^2 right-hand side {rhs})")]
    InfeasibleTau { tau: f64, rhs: f64 },

    #[error("engagement domain is empty")]
    EmptyDomain,

    #[error("(tau, theta) is not on the engagement surface (residual {residual:e})")]
    InvalidCandidate { residual: f64 },

    #[error("kinematic replay did not terminate by t = {t_max}")]
    NoTermination { t_max: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("session length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("no sessions to aggregate")]
    EmptyInput,

    #[error("iso-percentage contour at {target} not bracketed by the sweep")]
    ContourNotFound { target: f64 },

    /// An acos/asin argument left [-1, 1] by more than roundoff.
    #[error("{what}: argument {value} outside [-1, 1]")]
    Numerical { what: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
