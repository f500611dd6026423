//! Game parameters and the parametric assumption they must satisfy.

use serde::Serialize;

use crate::error::{Clause, Error, Result};

/// Validated game parameters `(r_T, rho_T, rho_A, nu)` with the derived
/// Apollonius constants.
///
/// `alpha = 1/(1 - nu^2)`, `gamma = nu alpha`, `beta = nu gamma`, so that
/// `alpha - beta = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GameParams {
    r_t: f64,
    rho_t: f64,
    rho_a: f64,
    nu: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
}

/// Left-hand sides of the two clauses of the parametric assumption.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClauseValues {
    pub first: f64,
    pub second: f64,
}

/// Evaluates both clauses for raw inputs. Requires `nu != 1`.
pub fn clause_values(r_t: f64, rho_a: f64, nu: f64) -> ClauseValues {
    let k = 1.0 - nu * nu;
    ClauseValues {
        first: (1.0 + 2.0 * nu / k) * rho_a,
        second: nu * r_t + 2.0 * rho_a * nu * nu / k,
    }
}

impl GameParams {
    /// Validates inputs and derives the Apollonius constants.
    ///
    /// When both clauses fail, the error names the larger left-hand side,
    /// i.e. the term that attains the max.
    pub fn new(r_t: f64, rho_t: f64, rho_a: f64, nu: f64) -> Result<Self> {
        for (name, value) in [("r_T", r_t), ("rho_T", rho_t), ("rho_A", rho_a)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        if !(nu.is_finite() && nu > 0.0 && nu < 1.0) {
            return Err(Error::AssumptionViolated {
                which: Clause::Speed,
                lhs: nu,
                bound: 1.0,
            });
        }
        let c = clause_values(r_t, rho_a, nu);
        let (which, lhs) = if c.first >= c.second {
            (Clause::First, c.first)
        } else {
            (Clause::Second, c.second)
        };
        if lhs > rho_t {
            return Err(Error::AssumptionViolated {
                which,
                lhs,
                bound: rho_t,
            });
        }
        Ok(Self::unchecked(r_t, rho_t, rho_a, nu))
    }

    /// Builds parameters without checking the parametric assumption.
    ///
    /// Only the derived constants are computed. Useful for probing
    /// degenerate inputs (e.g. `rho_A = 0`); strategy computations on such
    /// values carry no guarantees.
    pub fn unchecked(r_t: f64, rho_t: f64, rho_a: f64, nu: f64) -> Self {
        let alpha = 1.0 / (1.0 - nu * nu);
        let gamma = nu * alpha;
        let beta = nu * gamma;
        Self {
            r_t,
            rho_t,
            rho_a,
            nu,
            alpha,
            beta,
            gamma,
        }
    }

    pub fn r_t(&self) -> f64 {
        self.r_t
    }
    pub fn rho_t(&self) -> f64 {
        self.rho_t
    }
    pub fn rho_a(&self) -> f64 {
        self.rho_a
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn clauses(&self) -> ClauseValues {
        clause_values(self.r_t, self.rho_a, self.nu)
    }

    /// Radius of the outer boundary of the sensing annulus, `r_T + rho_T`.
    pub fn outer_radius(&self) -> f64 {
        self.r_t + self.rho_t
    }

    /// Absolute length tolerance used for boundary-inclusive comparisons.
    pub(crate) fn length_tol(&self) -> f64 {
        1e-9 * self.outer_radius()
    }
}
