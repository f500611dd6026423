use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use seqdefense::analytics::GridAxis;
use seqdefense::engine::KinematicConfig;
use seqdefense::{DefenderState, GameParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Jsonl,
}

/// Options shared by every command. Each can also come from a flat TOML file
/// given with `--config`; flags win over the file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Flat TOML file with any of the options below (snake_case keys).
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Target radius.
    #[arg(long = "r-t", value_name = "LEN")]
    pub r_t: Option<f64>,
    /// Width of the sensing annulus around the target.
    #[arg(long = "rho-t", value_name = "LEN")]
    pub rho_t: Option<f64>,
    /// Intruder sensing radius.
    #[arg(long = "rho-a", value_name = "LEN")]
    pub rho_a: Option<f64>,
    /// Intruder-to-defender speed ratio, in (0, 1).
    #[arg(long)]
    pub nu: Option<f64>,

    /// Games per session (simulate), largest horizon (analytic) or games to replay (verify).
    #[arg(long)]
    pub n: Option<u64>,
    /// Independent sessions.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Base seed; session k uses seed + k.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Sweep axis `param=lo:hi:steps` with param one of r_t, rho_t, rho_a, nu. Give twice.
    #[arg(long, value_name = "SPEC")]
    pub grid: Option<Vec<String>>,
    /// Comma-separated finite horizons (analytic, sweep).
    #[arg(long, value_delimiter = ',', value_name = "N,...")]
    pub horizons: Option<Vec<u64>>,
    /// Iso-percentage level whose contour slope is fitted (sweep).
    #[arg(long, value_name = "PCT")]
    pub level: Option<f64>,

    /// Integrator step (verify, trace). Default 1e-4 (r_T + rho_T).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Capture distance (verify, trace).
    #[arg(long = "eps-capture")]
    pub eps_capture: Option<f64>,

    /// Defender state for trace: `center`, or a bearing in radians on the capture circle.
    #[arg(long, value_name = "center|ANGLE", allow_hyphen_values = true)]
    pub state: Option<String>,
    /// Intruder arrival bearing for trace, radians.
    #[arg(long = "theta-a", value_name = "ANGLE", allow_hyphen_values = true)]
    pub theta_a: Option<f64>,

    /// Output file; standard output when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident, $($field:ident),*) => {
        $( if $dst.$field.is_none() { $dst.$field = $src.$field; } )*
    };
}

impl Options {
    /// Fills unset fields from the config file, if one was given.
    pub fn resolve(mut self) -> Result<Self, String> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = load_config(&path)?;
        overlay!(
            self,
            file,
            r_t,
            rho_t,
            rho_a,
            nu,
            n,
            trials,
            seed,
            grid,
            horizons,
            level,
            dt,
            eps_capture,
            state,
            theta_a,
            out,
            format
        );
        Ok(self)
    }

    pub fn params(&self) -> Result<GameParams, String> {
        GameParams::new(
            self.r_t.unwrap_or(5.0),
            self.rho_t.unwrap_or(10.0),
            self.rho_a.unwrap_or(1.0),
            self.nu.unwrap_or(0.8),
        )
        .map_err(|e| e.to_string())
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn positive(&self, value: Option<u64>, name: &str, default: u64) -> Result<u64, String> {
        match value.unwrap_or(default) {
            0 => Err(format!("--{name} must be at least 1")),
            v => Ok(v),
        }
    }

    pub fn kinematic(&self, params: &GameParams) -> KinematicConfig {
        let d = KinematicConfig::for_params(params);
        KinematicConfig {
            dt: self.dt.unwrap_or(d.dt),
            eps_capture: self.eps_capture.unwrap_or(d.eps_capture),
        }
    }

    pub fn grid(&self) -> Result<[GridAxis; 2], String> {
        let specs = self.grid.as_deref().unwrap_or_default();
        let [a, b] = specs else {
            return Err(format!(
                "sweep needs exactly two --grid axes, got {}",
                specs.len()
            ));
        };
        let parse = |s: &String| s.parse::<GridAxis>().map_err(|e| e.to_string());
        Ok([parse(a)?, parse(b)?])
    }

    pub fn defender_state(&self) -> Result<DefenderState, String> {
        match self.state.as_deref().map(str::trim) {
            None | Some("center") => Ok(DefenderState::AtCenter),
            Some(s) => s
                .parse::<f64>()
                .ok()
                .filter(|a| a.is_finite())
                .map(|angle| DefenderState::OnCaptureCircle { angle })
                .ok_or_else(|| format!("--state must be `center` or an angle, got `{s}`")),
        }
    }
}

fn load_config(path: &Path) -> Result<Options, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}
