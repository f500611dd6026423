use seqdefense::analytics::{
    aggregate_sessions, asymptotic_percentage, expected_percentage, expected_percentage_curve,
    expected_resets, level_set_slope, p_star_from_theta, sweep, ParamValues, SweepParam, SweepSpec,
};
use seqdefense::engine::{simulate_kinematic, verify_outcome_agreement, Engine, Phase, Terminal};
use seqdefense::strategy::{capture_circle_radius, engagement_domain, EngagementCandidate};
use seqdefense::DefenderState;

use crate::options::Options;
use crate::output::{sibling, Cell, Table};
use crate::CliError;

/// Capture-circle tolerance for the verify report.
const CAPTURE_BOUND: f64 = 5e-3;
/// How far from the center the defender may be when a breach happens.
const CENTER_BOUND: f64 = 1e-3;
/// Points in the engagement polyline written by `trace`.
const POLYLINE_POINTS: usize = 64;

fn engine(opts: &Options) -> Result<Engine, CliError> {
    let params = opts.params().map_err(CliError::Invalid)?;
    Engine::new(params).map_err(|e| CliError::Invalid(e.to_string()))
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn simulate(opts: &Options) -> Result<(), CliError> {
    let engine = engine(opts)?;
    let n = opts.positive(opts.n, "n", 200).map_err(CliError::Invalid)?;
    let trials = opts
        .positive(opts.trials, "trials", 100)
        .map_err(CliError::Invalid)?;
    let seed = opts.seed();
    let records = engine.run_sessions(n as usize, trials as usize, seed);
    let stats = aggregate_sessions(&records).map_err(|e| CliError::Invalid(e.to_string()))?;
    let p = p_star_from_theta(engine.theta_max());
    let analytic = expected_percentage_curve(n, p);
    let asymptotic = asymptotic_percentage(p);

    let mut summary = Table::new([
        "N",
        "mean_pct",
        "ci_lo",
        "ci_hi",
        "analytic_pct",
        "asymptotic_pct",
    ]);
    for (s, a) in stats.iter().zip(&analytic) {
        summary.push(vec![
            s.n.into(),
            s.mean.into(),
            s.ci_lo.into(),
            s.ci_hi.into(),
            (*a).into(),
            asymptotic.into(),
        ]);
    }
    summary
        .emit(opts.out.as_deref(), opts.format())
        .map_err(io)?;

    if let Some(out) = &opts.out {
        let mut per_trial = Table::new(["trial", "seed", "N", "pct"]);
        for (k, r) in records.iter().enumerate() {
            for (i, pct) in r.prefix_percentages().into_iter().enumerate() {
                per_trial.push(vec![k.into(), r.seed.into(), (i + 1).into(), pct.into()]);
            }
        }
        per_trial
            .emit(Some(&sibling(out, "trials", opts.format())), opts.format())
            .map_err(io)?;
    }
    Ok(())
}

pub fn analytic(opts: &Options) -> Result<(), CliError> {
    let engine = engine(opts)?;
    let p = p_star_from_theta(engine.theta_max());
    let horizons = match &opts.horizons {
        Some(h) => h.clone(),
        None => (1..=opts.positive(opts.n, "n", 200).map_err(CliError::Invalid)?).collect(),
    };
    if horizons.contains(&0) {
        return Err(CliError::Invalid("horizons must be at least 1".into()));
    }
    let mut table = Table::new(["N", "expected_resets", "percentage"]);
    table
        .meta
        .push(("theta_max".into(), engine.theta_max().into()));
    table.meta.push(("p_star".into(), p.into()));
    for n in horizons {
        table.push(vec![
            n.into(),
            expected_resets(n, p).into(),
            expected_percentage(n, p).into(),
        ]);
    }
    table.push(vec![
        "inf".into(),
        Cell::Empty,
        asymptotic_percentage(p).into(),
    ]);
    table.emit(opts.out.as_deref(), opts.format()).map_err(io)
}

pub fn sweep_cmd(opts: &Options) -> Result<(), CliError> {
    let axes = opts.grid().map_err(CliError::Invalid)?;
    let horizons = opts.horizons.clone().unwrap_or_else(|| vec![20]);
    let base = ParamValues {
        r_t: opts.r_t.unwrap_or(5.0),
        rho_t: opts.rho_t.unwrap_or(10.0),
        rho_a: opts.rho_a.unwrap_or(1.0),
        nu: opts.nu.unwrap_or(0.8),
    };
    let spec = SweepSpec::new(base, axes, horizons.clone())
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let rows = sweep(&spec);

    let mut header: Vec<String> = vec![axes[0].param.to_string(), axes[1].param.to_string()];
    header.extend(["feasible", "theta_max", "p_star"].map(String::from));
    header.extend(horizons.iter().map(|n| format!("pct_{n}")));
    header.push("pct_inf".into());
    let mut table = Table::new(header);
    for r in &rows {
        let mut row = vec![
            r.params.get(axes[0].param).into(),
            r.params.get(axes[1].param).into(),
            r.feasible.into(),
            r.theta_max.into(),
            r.p_star.into(),
        ];
        row.extend(r.percentages.iter().map(|&v| Cell::from(v)));
        row.push(r.asymptotic.into());
        table.push(row);
    }
    table.emit(opts.out.as_deref(), opts.format()).map_err(io)?;

    if let Some(level) = opts.level {
        let is_fig = axes.iter().any(|a| a.param == SweepParam::RhoA)
            && axes.iter().any(|a| a.param == SweepParam::RhoT);
        if !is_fig {
            return Err(CliError::Invalid(
                "--level needs a rho_a by rho_t grid".into(),
            ));
        }
        match level_set_slope(&rows, level, None) {
            Ok(f) => eprintln!(
                "contour {level}%: rho_T = {} rho_A + {} over {} columns, max residual {}, relative {}",
                crate::output::sig(f.slope),
                crate::output::sig(f.intercept),
                f.points.len(),
                crate::output::sig(f.max_residual),
                crate::output::sig(f.relative_residual)
            ),
            Err(e) => eprintln!("contour {level}%: {e}"),
        }
    }
    Ok(())
}

pub fn verify(opts: &Options) -> Result<(), CliError> {
    let engine = engine(opts)?;
    let n = opts.positive(opts.n, "n", 500).map_err(CliError::Invalid)?;
    let cfg = opts.kinematic(engine.params());
    let report = verify_outcome_agreement(&engine, n as usize, opts.seed(), cfg)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let passed = report.passes(CAPTURE_BOUND, CENTER_BOUND);
    let mut table = Table::new([
        "n_games",
        "n_compared",
        "n_agree",
        "agreement",
        "max_capture_discrepancy",
        "max_breach_defender_residual",
        "dt",
        "eps_capture",
        "passed",
    ]);
    table.push(vec![
        report.n_games.into(),
        report.n_compared.into(),
        report.n_agree.into(),
        report.agreement_fraction().into(),
        report.max_capture_discrepancy.into(),
        report.max_breach_defender_residual.into(),
        cfg.dt.into(),
        cfg.eps_capture.into(),
        passed.into(),
    ]);
    table.emit(opts.out.as_deref(), opts.format()).map_err(io)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} of {} compared games disagree (indices {:?}), max capture discrepancy {}",
            report.disagreements.len(),
            report.n_compared,
            report.disagreements,
            report.max_capture_discrepancy
        )))
    }
}

/// Defender engagement positions along the surface, in the world frame,
/// on the side the defender would use.
fn engagement_polyline(engine: &Engine, state: DefenderState, theta_a: f64) -> String {
    let p = engine.params();
    let Ok((lo, hi)) = engagement_domain(p) else {
        return String::new();
    };
    let below = matches!(state, DefenderState::OnCaptureCircle { angle }
        if seqdefense::geometry::wrap_angle(angle - theta_a) < 0.0);
    (0..POLYLINE_POINTS)
        .filter_map(|k| {
            let tau = lo + (hi - lo) * k as f64 / (POLYLINE_POINTS - 1) as f64;
            let c = EngagementCandidate::at(tau, p).ok()?;
            let c = if below { c.mirrored() } else { c };
            let x = c.x_d_eng.rotate(theta_a);
            Some(format!(
                "{}:{}",
                crate::output::sig(x.x),
                crate::output::sig(x.y)
            ))
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn trace(opts: &Options) -> Result<(), CliError> {
    let engine = engine(opts)?;
    let state = opts.defender_state().map_err(CliError::Invalid)?;
    let theta_a = opts.theta_a.unwrap_or(0.0);
    if !theta_a.is_finite() {
        return Err(CliError::Invalid("--theta-a must be finite".into()));
    }
    let cfg = opts.kinematic(engine.params());
    let tr = simulate_kinematic(&engine, state, theta_a, cfg)
        .map_err(|e| CliError::Invalid(e.to_string()))?;

    let mut table = Table::new(["t", "x_a", "y_a", "x_d", "y_d", "phase"]);
    let (kind, point) = match tr.terminal {
        Terminal::CaptureAt(x) => ("capture", x),
        Terminal::BreachAt(x) => ("breach", x),
    };
    let state_text = match state {
        DefenderState::AtCenter => "center".to_string(),
        DefenderState::OnCaptureCircle { angle } => crate::output::sig(angle),
    };
    table.meta = vec![
        (
            "capture_radius".into(),
            capture_circle_radius(engine.params()).into(),
        ),
        ("theta_max".into(), engine.theta_max().into()),
        ("state".into(), Cell::Text(state_text)),
        ("theta_a".into(), theta_a.into()),
        ("dt".into(), tr.dt.into()),
        ("terminal".into(), kind.into()),
        ("terminal_x".into(), point.x.into()),
        ("terminal_y".into(), point.y.into()),
        ("detection_time".into(), tr.detection_time.into()),
        (
            "engagement_polyline".into(),
            Cell::Text(engagement_polyline(&engine, state, theta_a)),
        ),
    ];
    for s in &tr.samples {
        table.push(vec![
            s.t.into(),
            s.x_a.x.into(),
            s.x_a.y.into(),
            s.x_d.x.into(),
            s.x_d.y.into(),
            match s.phase {
                Phase::Partial => "partial",
                Phase::Full => "full",
            }
            .into(),
        ]);
    }
    table.emit(opts.out.as_deref(), opts.format()).map_err(io)
}
