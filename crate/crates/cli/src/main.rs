//! `mirrorspec` — emission totals, particle spectra, phase-space data and
//! cross-checks for round-trip mirror worldlines.
//!
//! Exit codes: 0 success, 1 numerical-check failure, 2 usage/IO error.
//! The env var `MIRRORSPEC_TOL` overrides the default quadrature relative
//! tolerance. Every command accepts `--record DIR` to persist a JSON run
//! record that `mirrorspec rerun` can replay and verify bit-exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use mirrorspec::bogolubov::{emission_totals, particle_spectrum, EmissionTotals, Route};
use mirrorspec::quad::{QuadratureConfig, TailPolicy};
use mirrorspec::timedomain::{
    energy_time, larmor_energy_total, larmor_particle_total, EnergyMethod,
};
use mirrorspec::trajectory::{AmplitudeMode, Trajectory, TrajectoryKind};

#[derive(Parser)]
#[command(
    name = "mirrorspec",
    version,
    about = "Quantum particle and energy emission from round-trip mirror worldlines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emission totals N/v^2 and E/(hbar kappa v^2) per worldline
    Totals(TotalsArgs),
    /// Particle spectrum N(p) over a frequency grid, to CSV or JSON
    Spectrum(SpectrumArgs),
    /// Cross-validate energy and particle totals across independent routes
    Crosscheck(CrosscheckArgs),
    /// Phase-space (z, zdot) worldline data
    Phase(PhaseArgs),
    /// Re-execute a recorded run and verify the outputs reproduce exactly
    Rerun(RerunArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ModeArg {
    /// amplitude from the reference emission table
    Table,
    /// amplitude from max-speed calibration
    MaxSpeed,
}

impl From<ModeArg> for AmplitudeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Table => AmplitudeMode::PaperTableImplied,
            ModeArg::MaxSpeed => AmplitudeMode::MaxSpeedCalibrated,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RouteArg {
    Closed,
    Quadrature,
    Larmor,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Closed => Route::ClosedForm,
            RouteArg::Quadrature => Route::Quadrature,
            RouteArg::Larmor => Route::Larmor,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Serialize, Deserialize)]
struct TotalsArgs {
    /// comma-separated kinds, or "all"
    #[arg(long, default_value = "all")]
    kinds: String,
    /// maximum speed (fraction of c)
    #[arg(long, default_value_t = 0.2)]
    v: f64,
    /// acceleration scale
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Table)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = RouteArg::Closed)]
    route: RouteArg,
    /// machine-readable output
    #[arg(long, default_value_t = false)]
    #[serde(skip)]
    json: bool,
    /// directory to write the run record into
    #[arg(long)]
    #[serde(skip)]
    record: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct SpectrumArgs {
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 0.2)]
    v: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// upper edge of the p grid, in units of kappa
    #[arg(long, default_value_t = 3.0)]
    pmax: f64,
    #[arg(long, default_value_t = 121)]
    points: usize,
    #[arg(long, value_enum, default_value_t = RouteArg::Closed)]
    route: RouteArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// output file (stdout when omitted)
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    record: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct CrosscheckArgs {
    #[arg(long)]
    kind: String,
    #[arg(long, default_value_t = 0.1)]
    v: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, default_value_t = false)]
    #[serde(skip)]
    json: bool,
    #[arg(long)]
    #[serde(skip)]
    record: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize)]
struct PhaseArgs {
    /// comma-separated kinds
    #[arg(long, default_value = "gauss,lorentz,sech")]
    kinds: String,
    /// comma-separated speeds, one per kind
    #[arg(long, default_value = "0.5,0.4,0.3")]
    v: String,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// half-width of the kappa*t window
    #[arg(long, default_value_t = 8.0)]
    tmax: f64,
    #[arg(long, default_value_t = 481)]
    points: usize,
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    record: Option<PathBuf>,
}

#[derive(Args)]
struct RerunArgs {
    /// path to a RunRecord JSON written via --record
    record: PathBuf,
    /// write the reproduced primary output here (stdout otherwise)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct RunRecord {
    command: String,
    params: Value,
    outputs: Value,
    quadrature: QuadEcho,
    tool_version: String,
    timestamp: String,
}

#[derive(Serialize, Deserialize)]
struct QuadEcho {
    rel_tol: f64,
    abs_tol: f64,
    max_segments: usize,
    tail_policy: String,
}

fn quad_config() -> Result<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Ok(s) = std::env::var("MIRRORSPEC_TOL") {
        let tol: f64 = s
            .parse()
            .map_err(|_| anyhow!("MIRRORSPEC_TOL must be a float, got {s:?}"))?;
        if !(tol > 0.0) {
            bail!("MIRRORSPEC_TOL must be positive");
        }
        cfg.rel_tol = tol;
    }
    Ok(cfg)
}

fn quad_echo(cfg: &QuadratureConfig) -> QuadEcho {
    QuadEcho {
        rel_tol: cfg.rel_tol,
        abs_tol: cfg.abs_tol,
        max_segments: cfg.max_segments,
        tail_policy: match cfg.tail_policy {
            TailPolicy::ExponentialTruncate => "exponential-truncate".into(),
            TailPolicy::AlgebraicTailAnalytic => "algebraic-tail-analytic".into(),
        },
    }
}

fn parse_kind(s: &str) -> Result<TrajectoryKind> {
    TrajectoryKind::from_label(s).ok_or_else(|| {
        anyhow!(
            "unknown kind {s:?}; expected one of {}",
            TrajectoryKind::ALL
                .iter()
                .map(|k| k.label())
                .collect::<Vec<_>>()
                .join(", ")
        )
    })
}

fn parse_kind_list(s: &str) -> Result<Vec<TrajectoryKind>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(TrajectoryKind::ALL.to_vec());
    }
    s.split(',').map(|k| parse_kind(k.trim())).collect()
}

/// 9 significant digits, deterministic across runs.
fn fmt9(x: f64) -> String {
    format!("{x:.8e}")
}

fn write_output(path: Option<&Path>, data: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, data)
            .with_context(|| format!("cannot write output file {}", p.display())),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn write_record(
    dir: &Path,
    command: &str,
    params: Value,
    outputs: Value,
    cfg: &QuadratureConfig,
) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create record directory {}", dir.display()))?;
    let record = RunRecord {
        command: command.to_string(),
        params,
        outputs,
        quadrature: quad_echo(cfg),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    let path = dir.join(format!("{command}.json"));
    let text = serde_json::to_string_pretty(&record)?;
    std::fs::write(&path, text)
        .with_context(|| format!("cannot write run record {}", path.display()))?;
    Ok(path)
}

// ---------------------------------------------------------------------------
// totals
// ---------------------------------------------------------------------------

fn totals_rows(args: &TotalsArgs, cfg: &QuadratureConfig) -> Result<Vec<(String, EmissionTotals)>> {
    let kinds = parse_kind_list(&args.kinds)?;
    let mut rows = Vec::new();
    for kind in kinds {
        let traj = Trajectory::new(kind, args.kappa, args.v, args.mode.into())?;
        let totals = emission_totals(&traj, args.route.into(), cfg)?;
        rows.push((kind.label().to_string(), totals));
    }
    Ok(rows)
}

fn run_totals(args: TotalsArgs) -> Result<()> {
    let cfg = quad_config()?;
    let rows = totals_rows(&args, &cfg)?;
    let jinc_warn = args.mode == ModeArg::MaxSpeed
        && rows.iter().any(|(k, _)| k == "jinc");

    let mut human = String::new();
    let _ = writeln!(
        human,
        "{:<14} {:>16} {:>16}{}",
        "kind",
        "N/v^2",
        "E/(hk v^2)",
        if args.route == RouteArg::Quadrature {
            "          (err est)"
        } else {
            ""
        }
    );
    let mut out_rows = Vec::new();
    for (label, t) in &rows {
        let mut line = format!(
            "{:<14} {:>16} {:>16}",
            label,
            fmt9(t.n_over_v2),
            fmt9(t.e_over_hkv2)
        );
        if let (Some(ne), Some(ee)) = (t.n_err, t.e_err) {
            let _ = write!(line, "   \u{b1}{:.1e}/\u{b1}{:.1e}", ne, ee);
        }
        let _ = writeln!(human, "{line}");
        out_rows.push(json!({
            "kind": label,
            "n_over_v2": t.n_over_v2,
            "e_over_hkv2": t.e_over_hkv2,
            "n_err": t.n_err,
            "e_err": t.e_err,
        }));
    }
    if jinc_warn {
        let _ = writeln!(
            human,
            "warning: jinc in max-speed mode differs from the reference table \
             (its tabulated amplitude is not the max-speed one); use --mode table \
             to reproduce the published totals"
        );
    }
    let outputs = json!({ "rows": out_rows, "table": human });
    if args.json {
        println!("{}", serde_json::to_string_pretty(&outputs)?);
    } else {
        print!("{human}");
    }
    if let Some(dir) = &args.record {
        let params = serde_json::to_value(&args)?;
        write_record(dir, "totals", params, outputs, &cfg)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn spectrum_data(args: &SpectrumArgs, cfg: &QuadratureConfig) -> Result<String> {
    let kind = parse_kind(&args.kind)?;
    if args.points < 2 {
        bail!("--points must be at least 2");
    }
    if !(args.pmax > 0.0) {
        bail!("--pmax must be positive");
    }
    let traj = Trajectory::new(kind, args.kappa, args.v, AmplitudeMode::PaperTableImplied)?;
    let route: Route = args.route.into();
    let v2 = args.v * args.v;
    let mut grid = Vec::with_capacity(args.points);
    for i in 0..args.points {
        grid.push(args.pmax * i as f64 / (args.points - 1) as f64);
    }
    match args.format {
        FormatArg::Csv => {
            let mut out = String::from("p_over_kappa,N_p,N_p_times_v_minus2\n");
            for &x in &grid {
                let n = particle_spectrum(&traj, x * args.kappa, route, cfg)?;
                let _ = writeln!(out, "{},{},{}", fmt9(x), fmt9(n), fmt9(n / v2));
            }
            Ok(out)
        }
        FormatArg::Json => {
            let mut points = Vec::new();
            for &x in &grid {
                let n = particle_spectrum(&traj, x * args.kappa, route, cfg)?;
                points.push(json!({
                    "p_over_kappa": x,
                    "n_p": n,
                    "n_p_times_v_minus2": n / v2,
                }));
            }
            let doc = json!({
                "kind": kind.label(),
                "v": args.v,
                "kappa": args.kappa,
                "route": match route {
                    Route::ClosedForm => "closed",
                    Route::Quadrature => "quadrature",
                    Route::Larmor => "larmor",
                },
                "points": points,
            });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
    }
}

fn run_spectrum(args: SpectrumArgs) -> Result<()> {
    let cfg = quad_config()?;
    let data = spectrum_data(&args, &cfg)?;
    write_output(args.out.as_deref(), &data)?;
    if let Some(dir) = &args.record {
        let params = serde_json::to_value(&args)?;
        write_record(dir, "spectrum", params, json!({ "data": data }), &cfg)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// crosscheck
// ---------------------------------------------------------------------------

struct CrossReport {
    e_beta: f64,
    e_time_power: f64,
    e_time_fv: f64,
    e_larmor: f64,
    n_beta: f64,
    n_larmor: f64,
    max_dev: f64,
    worst_pair: String,
    threshold: f64,
    ok: bool,
}

fn crosscheck_report(args: &CrosscheckArgs, cfg: &QuadratureConfig) -> Result<CrossReport> {
    let kind = parse_kind(&args.kind)?;
    let traj = Trajectory::new(kind, args.kappa, args.v, AmplitudeMode::PaperTableImplied)?;
    let v2 = args.v * args.v;
    let k = args.kappa;
    let beta = emission_totals(&traj, Route::ClosedForm, cfg)?;
    let e_time_power = energy_time(&traj, EnergyMethod::PowerIntegral, cfg)?;
    let e_time_fv = energy_time(&traj, EnergyMethod::ForceVelocityIntegral, cfg)?;
    let e_larmor = larmor_energy_total(&traj, cfg)? / (k * v2);
    let n_larmor = larmor_particle_total(&traj, cfg)? / v2;

    let labeled = [
        ("E beta", beta.e_over_hkv2),
        ("E time-power", e_time_power),
        ("E force-velocity", e_time_fv),
        ("E larmor", e_larmor),
    ];
    let mut max_dev: f64 = 0.0;
    let mut worst_pair = String::new();
    for i in 0..labeled.len() {
        for j in i + 1..labeled.len() {
            let dev = ((labeled[i].1 - labeled[j].1) / labeled[j].1).abs();
            if dev > max_dev {
                max_dev = dev;
                worst_pair = format!("{} vs {}", labeled[i].0, labeled[j].0);
            }
        }
    }
    let n_dev = ((n_larmor - beta.n_over_v2) / beta.n_over_v2).abs();
    if n_dev > max_dev {
        max_dev = n_dev;
        worst_pair = "N beta vs N larmor".into();
    }
    let threshold = match kind {
        TrajectoryKind::BoseEinstein | TrajectoryKind::FermiDirac => 1e-4,
        _ => 1e-5,
    };
    Ok(CrossReport {
        e_beta: beta.e_over_hkv2,
        e_time_power,
        e_time_fv,
        e_larmor,
        n_beta: beta.n_over_v2,
        n_larmor,
        max_dev,
        worst_pair,
        threshold,
        ok: max_dev < threshold,
    })
}

fn run_crosscheck(args: CrosscheckArgs) -> Result<bool> {
    let cfg = quad_config()?;
    let r = crosscheck_report(&args, &cfg)?;
    let outputs = json!({
        "e_over_hkv2": {
            "beta": r.e_beta,
            "time_power": r.e_time_power,
            "force_velocity": r.e_time_fv,
            "larmor": r.e_larmor,
        },
        "n_over_v2": { "beta": r.n_beta, "larmor": r.n_larmor },
        "max_rel_deviation": r.max_dev,
        "worst_pair": r.worst_pair,
        "threshold": r.threshold,
        "ok": r.ok,
    });
    if args.json {
        println!("{}", serde_json::to_string_pretty(&outputs)?);
    } else {
        println!("E/(hk v^2):  beta           {}", fmt9(r.e_beta));
        println!("             time-power     {}", fmt9(r.e_time_power));
        println!("             force-velocity {}", fmt9(r.e_time_fv));
        println!("             larmor         {}", fmt9(r.e_larmor));
        println!("N/v^2:       beta           {}", fmt9(r.n_beta));
        println!("             larmor         {}", fmt9(r.n_larmor));
        println!(
            "max pairwise relative deviation {:.3e} ({}) vs threshold {:.0e}: {}",
            r.max_dev,
            r.worst_pair,
            r.threshold,
            if r.ok { "OK" } else { "FAIL" }
        );
    }
    if let Some(dir) = &args.record {
        let params = serde_json::to_value(&args)?;
        write_record(dir, "crosscheck", params, outputs, &cfg)?;
    }
    Ok(r.ok)
}

// ---------------------------------------------------------------------------
// phase
// ---------------------------------------------------------------------------

fn phase_data(args: &PhaseArgs) -> Result<String> {
    let kinds = parse_kind_list(&args.kinds)?;
    let speeds: Vec<f64> = args
        .v
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| anyhow!("bad speed {s:?}"))
        })
        .collect::<Result<_>>()?;
    if speeds.len() != kinds.len() {
        bail!(
            "{} kinds but {} speeds; provide one speed per kind",
            kinds.len(),
            speeds.len()
        );
    }
    if args.points < 2 {
        bail!("--points must be at least 2");
    }
    let mut out = String::from("kind,kappa_t,z,zdot\n");
    for (kind, &v) in kinds.iter().zip(&speeds) {
        let traj = Trajectory::new(*kind, args.kappa, v, AmplitudeMode::PaperTableImplied)?;
        for i in 0..args.points {
            let x = -args.tmax + 2.0 * args.tmax * i as f64 / (args.points - 1) as f64;
            let kin = traj.kinematics(x / args.kappa);
            let _ = writeln!(
                out,
                "{},{},{},{}",
                kind.label(),
                fmt9(x),
                fmt9(kin.z),
                fmt9(kin.zdot)
            );
        }
    }
    Ok(out)
}

fn run_phase(args: PhaseArgs) -> Result<()> {
    let cfg = quad_config()?;
    let data = phase_data(&args)?;
    write_output(args.out.as_deref(), &data)?;
    if let Some(dir) = &args.record {
        let params = serde_json::to_value(&args)?;
        write_record(dir, "phase", params, json!({ "data": data }), &cfg)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// rerun
// ---------------------------------------------------------------------------

fn run_rerun(args: RerunArgs) -> Result<bool> {
    let text = std::fs::read_to_string(&args.record)
        .with_context(|| format!("cannot read run record {}", args.record.display()))?;
    let record: RunRecord = serde_json::from_str(&text)
        .with_context(|| format!("malformed run record {}", args.record.display()))?;
    let cfg = quad_config()?;
    let (reproduced, original): (Value, Value) = match record.command.as_str() {
        "totals" => {
            let p: TotalsArgs = serde_json::from_value(record.params.clone())?;
            let rows = totals_rows(&p, &cfg)?;
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|(label, t)| {
                    json!({
                        "kind": label,
                        "n_over_v2": t.n_over_v2,
                        "e_over_hkv2": t.e_over_hkv2,
                        "n_err": t.n_err,
                        "e_err": t.e_err,
                    })
                })
                .collect();
            (
                Value::Array(rows_json),
                record.outputs.get("rows").cloned().unwrap_or(Value::Null),
            )
        }
        "spectrum" => {
            let p: SpectrumArgs = serde_json::from_value(record.params.clone())?;
            let data = spectrum_data(&p, &cfg)?;
            write_output(args.out.as_deref(), &data)?;
            (
                Value::String(data),
                record.outputs.get("data").cloned().unwrap_or(Value::Null),
            )
        }
        "phase" => {
            let p: PhaseArgs = serde_json::from_value(record.params.clone())?;
            let data = phase_data(&p)?;
            write_output(args.out.as_deref(), &data)?;
            (
                Value::String(data),
                record.outputs.get("data").cloned().unwrap_or(Value::Null),
            )
        }
        "crosscheck" => {
            let p: CrosscheckArgs = serde_json::from_value(record.params.clone())?;
            let r = crosscheck_report(&p, &cfg)?;
            (
                json!({ "max_rel_deviation": r.max_dev, "ok": r.ok }),
                json!({
                    "max_rel_deviation": record.outputs["max_rel_deviation"],
                    "ok": record.outputs["ok"],
                }),
            )
        }
        other => bail!("run record has unknown command {other:?}"),
    };
    let same = reproduced == original;
    eprintln!(
        "rerun of `{}` from {}: {}",
        record.command,
        args.record.display(),
        if same {
            "outputs reproduced exactly"
        } else {
            "OUTPUTS DIFFER"
        }
    );
    if !same {
        eprintln!("  recorded:   {original}");
        eprintln!("  reproduced: {reproduced}");
    }
    Ok(same)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Totals(a) => run_totals(a).map(|_| true),
        Command::Spectrum(a) => run_spectrum(a).map(|_| true),
        Command::Crosscheck(a) => run_crosscheck(a),
        Command::Phase(a) => run_phase(a).map(|_| true),
        Command::Rerun(a) => run_rerun(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            // usage and IO problems -> 2; numerical failures -> 1
            let is_numeric = e.is::<mirrorspec::quad::QuadError>();
            eprintln!("error: {e:#}");
            ExitCode::from(if is_numeric { 1 } else { 2 })
        }
    }
}
