use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankspectra::config::{parse_methods, GapFile, StudyFile};
use rankspectra::io::{atomic_write, read_data, read_eigenvalues, DataFormat};
use rankspectra::manifest::RunManifest;
use rankspectra::output::{
    accuracy_csv, curves_csv, estimate_csv, estimate_json, gap_table_csv, EstimateReport,
    MethodReport,
};
use rankspectra::runner::{build_pool, resolve_threads, run_study_parallel};
use rankspectra::{CliError, CliResult};
use rankspectra_core::alt::{self, BemaConfig, EdConfig};
use rankspectra_core::criteria::{self, EstimatorConfig};
use rankspectra_core::gap::{self, GapSetting};
use rankspectra_core::rmt::{self, MpModel};
use rankspectra_core::simgen::{realized_gap_values, HKind, StudyOptions};
use rankspectra_core::spectra::{
    corr_eigenvalues, cov_diagonal, cov_eigenvalues, CovDivisor, SpectrumSource,
};
use rankspectra_core::{hspec, Method};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "rankspectra",
    version,
    about = "Rank estimation for high-dimensional covariance matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the rank of a data set or eigenvalue list.
    Estimate(EstimateArgs),
    /// Query the generalized Marchenko-Pastur model.
    Mp(MpArgs),
    /// Evaluate gap conditions: tables and figure curves.
    Gap(GapArgs),
    /// Run a replicated simulation study from a config file.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct EstimateArgs {
    /// Input file: CSV or binary data, or an eigenvalue list.
    input: PathBuf,
    /// Comma-separated methods, or "all".
    #[arg(long, default_value = "aic,bic,gic,pc1,pc2,pc3,ic1,ic2,ic3")]
    methods: String,
    /// Search bound; defaults to floor(2 sqrt(min(n, p))).
    #[arg(long)]
    q: Option<usize>,
    /// External noise variance for the PC family.
    #[arg(long)]
    sigma2: Option<f64>,
    /// Covariance divisor: "n-1" or "n".
    #[arg(long, default_value = "n-1")]
    cov_divisor: String,
    /// Skip column centering (pairs with --cov-divisor n).
    #[arg(long)]
    uncentered: bool,
    /// Treat the input as an eigenvalue list with an "n p" header.
    #[arg(long)]
    from_eigenvalues: bool,
    /// Input format for data files.
    #[arg(long, default_value = "auto")]
    format: String,
    /// Emit CSV instead of JSON.
    #[arg(long)]
    csv: bool,
    /// Write to a file (atomically) instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for methods that use randomness (BEMA).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct MpArgs {
    /// Aspect ratio c = p/n.
    #[arg(long)]
    c: f64,
    /// Distribution description, e.g. "beta(3,3)" or "h1".
    #[arg(long = "h")]
    h_spec: String,
    #[command(subcommand)]
    query: MpQuery,
}

#[derive(Subcommand)]
enum MpQuery {
    /// Support edges and the mean of H.
    Edges,
    /// The spike map at a population eigenvalue.
    Psi { lambda: f64 },
    /// The penalty limit at u >= b/mu.
    Kappa { u: f64 },
    /// Bulk density on a grid.
    Density {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
}

#[derive(Args)]
struct GapArgs {
    /// Settings file (JSON). Mutually exclusive with the single-setting flags.
    #[arg(long)]
    settings: Option<PathBuf>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long = "h")]
    h_spec: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Signal eigenvalues, comma separated.
    #[arg(long)]
    lambda: Option<String>,
    /// Comma-separated criterion methods, or "all".
    #[arg(long, default_value = "aic,bic,gic,pc1,pc2,pc3,ic1,ic2,ic3")]
    methods: String,
    /// Write the table CSV here (default: standard output).
    #[arg(long)]
    out_table: Option<PathBuf>,
    /// Also write figure curves (long CSV) here.
    #[arg(long)]
    out_curves: Option<PathBuf>,
    /// Upper end of the curve grid.
    #[arg(long)]
    curve_max: Option<f64>,
    /// Average table values over this many realized finite-p populations
    /// instead of the analytic limit (study shorthands h1-h4 only).
    #[arg(long)]
    finite_sample: Option<usize>,
    /// Seed for the finite-sample mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    /// Study configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the replication count of every setting.
    #[arg(long)]
    t: Option<usize>,
    /// Worker threads (default: RANKSPECTRA_THREADS or all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for accuracy.csv and manifest.json.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Mp(args) => cmd_mp(args),
        Command::Gap(args) => cmd_gap(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn methods_from_flag(flag: &str) -> CliResult<Vec<Method>> {
    let names: Vec<String> = flag.split(',').map(|s| s.trim().to_string()).collect();
    parse_methods(&names)
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => atomic_write(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| CliError::Validation(e.to_string()))
        }
    }
}

fn cmd_estimate(args: EstimateArgs) -> CliResult<()> {
    let methods = methods_from_flag(&args.methods)?;
    let divisor = match args.cov_divisor.as_str() {
        "n-1" => CovDivisor::NMinusOne,
        "n" => CovDivisor::N,
        other => {
            return Err(CliError::validation(format!(
                "--cov-divisor must be \"n-1\" or \"n\", got {other:?}"
            )))
        }
    };
    let format = match args.format.as_str() {
        "auto" => DataFormat::Auto,
        "csv" => DataFormat::Csv,
        "binary" => DataFormat::Binary,
        other => {
            return Err(CliError::validation(format!(
                "--format must be auto, csv or binary, got {other:?}"
            )))
        }
    };

    let (spec, corr, diag) = if args.from_eigenvalues {
        if methods
            .iter()
            .any(|m| matches!(m, Method::Act | Method::Dpa))
        {
            return Err(CliError::validation(
                "act and dpa need raw data, not an eigenvalue list",
            ));
        }
        (read_eigenvalues(&args.input)?, None, None)
    } else {
        let data = read_data(&args.input, format)?;
        let spec = cov_eigenvalues(&data, !args.uncentered, divisor)?;
        let corr = if methods.contains(&Method::Act) {
            Some(corr_eigenvalues(&data)?)
        } else {
            None
        };
        let diag = if methods.contains(&Method::Dpa) {
            Some(cov_diagonal(&data, !args.uncentered, divisor))
        } else {
            None
        };
        (spec, corr, diag)
    };

    let q = args
        .q
        .unwrap_or_else(|| EstimatorConfig::default_q(spec.n(), spec.p()));
    let mut cfg = EstimatorConfig::new(q);
    cfg.noise_variance = args.sigma2;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut reports = Vec::new();
    let mut numeric_failure = false;
    for &m in &methods {
        let result = if m.is_criterion() {
            criteria::estimate(&spec, &cfg, m)
        } else {
            match m {
                Method::Act => alt::act(corr.as_ref().expect("checked above")),
                Method::Dpa => alt::dpa(&spec, diag.as_ref().expect("checked above")),
                Method::Bema => alt::bema(&spec, &BemaConfig::default(), &mut rng),
                Method::Ed => alt::ed(&spec, &EdConfig::new(q)),
                Method::On => alt::on(&spec, q),
                Method::Er => alt::er(&spec, q),
                Method::Gr => alt::gr(&spec, q),
                _ => unreachable!(),
            }
        };
        match result {
            Ok(est) => reports.push(MethodReport::from_estimate(&est)),
            Err(e @ rankspectra_core::Error::Config(_))
            | Err(e @ rankspectra_core::Error::UnsupportedMethod(_)) => {
                return Err(CliError::from(e))
            }
            Err(e) => {
                numeric_failure = true;
                reports.push(MethodReport::from_error(m, &e));
            }
        }
    }

    let report = EstimateReport {
        input: args.input.display().to_string(),
        n: spec.n(),
        p: spec.p(),
        source: match spec.source() {
            SpectrumSource::Covariance => "covariance",
            SpectrumSource::Correlation => "correlation",
            SpectrumSource::External => "external",
        }
        .to_string(),
        methods: reports,
    };
    let bytes = if args.csv {
        estimate_csv(&report)
    } else {
        estimate_json(&report)
    };
    emit(args.out.as_ref(), &bytes)?;
    if numeric_failure {
        return Err(CliError::Numeric(
            "one or more methods failed; see the report".into(),
        ));
    }
    Ok(())
}

fn cmd_mp(args: MpArgs) -> CliResult<()> {
    let h = hspec::parse(&args.h_spec)?;
    let model = MpModel::new(args.c, h)?;
    let value = match args.query {
        MpQuery::Edges => {
            let upper = rmt::upper_edge(&model)?;
            let lower = rmt::lower_edge(&model)?;
            serde_json::json!({
                "c": args.c,
                "h": args.h_spec,
                "mu_h": model.h().mean(),
                "upper": {"lambda_star": upper.lambda_star, "edge": upper.edge},
                "lower": {
                    "lambda_star": lower.lambda_star,
                    "edge": lower.edge,
                    "mass_at_zero": lower.mass_at_zero,
                },
            })
        }
        MpQuery::Psi { lambda } => {
            serde_json::json!({
                "lambda": lambda,
                "psi": rmt::psi(&model, lambda)?,
                "psi_prime": rmt::psi_prime(&model, lambda)?,
            })
        }
        MpQuery::Kappa { u } => {
            serde_json::json!({"u": u, "kappa": rmt::kappa(&model, u)?})
        }
        MpQuery::Density { from, to, points } => {
            if points < 2 || !to.is_finite() || !from.is_finite() || to <= from {
                return Err(CliError::validation(
                    "density grid needs to > from and points >= 2",
                ));
            }
            let mut rows = Vec::with_capacity(points);
            for i in 0..points {
                let x = from + (to - from) * i as f64 / (points - 1) as f64;
                rows.push(serde_json::json!([x, rmt::mp_density(&model, x)?]));
            }
            serde_json::json!({"density": rows})
        }
    };
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
    Ok(())
}

fn cmd_gap(args: GapArgs) -> CliResult<()> {
    let methods = methods_from_flag(&args.methods)?;
    if let Some(m) = methods.iter().find(|m| !m.is_criterion()) {
        return Err(CliError::validation(format!(
            "gap conditions apply to the criterion methods only, got {m}"
        )));
    }

    // (settings, h text per setting) from either a file or the flags
    let (settings, h_texts, r0s, name) = if let Some(path) = &args.settings {
        if args.c.is_some() || args.h_spec.is_some() || args.lambda.is_some() {
            return Err(CliError::validation(
                "--settings excludes the single-setting flags",
            ));
        }
        let file = GapFile::load(path)?;
        let settings = file.gap_settings()?;
        let texts: Vec<String> = file.settings.iter().map(|s| s.h.clone()).collect();
        let r0s: Vec<usize> = file.settings.iter().map(|s| s.r0).collect();
        (settings, texts, r0s, file.name)
    } else {
        let (c, h_text, n, p, lambda) = match (args.c, &args.h_spec, args.n, args.p, &args.lambda) {
            (Some(c), Some(h), Some(n), Some(p), Some(l)) => (c, h.clone(), n, p, l.clone()),
            _ => {
                return Err(CliError::validation(
                    "provide either --settings or all of --c, --h, --n, --p, --lambda",
                ))
            }
        };
        if (p as f64 / n as f64 - c).abs() > 1e-9 {
            return Err(CliError::validation(format!(
                "c = {c} is inconsistent with p/n = {}",
                p as f64 / n as f64
            )));
        }
        let lambdas: Vec<f64> = lambda
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::validation(format!("bad lambda {s:?}: {e}")))
            })
            .collect::<CliResult<_>>()?;
        let h = hspec::parse(&h_text)?;
        let settings = lambdas
            .iter()
            .enumerate()
            .map(|(i, &lam)| {
                Ok(GapSetting {
                    id: i as u32 + 1,
                    n,
                    p,
                    lambda_r0: lam,
                    model: MpModel::new(c, h.clone())?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        let texts = vec![h_text.clone(); settings.len()];
        let r0s = vec![5; settings.len()];
        (settings, texts, r0s, "adhoc".to_string())
    };

    let mut rows = gap::gap_table(&settings, &methods)?;

    if let Some(reps) = args.finite_sample {
        if reps == 0 {
            return Err(CliError::validation("--finite-sample needs at least 1 rep"));
        }
        for ((row, h_text), &r0) in rows.iter_mut().zip(&h_texts).zip(&r0s) {
            let h_kind = HKind::parse(h_text).map_err(|_| {
                CliError::validation(format!(
                    "--finite-sample needs a study shorthand (h1..h4), got {h_text:?}"
                ))
            })?;
            row.values =
                realized_gap_values(row.n, row.p, r0, row.lambda_r0, h_kind, reps, args.seed)?;
        }
    }

    let table = gap_table_csv(&rows, &methods);
    emit(args.out_table.as_ref(), &table)?;

    if let Some(curve_path) = &args.out_curves {
        let mut groups = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (s, h_text) in settings.iter().zip(&h_texts) {
            let key = (s.n, s.p, h_text.clone());
            if !seen.insert(key) {
                continue;
            }
            let max_lambda = args.curve_max.unwrap_or_else(|| {
                settings
                    .iter()
                    .filter(|t| t.n == s.n && t.p == s.p)
                    .map(|t| t.lambda_r0)
                    .fold(0.0f64, f64::max)
                    * 1.3
            });
            let grid = gap::default_grid(&s.model, max_lambda)?;
            let bundle = gap::gap_curves(&s.model, &grid, s.n, s.p, &methods)?;
            groups.push((format!("{name}_n{}_p{}", s.n, s.p), bundle));
        }
        let bytes = curves_csv(&groups);
        atomic_write(curve_path, &bytes)?;
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let started = Instant::now();
    let file = StudyFile::load(&args.config)?;
    let methods = file.methods()?;
    let scenarios = file.scenarios(args.t, args.seed)?;
    let threads = resolve_threads(args.threads);
    let pool = build_pool(threads)?;

    let config_bytes = std::fs::read(&args.config)?;
    let master_seed = args.seed.unwrap_or(file.master_seed);
    let mut manifest = RunManifest::new(&config_bytes, master_seed, threads);

    let opts = StudyOptions::default();
    let mut tables = Vec::with_capacity(scenarios.len());
    for cfg in &scenarios {
        let setting_started = Instant::now();
        let table = run_study_parallel(&pool, cfg, &methods, &opts)
            .map_err(|e| CliError::StudyAborted(format!("setting {}: {e}", cfg.setting_id)))?;
        manifest.record_timing(&format!("setting_{}", cfg.setting_id), setting_started);
        tables.push(table);
    }

    std::fs::create_dir_all(&args.out)?;
    let accuracy_path = args.out.join("accuracy.csv");
    atomic_write(&accuracy_path, &accuracy_csv(&tables))?;
    manifest.outputs.push(accuracy_path);
    manifest.record_timing("total", started);
    manifest.write(&args.out.join("manifest.json"))?;
    Ok(())
}
