//! Command-line front end: config validation, single operating points,
//! figure-reproduction sweeps, and CSV/JSON/SVG persistence.

pub mod figures;
pub mod svg;
pub mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flexrx_core::{electromech, pipeline, Error, SystemConfig};

use sweep::{OutputKind, SweepSpec};

/// Process exit codes promised by the interface contract.
pub mod exit {
    pub const OK: u8 = 0;
    /// Malformed config, invalid sweep spec, or failed validation.
    pub const CONFIG: u8 = 1;
    /// Requested operating point lies beyond pull-in.
    pub const PULL_IN: u8 = 2;
    /// Output directory cannot be created or written.
    pub const OUT_DIR: u8 = 3;
}

#[derive(Debug, Parser)]
#[command(
    name = "flexrx",
    version,
    about = "Nanowire-array FET molecular-communication receiver model"
)]
pub struct Cli {
    /// Flat JSON config file; absent keys take the built-in defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Override one config key, e.g. --set N_m=1e10 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub sets: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check config invariants and the numeric health of the operating point.
    Validate(BiasArgs),
    /// Solve the pre-capture equilibrium and report it with the pull-in point.
    Equilibrium(EquilibriumArgs),
    /// Locate the pull-in voltage and gap.
    Pullin,
    /// Sweep one parameter and write per-output CSV files plus a manifest.
    Sweep(SweepArgs),
    /// Run the canned figure-reproduction sweep suite.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct BiasArgs {
    /// Operating point as a fraction of the pull-in voltage.
    #[arg(long, default_value_t = 0.9)]
    pub bias_fraction: f64,
}

#[derive(Debug, Args)]
pub struct EquilibriumArgs {
    /// Solve at this gate voltage instead of a pull-in fraction.
    #[arg(long, conflicts_with = "bias_fraction")]
    pub vg: Option<f64>,

    /// Operating point as a fraction of the pull-in voltage.
    #[arg(long, default_value_t = 0.9)]
    pub bias_fraction: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Swept config key (or `f` for a frequency sweep of the noise PSD).
    #[arg(long = "var", required_unless_present = "spec")]
    pub variable: Option<String>,

    /// Explicit sweep values, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "log_range")]
    pub values: Option<Vec<f64>>,

    /// Log-spaced sweep as MIN,MAX,COUNT.
    #[arg(long, value_delimiter = ',', value_name = "MIN,MAX,COUNT")]
    pub log_range: Option<Vec<f64>>,

    /// Output kinds: sensitivity, noise_psd, snr, capacity.
    #[arg(long, value_delimiter = ',', required_unless_present = "spec")]
    pub outputs: Option<Vec<OutputKind>>,

    /// Overlay parameter as KEY=v1,v2,... (repeatable; product of overlay
    /// value counts is limited to 4 curves).
    #[arg(long = "overlay", value_name = "KEY=V1,V2")]
    pub overlays: Vec<String>,

    /// File-name stem for the outputs.
    #[arg(long, default_value = "sweep")]
    pub name: String,

    /// Load the whole sweep spec from a JSON file instead of flags.
    #[arg(long)]
    pub spec: Option<PathBuf>,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// Seed recorded in the manifest and used by any stochastic stage.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Also render each CSV as a simple log-axis SVG line plot.
    #[arg(long)]
    pub svg: bool,

    /// Operating point as a fraction of the pull-in voltage.
    #[arg(long, default_value_t = 0.9)]
    pub bias_fraction: f64,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,

    /// Seed recorded in the manifest.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Also render SVG plots.
    #[arg(long)]
    pub svg: bool,

    /// Bias fraction for the whole suite. The canned specs default to 0.75,
    /// where the reported qualitative trends hold at the default parameters.
    #[arg(long)]
    pub bias_fraction: Option<f64>,
}

/// Parse `KEY=VALUE` into a key and a JSON number (integers stay integers
/// so integer-typed fields accept them).
pub fn parse_set(pair: &str) -> Result<(String, serde_json::Value), Error> {
    let (key, value) = pair
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got `{pair}`")))?;
    let value: serde_json::Value = serde_json::from_str(value.trim())
        .map_err(|e| Error::Config(format!("value for `{key}` is not a number: {e}")))?;
    if !value.is_number() {
        return Err(Error::Config(format!(
            "value for `{key}` must be a JSON number, got `{value}`"
        )));
    }
    Ok((key.trim().to_string(), value))
}

/// Assemble the sparse config document from `--config` and `--set`.
/// Kept sparse so derived defaults recompute when swept keys change.
pub fn base_document(cli: &Cli) -> Result<serde_json::Map<String, serde_json::Value>, Error> {
    let mut map = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            match serde_json::from_str::<serde_json::Value>(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            {
                serde_json::Value::Object(map) => map,
                _ => {
                    return Err(Error::Config(format!(
                        "{}: config must be a single JSON object",
                        path.display()
                    )))
                }
            }
        }
        None => serde_json::Map::new(),
    };
    for pair in &cli.sets {
        let (key, value) = parse_set(pair)?;
        map.insert(key, value);
    }
    Ok(map)
}

fn build_config(map: &serde_json::Map<String, serde_json::Value>) -> Result<SystemConfig, Error> {
    SystemConfig::from_json_value(serde_json::Value::Object(map.clone()))
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::PullInExceeded { .. } => exit::PULL_IN,
        Error::Io(_) => exit::OUT_DIR,
        _ => exit::CONFIG,
    }
}

/// Entry point shared by the binary and the tests.
pub fn run(cli: &Cli) -> ExitCode {
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8, Error> {
    let base = base_document(cli)?;
    match &cli.command {
        Command::Validate(args) => {
            let report = run_validation(&base, args.bias_fraction);
            for line in &report.lines {
                println!("{line}");
            }
            Ok(if report.failed == 0 {
                exit::OK
            } else {
                exit::CONFIG
            })
        }
        Command::Equilibrium(args) => {
            let cfg = build_config(&base)?;
            let pullin = electromech::find_pullin(&cfg)?;
            let state = match args.vg {
                Some(vg) => electromech::solve_equilibrium(vg, &cfg)?,
                None => electromech::solve_equilibrium(args.bias_fraction * pullin.v_pi, &cfg)?,
            };
            let doc = serde_json::json!({ "equilibrium": state, "pullin": pullin });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
            Ok(exit::OK)
        }
        Command::Pullin => {
            let cfg = build_config(&base)?;
            let pullin = electromech::find_pullin(&cfg)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&pullin).expect("serializable")
            );
            Ok(exit::OK)
        }
        Command::Sweep(args) => {
            let spec = SweepSpec::from_args(args, &base)?;
            let outcome = sweep::run_sweeps(&base, &[spec], &args.out, args.seed, args.svg)?;
            println!("{outcome}");
            Ok(exit::OK)
        }
        Command::Figures(args) => {
            let specs = figures::all(args.bias_fraction);
            let outcome = sweep::run_sweeps(&base, &specs, &args.out, args.seed, args.svg)?;
            println!("{outcome}");
            Ok(exit::OK)
        }
    }
}

/// Outcome of the `validate` diagnostic suite.
pub struct ValidationReport {
    pub lines: Vec<String>,
    pub failed: usize,
    pub warned: usize,
}

/// Run the cheap invariant suite: config invariants, force/capacitance
/// consistency at the bias point, equilibrium residuals, the capacity
/// asin-domain check, band sanity, and geometry margins. Never panics;
/// failures are enumerated line by line.
pub fn run_validation(
    base: &serde_json::Map<String, serde_json::Value>,
    bias_fraction: f64,
) -> ValidationReport {
    let mut lines = Vec::new();
    let mut failed = 0usize;
    let mut warned = 0usize;
    let fail = |lines: &mut Vec<String>, failed: &mut usize, name: &str, detail: String| {
        lines.push(format!("FAIL {name}: {detail}"));
        *failed += 1;
    };

    let cfg = match build_config(base) {
        Ok(cfg) => {
            lines.push("PASS config invariants".into());
            cfg
        }
        Err(e) => {
            fail(&mut lines, &mut failed, "config invariants", e.to_string());
            return ValidationReport {
                lines,
                failed,
                warned,
            };
        }
    };

    if cfg.device.inter_wire_spacing < 2.5 * cfg.device.nanowire_radius {
        lines.push(format!(
            "WARN geometry margin: inter_wire_spacing = {:.3e} is within 25% of the 2R = {:.3e} \
             overlap bound; capacitance log argument is close to its domain edge",
            cfg.device.inter_wire_spacing,
            2.0 * cfg.device.nanowire_radius
        ));
        warned += 1;
    }

    if cfg.fet.f_min > 0.0 && cfg.fet.f_min < cfg.fet.f_max {
        lines.push("PASS noise band ordering".into());
    } else {
        fail(
            &mut lines,
            &mut failed,
            "noise band ordering",
            format!("band = [{}, {}]", cfg.fet.f_min, cfg.fet.f_max),
        );
    }

    match pipeline::evaluate(&cfg, bias_fraction) {
        Ok(report) => {
            let bias = report.bias;
            // electrostatic force vs capacitance gradient at the bias gap
            let h = 1e-6 * bias.gap;
            let fd = (electromech::capacitance_array(bias.gap + h, &cfg.device).and_then(|up| {
                electromech::capacitance_array(bias.gap - h, &cfg.device)
                    .map(|down| (up - down) / (2.0 * h))
            }))
            .map(|dc| 0.5 * bias.gate_voltage * bias.gate_voltage * dc.abs());
            match (
                fd,
                electromech::force_electrostatic(bias.gap, bias.gate_voltage, &cfg.device),
            ) {
                (Ok(oracle), Ok(force)) => {
                    let rel = (force - oracle).abs() / oracle;
                    if rel < 1e-6 {
                        lines.push(format!(
                            "PASS force/capacitance consistency (rel err {rel:.2e})"
                        ));
                    } else {
                        fail(
                            &mut lines,
                            &mut failed,
                            "force/capacitance consistency",
                            format!("rel err {rel:.2e} >= 1e-6"),
                        );
                    }
                }
                (Err(e), _) | (_, Err(e)) => fail(
                    &mut lines,
                    &mut failed,
                    "force/capacitance consistency",
                    e.to_string(),
                ),
            }

            let spring = bias.stiffness * (cfg.device.initial_gap - bias.gap);
            match electromech::force_electrostatic(bias.gap, bias.gate_voltage, &cfg.device) {
                Ok(f_elec) => {
                    let rel = (spring - f_elec).abs() / spring.max(f_elec);
                    if rel < 1e-10 {
                        lines.push(format!("PASS equilibrium residual (rel {rel:.2e})"));
                    } else {
                        fail(
                            &mut lines,
                            &mut failed,
                            "equilibrium residual",
                            format!("rel {rel:.2e} >= 1e-10"),
                        );
                    }
                }
                Err(e) => fail(
                    &mut lines,
                    &mut failed,
                    "equilibrium residual",
                    e.to_string(),
                ),
            }

            if bias.stable {
                lines.push("PASS bias point stability".into());
            } else {
                fail(
                    &mut lines,
                    &mut failed,
                    "bias point stability",
                    "returned state is not on the stable branch".into(),
                );
            }

            let k_over_beta = cfg.k_d() / report.channel.beta_ch;
            let l = report.metrics.l_factor;
            let args_ok = [cfg.n_tx_min, cfg.n_tx_max]
                .iter()
                .all(|&n| (l * (n - k_over_beta) / (n + k_over_beta)).abs() <= 1.0 + 1e-12);
            if args_ok {
                lines.push("PASS capacity asin domain".into());
            } else {
                fail(
                    &mut lines,
                    &mut failed,
                    "capacity asin domain",
                    "asin argument escapes [-1, 1]".into(),
                );
            }
        }
        Err(e) => fail(&mut lines, &mut failed, "operating point", e.to_string()),
    }

    ValidationReport {
        lines,
        failed,
        warned,
    }
}
