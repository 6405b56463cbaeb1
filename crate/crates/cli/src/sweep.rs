//! Parameter sweeps: spec validation, parallel evaluation, deterministic
//! CSV output, and the run manifest.
//!
//! Numeric cells are printed with 17 significant digits and LF line
//! endings, so identical config + spec + seed reproduce byte-identical
//! files. Sweep points are evaluated in parallel but always assembled in
//! spec order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use flexrx_core::{
    binding::binding_stats,
    channel::channel_state,
    electromech::select_bias,
    noise::{binding_psd, flicker_prefactor},
    pipeline::evaluate,
    transducer::transduce,
    Error, SystemConfig,
};

use crate::svg;
use crate::SweepArgs;

/// Kinds of sweep output files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Sensitivity,
    #[value(name = "noise_psd", alias = "noise-psd")]
    NoisePsd,
    Snr,
    Capacity,
}

impl OutputKind {
    pub fn slug(self) -> &'static str {
        match self {
            OutputKind::Sensitivity => "sensitivity",
            OutputKind::NoisePsd => "noise_psd",
            OutputKind::Snr => "snr",
            OutputKind::Capacity => "capacity",
        }
    }

    /// Column names this kind contributes per curve.
    fn fields(self) -> &'static [&'static str] {
        match self {
            OutputKind::Sensitivity => &["sensitivity"],
            OutputKind::NoisePsd => &["s_ib", "s_if", "s_total"],
            OutputKind::Snr => &["snr", "snr_db"],
            OutputKind::Capacity => &["capacity_bits", "l_factor", "raw_capacity_bits"],
        }
    }

    /// Field used when plotting.
    fn plot_field(self) -> &'static str {
        match self {
            OutputKind::Sensitivity => "sensitivity",
            OutputKind::NoisePsd => "s_total",
            OutputKind::Snr => "snr_db",
            OutputKind::Capacity => "capacity_bits",
        }
    }
}

/// Secondary parameter overlaid as extra curves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Overlay {
    pub key: String,
    pub values: Vec<serde_json::Value>,
}

/// One sweep: a variable, its values, the requested outputs, and up to
/// four overlay curves (the product of overlay value counts).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    /// File-name stem for this sweep's outputs.
    #[serde(default = "default_name")]
    pub name: String,
    /// Config key to sweep, or `f` for a frequency sweep (noise_psd only).
    pub variable: String,
    pub values: Vec<f64>,
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub overlays: Vec<Overlay>,
    #[serde(default = "default_bias_fraction")]
    pub bias_fraction: f64,
}

fn default_name() -> String {
    "sweep".into()
}

fn default_bias_fraction() -> f64 {
    0.9
}

/// Log-spaced inclusive grid.
pub fn log_space(min: f64, max: f64, count: usize) -> Vec<f64> {
    let span = (max / min).log10();
    (0..count)
        .map(|i| min * 10f64.powf(span * i as f64 / (count - 1) as f64))
        .collect()
}

/// Linear inclusive grid.
pub fn lin_space(min: f64, max: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| min + (max - min) * i as f64 / (count - 1) as f64)
        .collect()
}

impl SweepSpec {
    /// Build a spec from command-line flags or a spec file.
    pub fn from_args(
        args: &SweepArgs,
        base: &serde_json::Map<String, serde_json::Value>,
    ) -> Result<Self, Error> {
        let spec = if let Some(path) = &args.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SweepSpec>(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        } else {
            let variable = args.variable.clone().expect("clap requires --var");
            let values = match (&args.values, &args.log_range) {
                (Some(v), None) => v.clone(),
                (None, Some(r)) => {
                    if r.len() != 3 {
                        return Err(Error::Config("--log-range expects MIN,MAX,COUNT".into()));
                    }
                    let count = r[2] as usize;
                    if count < 2 {
                        return Err(Error::Config("--log-range needs COUNT >= 2".into()));
                    }
                    log_space(r[0], r[1], count)
                }
                (None, None) => {
                    return Err(Error::Config("sweep needs --values or --log-range".into()))
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let mut overlays = Vec::new();
            for raw in &args.overlays {
                overlays.push(parse_overlay(raw)?);
            }
            SweepSpec {
                name: args.name.clone(),
                variable,
                values,
                outputs: args.outputs.clone().expect("clap requires --outputs"),
                overlays,
                bias_fraction: args.bias_fraction,
            }
        };
        spec.validate(base)?;
        Ok(spec)
    }

    /// Spec invariants: nonempty strictly monotone values, known variable,
    /// known overlay keys, at most four overlay curves.
    pub fn validate(&self, base: &serde_json::Map<String, serde_json::Value>) -> Result<(), Error> {
        if self.values.is_empty() {
            return Err(Error::Config(format!(
                "sweep `{}`: values list is empty",
                self.name
            )));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config(format!(
                "sweep `{}`: values must be finite",
                self.name
            )));
        }
        if self.values.len() > 1 {
            let increasing = self.values.windows(2).all(|w| w[1] > w[0]);
            let decreasing = self.values.windows(2).all(|w| w[1] < w[0]);
            if !increasing && !decreasing {
                return Err(Error::Config(format!(
                    "sweep `{}`: values must be strictly monotone",
                    self.name
                )));
            }
        }
        if self.outputs.is_empty() {
            return Err(Error::Config(format!(
                "sweep `{}`: no outputs requested",
                self.name
            )));
        }
        let curves: usize = self.overlays.iter().map(|o| o.values.len()).product();
        if self.overlays.iter().any(|o| o.values.is_empty()) || curves > 4 {
            return Err(Error::Config(format!(
                "sweep `{}`: overlays must be nonempty and give at most 4 curves",
                self.name
            )));
        }
        if !(self.bias_fraction > 0.0 && self.bias_fraction < 1.0) {
            return Err(Error::Config(format!(
                "sweep `{}`: bias_fraction must lie in (0, 1)",
                self.name
            )));
        }

        if self.variable == "f" {
            if self.outputs != [OutputKind::NoisePsd] {
                return Err(Error::Config(format!(
                    "sweep `{}`: frequency sweeps support only the noise_psd output",
                    self.name
                )));
            }
            if self.values.iter().any(|&f| f <= 0.0) {
                return Err(Error::Config(format!(
                    "sweep `{}`: frequencies must be > 0",
                    self.name
                )));
            }
        } else {
            // probe the variable against the config schema
            let mut probe = base.clone();
            insert_number(&mut probe, &self.variable, self.values[0]);
            SystemConfig::from_json_value(serde_json::Value::Object(probe)).map_err(|e| {
                Error::Config(format!(
                    "sweep `{}`: variable `{}` rejected: {e}",
                    self.name, self.variable
                ))
            })?;
        }
        for overlay in &self.overlays {
            let mut probe = base.clone();
            probe.insert(overlay.key.clone(), overlay.values[0].clone());
            if self.variable != "f" {
                insert_number(&mut probe, &self.variable, self.values[0]);
            }
            SystemConfig::from_json_value(serde_json::Value::Object(probe)).map_err(|e| {
                Error::Config(format!(
                    "sweep `{}`: overlay `{}` rejected: {e}",
                    self.name, overlay.key
                ))
            })?;
        }
        Ok(())
    }

    /// Overlay value combinations in deterministic spec order.
    fn combos(&self) -> Vec<Vec<(String, serde_json::Value)>> {
        let mut combos: Vec<Vec<(String, serde_json::Value)>> = vec![Vec::new()];
        for overlay in &self.overlays {
            let mut next = Vec::new();
            for combo in &combos {
                for value in &overlay.values {
                    let mut extended = combo.clone();
                    extended.push((overlay.key.clone(), value.clone()));
                    next.push(extended);
                }
            }
            combos = next;
        }
        combos
    }
}

fn parse_overlay(raw: &str) -> Result<Overlay, Error> {
    let (key, tail) = raw
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("--overlay expects KEY=V1,V2, got `{raw}`")))?;
    let mut values = Vec::new();
    for part in tail.split(',') {
        let value: serde_json::Value = serde_json::from_str(part.trim())
            .map_err(|e| Error::Config(format!("overlay value `{part}`: {e}")))?;
        if !value.is_number() {
            return Err(Error::Config(format!(
                "overlay value `{part}` must be a number"
            )));
        }
        values.push(value);
    }
    Ok(Overlay {
        key: key.trim().to_string(),
        values,
    })
}

fn insert_number(map: &mut serde_json::Map<String, serde_json::Value>, key: &str, value: f64) {
    let number = serde_json::Number::from_f64(value).expect("finite sweep value");
    map.insert(key.to_string(), serde_json::Value::Number(number));
}

fn combo_label(combo: &[(String, serde_json::Value)]) -> String {
    combo
        .iter()
        .map(|(k, v)| format!("|{k}={v}"))
        .collect::<String>()
}

/// 17-significant-digit decimal rendering used for every CSV cell.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

struct CsvTable {
    file_name: String,
    header: Vec<String>,
    /// column-major data; col[0] is the swept variable
    columns: Vec<Vec<f64>>,
    plot_columns: Vec<usize>,
}

impl CsvTable {
    fn to_bytes(&self) -> Vec<u8> {
        let mut text = String::new();
        text.push_str(&self.header.join(","));
        text.push('\n');
        for row in 0..self.columns[0].len() {
            let mut line = String::new();
            for (i, col) in self.columns.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                let _ = write!(line, "{}", format_value(col[row]));
            }
            text.push_str(&line);
            text.push('\n');
        }
        text.into_bytes()
    }
}

/// Evaluate one spec into per-output tables.
fn evaluate_spec(
    base: &serde_json::Map<String, serde_json::Value>,
    spec: &SweepSpec,
) -> Result<Vec<CsvTable>, Error> {
    let combos = spec.combos();

    if spec.variable == "f" {
        return evaluate_frequency_spec(base, spec, &combos);
    }

    // all (combo, value) points in deterministic order, evaluated in parallel
    let points: Vec<(usize, usize)> = (0..combos.len())
        .flat_map(|c| (0..spec.values.len()).map(move |v| (c, v)))
        .collect();
    let reports: Vec<Result<flexrx_core::LinkReport, Error>> = points
        .par_iter()
        .map(|&(c, v)| {
            let mut doc = base.clone();
            for (key, value) in &combos[c] {
                doc.insert(key.clone(), value.clone());
            }
            insert_number(&mut doc, &spec.variable, spec.values[v]);
            let cfg = SystemConfig::from_json_value(serde_json::Value::Object(doc))?;
            evaluate(&cfg, spec.bias_fraction)
        })
        .collect();
    let mut by_point = Vec::with_capacity(reports.len());
    for report in reports {
        by_point.push(report?);
    }
    let report_at = |c: usize, v: usize| &by_point[c * spec.values.len() + v];

    let mut tables = Vec::new();
    for &kind in &spec.outputs {
        let mut header = vec![spec.variable.clone()];
        let mut columns = vec![spec.values.clone()];
        let mut plot_columns = Vec::new();
        for (c, combo) in combos.iter().enumerate() {
            let label = combo_label(combo);
            for &field in kind.fields() {
                header.push(format!("{field}{label}"));
                if field == kind.plot_field() {
                    plot_columns.push(columns.len());
                }
                let column: Vec<f64> = (0..spec.values.len())
                    .map(|v| extract_field(report_at(c, v), field))
                    .collect();
                columns.push(column);
            }
        }
        tables.push(CsvTable {
            file_name: format!("{}_{}.csv", spec.name, kind.slug()),
            header,
            columns,
            plot_columns,
        });
    }
    Ok(tables)
}

/// Frequency sweeps sample the two PSDs at the requested frequencies for
/// one solved operating point per overlay curve.
fn evaluate_frequency_spec(
    base: &serde_json::Map<String, serde_json::Value>,
    spec: &SweepSpec,
    combos: &[Vec<(String, serde_json::Value)>],
) -> Result<Vec<CsvTable>, Error> {
    let mut header = vec!["f_hz".to_string()];
    let mut columns = vec![spec.values.clone()];
    let mut plot_columns = Vec::new();
    for combo in combos {
        let mut doc = base.clone();
        for (key, value) in combo {
            doc.insert(key.clone(), value.clone());
        }
        let cfg = SystemConfig::from_json_value(serde_json::Value::Object(doc))?;
        let (bias, _) = select_bias(&cfg, spec.bias_fraction)?;
        let chan = channel_state(&cfg)?;
        let stats = binding_stats(chan.rho_r, &cfg)?;
        let trans = transduce(stats.mean_bound, &bias, &cfg)?;
        let k_flicker = flicker_prefactor(trans.g_fet, bias.gate_voltage, &cfg);

        let label = combo_label(combo);
        let s_ib: Vec<f64> = spec
            .values
            .iter()
            .map(|&f| binding_psd(f, &stats, trans.psi_l, trans.g_fet))
            .collect();
        let s_if: Vec<f64> = spec.values.iter().map(|&f| k_flicker / f).collect();
        let s_total: Vec<f64> = s_ib.iter().zip(&s_if).map(|(a, b)| a + b).collect();
        header.push(format!("s_ib{label}"));
        columns.push(s_ib);
        header.push(format!("s_if{label}"));
        columns.push(s_if);
        header.push(format!("s_total{label}"));
        plot_columns.push(columns.len());
        columns.push(s_total);
    }
    Ok(vec![CsvTable {
        file_name: format!("{}_{}.csv", spec.name, OutputKind::NoisePsd.slug()),
        header,
        columns,
        plot_columns,
    }])
}

fn extract_field(report: &flexrx_core::LinkReport, field: &str) -> f64 {
    match field {
        "sensitivity" => report.transduction.sensitivity,
        "snr" => report.metrics.snr,
        "snr_db" => report.metrics.snr_db,
        "capacity_bits" => report.metrics.capacity_bits,
        "l_factor" => report.metrics.l_factor,
        "raw_capacity_bits" => report.metrics.raw_capacity_bits,
        other => unreachable!("unknown field {other}"),
    }
}

#[derive(Serialize)]
struct ManifestEntry {
    file: String,
    sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    seed: u64,
    config: serde_json::Value,
    config_sha256: String,
    specs: &'a [SweepSpec],
    outputs: Vec<ManifestEntry>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Run a batch of sweeps into `out_dir`; returns a one-line summary.
pub fn run_sweeps(
    base: &serde_json::Map<String, serde_json::Value>,
    specs: &[SweepSpec],
    out_dir: &Path,
    seed: u64,
    render_svg: bool,
) -> Result<String, Error> {
    for spec in specs {
        spec.validate(base)?;
    }
    // resolve once so the manifest records the exact parameter set
    let resolved = SystemConfig::from_json_value(serde_json::Value::Object(base.clone()))?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::Io(format!("cannot create {}: {e}", out_dir.display())))?;

    let mut outputs = Vec::new();
    let mut files = 0usize;
    for spec in specs {
        for table in evaluate_spec(base, spec)? {
            let bytes = table.to_bytes();
            let path: PathBuf = out_dir.join(&table.file_name);
            std::fs::write(&path, &bytes)
                .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
            outputs.push(ManifestEntry {
                file: table.file_name.clone(),
                sha256: sha256_hex(&bytes),
            });
            files += 1;
            if render_svg {
                let svg_name = table.file_name.replace(".csv", ".svg");
                let svg_path = out_dir.join(&svg_name);
                let series: Vec<(String, &[f64])> = table
                    .plot_columns
                    .iter()
                    .map(|&i| (table.header[i].clone(), table.columns[i].as_slice()))
                    .collect();
                let svg_bytes =
                    svg::render_lines(&spec.name, &table.header[0], &table.columns[0], &series);
                std::fs::write(&svg_path, svg_bytes.as_bytes())
                    .map_err(|e| Error::Io(format!("cannot write {}: {e}", svg_path.display())))?;
                outputs.push(ManifestEntry {
                    sha256: sha256_hex(svg_bytes.as_bytes()),
                    file: svg_name,
                });
                files += 1;
            }
        }
    }

    let config_value = serde_json::to_value(resolved.to_document()).expect("serializable");
    let config_bytes = serde_json::to_vec(&config_value).expect("serializable");
    let manifest = Manifest {
        tool: "flexrx",
        version: env!("CARGO_PKG_VERSION"),
        seed,
        config: config_value,
        config_sha256: sha256_hex(&config_bytes),
        specs,
        outputs,
    };
    let manifest_path = out_dir.join("manifest.json");
    let manifest_bytes = serde_json::to_vec_pretty(&manifest).expect("serializable manifest");
    std::fs::write(&manifest_path, &manifest_bytes)
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", manifest_path.display())))?;

    Ok(format!(
        "wrote {} output file(s) + manifest.json to {}",
        files,
        out_dir.display()
    ))
}
