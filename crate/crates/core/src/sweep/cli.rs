//! Command-line front end for the sweeps.
//!
//! Exit codes: 0 on success, 1 when any row failed (the CSV is still
//! written in full), 2 for bad arguments, config or parameter domains.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::{run, Command, SweepSpec};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "thzq", version, about = "Parameter sweeps for terahertz quantum links, as CSV")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Logarithmic negativity of the thermal squeezed source.
    EntanglementGen(SweepArgs),
    /// Entanglement left after the channel and a lossy detector.
    EntanglementDist(SweepArgs),
    /// Reverse-reconciliation key rate and capacity against distance.
    Keyrate(SweepArgs),
    /// Lowest frequency with a positive key rate.
    AccessibleFreq(SweepArgs),
    /// Smallest receiver aperture reaching a target key rate.
    MinAperture(SweepArgs),
    /// Quantum against coherent illumination exponents.
    Radar(SweepArgs),
}

/// Values are lists `a,b,c` or ranges `min:max`.
#[derive(Debug, Args)]
struct SweepArgs {
    /// Output CSV; stdout when absent. A `<out>.meta` sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key = value` file with long flag names as keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Points per range.
    #[arg(long)]
    points: Option<String>,
    /// Log spacing for every range.
    #[arg(long, conflicts_with = "linear")]
    log: bool,
    /// Linear spacing for every range.
    #[arg(long)]
    linear: bool,
    /// Frequency, Hz.
    #[arg(long, allow_hyphen_values = true)]
    freq: Option<String>,
    /// Temperature, K.
    #[arg(long, allow_hyphen_values = true)]
    temp: Option<String>,
    /// Two-mode squeezing, dB.
    #[arg(long = "squeeze-db", allow_hyphen_values = true)]
    squeeze_db: Option<String>,
    /// Detection efficiency.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Beam waist, m.
    #[arg(long, allow_hyphen_values = true)]
    w0: Option<String>,
    /// Receiver aperture radius, m.
    #[arg(long, allow_hyphen_values = true)]
    ra: Option<String>,
    /// Link distance, m.
    #[arg(long, allow_hyphen_values = true)]
    dist: Option<String>,
    /// Target reflectivity.
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Probe photons per mode.
    #[arg(long, allow_hyphen_values = true)]
    ns: Option<String>,
    /// Background photons per mode; replaces freq and temp.
    #[arg(long, allow_hyphen_values = true)]
    nb: Option<String>,
    /// Target key rate, bits per use.
    #[arg(long = "target-rate", allow_hyphen_values = true)]
    target_rate: Option<String>,
    /// Channel transmissivity.
    #[arg(long, allow_hyphen_values = true)]
    transmissivity: Option<String>,
}

impl SweepArgs {
    fn settings(&self) -> Vec<(&'static str, &str)> {
        let flags = [
            ("points", &self.points),
            ("freq", &self.freq),
            ("temp", &self.temp),
            ("squeeze-db", &self.squeeze_db),
            ("eta", &self.eta),
            ("w0", &self.w0),
            ("ra", &self.ra),
            ("dist", &self.dist),
            ("kappa", &self.kappa),
            ("ns", &self.ns),
            ("nb", &self.nb),
            ("target-rate", &self.target_rate),
            ("transmissivity", &self.transmissivity),
        ];
        let mut out: Vec<(&'static str, &str)> = flags
            .into_iter()
            .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
            .collect();
        if self.log {
            out.push(("log", "true"));
        }
        if self.linear {
            out.push(("linear", "true"));
        }
        out
    }
}

impl Sub {
    fn split(self) -> (Command, SweepArgs) {
        match self {
            Sub::EntanglementGen(a) => (Command::EntanglementGen, a),
            Sub::EntanglementDist(a) => (Command::EntanglementDist, a),
            Sub::Keyrate(a) => (Command::Keyrate, a),
            Sub::AccessibleFreq(a) => (Command::AccessibleFreq, a),
            Sub::MinAperture(a) => (Command::MinAperture, a),
            Sub::Radar(a) => (Command::Radar, a),
        }
    }
}

/// Sidecar path for a CSV written to `out`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta");
    PathBuf::from(name)
}

fn build_spec(command: Command, args: &SweepArgs) -> Result<SweepSpec> {
    let mut spec = SweepSpec::new(command);
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        spec.apply_config(&text)?;
    }
    if args.log || args.linear {
        // a spacing flag replaces whatever the config chose
        spec.set("log", "false")?;
        spec.set("linear", "false")?;
    }
    for (k, v) in args.settings() {
        spec.set(k, v)?;
    }
    Ok(spec)
}

fn write_outputs(spec: &SweepSpec, table: &super::Table, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write_csv(&mut w)?;
            w.flush()?;
            std::fs::write(sidecar_path(path), spec.to_config())
        }
        None => table.write_csv(io::stdout().lock()),
    }
}

/// Parses `args` (program name first), runs the sweep and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (command, args) = cli.command.split();
    let table = match build_spec(command, &args).and_then(|spec| run(&spec).map(|t| (spec, t))) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("thzq {}: {e}", command.name());
            return 2;
        }
    };
    let (spec, table) = table;
    if let Err(e) = write_outputs(&spec, &table, args.out.as_deref()) {
        eprintln!("thzq {}: {e}", command.name());
        return 2;
    }
    match table.failures() {
        0 => 0,
        n => {
            eprintln!("thzq {}: {n} of {} rows failed", command.name(), table.rows.len());
            1
        }
    }
}
