//! Deterministic CSV parameter sweeps.
//!
//! A [`SweepSpec`] holds the raw value of every parameter a command reads.
//! Axis parameters take a list `a,b,c` or a range `min:max`; the remaining
//! parameters take a single number. Settings are layered: built-in defaults,
//! then a config file, then explicit values.

pub mod cli;
mod commands;

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::solve::Spacing;

/// Default number of points in a range.
pub const DEFAULT_POINTS: usize = 200;

/// The sweep commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    EntanglementGen,
    EntanglementDist,
    Keyrate,
    AccessibleFreq,
    MinAperture,
    Radar,
}

/// A parameter a command reads.
#[derive(Debug, Clone, Copy)]
pub struct ParamDef {
    pub key: &'static str,
    pub default: Option<&'static str>,
    /// May hold a list or range rather than one number.
    pub axis: bool,
}

const fn axis(key: &'static str, default: &'static str) -> ParamDef {
    ParamDef {
        key,
        default: Some(default),
        axis: true,
    }
}

const fn scalar(key: &'static str, default: &'static str) -> ParamDef {
    ParamDef {
        key,
        default: Some(default),
        axis: false,
    }
}

const GEN_PARAMS: &[ParamDef] = &[
    axis("freq", "1e12,5e12"),
    axis("temp", "3:296"),
    axis("squeeze-db", "0,3,5,10,15"),
];
const DIST_PARAMS: &[ParamDef] = &[
    axis("freq", "2e12,5e12"),
    axis("squeeze-db", "3,10"),
    axis("transmissivity", "0:1"),
    scalar("temp", "30"),
    scalar("eta", "0.1"),
];
const KEYRATE_PARAMS: &[ParamDef] = &[
    axis("freq", "5e12,1e13,2e13,5e13"),
    axis("temp", "30,173"),
    axis("dist", "1e3:3e5"),
    scalar("eta", "0.1"),
    scalar("w0", "0.1"),
    scalar("ra", "0.1"),
];
const ACCESS_PARAMS: &[ParamDef] = &[
    axis("transmissivity", "0.01:0.99"),
    axis("temp", "30,173"),
    axis("eta", "0.1,1"),
];
const APERTURE_PARAMS: &[ParamDef] = &[
    axis("freq", "1e12:5e13"),
    axis("temp", "296"),
    axis("eta", "0.1,0.5,1"),
    scalar("dist", "5e5"),
    scalar("w0", "0.1"),
    scalar("target-rate", "1e-4"),
];
const RADAR_PARAMS: &[ParamDef] = &[
    axis("freq", "1e12:5e13"),
    axis("temp", "296"),
    ParamDef {
        key: "nb",
        default: None,
        axis: true,
    },
    axis("kappa", "0.01"),
    axis("ns", "0.01"),
];

impl Command {
    pub const ALL: [Command; 6] = [
        Command::EntanglementGen,
        Command::EntanglementDist,
        Command::Keyrate,
        Command::AccessibleFreq,
        Command::MinAperture,
        Command::Radar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::EntanglementGen => "entanglement-gen",
            Command::EntanglementDist => "entanglement-dist",
            Command::Keyrate => "keyrate",
            Command::AccessibleFreq => "accessible-freq",
            Command::MinAperture => "min-aperture",
            Command::Radar => "radar",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// CSV header.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Command::EntanglementGen => &["freq_hz", "temp_k", "squeeze_db", "nbar", "e_ln"],
            Command::EntanglementDist => &["freq_hz", "squeeze_db", "transmissivity", "e_ln_out"],
            Command::Keyrate => &[
                "freq_hz",
                "temp_k",
                "dist_m",
                "transmissivity",
                "rate_bits_per_use",
                "plob_bits_per_use",
            ],
            Command::AccessibleFreq => &["transmissivity", "temp_k", "eta", "f_access_hz", "eq13_bound_hz", "status"],
            Command::MinAperture => &["freq_hz", "temp_k", "eta", "ra_min_m", "ra_min_plob_m", "status"],
            Command::Radar => &[
                "freq_hz",
                "temp_k",
                "nb",
                "kappa",
                "ns",
                "exponent_q",
                "exponent_c",
                "advantage_db",
                "status",
            ],
        }
    }

    /// Parameters in the order they appear in sidecar files.
    pub fn params(self) -> &'static [ParamDef] {
        match self {
            Command::EntanglementGen => GEN_PARAMS,
            Command::EntanglementDist => DIST_PARAMS,
            Command::Keyrate => KEYRATE_PARAMS,
            Command::AccessibleFreq => ACCESS_PARAMS,
            Command::MinAperture => APERTURE_PARAMS,
            Command::Radar => RADAR_PARAMS,
        }
    }

    fn param(self, key: &str) -> Option<&'static ParamDef> {
        self.params().iter().find(|p| p.key == key)
    }
}

/// Spacing of a range when neither `--log` nor `--linear` is given.
pub fn default_spacing(key: &str) -> Spacing {
    match key {
        "freq" | "dist" | "nb" => Spacing::Log,
        _ => Spacing::Linear,
    }
}

/// Physical domain of each parameter.
fn check_domain(key: &'static str, v: f64) -> Result<()> {
    let (ok, expected) = match key {
        "freq" => (v > 0.0, "> 0 Hz"),
        "temp" => (v >= 0.0, ">= 0 K"),
        "squeeze-db" => (v >= 0.0, ">= 0 dB"),
        "eta" => (v > 0.0 && v <= 1.0, "0 < eta <= 1"),
        "w0" | "ra" => (v > 0.0, "> 0 m"),
        "dist" => (v >= 0.0, ">= 0 m"),
        "kappa" => ((0.0..1.0).contains(&v), "0 <= kappa < 1"),
        "ns" => (v > 0.0, "> 0"),
        "nb" => (v >= 0.0, ">= 0"),
        "target-rate" => (v > 0.0, "> 0 bits per use"),
        "transmissivity" => ((0.0..=1.0).contains(&v), "0 <= T <= 1"),
        _ => (true, ""),
    };
    if ok && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: key,
            value: v,
            expected,
        })
    }
}

/// A parsed parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    List(Vec<f64>),
    Range { min: f64, max: f64 },
}

fn parse_number(key: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: cannot parse '{}' as a number", s.trim())))
}

impl Values {
    pub fn parse(key: &str, s: &str) -> Result<Self> {
        if let Some((a, b)) = s.split_once(':') {
            let (min, max) = (parse_number(key, a)?, parse_number(key, b)?);
            if !(min < max) {
                return Err(Error::Config(format!("{key}: range needs min < max, got {s}")));
            }
            return Ok(Values::Range { min, max });
        }
        let list = s.split(',').map(|v| parse_number(key, v)).collect::<Result<Vec<_>>>()?;
        Ok(Values::List(list))
    }

    /// Grid points; `points` and `spacing` apply to ranges only.
    pub fn expand(&self, points: usize, spacing: Spacing) -> Vec<f64> {
        match *self {
            Values::List(ref v) => v.clone(),
            Values::Range { min, max } => (0..points)
                .map(|i| {
                    if i == 0 {
                        return min;
                    }
                    if i == points - 1 {
                        return max;
                    }
                    let u = i as f64 / (points - 1) as f64;
                    match spacing {
                        Spacing::Linear => min + u * (max - min),
                        Spacing::Log => (min.ln() + u * (max.ln() - min.ln())).exp(),
                    }
                })
                .collect(),
        }
    }
}

/// Everything needed to reproduce one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    command: Command,
    values: BTreeMap<&'static str, String>,
    points: usize,
    spacing: Option<Spacing>,
}

impl SweepSpec {
    /// Built-in defaults for `command`.
    pub fn new(command: Command) -> Self {
        let values = command
            .params()
            .iter()
            .filter_map(|p| p.default.map(|d| (p.key, d.to_string())))
            .collect();
        Self {
            command,
            values,
            points: DEFAULT_POINTS,
            spacing: None,
        }
    }

    pub fn command(&self) -> Command {
        self.command
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Sets one setting by its long-flag name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "command" => {
                if value != self.command.name() {
                    return Err(Error::Config(format!(
                        "config is for '{value}', not '{}'",
                        self.command.name()
                    )));
                }
            }
            "points" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| Error::Config(format!("points: cannot parse '{value}'")))?;
                if n < 2 {
                    return Err(Error::Config(format!("points must be at least 2, got {n}")));
                }
                self.points = n;
            }
            "log" | "linear" => {
                let on: bool = value
                    .parse()
                    .map_err(|_| Error::Config(format!("{key}: expected true or false, got '{value}'")))?;
                let spacing = if key == "log" { Spacing::Log } else { Spacing::Linear };
                if on {
                    self.spacing = Some(spacing);
                } else if self.spacing == Some(spacing) {
                    self.spacing = None;
                }
            }
            _ => {
                let def = self.command.param(key).ok_or_else(|| {
                    Error::Config(format!("'{key}' is not a parameter of {}", self.command.name()))
                })?;
                let parsed = Values::parse(key, value)?;
                if !def.axis && parsed != Values::List(vec![parse_number(key, value)?]) {
                    return Err(Error::Config(format!("{key} takes a single value in {}", self.command.name())));
                }
                self.values.insert(def.key, value.to_string());
            }
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("config line {}: expected 'key = value'", n + 1)))?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    /// Config text that reproduces this spec.
    pub fn to_config(&self) -> String {
        let mut out = format!("command = {}\n", self.command.name());
        for p in self.command.params() {
            if let Some(v) = self.values.get(p.key) {
                out.push_str(&format!("{} = {}\n", p.key, v));
            }
        }
        out.push_str(&format!("points = {}\n", self.points));
        match self.spacing {
            Some(Spacing::Log) => out.push_str("log = true\n"),
            Some(Spacing::Linear) => out.push_str("linear = true\n"),
            None => {}
        }
        out
    }

    pub fn is_set(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    /// Grid along `key`, checked against the parameter's domain.
    pub fn axis(&self, key: &'static str) -> Result<Vec<f64>> {
        let raw = self
            .values
            .get(key)
            .ok_or_else(|| Error::Config(format!("{key} is not set")))?;
        let spacing = self.spacing.unwrap_or_else(|| default_spacing(key));
        let parsed = Values::parse(key, raw)?;
        if let (Spacing::Log, Values::Range { min, .. }) = (spacing, &parsed) {
            if *min <= 0.0 {
                return Err(Error::Config(format!("{key}: log spacing needs a positive range, got {raw}")));
            }
        }
        let grid = parsed.expand(self.points, spacing);
        for &v in &grid {
            check_domain(key, v)?;
        }
        Ok(grid)
    }

    pub fn scalar(&self, key: &'static str) -> Result<f64> {
        let grid = self.axis(key)?;
        match grid.as_slice() {
            [v] => Ok(*v),
            _ => Err(Error::Config(format!("{key} takes a single value"))),
        }
    }
}

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(&'static str),
}

impl Cell {
    fn render(&self) -> String {
        match *self {
            Cell::Num(v) if v.is_nan() => "nan".into(),
            Cell::Num(v) if v.is_infinite() => if v > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Num(v) => format!("{v:.8e}"),
            Cell::Text(s) => s.into(),
        }
    }
}

/// A finished row and whether every value in it was computed.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub ok: bool,
}

/// Sweep output in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Row>,
}

impl Table {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok).count()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.columns)?;
        for row in &self.rows {
            w.write_record(row.cells.iter().map(Cell::render))?;
        }
        w.flush()
    }

    /// Column `name` as numbers (text cells become NaN).
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match r.cells[i] {
                    Cell::Num(v) => v,
                    Cell::Text(_) => f64::NAN,
                })
                .collect(),
        )
    }
}

/// Evaluates every grid point, in parallel, keeping grid order.
pub fn run(spec: &SweepSpec) -> Result<Table> {
    commands::run(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lists_and_ranges() {
        assert_eq!(Values::parse("freq", "1e12, 5e12").unwrap(), Values::List(vec![1e12, 5e12]));
        assert_eq!(Values::parse("temp", "3:296").unwrap(), Values::Range { min: 3.0, max: 296.0 });
        assert!(Values::parse("temp", "5:5").is_err());
        assert!(Values::parse("temp", "a,b").is_err());
    }

    #[test]
    fn ranges_hit_both_ends() {
        let lin = Values::Range { min: 0.0, max: 1.0 }.expand(5, Spacing::Linear);
        assert_eq!(lin, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let log = Values::Range { min: 1e3, max: 1e5 }.expand(3, Spacing::Log);
        assert_eq!(log[0], 1e3);
        assert!((log[1] - 1e4).abs() < 1e-8);
        assert_eq!(log[2], 1e5);
    }

    #[test]
    fn config_layers_and_round_trips() {
        let mut spec = SweepSpec::new(Command::Keyrate);
        spec.apply_config("# comment\nfreq = 5e13 # trailing\npoints = 7\nlinear = true\n").unwrap();
        spec.set("eta", "1").unwrap();
        assert_eq!(spec.axis("freq").unwrap(), vec![5e13]);
        assert_eq!(spec.axis("dist").unwrap().len(), 7);
        assert_eq!(spec.scalar("eta").unwrap(), 1.0);
        let mut back = SweepSpec::new(Command::Keyrate);
        back.apply_config(&spec.to_config()).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn rejects_bad_settings() {
        let mut spec = SweepSpec::new(Command::Keyrate);
        assert!(spec.set("kappa", "0.1").is_err());
        assert!(spec.set("eta", "0.1,0.2").is_err());
        assert!(spec.set("points", "1").is_err());
        assert!(spec.apply_config("freq 5e13").is_err());
        assert!(spec.set("command", "radar").is_err());
        spec.set("freq", "-1").unwrap();
        assert!(matches!(spec.axis("freq"), Err(Error::Domain { .. })));
        spec.set("dist", "0:10").unwrap();
        assert!(spec.axis("dist").is_err());
    }

    #[test]
    fn renders_cells() {
        assert_eq!(Cell::Num(1.0).render(), "1.00000000e0");
        assert_eq!(Cell::Num(-2.5e-7).render(), "-2.50000000e-7");
        assert_eq!(Cell::Num(f64::NAN).render(), "nan");
        assert_eq!(Cell::Text("ok").render(), "ok");
    }

    #[test]
    fn every_command_has_defaults_for_its_axes() {
        for c in Command::ALL {
            assert_eq!(Command::from_name(c.name()), Some(c));
            let spec = SweepSpec::new(c);
            for p in c.params().iter().filter(|p| p.default.is_some()) {
                assert!(spec.axis(p.key).is_ok(), "{} {}", c.name(), p.key);
            }
        }
    }
}
