//! Command-line flags, the JSON config file and the validated run config.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "qsp",
    version,
    about = "Verify the quantum-Schwarzschild dust family and its side calculations"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field-equation residuals of the dust family over the grid.
    Residuals,
    /// Quantum Hamilton-Jacobi residual and amplitudes over the grid.
    Quantum(QuantumArgs),
    /// FRW reading of the family: transform residual, Hubble rates, slice curvature.
    Frw,
    /// Newtonian hydrogen-like levels for comparison.
    Bohr(BohrArgs),
    /// Energy ledgers of the Atwood and pair gedanken experiments.
    Gedanken(GedankenArgs),
}

/// Flags shared by every subcommand. All are optional so a config file can
/// supply them; flags win over file values.
#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonArgs {
    /// F(r) profile expression in r.
    #[arg(long = "profile-F", global = true)]
    #[serde(rename = "profile-F")]
    pub profile_f: Option<String>,
    /// G(r) profile expression in r [default: 0].
    #[arg(long = "profile-G", global = true)]
    #[serde(rename = "profile-G")]
    pub profile_g: Option<String>,
    /// Exponent p in e^v = (F tau + G)^p [default: 4/3].
    #[arg(long, global = true)]
    pub exponent: Option<f64>,
    /// natural (c = G = hbar = m = 1) or explicit.
    #[arg(long, global = true)]
    pub units: Option<String>,
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Newton's constant.
    #[arg(long = "G", global = true)]
    #[serde(rename = "G")]
    pub g_newton: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    /// Particle mass.
    #[arg(long, global = true)]
    pub m: Option<f64>,
    /// r grid as min:max:steps [default: 1:5:5].
    #[arg(long = "r-range", global = true)]
    #[serde(rename = "r-range")]
    pub r_range: Option<String>,
    /// tau grid as min:max:steps [default: 1:5:5].
    #[arg(long = "tau-range", global = true)]
    #[serde(rename = "tau-range")]
    pub tau_range: Option<String>,
    /// Pass/fail tolerance [default: 1e-8].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// csv or json [default: csv].
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// JSON file with the same keys as the flags.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    /// Fills every unset field from `file`.
    fn or(self, file: CommonArgs) -> CommonArgs {
        CommonArgs {
            profile_f: self.profile_f.or(file.profile_f),
            profile_g: self.profile_g.or(file.profile_g),
            exponent: self.exponent.or(file.exponent),
            units: self.units.or(file.units),
            c: self.c.or(file.c),
            g_newton: self.g_newton.or(file.g_newton),
            hbar: self.hbar.or(file.hbar),
            m: self.m.or(file.m),
            r_range: self.r_range.or(file.r_range),
            tau_range: self.tau_range.or(file.tau_range),
            tol: self.tol.or(file.tol),
            output: self.output.or(file.output),
            config: self.config,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct QuantumArgs {
    /// Constant potential V.
    #[arg(long = "V", default_value_t = 0.0)]
    pub potential: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BohrArgs {
    #[arg(long = "n-max", default_value_t = 10)]
    pub n_max: usize,
    /// Central mass.
    #[arg(long = "M", default_value_t = 1.0)]
    pub big_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    AtwoodOriginal,
    AtwoodCorrected,
    Pair,
}

#[derive(Debug, Clone, Args)]
pub struct GedankenArgs {
    #[arg(value_enum)]
    pub scenario: Scenario,
    /// Excitation gap at the bottom of the machine.
    #[arg(long, default_value_t = 1.0)]
    pub gap: f64,
    /// Field strength g.
    #[arg(long, default_value_t = 0.01)]
    pub accel: f64,
    /// Pan separation L.
    #[arg(long, default_value_t = 1.0)]
    pub height: f64,
    #[arg(long, default_value_t = 10)]
    pub cycles: usize,
    /// Upper atom's level shift [default: gap g L / c^2].
    #[arg(long = "level-shift")]
    pub level_shift: Option<f64>,
    /// Particle mass for the pair cycle [default: --m or 1].
    #[arg(long = "pair-mass")]
    pub pair_mass: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub c: f64,
    pub g_newton: f64,
    pub hbar: f64,
    pub m: f64,
}

impl Constants {
    pub const NATURAL: Constants = Constants {
        c: 1.0,
        g_newton: 1.0,
        hbar: 1.0,
        m: 1.0,
    };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn parse(flag: &str, s: &str) -> Result<Axis, CliError> {
        let bad = || CliError::Usage(format!("{flag} expects min:max:steps, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(bad());
        };
        let axis = Axis {
            min: a.trim().parse().map_err(|_| bad())?,
            max: b.trim().parse().map_err(|_| bad())?,
            steps: n.trim().parse().map_err(|_| bad())?,
        };
        if !(axis.min > 0.0) || !axis.max.is_finite() || axis.max < axis.min {
            return Err(CliError::Usage(format!(
                "{flag}: need 0 < min <= max, got {s:?}"
            )));
        }
        if axis.steps < 1 {
            return Err(CliError::Usage(format!("{flag}: steps must be at least 1")));
        }
        Ok(axis)
    }

    pub fn points(&self) -> Vec<f64> {
        qsp_core::dust::linspace(self.min, self.max, self.steps)
    }
}

/// Everything a subcommand needs, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub profile_f: String,
    pub profile_g: String,
    pub exponent: f64,
    pub constants: Constants,
    pub r: Axis,
    pub tau: Axis,
    pub tolerance: f64,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn resolve(args: CommonArgs) -> Result<RunConfig, CliError> {
        let args = match &args.config {
            Some(path) => args.clone().or(read_config(path)?),
            None => args,
        };

        let explicit = match args.units.as_deref().unwrap_or("natural") {
            "natural" => false,
            "explicit" => true,
            other => {
                return Err(CliError::Usage(format!(
                    "--units must be natural or explicit, got {other:?}"
                )))
            }
        };
        let constants = if explicit {
            let pick = |name: &str, x: Option<f64>| -> Result<f64, CliError> {
                let x = x.unwrap_or(1.0);
                if !(x > 0.0 && x.is_finite()) {
                    return Err(CliError::Usage(format!(
                        "--{name} must be positive, got {x}"
                    )));
                }
                Ok(x)
            };
            Constants {
                c: pick("c", args.c)?,
                g_newton: pick("G", args.g_newton)?,
                hbar: pick("hbar", args.hbar)?,
                m: pick("m", args.m)?,
            }
        } else {
            let set: Vec<&str> = [
                ("c", args.c),
                ("G", args.g_newton),
                ("hbar", args.hbar),
                ("m", args.m),
            ]
            .iter()
            .filter(|(_, x)| x.is_some())
            .map(|(n, _)| *n)
            .collect();
            if !set.is_empty() {
                return Err(CliError::Usage(format!(
                    "--{} given with natural units; pass --units explicit",
                    set.join(", --")
                )));
            }
            Constants::NATURAL
        };

        let tolerance = args.tol.unwrap_or(1e-8);
        if !(tolerance > 0.0) {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {tolerance}"
            )));
        }
        let exponent = args.exponent.unwrap_or(qsp_core::dust::DEFAULT_EXPONENT);
        if !exponent.is_finite() {
            return Err(CliError::Usage(format!(
                "--exponent must be finite, got {exponent}"
            )));
        }
        let output = match args.output.as_deref().unwrap_or("csv") {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => {
                return Err(CliError::Usage(format!(
                    "--output must be csv or json, got {other:?}"
                )))
            }
        };

        Ok(RunConfig {
            profile_f: args.profile_f.unwrap_or_else(|| "r".into()),
            profile_g: args.profile_g.unwrap_or_else(|| "0".into()),
            exponent,
            constants,
            r: Axis::parse("--r-range", args.r_range.as_deref().unwrap_or("1:5:5"))?,
            tau: Axis::parse("--tau-range", args.tau_range.as_deref().unwrap_or("1:5:5"))?,
            tolerance,
            output,
        })
    }
}

fn read_config(path: &Path) -> Result<CommonArgs, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        assert_eq!(
            Axis::parse("--r-range", "0.5:5:20").unwrap(),
            Axis {
                min: 0.5,
                max: 5.0,
                steps: 20
            }
        );
        for bad in ["0:5:3", "1:5:0", "1:5", "a:b:c", "5:1:3", "-1:2:2"] {
            assert!(Axis::parse("--r-range", bad).is_err(), "{bad}");
        }
        assert_eq!(Axis::parse("x", "2:2:1").unwrap().points(), vec![2.0]);
    }

    #[test]
    fn defaults() {
        let cfg = RunConfig::resolve(CommonArgs::default()).unwrap();
        assert_eq!(cfg.profile_f, "r");
        assert_eq!(cfg.profile_g, "0");
        assert_eq!(cfg.exponent, 4.0 / 3.0);
        assert_eq!(cfg.constants, Constants::NATURAL);
        assert_eq!(cfg.tolerance, 1e-8);
        assert_eq!(cfg.output, OutputFormat::Csv);
        assert_eq!(cfg.r.points(), vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn natural_units_reject_constants() {
        let args = CommonArgs {
            c: Some(2.0),
            ..CommonArgs::default()
        };
        assert!(RunConfig::resolve(args.clone()).is_err());
        let explicit = CommonArgs {
            units: Some("explicit".into()),
            ..args
        };
        assert_eq!(RunConfig::resolve(explicit).unwrap().constants.c, 2.0);
    }

    #[test]
    fn flags_override_file() {
        let file: CommonArgs =
            serde_json::from_str(r#"{"profile-F": "2*r^3", "tol": 1e-6, "r-range": "1:2:2"}"#)
                .unwrap();
        let flags = CommonArgs {
            tol: Some(1e-9),
            ..CommonArgs::default()
        };
        let merged = flags.or(file);
        assert_eq!(merged.profile_f.as_deref(), Some("2*r^3"));
        assert_eq!(merged.tol, Some(1e-9));
        assert!(serde_json::from_str::<CommonArgs>(r#"{"bogus": 1}"#).is_err());
    }
}
