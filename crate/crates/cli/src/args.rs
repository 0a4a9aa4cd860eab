//! Command-line surface and the flat `key=value` config file.
//!
//! Config entries are spliced into the argument list ahead of the flags given
//! on the command line, and every option overrides earlier occurrences of
//! itself, so flags win over the file.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_susy::Regime;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "dirac-susy", version, about = "Dirac bound states under spin and pseudo-spin symmetry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels n = 0..=nmax with their factorization parameters.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Normalized spinor components of one level sampled on a grid.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Wavefunction(WavefunctionArgs),
    /// Run verification suites and report every check.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Spin,
    Pseudo,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Spin => Regime::SpinSymmetric,
            RegimeArg::Pseudo => Regime::PseudoSpinSymmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialArg {
    Coulomb,
    Kratzer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Susy,
    Ladder,
    Oracle,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "spin")]
    pub regime: RegimeArg,
    #[arg(long, value_enum, default_value = "coulomb")]
    pub potential: PotentialArg,
    /// Rest mass.
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// Coulomb coupling; positive under spin, negative under pseudo-spin symmetry.
    #[arg(long)]
    pub v: f64,
    /// Inverse-square strength (Kratzer only).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Constant offset (Kratzer only).
    #[arg(long)]
    pub c: Option<f64>,
    /// k_d directly, e.g. `-1` or `3/2`; excludes --d/--j/--ell.
    #[arg(long, value_parser = parse_twice)]
    pub kd: Option<i64>,
    /// Spatial dimension.
    #[arg(long)]
    pub d: Option<u32>,
    /// Total angular momentum, e.g. `1/2` or `1.5`.
    #[arg(long, value_parser = parse_twice)]
    pub j: Option<i64>,
    /// Orbital number (pseudo orbital number under pseudo-spin symmetry).
    #[arg(long)]
    pub ell: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Flat key=value file supplying defaults for any flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Highest level index.
    #[arg(long, alias = "n-max", default_value_t = 3)]
    pub nmax: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Level index.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Grid spacing.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// Grid extent; chosen from the decay of the level when omitted.
    #[arg(long)]
    pub r_max: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses `3/2`, `-1`, `1.5` into twice the value, which must be an integer.
fn parse_twice(s: &str) -> Result<i64, String> {
    let twice = match s.split_once('/') {
        Some((num, "2")) => num.trim().parse::<i64>().map_err(|e| e.to_string())?,
        Some((num, "1")) => 2 * num.trim().parse::<i64>().map_err(|e| e.to_string())?,
        Some(_) => return Err(format!("`{s}` is not an integer or half-integer")),
        None => {
            let x: f64 = s.trim().parse().map_err(|e: std::num::ParseFloatError| e.to_string())?;
            let twice = 2.0 * x;
            if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > 1e12 {
                return Err(format!("`{s}` is not an integer or half-integer"));
            }
            twice as i64
        }
    };
    Ok(twice)
}

/// Parses the command line, splicing in `--config` entries first.
pub fn parse(argv: Vec<OsString>) -> Result<Cli, CliError> {
    let argv = match config_path(&argv) {
        Some(path) => splice_config(argv, &path)?,
        None => argv,
    };
    Cli::try_parse_from(argv).map_err(CliError::from_clap)
}

fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter().skip(1);
    let mut found = None;
    while let Some(arg) = it.next() {
        let arg = arg.to_string_lossy();
        if arg == "--config" {
            found = it.next().map(PathBuf::from);
        } else if let Some(path) = arg.strip_prefix("--config=") {
            found = Some(PathBuf::from(path));
        }
    }
    found
}

fn splice_config(argv: Vec<OsString>, path: &Path) -> Result<Vec<OsString>, CliError> {
    let entries = read_config(path)?;
    let Some(at) = argv
        .iter()
        .position(|a| matches!(a.to_str(), Some("spectrum" | "wavefunction" | "verify")))
    else {
        return Ok(argv);
    };
    let mut out: Vec<OsString> = argv[..=at].to_vec();
    out.extend(entries.into_iter().map(|(k, v)| OsString::from(format!("--{k}={v}"))));
    out.extend(argv[at + 1..].iter().cloned());
    Ok(out)
}

/// Reads `key = value` lines; blank lines and `#` comments are skipped and
/// keys may use `_` or `-`.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "{}:{}: expected key=value, got `{line}`",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        if key == "config" {
            return Err(CliError::usage(format!("{}: config files cannot nest", path.display())));
        }
        entries.push((key, value.trim().to_string()));
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integers() {
        assert_eq!(parse_twice("3/2"), Ok(3));
        assert_eq!(parse_twice("-1"), Ok(-2));
        assert_eq!(parse_twice("1.5"), Ok(3));
        assert_eq!(parse_twice("4/1"), Ok(8));
        assert!(parse_twice("1/3").is_err());
        assert!(parse_twice("0.25").is_err());
    }

    #[test]
    fn flags_override_config() {
        let dir = std::env::temp_dir().join(format!("dirac-susy-args-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        fs::write(&path, "# defaults\nv = -0.5\nregime = pseudo\nkd=1\nn_max = 1\n").unwrap();
        let argv = ["dirac-susy", "spectrum", "--config", path.to_str().unwrap(), "--nmax", "2"]
            .map(OsString::from)
            .to_vec();
        let Command::Spectrum(args) = parse(argv).unwrap().command else {
            panic!("wrong subcommand");
        };
        assert_eq!(args.nmax, 2);
        assert_eq!(args.model.v, -0.5);
        assert_eq!(args.model.regime, RegimeArg::Pseudo);
        assert_eq!(args.model.kd, Some(2));
        fs::remove_dir_all(dir).unwrap();
    }
}
