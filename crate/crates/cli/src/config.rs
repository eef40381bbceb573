//! Run configuration: TOML file merged with command-line flags.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

/// Flags shared by every subcommand. Anything left unset falls back to the
/// config file, then to the defaults below.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Coefficients a_0,...,a_d, lowest first, e.g. "0,0,1" for y^2
    #[arg(long)]
    pub poly: Option<String>,
    /// Working decimal digits
    #[arg(long)]
    pub digits: Option<u32>,
    /// Truncation parameter R of the residue series
    #[arg(long = "R")]
    pub r: Option<f64>,
    /// Width exponent L of the central arc
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Number of terms J in the correction series
    #[arg(long = "J")]
    pub j: Option<usize>,
    /// Comma-separated list of n
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<String>,
    /// Range start:end[:step], inclusive
    #[arg(long)]
    pub n_range: Option<String>,
    /// csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for sampled probes
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated X values for phicheck
    #[arg(long)]
    pub x_grid: Option<String>,
    /// Comma-separated Theta values for phicheck
    #[arg(long)]
    pub theta_grid: Option<String>,
    /// Largest modulus for expsum
    #[arg(long)]
    pub q_max: Option<u64>,
    /// X used for the arc report in expsum
    #[arg(long)]
    pub arc_x: Option<f64>,
    /// TOML file with the same keys
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    // written by output headers, ignored on input
    #[allow(dead_code)]
    command: Option<String>,
    poly: Option<Vec<i64>>,
    digits: Option<u32>,
    #[serde(rename = "R")]
    r: Option<f64>,
    #[serde(rename = "L")]
    l: Option<f64>,
    #[serde(rename = "J")]
    j: Option<usize>,
    n: Option<Vec<u64>>,
    n_range: Option<String>,
    format: Option<String>,
    out: Option<String>,
    seed: Option<u64>,
    x_grid: Option<Vec<f64>>,
    theta_grid: Option<Vec<f64>>,
    q_max: Option<u64>,
    arc_x: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub poly: Vec<i64>,
    pub digits: u32,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "L")]
    pub l: f64,
    /// None means the largest admissible value
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub n: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_range: Option<String>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub seed: u64,
    pub x_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub q_max: u64,
    pub arc_x: f64,
}

fn split_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<T>().map_err(|e| anyhow::anyhow!("bad {what} entry {t:?}: {e}")))
        .collect()
}

/// `start:end[:step]`, inclusive.
pub fn expand_range(s: &str) -> Result<Vec<u64>> {
    let parts: Vec<u64> = s
        .split(':')
        .map(|t| t.trim().parse::<u64>().with_context(|| format!("bad n range {s:?}")))
        .collect::<Result<_>>()?;
    let (a, b, step) = match parts[..] {
        [a, b] => (a, b, 1),
        [a, b, c] => (a, b, c),
        _ => bail!("n range must be start:end[:step], got {s:?}"),
    };
    if step == 0 || a > b {
        bail!("empty or invalid n range {s:?}");
    }
    Ok((a..=b).step_by(step as usize).collect())
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<RunConfig> {
        let file = match &flags.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                toml::from_str::<FileConfig>(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let poly = match &flags.poly {
            Some(s) => split_list(s, "coefficient")?,
            None => file.poly.unwrap_or_else(|| vec![0, 0, 1]),
        };
        // a range or list on the command line replaces both file keys
        let (n, n_range) = if flags.n.is_some() || flags.n_range.is_some() {
            (flags.n.as_deref().map(|s| split_list(s, "n")).transpose()?.unwrap_or_default(), flags.n_range.clone())
        } else {
            (file.n.unwrap_or_default(), file.n_range)
        };
        let format = match flags.format.as_deref().or(file.format.as_deref()) {
            None | Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => bail!("unknown format {other:?}, expected csv or json"),
        };
        let cfg = RunConfig {
            poly,
            digits: flags.digits.or(file.digits).unwrap_or(64),
            r: flags.r.or(file.r).unwrap_or(polypart::phi::DEFAULT_R),
            l: flags.l.or(file.l).unwrap_or(polypart::phi::DEFAULT_L),
            j: flags.j.or(file.j),
            n,
            n_range,
            format,
            out: flags.out.as_ref().map(|p| p.display().to_string()).or(file.out),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            x_grid: match &flags.x_grid {
                Some(s) => split_list(s, "X")?,
                None => file.x_grid.unwrap_or_else(|| vec![1e2, 1e3, 1e4]),
            },
            theta_grid: match &flags.theta_grid {
                Some(s) => split_list(s, "Theta")?,
                None => file.theta_grid.unwrap_or_else(|| vec![0.0]),
            },
            q_max: flags.q_max.or(file.q_max).unwrap_or(30),
            arc_x: flags.arc_x.or(file.arc_x).unwrap_or(1e4),
        };
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<()> {
        if self.digits < 16 || self.digits > 10_000 {
            bail!("digits = {} outside 16..=10000", self.digits);
        }
        if !(self.r > 0.0 && self.r <= 1.0) {
            bail!("R = {} outside (0, 1]", self.r);
        }
        if !(self.l > 0.0 && self.l < 1.0) {
            bail!("L = {} outside (0, 1)", self.l);
        }
        if self.j == Some(0) {
            bail!("J must be at least 1");
        }
        if let Some(r) = &self.n_range {
            expand_range(r)?;
        }
        if self.x_grid.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            bail!("X values must be positive");
        }
        if self.theta_grid.iter().any(|t| !t.is_finite()) {
            bail!("Theta values must be finite");
        }
        if self.q_max < 2 {
            bail!("q_max must be at least 2");
        }
        if !(self.arc_x.is_finite() && self.arc_x > 0.0) {
            bail!("arc_x must be positive");
        }
        Ok(())
    }

    /// The n values, ascending and without repeats.
    pub fn n_values(&self) -> Result<Vec<u64>> {
        let mut v = match &self.n_range {
            Some(r) => expand_range(r)?,
            None => self.n.clone(),
        };
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    pub fn to_toml(&self, command: &str) -> String {
        #[derive(Serialize)]
        struct WithCommand<'a> {
            command: &'a str,
            #[serde(flatten)]
            cfg: &'a RunConfig,
        }
        toml::to_string(&WithCommand { command, cfg: self }).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_expansion() {
        assert_eq!(expand_range("1:5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(expand_range("10:40:10").unwrap(), vec![10, 20, 30, 40]);
        assert!(expand_range("5:1").is_err());
        assert!(expand_range("1:5:0").is_err());
        assert!(expand_range("x").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.toml");
        std::fs::write(&p, "poly = [0, 0, 0, 1]\ndigits = 40\nn = [5, 3]\n").unwrap();
        let flags = Flags { config: Some(p), digits: Some(30), ..Default::default() };
        let c = RunConfig::resolve(&flags).unwrap();
        assert_eq!(c.poly, vec![0, 0, 0, 1]);
        assert_eq!(c.digits, 30);
        assert_eq!(c.n_values().unwrap(), vec![3, 5]);
    }

    #[test]
    fn toml_round_trip() {
        let flags = Flags { n_range: Some("1:9:2".into()), j: Some(2), ..Default::default() };
        let c = RunConfig::resolve(&flags).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("echo.toml");
        std::fs::write(&p, c.to_toml("asym")).unwrap();
        let back = RunConfig::resolve(&Flags { config: Some(p), ..Default::default() }).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::resolve(&Flags { digits: Some(8), ..Default::default() }).is_err());
        assert!(RunConfig::resolve(&Flags { r: Some(1.5), ..Default::default() }).is_err());
        assert!(RunConfig::resolve(&Flags { format: Some("xml".into()), ..Default::default() }).is_err());
        assert!(RunConfig::resolve(&Flags { j: Some(0), ..Default::default() }).is_err());
    }
}
