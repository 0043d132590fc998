//! Run configuration: defaults, an optional TOML file, then flag overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hecke_trace_core::padic::DEFAULT_PRECISION;
use hecke_trace_core::search::{FingerprintBasis, DEFAULT_PRIMES};
use serde::Deserialize;

use crate::SuiteError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

impl FromStr for Format {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(SuiteError::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub precision_bits: u32,
    pub primes: Vec<u64>,
    pub a_max: u64,
    pub eps_max: u64,
    pub theorem_kmax: u64,
    /// Largest `k` in the three-way trace comparison.
    pub oracle_kmax: u64,
    /// Largest `n` in the binomial identities.
    pub identity_nmax: u64,
    /// Degree of the generating-function product check.
    pub product_degree: u64,
    /// Largest `k` in the valuation law and congruence table.
    pub valuation_kmax: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: DEFAULT_PRECISION,
            primes: DEFAULT_PRIMES.to_vec(),
            a_max: 352_000,
            eps_max: 302_000,
            theorem_kmax: 20_000,
            oracle_kmax: 2000,
            identity_nmax: 5000,
            product_degree: 2000,
            valuation_kmax: 1000,
            format: Format::default(),
            out: None,
        }
    }
}

/// The file form of [`Config`]; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub precision_bits: Option<u32>,
    pub primes: Option<Vec<u64>>,
    pub a_max: Option<u64>,
    pub eps_max: Option<u64>,
    pub theorem_kmax: Option<u64>,
    pub oracle_kmax: Option<u64>,
    pub identity_nmax: Option<u64>,
    pub product_degree: Option<u64>,
    pub valuation_kmax: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, SuiteError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SuiteError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, SuiteError> {
        toml::from_str(text).map_err(|e| SuiteError::Config(e.to_string()))
    }

    /// Layers `other` on top of `self`: keys set in `other` win.
    pub fn merge(self, other: ConfigFile) -> ConfigFile {
        ConfigFile {
            precision_bits: other.precision_bits.or(self.precision_bits),
            primes: other.primes.or(self.primes),
            a_max: other.a_max.or(self.a_max),
            eps_max: other.eps_max.or(self.eps_max),
            theorem_kmax: other.theorem_kmax.or(self.theorem_kmax),
            oracle_kmax: other.oracle_kmax.or(self.oracle_kmax),
            identity_nmax: other.identity_nmax.or(self.identity_nmax),
            product_degree: other.product_degree.or(self.product_degree),
            valuation_kmax: other.valuation_kmax.or(self.valuation_kmax),
            format: other.format.or(self.format),
            out: other.out.or(self.out),
        }
    }

    pub fn resolve(self) -> Result<Config, SuiteError> {
        let d = Config::default();
        let config = Config {
            precision_bits: self.precision_bits.unwrap_or(d.precision_bits),
            primes: self.primes.unwrap_or(d.primes),
            a_max: self.a_max.unwrap_or(d.a_max),
            eps_max: self.eps_max.unwrap_or(d.eps_max),
            theorem_kmax: self.theorem_kmax.unwrap_or(d.theorem_kmax),
            oracle_kmax: self.oracle_kmax.unwrap_or(d.oracle_kmax),
            identity_nmax: self.identity_nmax.unwrap_or(d.identity_nmax),
            product_degree: self.product_degree.unwrap_or(d.product_degree),
            valuation_kmax: self.valuation_kmax.unwrap_or(d.valuation_kmax),
            format: self.format.unwrap_or(d.format),
            out: self.out.or(d.out),
        };
        config.validate()?;
        Ok(config)
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), SuiteError> {
        if self.precision_bits < 32 {
            return Err(SuiteError::Config(format!(
                "precision_bits must be at least 32, got {}",
                self.precision_bits
            )));
        }
        let ranges = [
            ("a_max", self.a_max),
            ("eps_max", self.eps_max),
            ("theorem_kmax", self.theorem_kmax),
            ("oracle_kmax", self.oracle_kmax),
            ("identity_nmax", self.identity_nmax),
            ("product_degree", self.product_degree),
            ("valuation_kmax", self.valuation_kmax),
        ];
        for (name, value) in ranges {
            if value < 1 {
                return Err(SuiteError::Config(format!("{name} must be at least 1")));
            }
        }
        if self.theorem_kmax < 6 {
            return Err(SuiteError::Config("theorem_kmax must be at least 6".into()));
        }
        self.basis()?;
        Ok(())
    }

    pub fn basis(&self) -> Result<FingerprintBasis, SuiteError> {
        FingerprintBasis::new(self.primes.clone()).map_err(|e| SuiteError::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = ConfigFile::default().resolve().unwrap();
        assert_eq!(c.precision_bits, 96);
        assert_eq!(c.primes.len(), 3);
        assert_eq!(
            (c.a_max, c.eps_max, c.theorem_kmax),
            (352_000, 302_000, 20_000)
        );
    }

    #[test]
    fn flags_win_over_file() {
        let file =
            ConfigFile::parse("a_max = 100\nprecision_bits = 128\nformat = \"csv\"").unwrap();
        let flags = ConfigFile {
            a_max: Some(50),
            ..Default::default()
        };
        let c = file.merge(flags).resolve().unwrap();
        assert_eq!(c.a_max, 50);
        assert_eq!(c.precision_bits, 128);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn rejects_bad_values() {
        for text in [
            "precision_bits = 16",
            "primes = [4611686018427387847]",
            "eps_max = 0",
            "bogus = 1",
            "format = \"xml\"",
        ] {
            let r = ConfigFile::parse(text).and_then(ConfigFile::resolve);
            assert!(matches!(r, Err(SuiteError::Config(_))), "{text}");
        }
    }
}
