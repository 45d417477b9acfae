use std::path::PathBuf;
use std::str::FromStr;

use halphen::chilean::ChileanData;
use halphen::exactfield::{find_eps, Fp, PrimeCtx};
use halphen::{Field, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Incidence,
    Pencil,
    Lattice,
    Torsion,
    Invariants,
    Code,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Incidence, Suite::Pencil, Suite::Lattice, Suite::Torsion, Suite::Invariants, Suite::Code];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Incidence => "incidence",
            Suite::Pencil => "pencil",
            Suite::Lattice => "lattice",
            Suite::Torsion => "torsion",
            Suite::Invariants => "invariants",
            Suite::Code => "code",
        }
    }
}

/// Parses one suite name; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, ConfigError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Suite::ALL);
        } else {
            let found = Suite::ALL.iter().find(|x| x.name() == part).ok_or_else(|| ConfigError::Suite(part.into()))?;
            out.push(*found);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Specialized,
}

impl FromStr for Mode {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "specialized" => Ok(Mode::Specialized),
            _ => Err(ConfigError::Value("mode", s.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(ConfigError::Value("format", s.into())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown suite {0:?}")]
    Suite(String),
    #[error("bad value for --{0}: {1}")]
    Value(&'static str, String),
    #[error("GF({p}) with a = {a}: {reason}")]
    Specialization { p: u64, a: String, reason: String },
    #[error("cannot write {0}: {1}")]
    Output(PathBuf, std::io::Error),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    pub a: Rational,
    pub prime: Option<u64>,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub fail_fast: bool,
    pub jobs: Option<usize>,
    pub d_max: i64,
    pub p_max: u64,
    pub torsion_m: Option<u64>,
    pub quadratic_extension: bool,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Symbolic,
            a: Rational::from_integer(2.into()),
            prime: None,
            seed: 0,
            suites: Suite::ALL.to_vec(),
            output: None,
            format: Format::Text,
            fail_fast: false,
            jobs: None,
            d_max: 12,
            p_max: 500,
            torsion_m: None,
            quadratic_extension: false,
            timings: false,
        }
    }
}

/// One specialization of the configuration over a prime field.
#[derive(Clone, Debug)]
pub struct PrimeSpec {
    pub p: u64,
    pub data: ChileanData<Fp>,
}

/// The validated configuration: suites in canonical order and the prime specializations.
#[derive(Clone, Debug)]
pub struct Plan {
    pub config: RunConfig,
    pub suites: Vec<Suite>,
    pub primes: Vec<PrimeSpec>,
}

/// GF(p) with a given a-value, or the reason it is rejected.
pub fn specialize(p: u64, a: &Rational) -> Result<PrimeSpec, ConfigError> {
    let err = |reason: String| ConfigError::Specialization { p, a: a.to_string(), reason };
    let ctx = PrimeCtx::new(p).map_err(|e| err(e.to_string()))?;
    let eps = find_eps::<Fp>(&ctx).map_err(|e| err(e.to_string()))?;
    let av = Fp::from_rational(&ctx, a).map_err(|e| err(e.to_string()))?;
    let data = ChileanData::new(eps, av).map_err(|e| err(e.to_string()))?;
    Ok(PrimeSpec { p, data })
}

/// The three smallest primes below 1000 at which the a-value gives a valid configuration.
pub fn default_primes(a: &Rational) -> Result<Vec<PrimeSpec>, ConfigError> {
    let found: Vec<PrimeSpec> = (5u64..1000)
        .filter(|p| p % 3 == 1)
        .filter_map(|p| specialize(p, a).ok())
        .take(3)
        .collect();
    if found.len() < 3 {
        return Err(ConfigError::Value("a", format!("{a} is valid at only {} primes below 1000", found.len())));
    }
    Ok(found)
}

impl RunConfig {
    pub fn validate(self) -> Result<Plan, ConfigError> {
        let mut suites = self.suites.clone();
        suites.sort();
        suites.dedup();
        if suites.is_empty() {
            return Err(ConfigError::Value("suites", "empty".into()));
        }
        if self.d_max < 4 {
            return Err(ConfigError::Value("d-max", format!("{} is below the largest degree 4", self.d_max)));
        }
        if let Some(m) = self.torsion_m {
            if ![4, 5, 9].contains(&m) {
                return Err(ConfigError::Value("m", format!("{m} is not one of 4, 5, 9")));
            }
        }
        if self.p_max < 7 {
            return Err(ConfigError::Value("p-max", self.p_max.to_string()));
        }
        if self.jobs == Some(0) {
            return Err(ConfigError::Value("jobs", "0".into()));
        }
        let primes = match self.prime {
            Some(p) => vec![specialize(p, &self.a)?],
            None => default_primes(&self.a)?,
        };
        Ok(Plan { config: self, suites, primes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse_and_expand() {
        assert_eq!(parse_suites("all").unwrap(), Suite::ALL.to_vec());
        assert_eq!(parse_suites("code, lattice").unwrap(), vec![Suite::Code, Suite::Lattice]);
        assert!(parse_suites("lattice,cusps").is_err());
    }

    #[test]
    fn plan_orders_suites_and_finds_primes() {
        let plan = RunConfig { suites: vec![Suite::Code, Suite::Incidence, Suite::Code], ..RunConfig::default() }.validate().unwrap();
        assert_eq!(plan.suites, vec![Suite::Incidence, Suite::Code]);
        assert_eq!(plan.primes.iter().map(|s| s.p).collect::<Vec<_>>(), vec![13, 19, 31]);
    }

    #[test]
    fn rational_a_reduces_mod_p() {
        let a: Rational = "1/2".parse().unwrap();
        let s = specialize(19, &a).unwrap();
        assert_eq!(s.data.a().value(), 10);
        assert!(specialize(13, &a).is_err());
        assert!(specialize(13, &"1/13".parse().unwrap()).is_err());
        assert!(RunConfig { a: Rational::from_integer(1.into()), ..RunConfig::default() }.validate().is_err());
    }
}
