use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cocycles,
    Schatten,
    SpectralTriple,
    Wzw,
    Dressed,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 5] = [
        Suite::Schatten,
        Suite::SpectralTriple,
        Suite::Cocycles,
        Suite::Wzw,
        Suite::Dressed,
    ];

    /// The suites a run executes, `All` expanded.
    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::SINGLE.to_vec(),
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cocycles => "cocycles",
            Suite::Schatten => "schatten",
            Suite::SpectralTriple => "spectral-triple",
            Suite::Wzw => "wzw",
            Suite::Dressed => "dressed",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::SINGLE)
            .find(|x| x.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(bad("format", s, "expected json, csv or text")),
        }
    }
}

/// Lie algebra of the WZW suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupChoice {
    Su2,
    Su3,
}

impl FromStr for GroupChoice {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "su2" => Ok(GroupChoice::Su2),
            "su3" => Ok(GroupChoice::Su3),
            _ => Err(bad("group", s, "expected su2 or su3")),
        }
    }
}

fn bad(key: &str, value: &str, reason: impl Into<String>) -> HarnessError {
    HarnessError::BadValue {
        key: key.into(),
        value: value.into(),
        reason: reason.into(),
    }
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e: T::Err| bad(key, value, e.to_string()))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    let items: Vec<T> = value
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_one(key, s))
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(bad(key, value, "empty list"));
    }
    Ok(items)
}

/// Every knob of a run. Loaded from a flat `key = value` file, then overridden
/// from the command line; lists are comma separated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub group: GroupChoice,
    /// Fractional orders for the spectral-triple suite.
    pub q: Vec<f64>,
    /// Cocycle orders.
    pub p: Vec<usize>,
    /// Half Schatten indices for the commutator law.
    pub schatten_p: Vec<usize>,
    /// Base window radius `K`; cocycle order `p` runs at `K (p + 1)`.
    pub window: usize,
    /// Bandwidth `Lambda` of random loops and of the flat `B`.
    pub bandwidth: usize,
    /// Number of seeded triples per cocycle order.
    pub samples: usize,
    /// Fock mode cutoff `N_f`.
    pub nf: usize,
    /// Level of the safe subspace in the WZW suite.
    pub level: usize,
    pub dressed_level: usize,
    pub dressed_bandwidth: usize,
    /// Products `q p` for the Dixmier scan.
    pub dixmier_qp: Vec<f64>,
    pub dixmier_n: u64,
    /// Per-family tolerance overrides, `tol.<family> = value`.
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            group: GroupChoice::Su2,
            q: vec![0.25, 0.5],
            p: vec![0, 1, 2],
            schatten_p: vec![1, 2, 3],
            window: 24,
            bandwidth: 2,
            samples: 50,
            nf: 3,
            level: 2,
            dressed_level: 1,
            dressed_bandwidth: 1,
            dixmier_qp: vec![0.5, 1.0, 2.0],
            dixmier_n: 1_000_000,
            tolerances: BTreeMap::new(),
            seed: 2024,
            out: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn for_suite(suite: Suite) -> Self {
        Self {
            suite,
            ..Self::default()
        }
    }

    /// Parses a config file body on top of the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| HarnessError::Syntax {
                line: i + 1,
                message: "expected `key = value`".into(),
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "suite" => self.suite = value.parse()?,
            "group" => self.group = value.parse()?,
            "q" => self.q = parse_list(key, value)?,
            "p" => self.p = parse_list(key, value)?,
            "schatten_p" => self.schatten_p = parse_list(key, value)?,
            "window" | "K" => self.window = parse_one(key, value)?,
            "bandwidth" | "Lambda" => self.bandwidth = parse_one(key, value)?,
            "samples" => self.samples = parse_one(key, value)?,
            "nf" => self.nf = parse_one(key, value)?,
            "level" | "L" => self.level = parse_one(key, value)?,
            "dressed_level" => self.dressed_level = parse_one(key, value)?,
            "dressed_bandwidth" => self.dressed_bandwidth = parse_one(key, value)?,
            "dixmier_qp" => self.dixmier_qp = parse_list(key, value)?,
            "dixmier_n" => self.dixmier_n = parse_one(key, value)?,
            "seed" => self.seed = parse_one(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            _ => match key.strip_prefix("tol.") {
                Some(family) if !family.is_empty() => {
                    let tol: f64 = parse_one(key, value)?;
                    if tol.is_nan() || tol < 0.0 {
                        return Err(bad(key, value, "tolerance must be non-negative"));
                    }
                    self.tolerances.insert(family.into(), tol);
                }
                _ => return Err(HarnessError::UnknownKey(key.into())),
            },
        }
        Ok(())
    }

    pub fn tolerance(&self, family: &str, default: f64) -> f64 {
        self.tolerances.get(family).copied().unwrap_or(default)
    }

    pub fn max_p(&self) -> usize {
        self.p.iter().copied().max().unwrap_or(0)
    }

    /// Window radius used for cocycle order `p`.
    pub fn window_for(&self, p: usize) -> usize {
        self.window * (p + 1)
    }

    /// Refuses configurations whose budgets cannot hold, before any computation.
    pub fn validate(&self) -> Result<()> {
        let members = self.suite.members();
        if self.bandwidth == 0 || self.dressed_bandwidth == 0 {
            return Err(HarnessError::Budget("bandwidth must be at least 1".into()));
        }
        if members.contains(&Suite::Cocycles) {
            let required = (2 * self.max_p() + 5) * self.bandwidth;
            if self.window < required {
                return Err(HarnessError::Budget(format!(
                    "window K = {} is below (2 max p + 5) Lambda = {required} for max p = {} and Lambda = {}",
                    self.window,
                    self.max_p(),
                    self.bandwidth
                )));
            }
            if self.samples == 0 {
                return Err(HarnessError::Budget("samples must be at least 1".into()));
            }
        }
        if members.contains(&Suite::Wzw) && self.nf < self.level + 1 {
            return Err(HarnessError::Budget(format!(
                "N_f = {} is below L + 1 = {}",
                self.nf,
                self.level + 1
            )));
        }
        if members.contains(&Suite::Dressed) && self.nf < self.dressed_level + 2 {
            return Err(HarnessError::Budget(format!(
                "N_f = {} leaves no mode range above dressed level {}; need at least {}",
                self.nf,
                self.dressed_level,
                self.dressed_level + 2
            )));
        }
        if members.contains(&Suite::SpectralTriple)
            && self.q.iter().any(|&q| !(q > 0.0 && q <= 1.0))
        {
            return Err(HarnessError::Budget(
                "fractional orders q must lie in (0, 1]".into(),
            ));
        }
        if members.contains(&Suite::Schatten) && self.schatten_p.contains(&0) {
            return Err(HarnessError::Budget(
                "Schatten half indices must be at least 1".into(),
            ));
        }
        Ok(())
    }
}
