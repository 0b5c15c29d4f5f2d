//! Experiment configuration files.
//!
//! The format is flat UTF-8 `key = value` lines. `#` starts a comment, blank
//! lines are ignored, and every key may appear at most once. Parsing checks
//! every value against the owning module's preconditions before anything is
//! computed.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ifm_core::mz::MzConfig;
use ifm_core::scatter::ApertureGrid;
use ifm_core::trigger::BombTrigger;
use ifm_core::well::WellBomb;
use serde::Serialize;

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Mz,
    Trials,
    Strategy,
    Trigger,
    Scatter,
    Well,
    Optimize,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Mz,
        Kind::Trials,
        Kind::Strategy,
        Kind::Trigger,
        Kind::Scatter,
        Kind::Well,
        Kind::Optimize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Mz => "mz",
            Kind::Trials => "trials",
            Kind::Strategy => "strategy",
            Kind::Trigger => "trigger",
            Kind::Scatter => "scatter",
            Kind::Well => "well",
            Kind::Optimize => "optimize",
        }
    }

    /// Keys accepted for this kind, besides the common `kind`, `seed`, `out`.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Kind::Mz => &["R", "bomb", "calibration_phase"],
            Kind::Trials => &["R", "bomb", "n"],
            Kind::Strategy => &["R", "max_photons", "mc_runs"],
            Kind::Trigger => &["delta_x", "p_th", "q", "error_budget", "q_max", "n_q"],
            Kind::Scatter => &["W", "a", "n_points", "k_in", "p_th"],
            Kind::Well => &["M", "omega", "q", "n_max"],
            Kind::Optimize => &["lambda", "n_grid"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ConfigError::UnknownKind(s.to_string()))
    }
}

/// Validated parameters, one variant per experiment kind.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Mz {
        #[serde(rename = "R")]
        r: f64,
        bomb: bool,
        calibration_phase: f64,
    },
    Trials {
        #[serde(rename = "R")]
        r: f64,
        bomb: bool,
        n: u64,
    },
    Strategy {
        #[serde(rename = "R")]
        r: f64,
        /// `None` for an unlimited budget.
        max_photons: Option<u64>,
        mc_runs: u64,
    },
    Trigger {
        delta_x: f64,
        p_th: f64,
        q: f64,
        error_budget: f64,
        q_max: f64,
        n_q: usize,
    },
    Scatter {
        #[serde(rename = "W")]
        width: f64,
        a: f64,
        n_points: usize,
        k_in: f64,
        p_th: f64,
    },
    Well {
        #[serde(rename = "M")]
        mass: f64,
        omega: f64,
        q: f64,
        n_max: usize,
    },
    Optimize {
        lambda: f64,
        n_grid: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub seed: u64,
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
    pub params: Params,
}

/// Parses a configuration document whose `kind` key names the experiment.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    parse_config_for(None, text)
}

/// Parses a configuration for a kind chosen outside the file (the CLI
/// subcommand). A `kind` key in the file, if present, must agree.
pub fn parse_config_for(kind: Option<Kind>, text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut entries = Entries::parse(text)?;
    let kind = match (kind, entries.take("kind")) {
        (Some(k), None) => k,
        (None, Some(name)) => name.parse()?,
        (Some(k), Some(name)) => {
            let declared: Kind = name.parse()?;
            if declared != k {
                return Err(ConfigError::KindMismatch {
                    requested: k.name(),
                    declared: declared.name(),
                });
            }
            k
        }
        (None, None) => return Err(ConfigError::MissingKey("kind")),
    };
    let seed = entries.optional("seed", 0u64)?;
    let out_dir = entries.take("out").map(PathBuf::from);
    let params = parse_params(kind, &mut entries)?;
    entries.reject_leftovers()?;
    Ok(ExperimentConfig {
        kind,
        seed,
        out_dir,
        params,
    })
}

fn parse_params(kind: Kind, e: &mut Entries) -> Result<Params, ConfigError> {
    let params = match kind {
        Kind::Mz => {
            let r = e.required("R")?;
            let bomb = e.optional("bomb", true)?;
            let calibration_phase = e.optional("calibration_phase", std::f64::consts::PI)?;
            MzConfig::with_phase(r, bomb, calibration_phase)?;
            Params::Mz {
                r,
                bomb,
                calibration_phase,
            }
        }
        Kind::Trials => {
            let r = e.required("R")?;
            let bomb = e.optional("bomb", true)?;
            let n: u64 = e.required("n")?;
            MzConfig::new(r, bomb)?;
            if n == 0 {
                return Err(ConfigError::constraint("n", "n >= 1"));
            }
            Params::Trials { r, bomb, n }
        }
        Kind::Strategy => {
            let r = e.required("R")?;
            let max_photons = match e.take("max_photons") {
                None => None,
                Some(v) if v == "inf" => None,
                Some(v) => Some(parse_value::<u64>("max_photons", &v, "an integer or `inf`")?),
            };
            let mc_runs = e.optional("mc_runs", 0u64)?;
            MzConfig::new(r, true)?;
            if max_photons == Some(0) {
                return Err(ConfigError::constraint("max_photons", "max_photons >= 1"));
            }
            Params::Strategy {
                r,
                max_photons,
                mc_runs,
            }
        }
        Kind::Trigger => {
            let delta_x = e.required("delta_x")?;
            let p_th = e.optional("p_th", f64::INFINITY)?;
            let q = e.optional("q", 0.0)?;
            let error_budget = e.optional("error_budget", 0.05)?;
            let trigger = BombTrigger::new(delta_x, p_th)?;
            ifm_core::trigger::kick_discrimination(&trigger, q)?;
            ifm_core::trigger::minimum_detectable_kick(&trigger, error_budget)?;
            let q_max = e.optional("q_max", 5.0 / delta_x)?;
            if !(q_max > 0.0 && q_max.is_finite()) {
                return Err(ConfigError::constraint("q_max", "finite q_max > 0"));
            }
            let n_q = e.optional("n_q", 101usize)?;
            if n_q < 2 {
                return Err(ConfigError::constraint("n_q", "n_q >= 2"));
            }
            Params::Trigger {
                delta_x,
                p_th,
                q,
                error_budget,
                q_max,
                n_q,
            }
        }
        Kind::Scatter => {
            let width = e.required("W")?;
            let a = e.required("a")?;
            let n_points = e.required("n_points")?;
            let k_in = e.required("k_in")?;
            let grid = ApertureGrid::new(width, n_points, a, k_in)?;
            grid.check_far_field_resolution()?;
            if grid.strip_cells() == 0 {
                return Err(ConfigError::constraint("a", "a > 0"));
            }
            let p_th = e.optional("p_th", 1.0 / grid.strip_width())?;
            if p_th.is_nan() || p_th < 0.0 {
                return Err(ConfigError::constraint("p_th", "p_th >= 0"));
            }
            Params::Scatter {
                width,
                a,
                n_points,
                k_in,
                p_th,
            }
        }
        Kind::Well => {
            let mass = e.required("M")?;
            let omega = e.required("omega")?;
            let q = e.required("q")?;
            let well = WellBomb::new(mass, omega)?;
            ifm_core::well::stay_probability(&well, q)?;
            let lambda = well.poisson_mean(q);
            let n_max = e.optional("n_max", ifm_core::well::recommended_n_max(lambda))?;
            if n_max < 1 {
                return Err(ConfigError::constraint("n_max", "n_max >= 1"));
            }
            Params::Well {
                mass,
                omega,
                q,
                n_max,
            }
        }
        Kind::Optimize => {
            let lambda = e.required("lambda")?;
            ifm_core::mz::objective(0.5, lambda)?;
            let n_grid = e.optional("n_grid", 1001usize)?;
            if n_grid < 2 {
                return Err(ConfigError::constraint("n_grid", "n_grid >= 2"));
            }
            Params::Optimize { lambda, n_grid }
        }
    };
    Ok(params)
}

fn parse_value<T: FromStr>(key: &str, value: &str, expected: &'static str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        expected,
    })
}

trait ConfigValue: FromStr {
    const EXPECTED: &'static str;
}

impl ConfigValue for f64 {
    const EXPECTED: &'static str = "a number";
}

impl ConfigValue for u64 {
    const EXPECTED: &'static str = "a non-negative integer";
}

impl ConfigValue for usize {
    const EXPECTED: &'static str = "a non-negative integer";
}

impl ConfigValue for bool {
    const EXPECTED: &'static str = "`true` or `false`";
}

struct Entries {
    values: BTreeMap<String, String>,
}

impl Entries {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: idx + 1,
                    text: raw.trim().to_string(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::Syntax {
                    line: idx + 1,
                    text: raw.trim().to_string(),
                });
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(ConfigError::DuplicateKey(key.to_string()));
            }
        }
        Ok(Entries { values })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    fn required<T: ConfigValue>(&mut self, key: &'static str) -> Result<T, ConfigError> {
        let value = self.take(key).ok_or(ConfigError::MissingKey(key))?;
        parse_value(key, &value, T::EXPECTED)
    }

    fn optional<T: ConfigValue>(&mut self, key: &'static str, default: T) -> Result<T, ConfigError> {
        match self.take(key) {
            Some(value) => parse_value(key, &value, T::EXPECTED),
            None => Ok(default),
        }
    }

    fn reject_leftovers(self) -> Result<(), ConfigError> {
        match self.values.into_keys().next() {
            Some(key) => Err(ConfigError::UnknownKey(key)),
            None => Ok(()),
        }
    }
}
