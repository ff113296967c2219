//! Flat `key = value` experiment configuration.
//!
//! Lines are `section.key = value`; `#` starts a comment. Every key must appear
//! in [`KEYS`] and belong to the chosen experiment. Environment variables named
//! `NCFRAC_<KEY>` override file values, with `.` written as `__`
//! (`NCFRAC_EVOLUTION__ALPHA=0.5`).

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const ENV_PREFIX: &str = "NCFRAC_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExperimentKind {
    Decay,
    Multiplier,
    Nonlinear,
    Validate,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 4] = [Self::Decay, Self::Multiplier, Self::Nonlinear, Self::Validate];

    pub fn name(self) -> &'static str {
        match self {
            Self::Decay => "decay",
            Self::Multiplier => "multiplier",
            Self::Nonlinear => "nonlinear",
            Self::Validate => "validate",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Self::Decay => "L^p-L^q decay sweep of a linear heat, Schrodinger or wave propagator",
            Self::Multiplier => "measured ||g(D)x||_q/||x||_p on random inputs against the weak-L^r symbol bound",
            Self::Nonlinear => "Picard iteration for the nonlinear heat or wave problem with certificate",
            Self::Validate => "the numerical validation battery",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment '{s}'; expected one of decay, multiplier, nonlinear, validate")))
    }
}

use ExperimentKind::{Decay as D, Multiplier as M, Nonlinear as N, Validate as V};

pub struct KeySpec {
    pub key: &'static str,
    pub default: &'static str,
    pub kinds: &'static [ExperimentKind],
    pub help: &'static str,
}

const ALL: &[ExperimentKind] = &[D, M, N, V];

pub const KEYS: &[KeySpec] = &[
    KeySpec { key: "experiment", default: "", kinds: ALL, help: "decay | multiplier | nonlinear | validate" },
    KeySpec { key: "seed", default: "0", kinds: ALL, help: "random seed" },
    KeySpec { key: "out", default: "out", kinds: ALL, help: "output directory" },
    KeySpec { key: "theta.d", default: "2", kinds: &[D, M, N], help: "dimension" },
    KeySpec { key: "theta.theta0", default: "1", kinds: &[D, M, N], help: "deformation strength; 0 is the commutative case" },
    KeySpec { key: "grid.half_width", default: "10", kinds: &[D, M, N], help: "symbol grid covers [-L, L)^d" },
    KeySpec { key: "grid.n", default: "64", kinds: &[D, M, N], help: "nodes per axis" },
    KeySpec { key: "rep.m", default: "64", kinds: &[M, N], help: "representation nodes per axis" },
    KeySpec { key: "evolution.kind", default: "heat", kinds: &[D], help: "heat | schrodinger | wave" },
    KeySpec { key: "evolution.alpha", default: "1", kinds: &[D], help: "Caputo order" },
    KeySpec { key: "evolution.lambda", default: "2", kinds: &[D], help: "sigma(xi) = |xi|^lambda" },
    KeySpec { key: "evolution.p", default: "1.3333333333333333", kinds: &[D], help: "source exponent" },
    KeySpec { key: "evolution.q", default: "4", kinds: &[D], help: "target exponent" },
    KeySpec { key: "evolution.u0", default: "gaussian(width=1)", kinds: &[D], help: "radial symbol family" },
    KeySpec { key: "evolution.u1", default: "none", kinds: &[D], help: "initial velocity (wave) or none" },
    KeySpec { key: "time.start", default: "10", kinds: &[D], help: "first sample time" },
    KeySpec { key: "time.end", default: "1000", kinds: &[D], help: "last sample time" },
    KeySpec { key: "time.points", default: "9", kinds: &[D], help: "log-spaced sample count" },
    KeySpec { key: "multiplier.symbol", default: "gaussian(a=1)", kinds: &[M], help: "identity | gaussian(a) | power(lambda) | propagator(kind,alpha,t,lambda)" },
    KeySpec { key: "multiplier.p", default: "1.3333333333333333", kinds: &[M], help: "1 < p <= 2" },
    KeySpec { key: "multiplier.q", default: "4", kinds: &[M], help: "2 <= q < inf" },
    KeySpec { key: "multiplier.samples", default: "50", kinds: &[M], help: "random inputs" },
    KeySpec { key: "multiplier.constant", default: "2", kinds: &[M], help: "reported constant C in ratio <= C * bound" },
    KeySpec { key: "picard.kind", default: "heat", kinds: &[N], help: "heat | wave" },
    KeySpec { key: "picard.p", default: "2", kinds: &[N], help: "integer power >= 2" },
    KeySpec { key: "picard.h", default: "constant(1)", kinds: &[N], help: "constant(c) | decay(g) for (1+t)^-g" },
    KeySpec { key: "picard.a", default: "identity", kinds: &[N], help: "multiplier A" },
    KeySpec { key: "picard.u0", default: "projector(amplitude=0.05)", kinds: &[N], help: "projector(amplitude) or a symbol family" },
    KeySpec { key: "picard.u1", default: "none", kinds: &[N], help: "initial velocity (wave)" },
    KeySpec { key: "picard.horizon", default: "0.5", kinds: &[N], help: "T, in units of picard.horizon_unit" },
    KeySpec { key: "picard.horizon_unit", default: "tstar", kinds: &[N], help: "tstar | absolute" },
    KeySpec { key: "picard.steps", default: "200", kinds: &[N], help: "uniform time steps" },
    KeySpec { key: "picard.tol", default: "1e-8", kinds: &[N], help: "stop when sup_t ||u_{n+1} - u_n|| <= tol" },
    KeySpec { key: "picard.max_iter", default: "60", kinds: &[N], help: "iteration cap" },
    KeySpec { key: "picard.c", default: "1.4142135623730951", kinds: &[N], help: "window constant c (heat) or c1 (wave), > 1" },
    KeySpec { key: "picard.delta", default: "1", kinds: &[N], help: "window constant delta >= 1" },
    KeySpec { key: "picard.override", default: "false", kinds: &[N], help: "run beyond the window estimate" },
    KeySpec { key: "picard.uniqueness", default: "1e-3", kinds: &[N], help: "uniqueness probe perturbation; 0 disables" },
    KeySpec { key: "small_data.gamma", default: "none", kinds: &[N], help: "decay exponent of ||h||_{L2(0,T)}; none skips the check" },
    KeySpec { key: "small_data.gamma0", default: "0.25", kinds: &[N], help: "0 < gamma0 < (2 gamma - 3)/p" },
    KeySpec { key: "small_data.c2", default: "2", kinds: &[N], help: "constant c2" },
    KeySpec { key: "validate.only", default: "all", kinds: &[V], help: "comma-separated criterion numbers or names" },
];

fn key_spec(key: &str) -> Option<&'static KeySpec> {
    KEYS.iter().find(|k| k.key == key)
}

/// Parses `key = value` text; duplicate keys are an error.
pub fn parse_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value'", no + 1)))?;
        let (k, v) = (k.trim().to_string(), v.trim().to_string());
        if k.is_empty() {
            return Err(Error::Config(format!("line {}: empty key", no + 1)));
        }
        if map.insert(k.clone(), v).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key '{k}'", no + 1)));
        }
    }
    Ok(map)
}

/// Fully resolved configuration: every key of the experiment has a value.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    kind: ExperimentKind,
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn from_map(raw: BTreeMap<String, String>) -> Result<Self> {
        let kind = ExperimentKind::parse(
            raw.get("experiment").ok_or_else(|| Error::Config("missing key 'experiment'".into()))?,
        )?;
        for k in raw.keys() {
            let spec = key_spec(k).ok_or_else(|| Error::Config(format!("unknown key '{k}'")))?;
            if !spec.kinds.contains(&kind) {
                return Err(Error::Config(format!("key '{k}' does not apply to experiment '{}'", kind.name())));
            }
        }
        let values = KEYS
            .iter()
            .filter(|s| s.kinds.contains(&kind))
            .map(|s| (s.key.to_string(), raw.get(s.key).cloned().unwrap_or_else(|| s.default.to_string())))
            .collect();
        let cfg = Self { kind, values };
        cfg.check_types()?;
        Ok(cfg)
    }

    pub fn from_str_with_env<I>(text: &str, env: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut raw = parse_text(text)?;
        for (name, value) in env {
            let Some(rest) = name.strip_prefix(ENV_PREFIX) else { continue };
            let key = rest.to_lowercase().replace("__", ".");
            if key_spec(&key).is_none() {
                return Err(Error::Config(format!("environment variable {name} names unknown key '{key}'")));
            }
            raw.insert(key, value);
        }
        Self::from_map(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_str_with_env(&text, std::env::vars())
    }

    pub fn kind(&self) -> ExperimentKind {
        self.kind
    }

    /// Replaces a value after resolution (command-line flags).
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        match self.values.get_mut(key) {
            Some(v) => {
                *v = value.into();
                self.check_types()
            }
            None => Err(Error::Config(format!("key '{key}' does not apply to experiment '{}'", self.kind.name()))),
        }
    }

    pub fn str(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or_else(|| panic!("key '{key}' not resolved"))
    }

    fn typed<T: FromStr>(&self, key: &str, what: &str) -> Result<T> {
        self.str(key)
            .parse::<T>()
            .map_err(|_| Error::Config(format!("key '{key}' must be {what}, got '{}'", self.str(key))))
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        let v: f64 = self.typed(key, "a number")?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Config(format!("key '{key}' must be finite")))
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        self.typed(key, "a nonnegative integer")
    }

    pub fn u64(&self, key: &str) -> Result<u64> {
        self.typed(key, "a nonnegative integer")
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        self.typed(key, "true or false")
    }

    /// `None` for the literal `none`.
    pub fn opt_f64(&self, key: &str) -> Result<Option<f64>> {
        if self.str(key) == "none" {
            Ok(None)
        } else {
            self.f64(key).map(Some)
        }
    }

    pub fn opt_str(&self, key: &str) -> Option<&str> {
        Some(self.str(key)).filter(|s| *s != "none")
    }

    fn check_types(&self) -> Result<()> {
        for (k, v) in &self.values {
            match k.as_str() {
                "seed" => {
                    self.u64(k)?;
                }
                "theta.d" | "grid.n" | "rep.m" | "time.points" | "multiplier.samples" | "picard.p" | "picard.steps"
                | "picard.max_iter" => {
                    self.usize(k)?;
                }
                "picard.override" => {
                    self.bool(k)?;
                }
                "small_data.gamma" => {
                    self.opt_f64(k)?;
                }
                "out" | "experiment" | "validate.only" | "picard.horizon_unit" => {}
                _ if k.starts_with("evolution.") && !matches!(k.as_str(), "evolution.alpha" | "evolution.lambda" | "evolution.p" | "evolution.q") => {}
                "multiplier.symbol" | "picard.kind" | "picard.h" | "picard.a" | "picard.u0" | "picard.u1" => {}
                _ => {
                    if v.is_empty() {
                        return Err(Error::Config(format!("key '{k}' is empty")));
                    }
                    self.f64(k)?;
                }
            }
        }
        Ok(())
    }

    /// `(key, value)` pairs for report headers, in key order.
    pub fn header(&self) -> Vec<(String, String)> {
        self.values.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    /// The resolved configuration as config text.
    pub fn render(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Result<Config> {
        Config::from_str_with_env(text, Vec::new())
    }

    #[test]
    fn defaults_fill_in() {
        let c = cfg("experiment = decay\n# comment\nevolution.alpha = 0.5  # trailing\n").unwrap();
        assert_eq!(c.kind(), ExperimentKind::Decay);
        assert_eq!(c.f64("evolution.alpha").unwrap(), 0.5);
        assert_eq!(c.f64("evolution.q").unwrap(), 4.0);
        assert_eq!(c.opt_str("evolution.u1"), None);
        assert!(c.header().iter().any(|(k, v)| k == "time.end" && v == "1000"));
        assert!(!c.header().iter().any(|(k, _)| k.starts_with("picard.")));
        assert_eq!(Config::from_map(parse_text(&c.render()).unwrap()).unwrap(), c);
    }

    #[test]
    fn unknown_and_misplaced_keys_are_named() {
        let e = cfg("experiment = decay\nalpha_ = 1\n").unwrap_err().to_string();
        assert!(e.contains("'alpha_'"), "{e}");
        let e = cfg("experiment = decay\npicard.p = 3\n").unwrap_err().to_string();
        assert!(e.contains("picard.p"), "{e}");
        assert!(cfg("evolution.alpha = 1\n").is_err());
        assert!(cfg("experiment = sweep\n").is_err());
        assert!(cfg("experiment = decay\nexperiment = decay\n").is_err());
        assert!(cfg("experiment = decay\nno equals sign\n").is_err());
    }

    #[test]
    fn values_are_type_checked() {
        let e = cfg("experiment = decay\nevolution.alpha = fast\n").unwrap_err().to_string();
        assert!(e.contains("evolution.alpha"), "{e}");
        assert!(cfg("experiment = nonlinear\npicard.steps = -1\n").is_err());
        assert!(cfg("experiment = nonlinear\npicard.override = maybe\n").is_err());
        assert!(cfg("experiment = nonlinear\nsmall_data.gamma = 2\n").is_ok());
        let mut c = cfg("experiment = nonlinear\n").unwrap();
        assert!(c.set("seed", "x").is_err());
        c.set("seed", "7").unwrap();
        assert_eq!(c.u64("seed").unwrap(), 7);
        assert!(c.set("evolution.alpha", "1").is_err());
    }

    #[test]
    fn environment_overrides() {
        let env = vec![
            ("NCFRAC_EVOLUTION__ALPHA".to_string(), "0.7".to_string()),
            ("NCFRAC_GRID__HALF_WIDTH".to_string(), "8".to_string()),
            ("PATH".to_string(), "/bin".to_string()),
        ];
        let c = Config::from_str_with_env("experiment = decay\nevolution.alpha = 0.5\n", env).unwrap();
        assert_eq!(c.f64("evolution.alpha").unwrap(), 0.7);
        assert_eq!(c.f64("grid.half_width").unwrap(), 8.0);
        let bad = vec![("NCFRAC_ALPHA".to_string(), "1".to_string())];
        assert!(Config::from_str_with_env("experiment = decay\n", bad).unwrap_err().to_string().contains("NCFRAC_ALPHA"));
    }
}
