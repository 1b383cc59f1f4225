//! Resolved run configuration and its flat key-value form.
//!
//! Every report embeds the resolved configuration as a flat JSON object;
//! feeding that object back through `--config` must reproduce the same
//! results byte for byte.

use serde_json::{Map, Value};
use std::collections::BTreeMap;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CliError::parse(format!("unknown format `{other}`"))),
        }
    }
}

/// One fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub format: OutputFormat,
    /// Dimensionful annotations; labels only, never applied to numbers.
    pub k0: Option<f64>,
    pub ell: Option<f64>,
}

#[derive(Debug, Clone)]
pub enum CommandConfig {
    Bound {
        n0: usize,
        u: f64,
        tol: f64,
    },
    Spectrum {
        n0: usize,
        u: f64,
        tol: f64,
        states: bool,
    },
    DualityCheck {
        n0: usize,
        u: f64,
        tol: f64,
        nsites: usize,
    },
    Oracle {
        n0: usize,
        u: f64,
        nsites: usize,
        ipr_threshold: Option<f64>,
    },
    KpBands {
        upsilon: f64,
        samples: usize,
    },
    KpTune {
        width: f64,
        upsilon: f64,
        samples: usize,
    },
}

impl RunConfig {
    /// Flat key-value map mirroring the command-line flags; embedded in
    /// every report. BTreeMap keeps the key order deterministic.
    pub fn to_flat_map(&self) -> BTreeMap<String, Value> {
        let mut map = BTreeMap::new();
        let num = |v: f64| Value::from(v);
        match &self.command {
            CommandConfig::Bound { n0, u, tol } => {
                map.insert("command".into(), Value::from("bound"));
                map.insert("n0".into(), Value::from(*n0));
                map.insert("u".into(), num(*u));
                map.insert("tol".into(), num(*tol));
            }
            CommandConfig::Spectrum { n0, u, tol, states } => {
                map.insert("command".into(), Value::from("spectrum"));
                map.insert("n0".into(), Value::from(*n0));
                map.insert("u".into(), num(*u));
                map.insert("tol".into(), num(*tol));
                map.insert("states".into(), Value::from(*states));
            }
            CommandConfig::DualityCheck { n0, u, tol, nsites } => {
                map.insert("command".into(), Value::from("duality-check"));
                map.insert("n0".into(), Value::from(*n0));
                map.insert("u".into(), num(*u));
                map.insert("tol".into(), num(*tol));
                map.insert("nsites".into(), Value::from(*nsites));
            }
            CommandConfig::Oracle {
                n0,
                u,
                nsites,
                ipr_threshold,
            } => {
                map.insert("command".into(), Value::from("oracle"));
                map.insert("n0".into(), Value::from(*n0));
                map.insert("u".into(), num(*u));
                map.insert("nsites".into(), Value::from(*nsites));
                if let Some(t) = ipr_threshold {
                    map.insert("ipr_threshold".into(), num(*t));
                }
            }
            CommandConfig::KpBands { upsilon, samples } => {
                map.insert("command".into(), Value::from("kp-bands"));
                map.insert("upsilon".into(), num(*upsilon));
                map.insert("samples".into(), Value::from(*samples));
            }
            CommandConfig::KpTune {
                width,
                upsilon,
                samples,
            } => {
                map.insert("command".into(), Value::from("kp-tune"));
                map.insert("width".into(), num(*width));
                map.insert("upsilon".into(), num(*upsilon));
                map.insert("samples".into(), Value::from(*samples));
            }
        }
        map.insert("format".into(), Value::from(self.format.name()));
        if let Some(k0) = self.k0 {
            map.insert("k0".into(), num(k0));
        }
        if let Some(ell) = self.ell {
            map.insert("ell".into(), num(ell));
        }
        map
    }

    /// Parses the flat form back; unknown keys are rejected.
    pub fn from_flat_map(map: &Map<String, Value>) -> Result<Self, CliError> {
        let mut reader = FlatReader::new(map);
        let command_name = reader.required_str("command")?;
        let command = match command_name.as_str() {
            "bound" => CommandConfig::Bound {
                n0: reader.required_usize("n0")?,
                u: reader.required_f64("u")?,
                tol: reader.f64_or("tol", 1e-10)?,
            },
            "spectrum" => CommandConfig::Spectrum {
                n0: reader.required_usize("n0")?,
                u: reader.required_f64("u")?,
                tol: reader.f64_or("tol", 1e-10)?,
                states: reader.bool_or("states", false)?,
            },
            "duality-check" => CommandConfig::DualityCheck {
                n0: reader.required_usize("n0")?,
                u: reader.required_f64("u")?,
                tol: reader.f64_or("tol", 1e-10)?,
                nsites: reader.usize_or("nsites", 256)?,
            },
            "oracle" => CommandConfig::Oracle {
                n0: reader.required_usize("n0")?,
                u: reader.required_f64("u")?,
                nsites: reader.usize_or("nsites", 2000)?,
                ipr_threshold: reader.optional_f64("ipr_threshold")?,
            },
            "kp-bands" => CommandConfig::KpBands {
                upsilon: reader.required_f64("upsilon")?,
                samples: reader.usize_or("samples", 0)?,
            },
            "kp-tune" => CommandConfig::KpTune {
                width: reader.required_f64("width")?,
                upsilon: reader.required_f64("upsilon")?,
                samples: reader.usize_or("samples", 101)?,
            },
            other => {
                return Err(CliError::parse(format!("unknown command `{other}`")));
            }
        };
        let format = match reader.optional_str("format")? {
            Some(s) => OutputFormat::parse(&s)?,
            None => OutputFormat::Json,
        };
        let k0 = reader.optional_f64("k0")?;
        let ell = reader.optional_f64("ell")?;
        reader.finish()?;
        Ok(RunConfig {
            command,
            format,
            k0,
            ell,
        })
    }
}

/// Tracks which keys were consumed so leftovers can be rejected.
struct FlatReader<'a> {
    map: &'a Map<String, Value>,
    seen: Vec<&'a str>,
}

impl<'a> FlatReader<'a> {
    fn new(map: &'a Map<String, Value>) -> Self {
        FlatReader {
            map,
            seen: Vec::new(),
        }
    }

    fn take(&mut self, key: &str) -> Option<&'a Value> {
        let (k, v) = self.map.get_key_value(key)?;
        self.seen.push(k);
        Some(v)
    }

    fn required_str(&mut self, key: &str) -> Result<String, CliError> {
        self.optional_str(key)?
            .ok_or_else(|| CliError::parse(format!("config key `{key}` is required")))
    }

    fn optional_str(&mut self, key: &str) -> Result<Option<String>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(CliError::parse(format!("config key `{key}` must be a string"))),
        }
    }

    fn required_f64(&mut self, key: &str) -> Result<f64, CliError> {
        self.optional_f64(key)?
            .ok_or_else(|| CliError::parse(format!("config key `{key}` is required")))
    }

    fn optional_f64(&mut self, key: &str) -> Result<Option<f64>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| CliError::parse(format!("config key `{key}` must be a number"))),
        }
    }

    fn f64_or(&mut self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.optional_f64(key)?.unwrap_or(default))
    }

    fn required_usize(&mut self, key: &str) -> Result<usize, CliError> {
        match self.take(key) {
            None => Err(CliError::parse(format!("config key `{key}` is required"))),
            Some(v) => v
                .as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| {
                    CliError::parse(format!("config key `{key}` must be a nonnegative integer"))
                }),
        }
    }

    fn usize_or(&mut self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.take(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| {
                    CliError::parse(format!("config key `{key}` must be a nonnegative integer"))
                }),
        }
    }

    fn bool_or(&mut self, key: &str, default: bool) -> Result<bool, CliError> {
        match self.take(key) {
            None => Ok(default),
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => Err(CliError::parse(format!("config key `{key}` must be a boolean"))),
        }
    }

    fn finish(self) -> Result<(), CliError> {
        for key in self.map.keys() {
            if !self.seen.iter().any(|s| s == key) {
                return Err(CliError::parse(format!("unknown config key `{key}`")));
            }
        }
        Ok(())
    }
}
