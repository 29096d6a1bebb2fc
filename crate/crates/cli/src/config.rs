//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are skipped. Keys are the long
//! flag names without the leading dashes; `_` and `-` are interchangeable.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::Failure;

pub const KEYS: &[&str] = &[
    "p",
    "q",
    "route",
    "tol",
    "format",
    "out",
    "lambda-f",
    "lambda-p",
    "p-steps",
    "q-steps",
    "quad-tol",
    "max-levels",
    "rule",
];

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Failure::Usage(format!("--config: cannot read {}: {e}", path.display()))
        })?;
        Self::parse(&text)
            .map_err(|msg| Failure::Usage(format!("--config {}: {msg}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected `key = value`", n + 1));
            };
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", n + 1));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    /// The flag value if given, else the config value, else `None`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Failure> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| Failure::Usage(format!("--{key}: cannot parse config value `{raw}`"))),
        }
    }

    pub fn get_or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Failure> {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, Failure> {
        self.pick(flag, key)?.ok_or_else(|| {
            Failure::Usage(format!("--{key} is required (flag or config key `{key}`)"))
        })
    }
}
