//! `key = value` run files.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::CliError;

pub const KEYS: &[&str] = &[
    "b1", "b2", "r", "s", "si", "format", "out", "seed", "h", "tol", "max-r", "max-s", "omega-min",
    "omega-max", "steps", "svg", "k3", "azimuth", "rapidity", "new-b1", "new-b2", "new-r", "new-s",
    "suite", "drop-k-term",
];

#[derive(Debug, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    /// Blank lines and `#` comments are skipped; keys may use `-` or `_`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("config line {}: expected `key = value`", n + 1)))?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::input(format!("config line {}: unknown key `{key}`", n + 1)));
            }
            values.insert(key, value.trim().to_owned());
        }
        Ok(Config { values })
    }

    /// The command-line value if given, else the file's.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.values
            .get(key)
            .map(|v| v.parse().map_err(|e| CliError::input(format!("config `{key}`: {e}"))))
            .transpose()
    }

    pub fn flag(&self, given: bool, key: &str) -> Result<bool, CliError> {
        Ok(given || self.pick::<bool>(None, key)?.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let c = Config::parse("# run\nb1 = 2.5\nseed=7  # trailing\n\nomega_min = 1.1\nsi = true\n").unwrap();
        assert_eq!(c.pick::<f64>(None, "b1").unwrap(), Some(2.5));
        assert_eq!(c.pick(Some(3.0), "b1").unwrap(), Some(3.0));
        assert_eq!(c.pick::<u64>(None, "seed").unwrap(), Some(7));
        assert_eq!(c.pick::<f64>(None, "omega-min").unwrap(), Some(1.1));
        assert_eq!(c.pick::<f64>(None, "k3").unwrap(), None);
        assert!(c.flag(false, "si").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(Config::parse("b1 2.5").is_err());
        assert!(Config::parse("colour = red").is_err());
        let c = Config::parse("seed = -1").unwrap();
        assert!(c.pick::<u64>(None, "seed").is_err());
    }
}
