//! `key = value` run configuration with flag > file > default precedence.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::UsageError;

#[derive(Clone, Debug, Default)]
pub struct Config {
    file: BTreeMap<String, String>,
    effective: BTreeMap<String, String>,
}

impl Config {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut file = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                UsageError(format!("config line {}: expected `key = value`", i + 1))
            })?;
            let k = k.trim();
            if k.is_empty() {
                return Err(UsageError(format!("config line {}: empty key", i + 1)));
            }
            file.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Self {
            file,
            effective: BTreeMap::new(),
        })
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("config {}: {e}", path.display())))?;
        Ok(Self::parse(&text)?)
    }

    /// Resolves `key`, recording the value used.
    pub fn resolve<T>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T, UsageError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let value = match flag {
            Some(v) => v,
            None => match self.file.get(key) {
                Some(s) => s
                    .parse()
                    .map_err(|e| UsageError(format!("config key `{key}` = `{s}`: {e}")))?,
                None => default,
            },
        };
        self.effective.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    /// Comma-separated list.
    pub fn resolve_list<T>(
        &mut self,
        key: &str,
        flag: Option<Vec<T>>,
        default: Vec<T>,
    ) -> Result<Vec<T>, UsageError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        let value = match flag {
            Some(v) => v,
            None => match self.file.get(key) {
                Some(s) => s
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse()
                            .map_err(|e| UsageError(format!("config key `{key}` item `{x}`: {e}")))
                    })
                    .collect::<Result<_, _>>()?,
                None => default,
            },
        };
        let joined: Vec<String> = value.iter().map(|v| v.to_string()).collect();
        self.effective.insert(key.to_string(), joined.join(","));
        Ok(value)
    }

    /// Keys from the file that no command consumed.
    pub fn unused_keys(&self) -> Vec<&str> {
        self.file
            .keys()
            .filter(|k| !self.effective.contains_key(*k))
            .map(String::as_str)
            .collect()
    }

    pub fn effective(&self) -> &BTreeMap<String, String> {
        &self.effective
    }

    /// SHA-256 of the resolved settings, one sorted `key = value` per line.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for (k, v) in &self.effective {
            h.update(format!("{k} = {v}\n").as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let mut c = Config::parse("# comment\nseed = 5\nsamples=10\n").unwrap();
        assert_eq!(c.resolve("seed", None, 1u64).unwrap(), 5);
        assert_eq!(c.resolve("samples", Some(3usize), 7).unwrap(), 3);
        assert_eq!(c.resolve("threads", None, 2usize).unwrap(), 2);
        assert!(c.unused_keys().is_empty());
        assert_eq!(c.effective()["samples"], "3");
    }

    #[test]
    fn lists_and_errors() {
        let mut c = Config::parse("q = 0.1, 0.2").unwrap();
        assert_eq!(
            c.resolve_list("q", None, vec![0.0f64]).unwrap(),
            vec![0.1, 0.2]
        );
        assert!(Config::parse("novalue").is_err());
        let mut c = Config::parse("seed = x").unwrap();
        assert!(c.resolve("seed", None, 0u64).is_err());
    }

    #[test]
    fn hash_depends_on_values() {
        let mut a = Config::empty();
        a.resolve("seed", Some(1u64), 0).unwrap();
        let mut b = Config::empty();
        b.resolve("seed", Some(2u64), 0).unwrap();
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
