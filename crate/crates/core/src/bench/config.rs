//! `key = value` files: one pair per line, `#` starts a comment, lists are
//! comma separated and integer lists also accept `a..b` (half-open) ranges.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct KvConfig {
    path: PathBuf,
    entries: BTreeMap<String, (usize, String)>,
    used: RefCell<BTreeSet<String>>,
}

impl KvConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { path: path.clone(), line: i + 1, msg };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let k = k.trim();
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(err(format!("bad key `{k}`")));
            }
            if entries.insert(k.to_string(), (i + 1, v.trim().to_string())).is_some() {
                return Err(err(format!("duplicate key `{k}`")));
            }
        }
        Ok(Self { path, entries, used: RefCell::default() })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Every pair, in key order.
    pub fn echo(&self) -> BTreeMap<String, String> {
        self.entries.iter().map(|(k, (_, v))| (k.clone(), v.clone())).collect()
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), (0, value.into()));
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn raw(&self, key: &str) -> Option<(usize, &str)> {
        self.used.borrow_mut().insert(key.to_string());
        self.entries.get(key).map(|(l, v)| (*l, v.as_str()))
    }

    fn parse_err(&self, line: usize, key: &str, value: &str, what: &str) -> Error {
        Error::Parse { path: self.path.clone(), line, msg: format!("`{key}`: cannot read `{value}` as {what}") }
    }

    pub fn str(&self, key: &str) -> Result<Option<&str>> {
        Ok(self.raw(key).map(|(_, v)| v))
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> Result<&'a str> {
        Ok(self.str(key)?.unwrap_or(default))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| self.parse_err(line, key, v, std::any::type_name::<T>())),
        }
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| Error::Parse { path: self.path.clone(), line: 0, msg: format!("missing key `{key}`") })
    }

    /// Comma separated reals; `pi` multiples such as `1.5pi` are accepted.
    pub fn reals(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some((line, v)) = self.raw(key) else { return Ok(None) };
        v.split(',')
            .map(|t| parse_real(t.trim()).ok_or_else(|| self.parse_err(line, key, v, "a list of reals")))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn reals_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        Ok(self.reals(key)?.unwrap_or_else(|| default.to_vec()))
    }

    /// Comma separated integers or half-open `a..b` ranges; `1e5` style
    /// exponents are accepted when they denote an integer.
    pub fn ints(&self, key: &str) -> Result<Option<Vec<u64>>> {
        let Some((line, v)) = self.raw(key) else { return Ok(None) };
        let bad = || self.parse_err(line, key, v, "a list of integers");
        let mut out = Vec::new();
        for t in v.split(',').map(str::trim) {
            if let Some((a, b)) = t.split_once("..") {
                let a = parse_int(a.trim()).ok_or_else(bad)?;
                let b = parse_int(b.trim()).ok_or_else(bad)?;
                out.extend(a..b);
            } else {
                out.push(parse_int(t).ok_or_else(bad)?);
            }
        }
        Ok(Some(out))
    }

    pub fn ints_or(&self, key: &str, default: &[u64]) -> Result<Vec<u64>> {
        Ok(self.ints(key)?.unwrap_or_else(|| default.to_vec()))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.ints(key)? {
            None => Ok(default),
            Some(v) if v.len() == 1 => Ok(v[0] as usize),
            Some(_) => Err(Error::Parse {
                path: self.path.clone(),
                line: self.entries[key].0,
                msg: format!("`{key}` takes a single integer"),
            }),
        }
    }

    pub fn real_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.reals(key)? {
            None => Ok(default),
            Some(v) if v.len() == 1 => Ok(v[0]),
            Some(_) => Err(Error::Parse {
                path: self.path.clone(),
                line: self.entries[key].0,
                msg: format!("`{key}` takes a single number"),
            }),
        }
    }

    /// Fails on keys that were never looked up, which are almost always typos.
    pub fn finish(&self) -> Result<()> {
        let used = self.used.borrow();
        match self.entries.iter().find(|(k, _)| !used.contains(*k)) {
            None => Ok(()),
            Some((k, (line, _))) => Err(Error::Parse {
                path: self.path.clone(),
                line: *line,
                msg: format!("unknown key `{k}`"),
            }),
        }
    }
}

fn parse_real(t: &str) -> Option<f64> {
    if let Ok(x) = t.parse::<f64>() {
        return Some(x);
    }
    let (num, neg) = match t.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (t, false),
    };
    let coef = num.strip_suffix("pi")?.trim();
    let coef = if coef.is_empty() { 1.0 } else { coef.trim_end_matches('*').parse::<f64>().ok()? };
    let x = coef * std::f64::consts::PI;
    Some(if neg { -x } else { x })
}

fn parse_int(t: &str) -> Option<u64> {
    if let Ok(n) = t.parse::<u64>() {
        return Some(n);
    }
    let x: f64 = t.parse().ok()?;
    (x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(63)).then_some(x as u64)
}
