//! Volume providers: vol^± computed internally, and tables of normalized
//! volumes vol(μ) loaded from JSON.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, Rational};
use crate::svgf::{vol_pm, OddSignature};

/// Source of the volume function used at decorations.
pub trait VolumeSource: Sync {
    fn vol(&self, mu: &[i64]) -> Result<Rational>;
    /// True for vol^± (spin differences).
    fn is_spin(&self) -> bool;
}

fn sorted_key(mu: &[i64]) -> Result<Vec<u32>> {
    if mu.is_empty() || mu.iter().any(|&m| m <= 0) {
        return Err(Error::Invalid(format!("signature {mu:?} must have positive entries")));
    }
    let mut k: Vec<u32> = mu.iter().map(|&m| m as u32).collect();
    k.sort_unstable_by(|a, b| b.cmp(a));
    Ok(k)
}

/// vol^±(μ) from the generating series; memoized.
#[derive(Default)]
pub struct SpinVolumes {
    cache: Mutex<HashMap<Vec<u32>, Rational>>,
}

impl SpinVolumes {
    pub fn new() -> Self {
        Self::default()
    }
}

impl VolumeSource for SpinVolumes {
    fn vol(&self, mu: &[i64]) -> Result<Rational> {
        let key = sorted_key(mu)?;
        if let Some(v) = self.cache.lock().expect("vol cache").get(&key) {
            return Ok(v.clone());
        }
        let v = vol_pm(&OddSignature::new(key.clone())?);
        self.cache.lock().expect("vol cache").insert(key, v.clone());
        Ok(v)
    }

    fn is_spin(&self) -> bool {
        true
    }
}

/// A table of normalized volumes keyed by signatures sorted decreasingly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VolumeTable {
    map: BTreeMap<Vec<u32>, Rational>,
}

impl VolumeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, mu: &[i64], v: Rational) -> Result<()> {
        if v.is_zero() {
            return Err(Error::Invalid(format!("zero volume for {mu:?}")));
        }
        self.map.insert(sorted_key(mu)?, v);
        Ok(())
    }

    pub fn get(&self, mu: &[i64]) -> Option<&Rational> {
        sorted_key(mu).ok().and_then(|k| self.map.get(&k))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.map.iter()
    }

    /// Parses `{"volumes": {"[m1,m2,...]": "p/q", ...}}`. Errors name the line
    /// of the offending key.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let line_of = |needle: &str| {
            text.lines().position(|l| l.contains(needle)).map(|i| i + 1).unwrap_or(0)
        };
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}: {e}", e.line())))?;
        let obj = v
            .get("volumes")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("expected an object {\"volumes\": {...}}".into()))?;
        let mut t = Self::new();
        for (k, val) in obj {
            let at = line_of(&format!("\"{k}\""));
            let mu: Vec<i64> = serde_json::from_str(k)
                .map_err(|_| Error::Parse(format!("line {at}: key {k} is not a list of integers")))?;
            let s = val
                .as_str()
                .ok_or_else(|| Error::Parse(format!("line {at}: value for {k} must be a \"p/q\" string")))?;
            let q = parse_rational(s).map_err(|e| Error::Parse(format!("line {at}: {e}")))?;
            t.insert(&mu, q).map_err(|e| Error::Parse(format!("line {at}: {e}")))?;
        }
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (k, v) in &self.map {
            let key = format!("[{}]", k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            m.insert(key, Value::String(fmt_rational(v)));
        }
        serde_json::json!({ "volumes": m })
    }
}

impl VolumeSource for VolumeTable {
    fn vol(&self, mu: &[i64]) -> Result<Rational> {
        self.get(mu).cloned().ok_or_else(|| Error::VolumeUnavailable(mu.to_vec()))
    }

    fn is_spin(&self) -> bool {
        false
    }
}
