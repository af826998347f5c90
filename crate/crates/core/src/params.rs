//! Named parameter points shared by the sum evaluator, the identity catalog
//! and the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, to_i64, Rational};

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params(BTreeMap<String, Rational>);

impl Params {
    pub fn new() -> Self {
        Params(BTreeMap::new())
    }

    pub fn with_int(mut self, name: &str, v: i64) -> Self {
        self.0.insert(name.to_string(), int(v));
        self
    }

    pub fn with_rat(mut self, name: &str, v: Rational) -> Self {
        self.0.insert(name.to_string(), v);
        self
    }

    pub fn set(&mut self, name: &str, v: Rational) {
        self.0.insert(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.0.iter()
    }

    pub fn rat(&self, owner: &str, name: &str) -> Result<Rational> {
        self.0.get(name).cloned().ok_or_else(|| Error::MissingParam {
            id: owner.to_string(),
            name: name.to_string(),
        })
    }

    /// Like [`Params::rat`] but absent values default to zero.
    pub fn rat_or_zero(&self, name: &str) -> Rational {
        self.0.get(name).cloned().unwrap_or_else(|| int(0))
    }

    pub fn int(&self, owner: &str, name: &str) -> Result<i64> {
        let v = self.rat(owner, name)?;
        to_i64(&v).ok_or_else(|| Error::NotInteger {
            name: name.to_string(),
            value: format_rational(&v),
        })
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{k}={}", format_rational(v))?;
        }
        Ok(())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<&str, String> = self
            .0
            .iter()
            .map(|(k, v)| (k.as_str(), format_rational(v)))
            .collect();
        m.serialize(s)
    }
}
