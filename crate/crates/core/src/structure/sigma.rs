//! Partitions of the set of all primes.
//!
//! Text syntax: classes separated by `|`, primes inside a class separated by
//! commas. A trailing `*` puts every unlisted prime in its own class (the
//! default), `*1` collects all unlisted primes into a single class.
//! Examples: `2,3|5|*`, `*`, `2|*1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RestRule {
    #[default]
    Singletons,
    OneClass,
}

/// Identifies one class of a [`SigmaPartition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaClass {
    Listed(usize),
    Single(u64),
    Rest,
}

/// A set of primes, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSet {
    Finite(Vec<u64>),
    AllExcept(Vec<u64>),
}

impl PrimeSet {
    pub fn single(p: u64) -> Self {
        PrimeSet::Finite(vec![p])
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Finite(v) => v.contains(&p),
            PrimeSet::AllExcept(v) => !v.contains(&p),
        }
    }

    /// True if every prime divisor of `n` lies in the set.
    pub fn divides_only(&self, n: u64) -> bool {
        factorize(n).iter().all(|&(p, _)| self.contains(p))
    }

    /// Largest divisor of `n` whose prime divisors lie in the set.
    pub fn part_of(&self, n: u64) -> u64 {
        factorize(n)
            .iter()
            .filter(|(p, _)| self.contains(*p))
            .map(|&(p, e)| p.pow(e))
            .product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SigmaPartition {
    classes: Vec<Vec<u64>>,
    rest: RestRule,
}

impl SigmaPartition {
    pub fn new(classes: Vec<Vec<u64>>, rest: RestRule) -> Result<Self> {
        let mut seen = Vec::new();
        let mut classes = classes;
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::InvalidInput("empty class in sigma partition".into()));
            }
            class.sort_unstable();
            for &p in class.iter() {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if seen.contains(&p) {
                    return Err(Error::InvalidInput(format!(
                        "prime {p} listed in two sigma classes"
                    )));
                }
                seen.push(p);
            }
        }
        Ok(SigmaPartition { classes, rest })
    }

    /// Every prime in its own class.
    pub fn singletons() -> Self {
        SigmaPartition::default()
    }

    /// All primes in one class.
    pub fn one_class() -> Self {
        SigmaPartition {
            classes: Vec::new(),
            rest: RestRule::OneClass,
        }
    }

    pub fn classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    pub fn rest_rule(&self) -> RestRule {
        self.rest
    }

    pub fn class_of(&self, p: u64) -> SigmaClass {
        match self.classes.iter().position(|c| c.contains(&p)) {
            Some(i) => SigmaClass::Listed(i),
            None => match self.rest {
                RestRule::Singletons => SigmaClass::Single(p),
                RestRule::OneClass => SigmaClass::Rest,
            },
        }
    }

    pub fn same_class(&self, p: u64, q: u64) -> bool {
        self.class_of(p) == self.class_of(q)
    }

    pub fn primes_of(&self, class: SigmaClass) -> PrimeSet {
        match class {
            SigmaClass::Listed(i) => PrimeSet::Finite(self.classes[i].clone()),
            SigmaClass::Single(p) => PrimeSet::single(p),
            SigmaClass::Rest => PrimeSet::AllExcept(self.classes.concat()),
        }
    }

    /// Classes meeting the prime divisors of `n`, in increasing order.
    pub fn classes_dividing(&self, n: u64) -> Vec<SigmaClass> {
        let mut out: Vec<SigmaClass> = factorize(n)
            .iter()
            .map(|&(p, _)| self.class_of(p))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// True if all prime divisors of `n` fall in a single class.
    pub fn is_primary(&self, n: u64) -> bool {
        self.classes_dividing(n).len() <= 1
    }
}

impl FromStr for SigmaPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut classes = Vec::new();
        let mut rest = RestRule::Singletons;
        if s.is_empty() {
            return Ok(SigmaPartition::singletons());
        }
        let parts: Vec<&str> = s.split('|').map(str::trim).collect();
        for (k, part) in parts.iter().enumerate() {
            match *part {
                "*" | "*1" if k + 1 == parts.len() => {
                    if *part == "*1" {
                        rest = RestRule::OneClass;
                    }
                }
                "*" | "*1" => {
                    return Err(Error::InvalidInput(
                        "rest rule must be the last sigma class".into(),
                    ))
                }
                _ => {
                    let mut class = Vec::new();
                    for tok in part.split(',').map(str::trim) {
                        let p: u64 = tok.parse().map_err(|_| {
                            Error::InvalidInput(format!("bad prime '{tok}' in sigma partition"))
                        })?;
                        class.push(p);
                    }
                    classes.push(class);
                }
            }
        }
        SigmaPartition::new(classes, rest)
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            let ps: Vec<String> = c.iter().map(u64::to_string).collect();
            write!(f, "{}|", ps.join(","))?;
        }
        match self.rest {
            RestRule::Singletons => write!(f, "*"),
            RestRule::OneClass => write!(f, "*1"),
        }
    }
}

impl Serialize for SigmaPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SigmaPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
