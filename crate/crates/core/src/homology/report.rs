use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::extint::ExtInt;

/// Graded Betti numbers: `(j, d) → rank`, with the caps they were computed under.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
    pub degree_cap: i64,
    pub homological_cap: usize,
    pub complete: bool,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    j: usize,
    d: i64,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    entries: Vec<BettiEntry>,
    degree_cap: i64,
    homological_cap: usize,
    complete: bool,
}

impl BettiTable {
    pub fn new(degree_cap: i64, homological_cap: usize) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            degree_cap,
            homological_cap,
            complete: false,
        }
    }

    /// Adds `rank` to the entry `(j, d)`; zero ranks are ignored.
    pub fn add(&mut self, j: usize, d: i64, rank: usize) {
        if rank > 0 {
            *self.entries.entry((j, d)).or_insert(0) += rank;
        }
    }

    pub fn get(&self, j: usize, d: i64) -> usize {
        self.entries.get(&(j, d)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(j, d), &r)| (j, d, r))
    }

    /// Ranks in homological degree `j`, keyed by internal degree.
    pub fn row(&self, j: usize) -> BTreeMap<i64, usize> {
        self.entries()
            .filter(|&(k, _, _)| k == j)
            .map(|(_, d, r)| (d, r))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `max (d − j)`, or −∞ for an empty table.
    pub fn regularity(&self) -> ExtInt {
        self.entries()
            .map(|(j, d, _)| ExtInt::Finite(d - j as i64))
            .max()
            .unwrap_or(ExtInt::NegInf)
    }

    /// Whether two tables list the same ranks (caps and flags ignored).
    pub fn same_ranks(&self, other: &BettiTable) -> bool {
        self.entries == other.entries
    }

    /// Entries restricted to internal degrees `≤ d`.
    pub fn truncated(&self, d: i64) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|(&(_, e), _)| e <= d)
                .map(|(&k, &v)| (k, v))
                .collect(),
            ..self.clone()
        }
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BettiJson {
            entries: self
                .entries()
                .map(|(j, d, rank)| BettiEntry { j, d, rank })
                .collect(),
            degree_cap: self.degree_cap,
            homological_cap: self.homological_cap,
            complete: self.complete,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BettiJson::deserialize(d)?;
        let mut t = BettiTable::new(raw.degree_cap, raw.homological_cap);
        t.complete = raw.complete;
        for e in raw.entries {
            t.add(e.j, e.d, e.rank);
        }
        Ok(t)
    }
}

impl fmt::Display for BettiTable {
    /// Macaulay-style table: rows are `d − j`, columns `j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero)");
        }
        let jmax = self.entries.keys().map(|k| k.0).max().unwrap();
        let lo = self
            .entries
            .keys()
            .map(|&(j, d)| d - j as i64)
            .min()
            .unwrap();
        let hi = self
            .entries
            .keys()
            .map(|&(j, d)| d - j as i64)
            .max()
            .unwrap();
        write!(f, "{:>6}", "")?;
        for j in 0..=jmax {
            write!(f, "{j:>6}")?;
        }
        writeln!(f)?;
        for r in lo..=hi {
            write!(f, "{:>5}:", r)?;
            for j in 0..=jmax {
                match self.get(j, r + j as i64) {
                    0 => write!(f, "{:>6}", ".")?,
                    x => write!(f, "{x:>6}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityMethod {
    Betti,
    ArtinianTopDegree,
}

/// Regularity with the data that supports it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub regularity: ExtInt,
    pub indeg: ExtInt,
    /// Top nonzero degree when the module is known to be finite dimensional.
    pub end: Option<ExtInt>,
    pub certified: bool,
    pub method: RegularityMethod,
}

impl RegularityReport {
    pub fn zero_module(method: RegularityMethod) -> Self {
        RegularityReport {
            regularity: ExtInt::NegInf,
            indeg: ExtInt::PosInf,
            end: Some(ExtInt::NegInf),
            certified: true,
            method,
        }
    }
}
