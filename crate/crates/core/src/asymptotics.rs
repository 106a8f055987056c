//! Eventual linearity of regularity sequences split by parity, and ratio statistics.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extint::ExtInt;

/// Equal consecutive differences needed to call a slice eventually linear.
pub const DEFAULT_THRESHOLD: usize = 3;

/// Values `n ↦ reg_n` over a contiguous range of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegSequence {
    values: BTreeMap<u32, ExtInt>,
}

impl RegSequence {
    pub fn new(values: BTreeMap<u32, ExtInt>) -> Result<Self> {
        if let (Some((&lo, _)), Some((&hi, _))) =
            (values.first_key_value(), values.last_key_value())
        {
            if (hi - lo + 1) as usize != values.len() {
                return Err(Error::Parameter(
                    "sequence indices are not contiguous".into(),
                ));
            }
        }
        Ok(RegSequence { values })
    }

    pub fn from_fn(range: std::ops::RangeInclusive<u32>, f: impl FnMut(u32) -> ExtInt) -> Self {
        let mut f = f;
        RegSequence {
            values: range.map(|n| (n, f(n))).collect(),
        }
    }

    pub fn values(&self) -> &BTreeMap<u32, ExtInt> {
        &self.values
    }

    pub fn get(&self, n: u32) -> Option<ExtInt> {
        self.values.get(&n).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The subsequence `i ↦ reg_{2i+ℓ}`.
    pub fn parity_slice(&self, parity: u32) -> Vec<(i64, ExtInt)> {
        self.values
            .iter()
            .filter(|(&n, _)| n % 2 == parity % 2)
            .map(|(&n, &v)| (((n - parity % 2) / 2) as i64, v))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EventuallyLinear,
    NotLinearInRange,
}

/// Line `a·i + e` through the longest suffix of constant differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFit {
    pub parity: u32,
    pub slope: i64,
    pub intercept: ExtInt,
    /// First index of the suffix.
    pub onset: i64,
    pub verdict: Verdict,
}

impl LinearFit {
    pub fn is_linear(&self) -> bool {
        self.verdict == Verdict::EventuallyLinear
    }
}

pub fn detect_linear(slice: &[(i64, ExtInt)], parity: u32) -> Result<LinearFit> {
    detect_linear_with(slice, parity, DEFAULT_THRESHOLD)
}

/// Longest suffix of `slice` (indices consecutive) with constant differences; linear when
/// that suffix holds at least `threshold` differences. A suffix of `−∞` values counts as
/// constant with intercept `−∞`.
pub fn detect_linear_with(
    slice: &[(i64, ExtInt)],
    parity: u32,
    threshold: usize,
) -> Result<LinearFit> {
    let needed = threshold + 1;
    if slice.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: slice.len(),
        });
    }
    if slice.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::Parameter("slice indices are not consecutive".into()));
    }
    let last = slice.len() - 1;
    let (i_last, v_last) = slice[last];
    if v_last == ExtInt::NegInf {
        let start = slice
            .iter()
            .rposition(|&(_, v)| v != ExtInt::NegInf)
            .map_or(0, |k| k + 1);
        return Ok(LinearFit {
            parity,
            slope: 0,
            intercept: ExtInt::NegInf,
            onset: slice[start].0,
            verdict: if last - start >= threshold {
                Verdict::EventuallyLinear
            } else {
                Verdict::NotLinearInRange
            },
        });
    }
    let finite = |k: usize| slice[k].1.finite();
    let mut start = last;
    let mut slope = None;
    while start > 0 {
        let (Some(a), Some(b)) = (finite(start - 1), finite(start)) else {
            break;
        };
        match slope {
            None => slope = Some(b - a),
            Some(s) if s == b - a => {}
            Some(_) => break,
        }
        start -= 1;
    }
    let slope = slope.unwrap_or(0);
    let intercept = v_last.finite().expect("finite") - slope * i_last;
    Ok(LinearFit {
        parity,
        slope,
        intercept: ExtInt::Finite(intercept),
        onset: slice[start].0,
        verdict: if last - start >= threshold {
            Verdict::EventuallyLinear
        } else {
            Verdict::NotLinearInRange
        },
    })
}

/// Whether `|slope|` is one of the degrees of the defining relations.
pub fn slope_weight_check(fit: &LinearFit, weights: &[i64]) -> bool {
    fit.is_linear() && weights.contains(&fit.slope.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TailWindow {
    pub from: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub min: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub max: Rational64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioStats {
    /// `(n, reg_n / n)`.
    #[serde(serialize_with = "ser_ratios")]
    pub ratios: Vec<(u32, Rational64)>,
    #[serde(serialize_with = "ser_ratio")]
    pub min: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub max: Rational64,
    /// Extremes of the ratio over `n ≥ from`, for each `from`.
    pub tails: Vec<TailWindow>,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_ratios<S: serde::Serializer>(
    v: &[(u32, Rational64)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (n, r) in v {
        seq.serialize_element(&(n, r.to_string()))?;
    }
    seq.end()
}

/// `reg_n / n` for `n ≥ 1` with running extremes on tail windows.
pub fn ratio_stats(seq: &RegSequence) -> Result<RatioStats> {
    let mut ratios = Vec::new();
    for (&n, v) in seq.values() {
        if n == 0 {
            continue;
        }
        let x = v
            .finite()
            .ok_or_else(|| Error::Parameter(format!("regularity at n = {n} is not finite")))?;
        ratios.push((n, Rational64::new(x, n as i64)));
    }
    if ratios.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let mut tails = Vec::with_capacity(ratios.len());
    let (mut lo, mut hi) = (ratios.last().unwrap().1, ratios.last().unwrap().1);
    for &(n, r) in ratios.iter().rev() {
        lo = lo.min(r);
        hi = hi.max(r);
        tails.push(TailWindow {
            from: n,
            min: lo,
            max: hi,
        });
    }
    tails.reverse();
    Ok(RatioStats {
        min: lo,
        max: hi,
        ratios,
        tails,
    })
}
