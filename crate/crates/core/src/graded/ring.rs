use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;

/// A standard-graded polynomial ring over a field, optionally divided by pure powers
/// `x_i^{e_i}` of some of its variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRing")]
pub struct RingSpec {
    #[serde(rename = "characteristic")]
    field: FieldSpec,
    variables: Vec<String>,
    power_relations: Vec<Option<u32>>,
}

#[derive(Deserialize)]
struct RawRing {
    characteristic: FieldSpec,
    variables: Vec<String>,
    #[serde(default)]
    power_relations: Option<Vec<Option<u32>>>,
}

impl TryFrom<RawRing> for RingSpec {
    type Error = Error;

    fn try_from(raw: RawRing) -> Result<Self> {
        let rel = raw
            .power_relations
            .unwrap_or_else(|| vec![None; raw.variables.len()]);
        RingSpec::new(raw.characteristic, raw.variables, rel)
    }
}

impl RingSpec {
    pub fn new(
        field: FieldSpec,
        variables: Vec<String>,
        power_relations: Vec<Option<u32>>,
    ) -> Result<Self> {
        if variables.len() != power_relations.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} relation slots",
                variables.len(),
                power_relations.len()
            )));
        }
        for (i, v) in variables.iter().enumerate() {
            let valid = !v.is_empty()
                && v.chars()
                    .next()
                    .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("bad variable name {v:?}")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidRing(format!("variable {v} repeated")));
            }
        }
        if let Some(e) = power_relations.iter().flatten().find(|&&e| e < 2) {
            return Err(Error::InvalidRing(format!(
                "relation exponent {e} is below 2"
            )));
        }
        Ok(RingSpec {
            field,
            variables,
            power_relations,
        })
    }

    /// The polynomial ring on the given variable names.
    pub fn polynomial(field: FieldSpec, names: &[&str]) -> Result<Self> {
        Self::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            vec![None; names.len()],
        )
    }

    /// Polynomial ring modulo the squares of the variables flagged in `squared`.
    pub fn with_squares(field: FieldSpec, names: &[&str], squared: &[&str]) -> Result<Self> {
        let rel = names
            .iter()
            .map(|n| squared.contains(n).then_some(2))
            .collect();
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), rel)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn power_relations(&self) -> &[Option<u32>] {
        &self.power_relations
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.power_relations.iter().all(Option::is_none)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// The same variables with every relation dropped.
    pub fn ambient(&self) -> RingSpec {
        RingSpec {
            field: self.field,
            variables: self.variables.clone(),
            power_relations: vec![None; self.nvars()],
        }
    }

    pub fn with_field(&self, field: FieldSpec) -> RingSpec {
        RingSpec {
            field,
            ..self.clone()
        }
    }

    #[inline]
    pub fn is_normal(&self, exps: &[u32]) -> bool {
        exps.iter()
            .zip(&self.power_relations)
            .all(|(&a, e)| e.is_none_or(|e| a < e))
    }

    /// Normal-form monomials of the given degree in descending lexicographic order of their
    /// exponent vectors (so `x_0^d` comes first).
    pub fn monomial_basis(&self, degree: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        let v = self.nvars();
        if v == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        let mut exps = vec![0u32; v];
        self.fill(0, degree as u32, &mut exps, &mut out);
        out
    }

    fn fill(&self, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let cap = self.power_relations[i].map_or(left, |e| left.min(e - 1));
        if i + 1 == self.nvars() {
            if cap == left {
                exps[i] = left;
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        for a in (0..=cap).rev() {
            exps[i] = a;
            self.fill(i + 1, left - a, exps, out);
        }
        exps[i] = 0;
    }

    /// Number of normal-form monomials of the given degree.
    pub fn basis_size(&self, degree: i64) -> usize {
        if degree < 0 {
            return 0;
        }
        // coefficients of prod_i (1 + t + ... + t^{e_i - 1}) (or 1/(1-t))
        let d = degree as usize;
        let mut c = vec![0u64; d + 1];
        c[0] = 1;
        for e in &self.power_relations {
            let mut next = vec![0u64; d + 1];
            let mut window = 0u64;
            for k in 0..=d {
                window += c[k];
                if let Some(e) = e {
                    if k >= *e as usize {
                        window -= c[k - *e as usize];
                    }
                }
                next[k] = window;
            }
            c = next;
        }
        c[d] as usize
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (name, &a) in self.variables.iter().zip(m.exponents()) {
            match a {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{a}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.variables.join(","))?;
        let rels: Vec<String> = self
            .variables
            .iter()
            .zip(&self.power_relations)
            .filter_map(|(v, e)| e.map(|e| format!("{v}^{e}")))
            .collect();
        if !rels.is_empty() {
            write!(f, "/({})", rels.join(","))?;
        }
        Ok(())
    }
}

/// Exponent vector. The derived order is lexicographic; bases list monomials in
/// descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl std::borrow::Borrow<[u32]> for Monomial {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

/// Monomial basis of one graded piece with reverse lookup.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl DegreeBasis {
    pub fn new(ring: &RingSpec, degree: i64) -> Self {
        let monomials = ring.monomial_basis(degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        DegreeBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    #[inline]
    pub fn position(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).map(|&i| i as usize)
    }
}

/// Lazily grown table of monomial bases for degrees `0..`.
#[derive(Debug, Clone)]
pub struct BasisTable {
    ring: RingSpec,
    degrees: Vec<DegreeBasis>,
}

impl BasisTable {
    pub fn new(ring: &RingSpec) -> Self {
        BasisTable {
            ring: ring.clone(),
            degrees: Vec::new(),
        }
    }

    /// Makes sure every degree up to `degree` is present.
    pub fn reserve(&mut self, degree: i64) {
        while (self.degrees.len() as i64) <= degree {
            let d = self.degrees.len() as i64;
            self.degrees.push(DegreeBasis::new(&self.ring, d));
        }
    }

    /// Basis of a degree already reserved; `None` for negative degrees.
    #[inline]
    pub fn get(&self, degree: i64) -> Option<&DegreeBasis> {
        if degree < 0 {
            None
        } else {
            Some(
                self.degrees
                    .get(degree as usize)
                    .expect("degree was not reserved"),
            )
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }
}
