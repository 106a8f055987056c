//! Presentation files: a ring, a homogeneous matrix with string entries, and whether the
//! module is its kernel or cokernel.
//!
//! ```json
//! {
//!   "ring": {"characteristic": 2, "variables": ["U", "V", "W"]},
//!   "module": {"row_twists": [0], "column_twists": [1, 1, 1], "entries": [["U", "V", "W"]]},
//!   "kind": "cokernel"
//! }
//! ```
//!
//! Entries are sums of terms such as `3*x^2*y`, `-y*z`, `1/2*v` or `7`.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::graded::{GradedMatrix, ModuleKind, Monomial, Polynomial, PresentedModule, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleBlock {
    pub row_twists: Vec<i64>,
    pub column_twists: Vec<i64>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub ring: RingSpec,
    pub module: ModuleBlock,
    pub kind: ModuleKind,
}

impl PresentationFile {
    pub fn from_module(m: &PresentedModule) -> Self {
        let f = m.map();
        PresentationFile {
            ring: m.ring().clone(),
            module: ModuleBlock {
                row_twists: f.codomain().twists().to_vec(),
                column_twists: f.domain().twists().to_vec(),
                entries: f.to_strings(),
            },
            kind: m.kind(),
        }
    }

    /// Parses every entry and checks homogeneity.
    pub fn to_module(&self) -> Result<PresentedModule> {
        let ring = &self.ring;
        let rows = self
            .module
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_polynomial(ring, s)).collect())
            .collect::<Result<Vec<Vec<Polynomial>>>>()?;
        let map = GradedMatrix::from_rows(
            ring,
            self.module.row_twists.clone(),
            self.module.column_twists.clone(),
            rows,
        )?;
        Ok(PresentedModule::new(self.kind, map))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && f(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii slice")
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }
}

/// Parses a polynomial written with the ring's variable names.
pub fn parse_polynomial(ring: &RingSpec, text: &str) -> Result<Polynomial> {
    let field = ring.field();
    let mut lx = Lexer {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        if lx.eat(b'-') {
            negative = true;
        } else if !first && !lx.eat(b'+') {
            break;
        }
        first = false;
        let mut coeff = field.one();
        let mut exps = vec![0u32; ring.nvars()];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.take_while(|c| c.is_ascii_digit());
                    let n: BigInt = num.parse().map_err(|_| lx.error("bad integer"))?;
                    let d: BigInt = if lx.eat(b'/') {
                        let den = lx.take_while(|c| c.is_ascii_digit());
                        den.parse().map_err(|_| lx.error("bad denominator"))?
                    } else {
                        BigInt::from(1)
                    };
                    let value = field
                        .from_fraction(&n, &d)
                        .map_err(|e| Error::Parse(format!("coefficient {num}: {e}")))?;
                    coeff = field.mul(&coeff, &value);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = lx.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                    let i = ring
                        .var_index(name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    let mut e = 1u32;
                    if lx.eat(b'^') {
                        let d = lx.take_while(|c| c.is_ascii_digit());
                        e = d.parse().map_err(|_| lx.error("bad exponent"))?;
                    }
                    exps[i] += e;
                }
                _ => return Err(lx.error("expected a number or a variable")),
            }
            if !lx.eat(b'*') {
                break;
            }
        }
        if negative {
            coeff = field.neg(&coeff);
        }
        terms.push((Monomial::new(exps), coeff));
    }
    if lx.peek().is_some() {
        return Err(lx.error("unexpected character"));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Writes a presentation file for `m` at `path`.
pub fn write_presentation(path: &Path, m: &PresentedModule) -> Result<()> {
    std::fs::write(path, PresentationFile::from_module(m).to_json())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    fn ring(p: u64) -> RingSpec {
        RingSpec::polynomial(FieldSpec::new(p).unwrap(), &["y", "z", "v"]).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = ring(0);
        for s in ["y*z + v^2", "y - v^3", "2*y*z", "-y + 1/2*v", "0", "3"] {
            let p = parse_polynomial(&r, s).unwrap();
            assert_eq!(p.to_string_in(&r), s);
        }
        let p = parse_polynomial(&r, "y*y + 4*y^2").unwrap();
        assert_eq!(p.to_string_in(&r), "5*y^2");
    }

    #[test]
    fn modular_coefficients() {
        let r = ring(2);
        assert!(parse_polynomial(&r, "y + y").unwrap().is_zero());
        let r = ring(5);
        assert_eq!(
            parse_polynomial(&r, "1/2*y").unwrap().to_string_in(&r),
            "3*y"
        );
    }

    #[test]
    fn parse_errors() {
        let r = ring(0);
        for s in ["y +", "q", "y^", "y z", "*y", ""] {
            assert!(
                matches!(parse_polynomial(&r, s), Err(Error::Parse(_))),
                "{s:?}"
            );
        }
    }

    #[test]
    fn file_round_trip() {
        let text = r#"{
            "ring": {"characteristic": 2, "variables": ["U", "V", "W"]},
            "module": {"row_twists": [0], "column_twists": [1, 1, 1], "entries": [["U", "V", "W"]]},
            "kind": "cokernel"
        }"#;
        let f = PresentationFile::from_json(text).unwrap();
        let m = f.to_module().unwrap();
        let back = PresentationFile::from_module(&m);
        assert_eq!(back, f);
        assert_eq!(PresentationFile::from_json(&back.to_json()).unwrap(), f);
    }

    #[test]
    fn inhomogeneous_entry_is_rejected() {
        let text = r#"{
            "ring": {"characteristic": 0, "variables": ["U", "V"]},
            "module": {"row_twists": [0], "column_twists": [1, 1], "entries": [["U", "V^2"]]},
            "kind": "cokernel"
        }"#;
        let f = PresentationFile::from_json(text).unwrap();
        assert!(matches!(f.to_module(), Err(Error::Homogeneity { .. })));
    }
}
