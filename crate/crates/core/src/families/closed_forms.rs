use serde::{Deserialize, Serialize};

use super::Setup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    RegTor,
    IndegTor,
    RegExt,
    IndegExt,
    RegCokerPhi,
    RegKerPhi,
    RegCokerPsi,
    IndegCokerPsi,
    /// `reg(R / I_n)` for the coefficient ideal.
    RegQuotientIdeal,
    IdealGenerators,
    /// The correction term `f(n)` in `reg Tor_n = n + f(n)`.
    F,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Quantity::RegTor,
        Quantity::IndegTor,
        Quantity::RegExt,
        Quantity::IndegExt,
        Quantity::RegCokerPhi,
        Quantity::RegKerPhi,
        Quantity::RegCokerPsi,
        Quantity::IndegCokerPsi,
        Quantity::RegQuotientIdeal,
        Quantity::IdealGenerators,
        Quantity::F,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::RegTor => "reg_tor",
            Quantity::IndegTor => "indeg_tor",
            Quantity::RegExt => "reg_ext",
            Quantity::IndegExt => "indeg_ext",
            Quantity::RegCokerPhi => "reg_coker_phi",
            Quantity::RegKerPhi => "reg_ker_phi",
            Quantity::RegCokerPsi => "reg_coker_psi",
            Quantity::IndegCokerPsi => "indeg_coker_psi",
            Quantity::RegQuotientIdeal => "reg_quotient_ideal",
            Quantity::IdealGenerators => "ideal_generators",
            Quantity::F => "f",
        }
    }

    /// Whether the quantity is defined for the given family.
    pub fn applies_to(self, setup: &Setup) -> bool {
        !matches!(
            (setup, self),
            (
                Setup::One(_),
                Quantity::RegQuotientIdeal | Quantity::IdealGenerators | Quantity::F
            )
        )
    }
}

/// `⌊log₂ n⌋`.
fn floor_log2(n: u32) -> u32 {
    31 - n.leading_zeros()
}

/// `2n` when `n = 2^l − 1`, otherwise `2^{l+1} − 1` for `2^l ≤ n ≤ 2^{l+1} − 2`.
pub fn f_of(n: u32) -> Result<i64> {
    if n < 1 {
        return Err(Error::Parameter("f(n) needs n ≥ 1".into()));
    }
    let l = floor_log2(n + 1);
    if n + 1 == 1 << l {
        Ok(2 * n as i64)
    } else {
        Ok((1i64 << (floor_log2(n) + 1)) - 1)
    }
}

/// Predicted value of `quantity` at index `n`.
pub fn closed_form(setup: &Setup, quantity: Quantity, n: u32) -> Result<i64> {
    if n < 1 {
        return Err(Error::Parameter("closed forms are stated for n ≥ 1".into()));
    }
    if !quantity.applies_to(setup) {
        return Err(Error::Parameter(format!(
            "{} is not defined for this family",
            quantity.name()
        )));
    }
    let ni = n as i64;
    Ok(match setup {
        Setup::One(p) => {
            let m = p.m as i64;
            match quantity {
                Quantity::RegTor => (m + 1) * ni + 2 * m - 2,
                Quantity::IndegTor => ni,
                Quantity::RegExt | Quantity::RegCokerPsi => -ni,
                Quantity::IndegExt | Quantity::IndegCokerPsi => -ni - m + 1,
                Quantity::RegCokerPhi => (m + 1) * ni + m - 3,
                Quantity::RegKerPhi => m * ni + m + ni - 1,
                _ => unreachable!("checked above"),
            }
        }
        Setup::Two(_) => {
            let top = (1i64 << floor_log2(n)) - 1;
            match quantity {
                Quantity::RegTor => ni + f_of(n)?,
                Quantity::IndegTor => ni,
                Quantity::RegExt
                | Quantity::IndegExt
                | Quantity::RegCokerPsi
                | Quantity::IndegCokerPsi => -ni,
                Quantity::RegCokerPhi => 2 * top + ni - 1,
                Quantity::RegKerPhi => 2 * top + ni + 1,
                Quantity::RegQuotientIdeal => 3 * top,
                Quantity::IdealGenerators => 3i64.pow(n.count_ones()),
                Quantity::F => f_of(n)?,
            }
        }
    })
}
