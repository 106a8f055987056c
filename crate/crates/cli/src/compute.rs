//! Per-`n` work behind each command. Every function fans out over `n` with
//! [`reglab::par::map_vec`] and returns rows in index order.

use serde::Serialize;

use reglab::asymptotics::{
    detect_linear, ratio_stats, slope_weight_check, LinearFit, RatioStats, RegSequence,
};
use reglab::families::{
    self, closed_form, coefficient_ideal, expand_power, frobenius_product, setup1, setup2,
    Quantity, Setup,
};
use reglab::graded::{ModuleKind, PresentedModule};
use reglab::homology::{regularity, RegularityReport};
use reglab::io::PresentationFile;
use reglab::{par, Error, ExtInt, Result};

use crate::config::{HomologyChoice, RunConfig};

/// Regularity and initial degree of a direct sum of two summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Measured {
    pub regularity: ExtInt,
    pub indeg: ExtInt,
    pub certified: bool,
}

impl Measured {
    fn sum(a: &RegularityReport, b: &RegularityReport) -> Self {
        Measured {
            regularity: a.regularity.max(b.regularity),
            indeg: a.indeg.min(b.indeg),
            certified: a.certified && b.certified,
        }
    }
}

/// Default cap for `Tor_n`: the predicted regularity plus three.
pub fn tor_cap(setup: &Setup, n: u32) -> Result<i64> {
    Ok(closed_form(setup, Quantity::RegTor, n)? + 3)
}

/// Default cap for `Ext^n`. The kernel summand has generators above the predicted
/// regularity, so the slack grows with the number of variables times the entry degree.
pub fn ext_cap(setup: &Setup, n: u32) -> Result<i64> {
    let psi = setup.psi(n as usize + 1)?;
    let v = psi.ring().nvars() as i64;
    let e = psi.max_entry_degree().unwrap_or(0);
    Ok(closed_form(setup, Quantity::RegExt, n)? + 3 + v * e)
}

pub fn measure_tor(setup: &Setup, n: u32, cap: Option<i64>) -> Result<Measured> {
    let cap = match cap {
        Some(c) => c,
        None => tor_cap(setup, n)?,
    };
    let (k, c) = families::tor_module(setup, n as usize)?;
    Ok(Measured::sum(&regularity(&k, cap)?, &regularity(&c, cap)?))
}

pub fn measure_ext(setup: &Setup, n: u32, cap: Option<i64>) -> Result<Measured> {
    let cap = match cap {
        Some(c) => c,
        None => ext_cap(setup, n)?,
    };
    let (c, k) = families::ext_module(setup, n as usize)?;
    Ok(Measured::sum(&regularity(&c, cap)?, &regularity(&k, cap)?))
}

fn over_n<R: Send>(n_max: u32, f: impl Fn(u32) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
    par::map_vec((1..=n_max).collect(), f).into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example1Row {
    pub n: u32,
    pub indeg_tor: ExtInt,
    pub reg_tor: ExtInt,
    pub predicted_indeg_tor: i64,
    pub predicted_reg_tor: i64,
    pub indeg_ext: ExtInt,
    pub reg_ext: ExtInt,
    pub predicted_indeg_ext: i64,
    pub predicted_reg_ext: i64,
    pub certified: bool,
    pub tor_matches: bool,
    pub ext_matches: bool,
}

impl Example1Row {
    pub fn ok(&self) -> bool {
        self.certified && self.tor_matches && self.ext_matches
    }
}

pub fn example1(cfg: &RunConfig) -> Result<Vec<Example1Row>> {
    cfg.validate()?;
    let setup = cfg.with_setup(crate::config::SetupChoice::One).family()?;
    over_n(cfg.n_max, |n| {
        let tor = measure_tor(&setup, n, cfg.degree_cap)?;
        let ext = measure_ext(&setup, n, cfg.degree_cap)?;
        let q = |q| closed_form(&setup, q, n);
        let row = Example1Row {
            n,
            indeg_tor: tor.indeg,
            reg_tor: tor.regularity,
            predicted_indeg_tor: q(Quantity::IndegTor)?,
            predicted_reg_tor: q(Quantity::RegTor)?,
            indeg_ext: ext.indeg,
            reg_ext: ext.regularity,
            predicted_indeg_ext: q(Quantity::IndegExt)?,
            predicted_reg_ext: q(Quantity::RegExt)?,
            certified: tor.certified && ext.certified,
            tor_matches: false,
            ext_matches: false,
        };
        Ok(Example1Row {
            tor_matches: row.indeg_tor == row.predicted_indeg_tor.into()
                && row.reg_tor == row.predicted_reg_tor.into(),
            ext_matches: row.indeg_ext == row.predicted_indeg_ext.into()
                && row.reg_ext == row.predicted_reg_ext.into(),
            ..row
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example2Row {
    pub n: u32,
    pub indeg_tor: ExtInt,
    pub reg_tor: ExtInt,
    /// `n + f(n)`.
    pub predicted_reg_tor: i64,
    pub indeg_ext: ExtInt,
    pub reg_ext: ExtInt,
    pub certified: bool,
    pub tor_matches: bool,
    pub ext_matches: bool,
}

impl Example2Row {
    pub fn ok(&self) -> bool {
        self.certified && self.tor_matches && self.ext_matches
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example2Report {
    pub rows: Vec<Example2Row>,
    /// `reg Tor_n / n` over the computed window.
    pub ratio_stats: RatioStats,
}

impl Example2Report {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(Example2Row::ok)
    }
}

pub fn example2(cfg: &RunConfig) -> Result<Example2Report> {
    cfg.validate()?;
    let setup = cfg.with_setup(crate::config::SetupChoice::Two).family()?;
    let rows = over_n(cfg.n_max, |n| {
        let tor = measure_tor(&setup, n, cfg.degree_cap)?;
        let ext = measure_ext(&setup, n, cfg.degree_cap)?;
        let pred = closed_form(&setup, Quantity::RegTor, n)?;
        let minus_n = ExtInt::Finite(-(n as i64));
        Ok(Example2Row {
            n,
            indeg_tor: tor.indeg,
            reg_tor: tor.regularity,
            predicted_reg_tor: pred,
            indeg_ext: ext.indeg,
            reg_ext: ext.regularity,
            certified: tor.certified && ext.certified,
            tor_matches: tor.regularity == pred.into() && tor.indeg == (n as i64).into(),
            ext_matches: ext.regularity == minus_n && ext.indeg == minus_n,
        })
    })?;
    let seq = RegSequence::from_fn(1..=cfg.n_max, |n| rows[n as usize - 1].reg_tor);
    Ok(Example2Report {
        ratio_stats: ratio_stats(&seq)?,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffIdealRow {
    pub n: u32,
    pub generators: usize,
    /// `3^{popcount n}`.
    pub predicted_generators: usize,
    pub regularity: ExtInt,
    /// `3(2^l − 1)` with `2^l ≤ n < 2^{l+1}`.
    pub predicted_regularity: i64,
    /// Expansion of the power and the Frobenius product give the same generators.
    pub routes_agree: bool,
    pub certified: bool,
}

impl CoeffIdealRow {
    pub fn ok(&self) -> bool {
        self.routes_agree
            && self.certified
            && self.generators == self.predicted_generators
            && self.regularity == self.predicted_regularity.into()
    }
}

pub fn coeff_ideals(cfg: &RunConfig) -> Result<Vec<CoeffIdealRow>> {
    cfg.validate()?;
    let setup = cfg.with_setup(crate::config::SetupChoice::Two).family()?;
    let Setup::Two(p) = setup else {
        unreachable!("second family selected")
    };
    let ring = setup2::ring_r(&p);
    over_n(cfg.n_max, |n| {
        let ideal = coefficient_ideal(p.field, n)?;
        let pred = closed_form(&setup, Quantity::RegQuotientIdeal, n)?;
        let cap = cfg.degree_cap.unwrap_or(pred + 3);
        let rep = regularity(&ideal.quotient(&ring)?, cap)?;
        Ok(CoeffIdealRow {
            n,
            generators: ideal.generators.len(),
            predicted_generators: closed_form(&setup, Quantity::IdealGenerators, n)? as usize,
            regularity: rep.regularity,
            predicted_regularity: pred,
            routes_agree: expand_power(n) == frobenius_product(n),
            certified: rep.certified,
        })
    })
}

/// Symbolic identities of the families at index `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub n: u32,
    /// `B_n C_{n+1} + C_n B_{n+1} = 0`, resp. `E_n F_{n+1} + F_n E_{n+1} = 0`.
    pub anticommute: bool,
    /// `D_n D_{n+1} = 0`.
    pub d_squared: bool,
}

impl IdentityRow {
    pub fn ok(&self) -> bool {
        self.anticommute && self.d_squared
    }
}

pub fn identities(cfg: &RunConfig) -> Result<Vec<IdentityRow>> {
    cfg.validate()?;
    let setup = cfg.family()?;
    over_n(cfg.n_max, |n| {
        let n_ = n as usize;
        let (sum, d0, d1) = match &setup {
            Setup::One(p) => (
                setup1::bc_plus_cb(p, n_)?,
                setup1::build_d(p, n_)?,
                setup1::build_d(p, n_ + 1)?,
            ),
            Setup::Two(p) => (
                setup2::ef_plus_fe(p, n_)?,
                setup2::build_d(p, n_)?,
                setup2::build_d(p, n_ + 1)?,
            ),
        };
        Ok(IdentityRow {
            n,
            anticommute: sum.is_zero(),
            d_squared: d0.compose(&d1)?.is_zero(),
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityFit {
    #[serde(flatten)]
    pub fit: LinearFit,
    pub weight_check: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticsReport {
    pub setup: Setup,
    pub homology: HomologyChoice,
    /// Degrees of the defining relations.
    pub weights: Vec<i64>,
    pub sequence: RegSequence,
    pub fits: Vec<ParityFit>,
    pub ratio_stats: Option<RatioStats>,
    pub certified: bool,
    /// Every computed value equals its closed form.
    pub matches: bool,
}

impl AsymptoticsReport {
    pub fn ok(&self) -> bool {
        self.certified && self.matches
    }
}

/// Smallest window that gives both parity slices enough terms.
pub const MIN_ASYMPTOTIC_N: u32 = 8;

pub fn asymptotics(cfg: &RunConfig, homology: HomologyChoice) -> Result<AsymptoticsReport> {
    cfg.validate()?;
    if cfg.n_max < MIN_ASYMPTOTIC_N {
        return Err(Error::InsufficientData {
            needed: MIN_ASYMPTOTIC_N as usize,
            got: cfg.n_max as usize,
        });
    }
    let setup = cfg.family()?;
    let measured = over_n(cfg.n_max, |n| {
        let (m, q) = match homology {
            HomologyChoice::Tor => (measure_tor(&setup, n, cfg.degree_cap)?, Quantity::RegTor),
            HomologyChoice::Ext => (measure_ext(&setup, n, cfg.degree_cap)?, Quantity::RegExt),
        };
        Ok((m, closed_form(&setup, q, n)?))
    })?;
    let sequence = RegSequence::from_fn(1..=cfg.n_max, |n| measured[n as usize - 1].0.regularity);
    let weights: Vec<i64> = setup
        .ring()
        .power_relations()
        .iter()
        .flatten()
        .map(|&e| e as i64)
        .collect();
    let fits = [0, 1]
        .into_iter()
        .map(|parity| {
            let fit = detect_linear(&sequence.parity_slice(parity), parity)?;
            Ok(ParityFit {
                weight_check: slope_weight_check(&fit, &weights),
                fit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ratio_stats = match homology {
        HomologyChoice::Tor => Some(ratio_stats(&sequence)?),
        HomologyChoice::Ext => None,
    };
    Ok(AsymptoticsReport {
        setup,
        homology,
        weights,
        fits,
        ratio_stats,
        certified: measured.iter().all(|(m, _)| m.certified),
        matches: measured.iter().all(|(m, p)| m.regularity == (*p).into()),
        sequence,
    })
}

/// Closed-form predictions for every quantity defined on the family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormRow {
    pub n: u32,
    pub values: Vec<(Quantity, i64)>,
}

pub fn closed_forms(cfg: &RunConfig) -> Result<Vec<ClosedFormRow>> {
    cfg.validate()?;
    let setup = cfg.family()?;
    (1..=cfg.n_max)
        .map(|n| {
            let values = Quantity::ALL
                .into_iter()
                .filter(|q| q.applies_to(&setup))
                .map(|q| Ok((q, closed_form(&setup, q, n)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ClosedFormRow { n, values })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
pub enum MapChoice {
    /// The map whose kernel and cokernel give Tor.
    Phi,
    /// Its dual, for Ext.
    Psi,
    /// A differential of the resolution over the quotient ring.
    D,
}

/// Presentation file for one of the family matrices.
pub fn export_presentation(
    cfg: &RunConfig,
    map: MapChoice,
    n: u32,
    kind: ModuleKind,
) -> Result<PresentationFile> {
    let setup = cfg.family()?;
    let f = match (map, &setup) {
        (MapChoice::Phi, s) => s.phi(n as usize)?,
        (MapChoice::Psi, s) => s.psi(n as usize)?,
        (MapChoice::D, Setup::One(p)) => setup1::build_d(p, n as usize)?,
        (MapChoice::D, Setup::Two(p)) => setup2::build_d(p, n as usize)?,
    };
    Ok(PresentationFile::from_module(&PresentedModule::new(
        kind, f,
    )))
}
