use clap::ValueEnum;
use serde::Serialize;

use reglab::exactfield::FieldSpec;
use reglab::families::{Setup, Setup1Params, Setup2Params};
use reglab::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SetupChoice {
    #[value(name = "1", alias = "one")]
    One,
    #[value(name = "2", alias = "two")]
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyChoice {
    Tor,
    Ext,
}

/// Everything a command needs besides its own positional inputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Overrides the cap derived from the closed forms.
    pub degree_cap: Option<i64>,
    pub n_max: u32,
    pub m: u32,
    pub setup: SetupChoice,
    /// Characteristic for the first family; the second is always over GF(2).
    pub characteristic: u64,
    pub format: Format,
    /// Worker threads, 0 for the default pool.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            degree_cap: None,
            n_max: 6,
            m: 1,
            setup: SetupChoice::One,
            characteristic: 0,
            format: Format::Table,
            jobs: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::Parameter("--n-max must be at least 1".into()));
        }
        if let Some(c) = self.degree_cap {
            if c < 1 {
                return Err(Error::Parameter("--degree-cap must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Result<Setup> {
        Ok(match self.setup {
            SetupChoice::One => Setup::One(Setup1Params::new(
                self.m,
                FieldSpec::new(self.characteristic)?,
            )?),
            SetupChoice::Two => Setup::Two(Setup2Params::default()),
        })
    }

    pub fn with_setup(&self, setup: SetupChoice) -> Self {
        RunConfig {
            setup,
            ..self.clone()
        }
    }
}
