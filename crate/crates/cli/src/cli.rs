use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use reglab::graded::ModuleKind;
use reglab::homology::regularity;
use reglab::io::PresentationFile;
use reglab::{par, Error};

use crate::compute::{self, MapChoice, MIN_ASYMPTOTIC_N};
use crate::config::{Format, HomologyChoice, RunConfig, SetupChoice};
use crate::render::{closed_form_table, emit, Table};

/// Exit status when a value disagrees with its closed form or is not certified.
pub const EXIT_MISMATCH: i32 = 1;
/// Exit status for bad input.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "reglab",
    version,
    about = "Regularity tables for Tor and Ext over complete intersections"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Relation degree m of the first family.
    #[arg(long, global = true, default_value_t = 1)]
    pub m: u32,
    #[arg(long, global = true, default_value_t = 6)]
    pub n_max: u32,
    /// Overrides the degree cap derived from the closed forms.
    #[arg(long, global = true)]
    pub degree_cap: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Field characteristic for the first family (0 for the rationals).
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "REGLAB_JOBS", default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tor and Ext regularity of the first family against the linear formulas.
    Example1,
    /// Tor and Ext regularity of the characteristic 2 family against n + f(n).
    Example2,
    /// Generator counts and regularity of the coefficient ideals.
    CoeffIdeals,
    /// Symbolic identities of the matrix families.
    Identities {
        #[arg(long, value_enum, default_value_t = SetupChoice::One)]
        setup: SetupChoice,
    },
    /// Regularity of a module read from a presentation file.
    Reg { file: PathBuf },
    /// Eventual linearity of the regularity sequence on each parity.
    Asymptotics {
        #[arg(long, value_enum, default_value_t = SetupChoice::One)]
        setup: SetupChoice,
        #[arg(long, value_enum, default_value_t = HomologyChoice::Ext)]
        homology: HomologyChoice,
    },
    /// Writes one of the family matrices as a presentation file.
    Export {
        #[arg(long, value_enum, default_value_t = SetupChoice::One)]
        setup: SetupChoice,
        #[arg(long, value_enum, default_value_t = MapChoice::Phi)]
        map: MapChoice,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_kind, default_value = "cokernel")]
        kind: ModuleKind,
        /// Output path; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Closed-form predictions for n = 1..n_max.
    ClosedForms {
        #[arg(long, value_enum, default_value_t = SetupChoice::One)]
        setup: SetupChoice,
    },
}

fn parse_kind(s: &str) -> Result<ModuleKind, String> {
    match s {
        "cokernel" | "coker" => Ok(ModuleKind::Cokernel),
        "kernel" | "ker" => Ok(ModuleKind::Kernel),
        _ => Err(format!("expected cokernel or kernel, got {s:?}")),
    }
}

impl Common {
    fn config(&self, setup: SetupChoice) -> RunConfig {
        RunConfig {
            degree_cap: self.degree_cap,
            n_max: self.n_max,
            m: self.m,
            setup,
            characteristic: self.characteristic,
            format: self.format,
            jobs: self.jobs,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    let jobs = cli.common.jobs;
    let (r, buf, diag) = par::with_jobs(jobs, || {
        let mut buf = Vec::new();
        let mut diag = Vec::new();
        let r = dispatch(&cli, &mut buf, &mut diag);
        (r, buf, diag)
    });
    let _ = out.write_all(&buf);
    let _ = err.write_all(&diag);
    match r {
        Ok(true) => 0,
        Ok(false) => EXIT_MISMATCH,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>, err: &mut Vec<u8>) -> Result<bool, Failure> {
    let c = &cli.common;
    let format = c.format;
    match &cli.command {
        Command::Example1 => {
            let cfg = c.config(SetupChoice::One);
            let rows = compute::example1(&cfg)?;
            emit(out, format, &Table::of(&rows), &rows)?;
            let bad: Vec<u32> = rows.iter().filter(|r| !r.ok()).map(|r| r.n).collect();
            report_bad(err, &bad)
        }
        Command::Example2 => {
            if c.characteristic != 0 && c.characteristic != 2 {
                writeln!(err, "note: the second family is always taken over GF(2)")?;
            }
            let rep = compute::example2(&c.config(SetupChoice::Two))?;
            emit(out, format, &Table::of(&rep.rows), &rep)?;
            if format == Format::Table {
                let st = &rep.ratio_stats;
                writeln!(out, "reg/n over the window: min {}  max {}", st.min, st.max)?;
            }
            let bad: Vec<u32> = rep.rows.iter().filter(|r| !r.ok()).map(|r| r.n).collect();
            report_bad(err, &bad)
        }
        Command::CoeffIdeals => {
            let rows = compute::coeff_ideals(&c.config(SetupChoice::Two))?;
            emit(out, format, &Table::of(&rows), &rows)?;
            let bad: Vec<u32> = rows.iter().filter(|r| !r.ok()).map(|r| r.n).collect();
            report_bad(err, &bad)
        }
        Command::Identities { setup } => {
            let rows = compute::identities(&c.config(*setup))?;
            emit(out, format, &Table::of(&rows), &rows)?;
            let bad: Vec<u32> = rows.iter().filter(|r| !r.ok()).map(|r| r.n).collect();
            report_bad(err, &bad)
        }
        Command::Reg { file } => {
            let module = PresentationFile::read(file)?.to_module()?;
            let cap = c.degree_cap.unwrap_or_else(|| default_cap(module.map()));
            let rep = regularity(&module, cap)?;
            let table = Table {
                header: vec![
                    "regularity".into(),
                    "indeg".into(),
                    "certified".into(),
                    "cap".into(),
                ],
                rows: vec![vec![
                    rep.regularity.to_string(),
                    rep.indeg.to_string(),
                    rep.certified.to_string(),
                    cap.to_string(),
                ]],
            };
            emit(out, format, &table, &rep)?;
            if !rep.certified {
                writeln!(err, "not certified below degree {cap}; raise --degree-cap")?;
            }
            Ok(rep.certified)
        }
        Command::Asymptotics { setup, homology } => {
            if c.n_max < MIN_ASYMPTOTIC_N {
                writeln!(
                    err,
                    "asymptotics needs --n-max of at least {MIN_ASYMPTOTIC_N}"
                )?;
            }
            let rep = compute::asymptotics(&c.config(*setup), *homology)?;
            let table = Table {
                header: [
                    "parity",
                    "slope",
                    "intercept",
                    "onset",
                    "verdict",
                    "weight_check",
                ]
                .map(String::from)
                .to_vec(),
                rows: rep
                    .fits
                    .iter()
                    .map(|p| {
                        vec![
                            p.fit.parity.to_string(),
                            p.fit.slope.to_string(),
                            p.fit.intercept.to_string(),
                            p.fit.onset.to_string(),
                            serde_json::to_value(p.fit.verdict)
                                .ok()
                                .and_then(|v| v.as_str().map(String::from))
                                .unwrap_or_default(),
                            p.weight_check.to_string(),
                        ]
                    })
                    .collect(),
            };
            emit(out, format, &table, &rep)?;
            if !rep.ok() {
                writeln!(
                    err,
                    "computed values disagree with the closed forms or are uncertified"
                )?;
            }
            Ok(rep.ok())
        }
        Command::Export {
            setup,
            map,
            n,
            kind,
            output,
        } => {
            let file = compute::export_presentation(&c.config(*setup), *map, *n, *kind)?;
            let text = file.to_json();
            match output {
                Some(p) => std::fs::write(p, text + "\n")?,
                None => writeln!(out, "{text}")?,
            }
            Ok(true)
        }
        Command::ClosedForms { setup } => {
            let rows = compute::closed_forms(&c.config(*setup))?;
            emit(out, format, &closed_form_table(&rows), &rows)?;
            Ok(true)
        }
    }
}

/// Cap used by `reg` without `--degree-cap`.
pub fn default_cap(f: &reglab::graded::GradedMatrix) -> i64 {
    let top = f
        .domain()
        .max_twist()
        .into_iter()
        .chain(f.codomain().max_twist())
        .max()
        .unwrap_or(0);
    let v = f.ring().nvars() as i64;
    let e = f.max_entry_degree().unwrap_or(0).max(1);
    top.max(0) + 2 * v * e + 3
}

fn report_bad(err: &mut Vec<u8>, bad: &[u32]) -> Result<bool, Failure> {
    if bad.is_empty() {
        return Ok(true);
    }
    let list: Vec<String> = bad.iter().map(u32::to_string).collect();
    writeln!(err, "mismatch or uncertified at n = {}", list.join(", "))?;
    Ok(false)
}
