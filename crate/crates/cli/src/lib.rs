//! Command-line harness: tables of Tor and Ext regularity for the two example families,
//! coefficient ideals, symbolic identities, asymptotic fits, and regularity of arbitrary
//! presentation files.

pub mod cli;
pub mod compute;
pub mod config;
pub mod render;

pub use cli::run;
