pub mod asymptotics;
pub mod error;
pub mod exactfield;
pub mod extint;
pub mod families;
pub mod graded;
pub mod homology;
pub mod io;
pub mod par;

pub use error::{Error, Result};
pub use extint::ExtInt;
