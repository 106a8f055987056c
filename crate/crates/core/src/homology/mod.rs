//! Graded Betti numbers, minimal free resolutions, regularity and exactness checks.

mod exactness;
mod koszul;
mod regularity;
mod report;
mod resolution;

pub use exactness::{check_complex_exactness, ExactnessReport, LeftEndVerdict, PositionVerdict};
pub use koszul::{koszul_betti, koszul_table};
pub use regularity::{kernel_betti, regularity};
pub use report::{BettiTable, RegularityMethod, RegularityReport};
pub use resolution::{
    image_generators, kernel_generators, minimal_resolution, minimize_presentation, Resolution,
};
