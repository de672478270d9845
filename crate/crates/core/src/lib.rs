//! Exact inequality systems for the Horn cone `Horn(n)` and the singular
//! Horn cone `Singular(p, q)` of singular spectra of `p × q` matrix sums.

pub mod cone;
pub mod error;
pub mod horn;
mod lp;
pub mod partitions;
pub mod schubert;
pub mod singular;

pub use error::{Error, Result};
