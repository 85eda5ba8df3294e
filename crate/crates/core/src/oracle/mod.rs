//! Ground truth for checking approximations: a chart recognizer, bounded
//! enumeration of grammar languages, soundness and exactness reports, and
//! an exact construction for linear grammars.

mod chart;
mod check;
mod enumerate;
mod linear;

pub use chart::{cfg_accepts, ChartRecognizer};
pub use check::{check_exactness, check_soundness, Report};
pub use enumerate::{
    cfg_enumerate, enumerate_by_derivation, enumerate_by_membership, DEFAULT_BUDGET,
    DEFAULT_MAX_LEN,
};
pub use linear::{linear_to_fsa, Linearity};
