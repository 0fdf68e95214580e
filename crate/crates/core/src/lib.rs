//! Exact valuation-theoretic machinery for rings of integer-valued rational
//! functions: value groups, valued fields and their pseudovaluation pullbacks,
//! minimum-valuation envelopes, membership certification, and the explicit
//! rational functions used to separate and glue valuations.

pub mod constructions;
pub mod error;
pub mod fields;
pub mod intr;
pub mod newton;
pub mod ordgroup;
pub mod par;
pub mod ratfun;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
