//! Membership in rings and ideals of integer-valued rational functions.
//!
//! Certification works value range by value range: on open pieces between
//! breakpoints the envelope decides, at lattice breakpoints the local
//! polynomials decide for all but finitely many residue classes, and the
//! remaining classes are refined recursively.

mod domain;
mod engine;
mod ideals;

pub use domain::{intr_ideal_member, intr_member, ComponentCertificate, Domain, EvalSet, Target, Verdict};
pub use engine::{PieceRecord, PointRecord, RegionRecord};
pub use ideals::{characteristic_set, dichotomy_check, ideal_member, CharacteristicSet, Dichotomy, IdealSpec};

#[cfg(test)]
mod tests;
