//! The explicit rational functions used to glue and separate finitely many
//! valuations (`θ`, `ψ`, `ρ`, the separator), the witnesses that `IntR(K, D)`
//! is not local for a pseudovaluation domain `D`, and exhaustive scans of
//! rational maps between finite fields.

mod scan;
mod singular;
mod witness;

pub use scan::{field_map_scan, ConstantInduced, FieldMapReport, FoundMap, MAX_DEGREE, MAX_SOURCE_ORDER, PAIR_BUDGET};
pub use singular::{
    build_psi, build_rho, build_separator, build_theta, psi_identity, theta_is_symmetric, verify_psi, verify_psi_table, verify_rho,
    verify_rho_characteristic, verify_separator, verify_theta, Construction, SingularData, PRESETS,
};
pub use witness::{notlocal_witness, verify_notlocal, NotLocalCase, NotLocalReport, NotLocalWitness};

#[cfg(test)]
mod tests;
