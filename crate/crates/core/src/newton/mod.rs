//! Minimum-valuation envelopes of polynomials and rational functions, local
//! polynomials, and the valuation predictions they give.

mod local;
mod pl;

pub use local::{
    check_polynomial_bound, local_poly, minval_poly, minval_rat, predict, simultaneous_attainment, slopes_check,
    sweep, LocalPoly, Prediction, SweepRow,
};
pub use pl::{PiecewiseLinear, Segment};
