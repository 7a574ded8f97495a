//! Generalized hypergeometric series with a brute-force evaluator, the
//! generalized Dixon summation for `3F2` at unit argument, and a family of
//! quadratic transformations, plus a grid verifier that checks every closed
//! form against direct summation.

pub mod dixon;
pub mod error;
pub mod exton;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::PoleGuard;
pub use series::{
    eval_pfq, eval_pfq_terminating, PfqParams, SeriesControl, SeriesResult, SeriesStatus,
};
pub mod report;
pub mod verify;
