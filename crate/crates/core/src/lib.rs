#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod error;
pub mod fd;
pub mod harmonic;
pub mod invariant;
pub mod iso;
pub mod jet;
pub mod profile;
pub mod spectral;
pub mod surface;

pub use error::{Error, Result};
