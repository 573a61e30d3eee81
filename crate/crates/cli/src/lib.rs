//! Batch front end: meshes, eigen-equation reports and spectra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod family;
pub mod output;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_INVALID: u8 = 3;
pub const EXIT_IO: u8 = 4;

pub fn exit_code(outcome: isogeo::spectral::Outcome) -> u8 {
    match outcome {
        isogeo::spectral::Outcome::Pass => EXIT_PASS,
        isogeo::spectral::Outcome::Fail => EXIT_FAIL,
        isogeo::spectral::Outcome::Inconclusive => EXIT_INCONCLUSIVE,
    }
}
