//! Command-line front end for `rotkep`: argument parsing, command dispatch,
//! JSON and CSV encodings, and the acceptance suite behind `rotkep verify`.

// `!(x < y)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod args;
pub mod commands;
pub mod format;
pub mod rows;
pub mod verify;

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    /// An assertion or a required certificate did not hold.
    pub const ASSERTION_FAILED: i32 = 2;
    /// Closed form and crossing-form oracle disagree.
    pub const DISAGREE: i32 = 3;
    pub const USAGE: i32 = 64;
}
