//! Exact, 2-adic and analytic machinery for showing that the trace of the
//! Hecke operator `T2` on level-one cusp forms never repeats a value.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its arguments; IO, timing and report formatting live in the
//! companion `hecke-trace` crate.
//!
//! Modules, bottom-up:
//!
//! * [`exactmath`]: big integers, rationals, binomials and the ring `Z[ω]`
//!   with `ω² = ω − 2`.
//! * [`hurwitz`]: Hurwitz class numbers by reduced-form enumeration.
//! * [`trace`]: `Tr T_n` by the Eichler–Selberg formula, plus the
//!   combinatorial and recurrence formulas for `T2`.
//! * [`padic`]: fixed-precision `Q2` arithmetic, the 2-adic logarithm and
//!   the constants `Ω_t` controlling the valuation of the trace.
//! * [`bounds`]: logarithmic heights, linear-forms-in-logarithms bounds and
//!   the effective thresholds.
//! * [`search`]: fingerprinted collision searches over the finite ranges.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

mod error;

pub mod bounds;
pub mod exactmath;
pub mod hurwitz;
pub mod padic;
pub mod search;
pub mod trace;

pub use error::{Error, Result};
