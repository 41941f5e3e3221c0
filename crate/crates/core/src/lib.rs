//! Exact counts of strings over a finite alphabet by digit sum and by their
//! order under cyclic shifts.
//!
//! - [`arith`]: big-integer helpers, divisors, factorization, the chain
//!   coefficient `q` and the ordered-factorization tally that justifies it.
//! - [`sumcount`]: strings with a given digit sum.
//! - [`cyclecount`]: closed-form and recursive cycle counts by order.
//! - [`enumerate`]: brute-force enumeration used as ground truth.
//! - [`verify`]: formula-versus-enumeration sweeps.
//! - [`cli`]: the command-line front end.

pub mod arith;
pub mod cli;
pub mod cyclecount;
pub mod enumerate;
pub mod error;
pub mod sumcount;
pub mod verify;

pub use arith::{Natural, SignedNatural};
pub use cyclecount::{CountTable, CycleCounter};
pub use error::{Error, Result};
