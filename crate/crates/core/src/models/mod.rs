//! Reference models and random-instance generators.

pub mod golden;
pub mod sampling;
pub mod spin_bath;
pub mod two_qubit;

pub use golden::*;
pub use sampling::*;
pub use spin_bath::*;
pub use two_qubit::*;
