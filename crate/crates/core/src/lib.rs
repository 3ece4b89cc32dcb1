//! Nonequilibrium temperatures of finite-dimensional quantum states.

pub mod error;
pub mod extended;
pub mod basis;
pub mod bipartite;
pub mod hermitian;
pub mod models;
pub mod relation;
pub mod thermometry;

pub use error::{Error, Result};
pub use extended::ExtendedReal;
pub use basis::*;
pub use bipartite::*;
pub use hermitian::*;
pub use relation::*;
pub use thermometry::*;
