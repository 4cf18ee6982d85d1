//! Dual curves of q-Frobenius plane curves over finite fields.

pub mod error;
pub mod gf;
pub mod linalg;

pub use error::{Error, Result};
pub mod census;
pub mod curves;
pub mod dualize;
pub mod ideals;
pub mod io;
pub mod mpoly;
