//! Existential and universal definitions of rings of S-integers and
//! semilocal subrings of the rationals, with the oracles that check them.

pub mod arith;
pub mod cert;
pub mod error;
pub mod formula;
pub mod harness;
pub mod local;
pub mod ring;
pub mod universal;

pub use error::{Error, Result};
