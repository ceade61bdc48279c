//! Exact enumeration and verification toolkit for alternating sign matrices.

pub mod asm;
pub mod chars;
pub mod error;
pub mod exact;
pub mod identities;
pub mod kuperberg;
pub mod linalg;

pub use error::{Error, Result};
