//! Exact computations in mesh categories of stable translation quivers and
//! homological tests for their representations.
#![no_std]

extern crate alloc;

pub mod error;
pub mod homology;
pub mod linalg;
pub mod matrix;
pub mod meshcat;
pub mod module;
pub mod oracle;
pub mod quiver;
pub mod repmod;
pub mod ring;

pub use error::{Error, Result};
