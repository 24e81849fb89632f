#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convex;
pub mod cr;
pub mod error;
pub mod experiment;
pub mod floating;
pub mod holo;
pub mod numerics;

pub use error::{Error, Result};
