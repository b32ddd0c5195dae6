//! Twisted conjugacy classes of PSL_n(q) as racks.

pub mod abelian;
pub mod arith;
pub mod autos;
pub mod classifier;
pub mod error;
pub mod ffield;
pub mod group;
pub mod matgrp;
pub mod oracle;
pub mod rack;
pub mod special;
pub mod torus;
pub mod weyl;

pub use error::{Error, Result};
