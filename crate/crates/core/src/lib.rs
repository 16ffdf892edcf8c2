//! Combinatorial invariants of spherical varieties and the unramified
//! basic functions attached to them.
//!
//! Layers, bottom up: [`geometry`] (exact cones, lattices, LP),
//! [`roots`] (root data and characters), [`spherical`], [`unramified`],
//! [`oracle`] (brute-force local-field models), [`catalog`], [`cli`].

pub mod catalog;
pub mod cli;
pub mod config;
pub mod document;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod qlaurent;
pub mod roots;
pub mod spherical;
pub mod unramified;

pub use error::{Error, Result};
pub use qlaurent::QLaurent;
