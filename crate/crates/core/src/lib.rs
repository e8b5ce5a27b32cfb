//! Combinatorial workbench for real plane curves built by Viro's
//! patchworking.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every algorithmic
//! piece; file formats, the command line and SVG rendering live in the
//! `patchwork-lab` companion crate.
//!
//! - [`scheme`]: real schemes (rooted trees of ovals plus an optional
//!   one-sided component), their text notation and restriction filters.
//! - [`trees`]: rooted-tree counting, depth-bounded counts and the
//!   branch-cutting codec.
//! - [`partitions`]: integer partitions and the schemes built from them.
//! - [`patchwork`]: lattice triangulations of the Newton triangle, sign
//!   distributions, the glued curve and its real scheme.
//! - [`haas`]: the zone construction of maximal T-curves.
//! - [`census`]: evaluators for the counting bounds.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod census;
pub mod haas;
pub mod hp;
pub mod partitions;
pub mod patchwork;
pub mod scheme;
pub mod trees;

pub use scheme::{RealScheme, SchemeStats};
