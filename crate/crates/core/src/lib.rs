//! Exact-arithmetic toolkit for gross-substitutes valuations and matroids on small
//! ground sets.

pub mod constructions;
pub mod error;
pub mod geometry;
pub mod gscheck;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod matroid;
pub mod ops;
pub mod rational;
pub mod set;
pub mod verify;
pub mod setfn;

pub use error::{Error, Result};
pub use rational::Rational;
pub use set::ItemSet;
pub use setfn::{GroundSet, Valuation};
