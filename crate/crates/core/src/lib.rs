//! Exact combinatorics of oriented matroids and their Salvetti complexes.
//!
//! The crate builds covector sets from rational arrangements or chirotopes,
//! constructs the Salvetti complex as a poset of cells, computes integral
//! homology through order complexes, checks metrical-hemisphere structure,
//! analyses tope posets and minimal positive paths, and compares homology
//! with Orlik–Solomon ranks from no-broken-circuit sets.

pub mod complex;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod mh;
pub mod om;
pub mod os;
pub mod poset;
pub mod salvetti;
pub mod sign;
pub mod snf;
pub mod topes;

pub use error::{Error, Result};
pub use om::OrientedMatroid;
pub use sign::{Sign, SignVector};
