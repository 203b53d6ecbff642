//! Exact machinery for bounding the size of sumsets `A + B_1 + ... + B_h` in
//! commutative groups.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function over immutable values:
//!
//! * [`group`]: elements and finite subsets of `Z^d0 x Z_m1 x ...`, Minkowski
//!   sums and direct products.
//! * [`hypergraph`]: hypercube graphs indexed by subsets of `{1..h}`, addition
//!   graphs, channels, hypercube products, the hat graph, the layered lift and
//!   the square-commutativity checker.
//! * [`magnification`]: images, partial magnifications and magnification
//!   ratios, by brute force and by a matching/flow algorithm.
//! * [`bounds`]: the removed-component partition procedure and every
//!   inequality check, reported in exact arithmetic.
//! * [`extremal`]: the sharpness construction in `Z_b^k` and free-generator
//!   lifting.
//! * [`corpus`]: the seeded random instance corpus.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod corpus;
mod error;
pub mod extremal;
pub mod group;
pub mod hypergraph;
pub mod magnification;
pub mod rational;

pub use error::{Error, Result};
pub use group::{Element, GSet, GroupSpec, SumsetInstance};
pub use hypergraph::{HypercubeGraph, IndexSet, LayeredGraph};
pub use rational::{Interval, Rational, Verdict};
