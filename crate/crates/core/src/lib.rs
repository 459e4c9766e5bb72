//! Exact distances between high order networks.
//!
//! A high order network of order `K` assigns a relationship value to every
//! tuple of up to `K + 1` nodes. Values are invariant under reordering of
//! the tuple and under repetition of its members, so they are stored once
//! per set of distinct nodes ([`TupleKey`]).
//!
//! The crate provides
//!
//! * [`network`]: the network type, tuple rank and evaluation,
//! * [`validate`]: checks for the general, dissimilarity and proximity classes,
//! * [`correspondence`]: covering relations between node sets,
//! * [`distance`]: the `k`-order and `p`-norm network distances with an
//!   exhaustive and a branch-and-bound exact solver,
//! * [`duality`]: the `v -> 1 - v` map between proximity and dissimilarity networks,
//! * [`ingest`]: coauthorship proximity networks built from publication records,
//! * [`embedding`]: 2D stress-minimizing embeddings of distance matrices.
//!
//! Every numeric component is generic over [`Scalar`], implemented for `f32`,
//! `f64` and exact rationals (`Ratio<i64>`). The aliases below fix the scalar
//! type to `f64`, which is what the file formats and the CLI use.

pub mod correspondence;
pub mod distance;
pub mod duality;
pub mod embedding;
mod error;
pub mod fixtures;
pub mod generate;
pub mod ingest;
pub mod io;
pub mod network;
mod scalar;
pub mod validate;

pub use correspondence::Correspondence;
pub use distance::{Bottleneck, DistanceMode, DistanceReport, GammaVector, PNorm, Solver};
pub use error::{Error, Result};
pub use network::{rank, HighOrderNetwork, NetworkClass, TupleKey};
pub use scalar::Scalar;
pub use validate::{ValidationReport, Violation};

/// Exact rational scalar.
pub type Rational = num_rational::Ratio<i64>;

/// Network with `f64` relationship values.
pub type Network = HighOrderNetwork<f64>;
/// Network with exact rational relationship values.
pub type ExactNetwork = HighOrderNetwork<Rational>;
/// Distance report over `f64` networks.
pub type Report = DistanceReport<f64>;
/// Distance report over exact rational networks.
pub type ExactReport = DistanceReport<Rational>;
