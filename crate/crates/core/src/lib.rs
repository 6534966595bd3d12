//! Clairvoyant embedding of random binary sequences with bounded gaps.
//!
//! `Y` is `m`-embeddable into `X` when there are `0 = n_0 < n_1 < n_2 < ...`
//! with `1 <= n_i - n_{i-1} <= m` and `Y(i) = X(n_i)`. The crate decides this
//! for finite prefixes by reachability in a grid graph, detects the level-1
//! structures of the hierarchical ("mazery") construction, evaluates the
//! renormalization parameter calculus, and estimates embedding probabilities
//! by Monte Carlo.

pub mod bitset;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod mazery;
pub mod oracle;
pub mod sampling;
pub mod scaleup;
pub mod sequence;

pub use engine::{
    check_embedding, compose_embeddings, embeddable_prefix, extract_embedding, frontier_step, reach_rows,
    reachable_within, EmbeddingPath, GridGraphParams, PrefixDecision, ReachFrontier,
};
pub use error::{Error, Result};
pub use geometry::{Interval, Point, Rational, Rect};
pub use sequence::BinarySequence;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
