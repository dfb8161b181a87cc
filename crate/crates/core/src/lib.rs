//! Exact verification machinery for rank-2 Hecke-Hopf algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`coxeter`] dihedral group arithmetic and the action on reflections,
//! * [`exact`] Laurent polynomials and rational functions with factored
//!   `(1 - t^v)` denominators,
//! * [`skewalg`] the skew group algebra and the Demazure representation,
//! * [`freed`] the word algebra on reflection-indexed Demazure generators,
//!   its kernel computation and ideal-membership certificates,
//! * [`relcat`] the relation catalog and its verification backends,
//! * [`gaha`] the generalized affine Hecke algebra on the coweight lattice.

pub mod coxeter;
pub mod exact;
pub mod freed;
pub mod gaha;
pub mod relcat;
pub mod report;
pub mod skewalg;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("infinite dihedral group (m = 0) is not supported")]
    InfiniteGroup,
    #[error("unsupported dihedral order m = {0} (expected 2..=6)")]
    UnsupportedOrder(u32),
    #[error("group elements from different dihedral groups (m = {0} vs m = {1})")]
    GroupMismatch(u8, u8),
    #[error("exponent dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("atom `{0}` is not available here")]
    BadAtom(String),
    #[error("unknown root datum `{0}`")]
    UnknownDatum(String),
    #[error("exact division failed: {0}")]
    Division(String),
    #[error("relation file {file}, line {line}: {msg}")]
    Catalog { file: String, line: usize, msg: String },
    #[error("backend {0} does not apply to relation {1}")]
    Backend(String, String),
    #[error("runtime budget exceeded: {0}")]
    Budget(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
