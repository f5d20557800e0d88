//! Algebraically defined q-regular bipartite graphs Γ(Ω, q) whose vertex
//! entries are indexed by a prefix-closed set Ω of binary sequences.

pub mod gf;
pub mod seqset;
pub mod graph;
pub mod autos;
pub mod invariants;
pub mod paths;
pub mod cli;

use thiserror::Error;

/// Any failure surfaced by the library, used where several modules meet.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Gf(#[from] gf::GfError),
    #[error(transparent)]
    Seq(#[from] seqset::SeqError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Auto(#[from] autos::AutoError),
    #[error(transparent)]
    Invariant(#[from] invariants::InvError),
    #[error(transparent)]
    Path(#[from] paths::PathError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}
