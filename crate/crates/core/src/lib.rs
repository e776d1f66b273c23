//! Embedding graphs in Steiner triple systems through the game Nofil.
//!
//! A position of Nofil on a Steiner triple system splits the points into
//! played (P), available (A) and unplayable (U) points. Once the blocks that
//! still constrain play are all pairs, the position is an instance of Node
//! Kayles on a graph, and that graph is said to be embedded in the system.
//! This crate provides:
//!
//! * [`design`]: triple systems, partitions, embedding certificates and their
//!   verifier, canonical graph forms, chromatic index, Pasch switches;
//! * [`bounds`]: necessary conditions on `(v, p, a, u, e)` and the smallest
//!   admissible orders per graph family;
//! * [`skolem`]: Skolem, hooked, split and Langford pair sequences;
//! * [`constructions`]: direct embeddings of complete graphs and stars;
//! * [`game`]: the Nofil game engine with exhaustive harvesting of embedded
//!   graphs;
//! * [`search`]: randomized searches for embeddings at a target order.
//!
//! ```
//! use nofil::design::{fixtures, induced_certificate, verify_embedding, Induced};
//!
//! let ts = fixtures::sts9();
//! let played: Vec<u32> = ["1", "2", "6"].iter().map(|l| ts.point(l).unwrap()).collect();
//! let Induced::Graph(cert) = induced_certificate(&ts, &played).unwrap() else { unreachable!() };
//! assert_eq!(cert.graph.edge_count(), 3);
//! assert!(verify_embedding(&cert).unwrap().ok());
//! ```

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod design;
pub mod game;
pub mod search;
pub mod skolem;

pub use design::{
    EmbeddingCertificate, GraphFamily, LabeledGraph, PointPartition, TripleSystem, VerificationReport,
};
