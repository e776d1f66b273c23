//! Direct embeddings of complete graphs and stars, with the cyclic
//! presentations and matching decompositions they are built from.

pub mod complete;
pub mod cyclic;
pub mod decompose;
pub mod orbit;
pub mod star;
pub mod transfer;

pub use complete::{embed_complete, odd_complete_presentation};
pub use cyclic::{cyclic_sts_base_blocks, sts_blocks};
pub use decompose::{
    decompose_a_matchings, decompose_p_matchings, near_one_factorization, MatchingClass, MatchingDecomposition,
};
pub use orbit::{expand_orbits, CyclicPresentation, OrbitPoint};
pub use star::{embed_star, Minimality, StarEmbedding, StarMethod};
pub use transfer::pasch_transfer;

use crate::design::{
    io::natural_cmp, verify_embedding, DesignError, EmbeddingCertificate, LabeledGraph, PointPartition, TripleSystem,
};
use crate::search::SearchError;
use crate::skolem::SkolemError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("{0}")]
    InvalidParameter(String),
    #[error("construction defect: {detail}")]
    Defect { pair: Option<(String, String)>, detail: String },
    #[error("no cyclic presentation of STS({0})")]
    NoPresentation(u32),
    #[error("not found: {0}")]
    NotFound(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Skolem(#[from] SkolemError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// Builds the certificate for the given roles and A-edges and runs the
/// verifier on it.
pub(crate) fn certify(
    ts: TripleSystem,
    p: &[String],
    a: &[String],
    u: &[String],
    edges: &[(String, String)],
) -> Result<EmbeddingCertificate, ConstructionError> {
    let part = PointPartition::from_labels(&ts, p, a, u)?;
    let mut vertices: Vec<&str> = a.iter().map(String::as_str).collect();
    vertices.sort_by(|x, y| natural_cmp(x, y));
    let edges: Vec<(&str, &str)> = edges.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    let graph = LabeledGraph::from_labeled_edges(&vertices, &edges)?;
    let cert = EmbeddingCertificate::new(ts, part, graph)?;
    let report = verify_embedding(&cert)?;
    if !report.ok() {
        return Err(ConstructionError::Defect { pair: None, detail: report.summary() });
    }
    Ok(cert)
}
