//! Triple systems, graphs, point partitions and embedding certificates.

pub mod canon;
pub mod colour;
pub mod graph;
pub mod io;
pub mod partition;
pub mod pasch;
pub mod system;

pub use canon::{canonical_form, canonical_form_capped};
pub use colour::chromatic_index;
pub use graph::{graph_family, GraphFamily, LabeledGraph};
pub use partition::{
    block_class, classify_blocks, induced_certificate, verify_embedding, BlockClass, ClassCounts, Classification,
    EmbeddingCertificate, Failure, Induced, PointPartition, Role, VerificationReport,
};
pub use pasch::{find_paschs, pasch_switch, PaschConfiguration};
pub use system::{Block, Point, TripleSystem, ValidationReport, Violation};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("label `{0}` is empty or contains whitespace")]
    BadLabel(String),
    #[error("label `{0}` used twice")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("block `{0}` repeats a point")]
    DegenerateBlock(String),
    #[error("point index out of range")]
    PointOutOfRange,
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("not a Steiner triple system: {0}")]
    NotSteiner(String),
    #[error("not a partition of the points: {0}")]
    NotAPartition(String),
    #[error("graph does not match the available points: {0}")]
    VertexSetMismatch(String),
    #[error("illegal position: {0}")]
    IllegalPosition(String),
    #[error("block {0} is not in the system")]
    MissingBlock(String),
    #[error("graph has {n} vertices, more than the supported {max}")]
    TooLarge { n: usize, max: usize },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("{family} graph needs more vertices than {a}")]
    FamilyTooSmall { family: &'static str, a: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Two small systems used throughout the docs and tests.
pub mod fixtures {
    use super::TripleSystem;

    /// The affine plane of order 3 on `1..=9`: rows, columns and both
    /// diagonal classes of the 3x3 grid.
    pub fn sts9() -> TripleSystem {
        TripleSystem::from_numbered(
            9,
            &[
                [1, 2, 3],
                [4, 5, 6],
                [7, 8, 9],
                [1, 4, 7],
                [2, 5, 8],
                [3, 6, 9],
                [1, 5, 9],
                [2, 6, 7],
                [3, 4, 8],
                [1, 6, 8],
                [2, 4, 9],
                [3, 5, 7],
            ],
        )
        .expect("static system")
    }

    /// The Fano plane as the orbit of `{1,2,4}` under `x -> x+1 (mod 7)`.
    pub fn fano() -> TripleSystem {
        TripleSystem::from_numbered(
            7,
            &[[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]],
        )
        .expect("static system")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems_validate() {
        assert!(fixtures::sts9().validate().ok());
        assert!(fixtures::fano().validate().ok());
    }

    #[test]
    fn removing_a_block_uncovers_its_pairs() {
        let ts = fixtures::sts9();
        let b = Block::new(0, 1, 2).unwrap();
        let broken = ts.with_blocks(ts.blocks().iter().copied().filter(|x| *x != b)).unwrap();
        let report = broken.validate();
        assert!(!report.ok());
        assert!(report.uncovered_pairs().any(|p| p == (0, 1)));
    }

    #[test]
    fn blocks_compare_as_sets() {
        assert_eq!(Block::new(3, 1, 2), Block::new(2, 3, 1));
        assert!(Block::new(1, 1, 2).is_none());
    }
}
