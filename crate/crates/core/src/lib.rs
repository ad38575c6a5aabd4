//! Ridge unfoldings of the n-cube as combinatorial objects.
//!
//! An unfolding is a spanning tree of the n-Roberts graph (the cocktail-party
//! graph on the `2n` facet labels). Rolling the cube along the tree develops
//! it into the integer lattice `Z^(n-1)`; the resulting nets are checked for
//! overlap, measured by their bounding boxes, and, for spanning paths and
//! cycles, studied through chord diagrams.

pub mod chords;
pub mod develop;
pub mod enumerate;
pub mod error;
pub mod label;
pub mod net;
pub mod partition;
pub mod random;
pub mod roll;
pub mod subgraph;
pub mod symmetry;

pub use develop::{develop_path, develop_tree, uturn_audit, Development};
pub use error::{Error, Result};
pub use label::FacetLabel;
pub use net::{cube_partition_of, is_net, CubePartition, Net};
pub use roll::{Direction, RollSequence, RollState};
pub use subgraph::{Edge, SpanningSubgraph, SubgraphKind};
pub use symmetry::{canonical_form, SignedPermutation};

/// Largest supported dimension; label sets are handled as 32-bit masks.
pub const MAX_DIM: usize = 16;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::Dimension(n))
    }
}
