//! Chamber decompositions for framed McKay quiver varieties.
//!
//! Starting from an ADE type and an integer `n`, the crate builds the root data
//! of the McKay graph, the framed lattice, and the arrangement of walls in the
//! space of stability parameters `Theta_v`. On top of that it provides:
//!
//! * chamber enumeration inside the fundamental cone `F` and globally
//!   ([`arrangement`]);
//! * the Namikawa Weyl group action and reduction to `F` ([`weyl`]);
//! * canonical decompositions and representation types ([`decomposition`]);
//! * wall classification, Ext-graph local models and dimension audits
//!   ([`walls`]);
//! * the linearisation map onto the movable cone ([`mori`]).
//!
//! All arithmetic on parameters is exact.

pub mod arrangement;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod framed;
pub mod lp;
pub mod mori;
pub mod regions;
pub mod root_data;
pub mod walls;
pub mod weyl;

pub use arrangement::{Arrangement, Chamber, Hyperplane, HyperplaneTag, Location, StabilityParameter};
pub use error::{Error, Result};
pub use framed::{DimVector, FramedLattice};
pub use regions::EnumOptions;
pub use root_data::{build_root_system, Kind, RootSystemData};

/// Builds the framed lattice for `(kind, rank, n)`.
pub fn instance(kind: Kind, rank: usize, n: i64) -> Result<FramedLattice> {
    FramedLattice::new(build_root_system(kind, rank)?, n)
}
