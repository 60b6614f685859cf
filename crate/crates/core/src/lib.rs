//! Exact combinatorics of tessellations of the hyperbolic disk that are
//! invariant under finite-index subgroups of PSL(2,Z): Whitehead moves,
//! characteristic maps, the two-cells of the triangulation complex and
//! truncated presentations of the baseleaf-preserving mapping class group.

pub mod charmap;
pub mod cli;
pub mod complex;
pub mod error;
pub mod moebius;
pub mod presentation;
pub mod render;
pub mod subgroup;
pub mod tessellation;

pub use error::{Error, Result};
pub use moebius::{ExtendedRational, Geodesic, MoebiusMap, OrientedGeodesic};
pub use subgroup::Subgroup;
pub use tessellation::Tessellation;
