//! Discrete surfaces, curves on them, and an executable form of the discrete
//! Jordan curve theorem.
//!
//! The crate is organised bottom-up:
//!
//! - [`surface`]: combinatorial 2-complexes, neighborhoods, orientation.
//! - [`curves`]: curve classes and the wide-angle hypotheses.
//! - [`variation`]: gradual variation and cross-over between paths.
//! - [`jordan`]: Veblen subdivision and component separation.
//! - [`contraction`]: cycle contraction and simple-connectedness checks.
//! - [`planar`]: exact planar lattice embedding of polygons.
//! - [`gensurf`]: deterministic fixture generators.
//! - [`io`] and [`svg`]: text formats and pictures.
//! - [`accept`]: the acceptance suite behind `djct accept`.

pub mod accept;
pub mod contraction;
pub mod curves;
pub mod gensurf;
pub mod io;
pub mod jordan;
pub mod planar;
pub mod surface;
pub mod svg;
pub mod variation;

pub use surface::{Edge, Subcomplex, Surface, SurfaceError, Umbrella, VertexId, VertexKind, Violation};
