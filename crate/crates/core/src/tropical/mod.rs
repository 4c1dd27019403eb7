//! Non-singular plane tropical curves: polynomial parsing, dual
//! subdivisions, curve geometry, sign distributions and combinatorial
//! patchworking (min-plus convention throughout).

mod curve;
mod patchwork;
mod poly;
mod signs;
mod subdivision;

pub use curve::{BoundedEdge, Ray, TropicalCurve, Vertex};
pub use patchwork::{
    compact_component_count, count_components, patchwork_arcs, Arc, ArcSet, QUADRANTS,
};
pub use poly::{parse_poly, TropicalPoly};
pub use signs::{harnack_signs, signs_to_twists, twists_to_signs, Sign, SignDistribution};
pub use subdivision::{dual_subdivision, standard_poly, DualSubdivision};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TropicalError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("duplicate monomial x^{0} y^{1}")]
    DuplicateMonomial(u32, u32),
    #[error("support is degenerate (fewer than 3 non-collinear points)")]
    DegenerateSupport,
    #[error("dual subdivision is not a unimodular triangulation")]
    NotNonSingular,
    #[error("two adjacent cells tie at the same point (zero-length edge)")]
    DegenerateEdge,
    #[error("twist set is not twist-admissible")]
    NotTwistAdmissible,
    #[error("unknown bounded edge index {0}")]
    UnknownEdge(usize),
    #[error("sign distribution is missing the support point ({0},{1})")]
    MissingSign(u32, u32),
}
