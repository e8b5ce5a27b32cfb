//! Combinatorial patchworking on the Newton triangle `Delta_d`.
//!
//! A primitive triangulation that is convex (induced by a lifting) together
//! with a sign per lattice point determines a T-curve: reflect the
//! triangulation into the four quadrants, separate opposite signs inside
//! every triangle by a segment, and glue the boundary of the resulting
//! diamond antipodally.

mod curve;
mod enumerate;
mod geometry;
mod lp;
mod triangulation;

use alloc::string::String;

pub use curve::{
    build_patchwork, build_patchwork_certified, build_patchwork_uncertified, edge_key, extract_scheme, vertex_id,
    Cell, EdgeKey, PatchworkCurve, Segment, SignDistribution, COPIES,
};
pub use enumerate::{
    count_rect_triangulations, enumerate_newton_triangulations, for_each_unimodular_triangulation,
    LatticePolygon, MAX_ENUMERATION_DEGREE, MAX_RECT_CELLS,
};
pub use geometry::{
    edge_on_newton_boundary, in_newton_triangle, newton_index, newton_triangle_points, on_newton_boundary,
    orient, segments_cross, Point,
};
pub use triangulation::{
    certify_convexity, random_convex_primitive_triangulation, triangulation_from_heights, CertificateSource,
    ConvexityCertificate, InteriorEdge, NotConvex, Triangulation,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PatchworkError {
    #[error("degree must be at least 1, got {0}")]
    DegreeTooSmall(u32),
    #[error("expected {expected} heights, got {got}")]
    HeightCount { expected: usize, got: usize },
    #[error("expected {expected} signs, got {got}")]
    SignCount { expected: usize, got: usize },
    #[error("signs must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("heights are not generic: some lower-hull cell is not a triangle")]
    NonGeneric,
    #[error("malformed triangulation: {0}")]
    Malformed(String),
    #[error("triangulation is not primitive")]
    NotPrimitive,
    #[error("triangulation has no convexity certificate")]
    NotConvex,
    #[error("inconsistent curve topology: {0}")]
    Topology(&'static str),
    #[error("guard exceeded: {what} = {value}, at most {max} supported")]
    GuardExceeded { what: &'static str, value: u64, max: u64 },
}
