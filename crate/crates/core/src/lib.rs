//! Exact max-min (bottleneck) algebra on `[0, 1]`: segments, spans and
//! hulls, strong regularity and rank, linear systems and quasiboxes.

pub mod error;
pub mod hull;
pub mod linsys;
pub mod quasibox;
pub mod regularity;
pub mod scalar;
pub mod segments;

pub use error::{Error, Result};
pub use hull::{
    homogenize, hull_membership, hull_raster_2d, principal_solution, span_membership,
    MembershipResult, Raster,
};
pub use linsys::{build_unique_system, solve, SolutionReport};
pub use quasibox::{
    dimension_lower_bound, homogenize_quasibox, largest_grid_quasibox, quasibox_contains,
    quasibox_from_certificate, quasibox_is_polytrope_check, Quasibox, QuasiboxDerivation,
};
pub use regularity::{
    certificate_from_trapezoidal, chain_condition, dimension, has_nonempty_interior,
    is_strongly_regular, is_trapezoidal, normalize_certificate, rank, square_rank, trapezoidalize,
    verify_certificate, Certificate, CertificateShape, RankWitness,
};
pub use scalar::{
    linear_combination, mat_vec, oplus, otimes, residual, scale_matrix, Matrix, Scalar, Vector,
};
pub use segments::{
    decompose, decompose_comparable, is_ordinary, segment_point, translate, ElementaryPiece,
    SegmentDecomposition,
};
