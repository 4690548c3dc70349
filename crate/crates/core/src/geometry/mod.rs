//! Curves in complete intersections, point schemes and nets of quadrics.

mod curve;
mod points;
mod quadrics;

pub use curve::{CurveInAmbient, NormalBundleReport, Rank6Criterion, RestrictionCheck};
pub use points::{cayley_bacharach, CayleyBacharach, PointScheme};
pub use quadrics::{
    discriminant_by_minors, discriminant_form, discriminant_rank_scan, QuadricNet, RankScan,
    MAX_NET_SIZE, MINOR_EXPANSION_MAX,
};
