//! Exact-arithmetic Horton sets, collinear-triplet blowups, and searches for
//! visible islands and empty convex polygons.
//!
//! All geometry is integer-only. [`geom`] holds the predicates and hulls,
//! [`constructions`] builds Horton sets and their blowups, [`islands`] runs
//! the visibility and island searches, and [`oracle`] keeps slow reference
//! implementations used to cross-check the fast paths.

pub mod combinations;
pub mod constructions;
pub mod geom;
pub mod islands;
pub mod oracle;

pub use constructions::{
    blowup_soundness_check, blowup_triplets, blowup_triplets_with, horton_generate,
    soundness_certificate, verify_above_below, BlowupConfig, BlowupRecord, ConstructionError,
    HortonSet, SoundnessReport,
};
pub use geom::{
    convex_hull, hull_location, max_collinear, orientation, point_in_open_segment, GeomError, Hull,
    Location, Orientation, Point, PointSet,
};
pub use islands::{
    find_k_hole, is_island, is_visible_island, island_closure, max_visible_island,
    neighborhood_island_measure, verify_lemma7, visibility_graph, Outcome, Quantity, SearchLimits,
    SearchReport, VisibilityGraph,
};
