//! Grid-diagram engine for Legendrian and transverse knots: classical
//! invariants, elementary moves and isotopy search, polynomial invariants,
//! ruling polynomials from fronts, a transverse obstruction, and atlas
//! assembly over small knot types.

pub mod atlas;
pub mod braid;
pub mod error;
pub mod exec;
pub mod grid;
pub mod knot_id;
pub mod laurent;
pub mod moves;
pub mod ruling;
pub mod search;
pub mod theta;

#[cfg(test)]
pub(crate) mod testutil;

pub use atlas::{
    assemble_atlas, census, export_atlas, import_atlas, mfw_annotation, mountain_range,
    render_mountain_range, AtlasBudget, AtlasRecord, ClassEntry, Distinctness, MergePair,
    MountainRange, RangeArrow, RangePoint, RelationStatus, RenderFormat,
};
pub use braid::{braid_to_grid, closes_to_knot, exponent_sum};
pub use error::{Error, Result};
pub use exec::Exec;
pub use grid::{
    CanonicalKey, ClassicalInvariants, Corner, Crossing, GridDiagram, KeyMode, TranslateDir,
    MAX_SIZE,
};
pub use knot_id::{
    determinant, identify, jones_polynomial, kauffman_bracket, knot_table, rep_for_name,
    Identification, KnotEntry, DEFAULT_STATE_SUM_CEILING,
};
pub use laurent::Laurent;
pub use moves::{format_move_path, parse_move_path, stab_delta, Move, MoveMode, SliceKind};
pub use ruling::{
    grid_to_front, maslov_and_degrees, ruling_polynomial, Front, FrontEvent, RulingMode,
    RulingPolynomial,
};
pub use search::{
    cluster, connect, enumerate, find_stuck, simplify, Clustering, ConnectOutcome, SearchLimits,
};
pub use theta::{
    family_sl_ledger, family_words, theta_convention, theta_convention_inverse, theta_obstruction,
    FamilySlLedger,
};
