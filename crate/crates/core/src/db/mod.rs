//! Database of small circuits keyed by equivalence class.
//!
//! Two functions are equivalent when one becomes the other by permuting and
//! negating inputs and by permuting and negating outputs. Equivalent functions
//! have circuits of equal size, so one circuit per class suffices.

mod build;
mod key;
mod store;

pub use build::{
    build_database, build_database_with, enumerate_classes, function_count, total_function_count,
    BuildOptions, ClassInfo, Database, DbEntry, Optimality, Slice,
};
pub use key::{canonical_key, CanonicalKey, Transform, MAX_DB_INPUTS, MAX_DB_OUTPUTS};
pub use store::{parse_compact, to_compact, SizeBucket, SliceStats, LOOKUP_DONT_CARE_CAP};
