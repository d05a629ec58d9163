//! Kh of the `(3, q)` torus links by recursion on `q`.

mod lee;
mod recursion;
mod verify;

pub use lee::{lee_pairing, lee_survivors};
pub use recursion::{
    base_table, diagonal_count, expected_kh_3q, expected_kh_3q_positive, expected_tables, DeltaEntry, RecursionDelta,
    Step, TorusClass, TorusFamilyIndex, BASE_RANGE,
};
pub use verify::{verify_family, verify_family_with, FamilyReport, FamilyRow, LARGE_BOUND};
