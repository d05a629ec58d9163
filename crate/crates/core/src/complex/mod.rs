//! Cube-of-resolutions complexes, Khovanov and Lee homology, and the
//! Kauffman-bracket state sum.

mod algebra;
mod cube;
mod homology;
mod jones;

pub use algebra::{label_degree, FrobeniusAlgebra, Label, ONE, X};
pub use cube::{ChainComplex, DegreeSpace, EnhancedState};
pub use homology::{
    expected_lee_degrees, khovanov_homology, khovanov_homology_with, lee_homology, lee_homology_with, KhEntry, KhTable,
    LeeTable,
};
pub use jones::{braid_jones, graded_euler, kauffman_jones, kauffman_jones_with};

pub const DEFAULT_CUBE_LIMIT: usize = 24;

/// Limits for cube constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest crossing count for which the full cube is built.
    pub cube_limit: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { cube_limit: DEFAULT_CUBE_LIMIT }
    }
}
