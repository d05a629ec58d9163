pub mod check;
pub mod complex;
pub mod error;
pub mod linalg;
pub mod link;
pub mod specseq;
pub mod torus;

pub use check::CheckReport;
pub use error::{Error, Result};
