pub mod atlas;
pub mod cli;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod perm;
pub mod suites;
pub mod poset;
pub mod tangent;

pub use error::{Error, Result};
