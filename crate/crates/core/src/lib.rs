pub mod endos;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod proj;
pub mod ringline;

pub use error::{Error, Result};
pub mod linsets;
pub mod classify;
