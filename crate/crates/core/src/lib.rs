pub mod abgroup;
pub mod error;
pub mod homext;
pub mod intlin;
pub mod json;
pub mod oracle;
pub mod suite;
pub mod torsioncat;
pub mod universal;

pub use error::{Error, Result};
