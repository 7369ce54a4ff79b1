pub mod constants;
pub mod convexity;
pub mod density;
pub mod error;
pub mod geom2d;
pub mod harness;
pub mod sample;
pub mod sampling;
pub mod spacing;

pub use error::{Error, Result};
