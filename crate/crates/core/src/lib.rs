//! Exact squares of finite categories.

pub mod error;
pub mod dsl;
pub mod exactness;
pub mod fincat;
pub mod gen;
pub mod limits;
pub mod presheaf;
pub mod squares;

pub use error::{Error, Result};
pub use limits::Limits;
