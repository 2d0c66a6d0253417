pub mod basespec;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod expansions;
pub mod landmarks;
pub mod numerics;
pub mod words;

pub use error::{Error, Result};
