pub mod algebra;
pub mod corpus;
pub mod error;
pub mod format;
pub mod fuzzing;
pub mod linalg;
pub mod monogen;
pub mod poly;
pub mod ring;
pub mod search;

pub use error::{Error, Result};
