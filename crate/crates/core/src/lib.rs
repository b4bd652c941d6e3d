pub mod cohomology;
pub mod complex;
pub mod error;
pub mod expr;
pub mod forms;
pub mod kahler;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod symplectic;
pub mod tables;
pub mod verify;

pub use error::{Error, ParseError, Result};
