pub mod cli;
pub mod cobfunctor;
pub mod complex;
pub mod cube;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod linkdiag;
pub mod oddtqft;
pub mod oracles;
pub mod verify;

pub use error::{Error, Result};
