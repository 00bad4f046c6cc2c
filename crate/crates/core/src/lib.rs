pub mod arith;
pub mod complexes;
pub mod error;
pub mod io;
pub mod lift;
pub mod modules;
pub mod pipeline;
pub mod verify;

pub use error::{Error, Result};
