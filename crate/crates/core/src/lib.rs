pub mod arrangement;
pub mod cli;
pub mod cut;
pub mod dual;
pub mod error;
pub mod fence;
pub mod generators;
pub mod geom;
pub mod io;
pub mod solver;
pub mod steiner;
pub mod visibility;

pub use error::{Error, Result};
