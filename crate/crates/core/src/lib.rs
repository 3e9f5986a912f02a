pub mod catalog;
pub mod equiv;
pub mod error;
pub mod gram;
pub mod graph;
pub mod poly;
pub mod ring;
pub mod search;
pub mod spectra;

pub use error::{Error, Result};
