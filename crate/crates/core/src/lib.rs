pub mod cli;
pub mod coord;
pub mod error;
pub mod exactla;
pub mod graded;
pub mod liealg;
pub mod report;
pub mod rootsys;

pub use error::{Error, Result};
