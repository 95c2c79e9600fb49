pub mod bases;
pub mod certificates;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod hs;
pub mod io;
pub mod kernel;
pub mod ptu;
pub mod random;
pub mod report;
pub mod states;

pub use error::{Error, ErrorCategory, Result};
