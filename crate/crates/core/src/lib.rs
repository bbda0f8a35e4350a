pub mod blocks;
pub mod chartab;
pub mod cli;
pub mod domestic;
pub mod error;
pub mod exactnum;
pub mod permgroup;
pub mod tsct;

pub use error::{Error, Result};
