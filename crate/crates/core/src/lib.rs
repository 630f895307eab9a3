pub mod arith;
pub mod counting;
pub mod cyclo;
pub mod error;
pub mod ff;
pub mod group;
pub mod oracle;

pub use error::{Error, Result};
