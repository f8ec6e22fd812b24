pub mod azumaya;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod g2;
pub mod group;
pub mod linalg;
pub mod loops;
pub mod nullity2;
pub mod quadratic;
pub mod rank3;
pub mod template;

pub use error::{Error, Result};
