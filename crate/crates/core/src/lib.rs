pub mod error;
pub mod exact;
pub mod poly;
pub mod artin;
pub mod ht;
pub mod hyper;
pub mod toric;
pub mod polytope;
pub mod catalog;
pub mod document;

pub use error::{Error, Result};
