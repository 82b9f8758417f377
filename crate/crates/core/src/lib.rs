#![no_std]
extern crate alloc;

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod forms;
pub mod involutions;
pub mod ktheory;
pub mod random;
pub mod structure;

pub use error::Error;
