#![no_std]
extern crate alloc;

pub mod error;
pub mod exactmath;
pub mod newton;
pub mod oracle;
pub mod periodicity;
pub mod purebasis;

pub use error::{Error, Result};
