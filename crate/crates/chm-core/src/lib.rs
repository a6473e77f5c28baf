#![no_std]
extern crate alloc;

pub mod catalog;
pub mod census;
pub mod equiv;
pub mod error;
pub mod exactnum;
pub mod groupmap;
pub mod matrix;
pub mod poly;
pub mod scan;
pub mod torus;

pub use catalog::{catalog, CatalogName};
pub use error::{Error, Result};
pub use exactnum::{CycSum, SumValue, Turn, UnitValue};
pub use matrix::Matrix6;
