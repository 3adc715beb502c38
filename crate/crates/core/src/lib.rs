pub mod dual;
pub mod error;
pub mod geometry;
pub mod multiplicity;
pub mod newton;
pub mod oracle;
mod scan;
pub mod toric;
pub mod volume;
