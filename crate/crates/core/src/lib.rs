pub mod chars;
pub mod cli;
pub mod egcurve;
pub mod error;
pub mod gf;
pub mod hecke;
pub mod llc;
pub mod lmap;
pub mod satake;
pub mod suite;

pub use error::Error;
