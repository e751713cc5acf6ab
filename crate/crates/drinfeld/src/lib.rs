//! Drinfeld modules over Fq[T] and the algorithms built on them.

pub mod algebra;
pub mod carlitz;
pub mod classaction;
pub mod error;
pub mod dnsfactor;
pub mod drinfeld;
pub mod hom;
pub mod lrc;
pub mod lseries;
pub mod motive;
pub mod ore;
pub mod text;

pub use error::{Error, Result};
