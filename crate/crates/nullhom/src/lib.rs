//! Exact-arithmetic toolkit for finite monoids and their classifying
//! spaces: multiplication tables, free products, nerves and their integral
//! homology via Smith normal form, group completions with certified
//! simplifications, and the bisimplicial suspension construction that
//! exhibits a simplicial monoid whose group completion map is null
//! homotopic even though the monoid is not contractible.

pub mod error;
pub mod matrix;
pub mod monoid;

pub use error::{Error, Result};
