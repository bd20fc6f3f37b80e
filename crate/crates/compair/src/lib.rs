//! Toolkit for binary complementary sequence and array pairs.
//!
//! Covers verification of Type-I, Type-II, Type-III and mixed Type-II/III
//! complementary pairs, the standard quadratic constructions and their
//! enumerators, array-to-sequence projections, exhaustive and
//! meet-in-the-middle searches, and classification of found pairs against
//! the standard algebraic normal forms.

pub mod arrays;
pub mod boolfun;
pub mod construct;
pub mod error;
pub mod lpoly;
pub mod project;
pub mod records;
pub mod search;
pub mod sequences;

pub use crate::error::{Error, Result};
