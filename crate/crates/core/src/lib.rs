//! Finite relation algebra, bounded relational folds, and executable checks for
//! metaphor-style specifications and their divide-and-conquer refinements.

pub mod finrel;

pub use finrel::{Carrier, Fun, Predicate, Rel, RelError};
pub mod algorithms;
pub mod inductive;
pub mod laws;
pub mod metaphor;
