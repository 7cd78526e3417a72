//! Polynomial functors, bounded initial algebras and relational folds.

mod fold;
mod functor;
mod literal;
mod mu;

pub use fold::{ana_conv, cata, cata_fun, check_fusion, hylo, FusionVerdict, Hylo};
pub use functor::{Functor, Layer};
pub use literal::{parse_term, render_term, LiteralError};
pub use mu::{Bound, Mu, Term, TermKind, MAX_TERMS};

use crate::finrel::RelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoldError {
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error("{what} needs {count} elements, over the cap of {cap}")]
    Sizing { what: String, count: usize, cap: usize },
}
