//! Finite carriers and point-free relation combinators.

mod algebra;
mod carrier;
pub mod expr;
mod fixture;
mod fun;
mod rel;

pub use algebra::Classification;
pub use carrier::{Carrier, Shape, DEFAULT_POWER_BOUND};
pub use fixture::{parse_fixtures, write_fixture, FixtureError, NamedRel};
pub use fun::{Fun, Predicate};
pub(crate) use rel::check_same;
pub use rel::Rel;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelError {
    #[error("{op}: carrier mismatch between {left} and {right}")]
    CarrierMismatch { op: &'static str, left: String, right: String },
    #[error("element {elem:?} is not in carrier {carrier}")]
    UnknownElement { carrier: String, elem: String },
    #[error("carrier {carrier} lists {elem:?} twice")]
    DuplicateElement { carrier: String, elem: String },
    #[error("pair ({t},{s}) is out of range for {tgt} <- {src}")]
    IndexOutOfRange { src: String, tgt: String, t: usize, s: usize },
    #[error("carrier {carrier} has {size} elements; powerset bound is {bound}")]
    PowersetBound { carrier: String, size: usize, bound: usize },
    #[error("relation on {0} is not coreflexive")]
    NotCoreflexive(String),
    #[error("not a function: {0}")]
    NotFunction(String),
}
