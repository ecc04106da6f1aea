//! The identities under test: each entry is a weighted sum of series specs
//! with a closed-form right-hand side. Includes the JSON catalog format.

mod builtin;
mod closed_form;
mod file;

pub use builtin::{builtin_catalog, lookup, BUILTIN_COUNT};
pub use closed_form::{eval_closed_form, ClosedForm};
pub use file::{parse_catalog, parse_component_file, serialize_catalog};

use crate::numerics::NumericError;
use crate::series::{SeriesError, SeriesSpec};
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown identity `{0}`")]
    NotFound(String),
    #[error("line {line}: {field}: {message}")]
    Schema { line: usize, field: String, message: String },
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("closed form: {0}")]
    Expression(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `weight · Σ_k summand(spec, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub weight: Rational,
    pub spec: SeriesSpec,
}

/// `Σ_i components[i] = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityEntry {
    pub id: String,
    pub provenance: String,
    pub components: Vec<Component>,
    pub rhs: ClosedForm,
}
