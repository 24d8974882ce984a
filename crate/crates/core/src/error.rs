use thiserror::Error;

use crate::export::ExportError;
use crate::frame::ValidationReport;
use crate::geometry::GeometryError;
use crate::pattern::PatternError;

#[derive(Debug, Clone, Error)]
pub enum GadgetError {
    #[error("{0}")]
    Invalid(ValidationReport),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("division plan rejected: {0}")]
    PlanRejected(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = GadgetError> = std::result::Result<T, E>;
