use alloc::string::String;

use crate::rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("frame has no variables")]
    EmptyFrame,
    #[error("variable name is empty")]
    EmptyVariableName,
    #[error("variable `{0}` has an empty domain")]
    EmptyDomain(String),
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("value `{value}` is declared twice in variable `{variable}`")]
    DuplicateValue { variable: String, value: String },
    #[error("variable `{variable}` has {size} values, more than the supported {max}")]
    DomainTooLarge { variable: String, size: usize, max: usize },
    #[error("joint frame would have {size} configurations, limit is {max}")]
    FrameTooLarge { size: usize, max: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown value `{value}` for variable `{variable}`")]
    UnknownValue { variable: String, value: String },
    #[error("empty value set for variable `{0}`")]
    EmptyComponent(String),
    #[error("no component given for variable `{0}`")]
    MissingComponent(String),
    #[error("variable subset is empty")]
    EmptyVariableSubset,
    #[error("variable subset must leave at least one variable out")]
    SubsetIsWholeFrame,
    #[error("variable subsets overlap on `{0}`")]
    OverlappingSubsets(String),
    #[error("operands live on different frames")]
    FrameMismatch,
    #[error("empty set cannot carry mass")]
    MassOnEmptySet,
    #[error("masses sum to {0}, expected 1")]
    MassSumNotOne(Rational),
    #[error("operation requires non-negative masses")]
    NotProper,
    #[error("total conflict: the combined evidence is contradictory")]
    TotalConflict,
    #[error("belief table has {found} entries, expected {expected}")]
    BeliefTableSize { expected: usize, found: usize },
    #[error("belief table must map the empty set to 0 and the frame to 1")]
    BeliefBoundary,
    #[error("case table is empty")]
    EmptyCaseTable,
    #[error("case count must be positive")]
    NonPositiveCount,
    #[error("conditioning eliminated every case")]
    NoCaseSurvives,
    #[error("record has a set-valued cell; probability semantics needs singletons")]
    SetValuedCell,
    #[error("no mapping for source value `{0}`")]
    MissingMapping(String),
    #[error("probabilities must be non-negative and sum to 1")]
    InvalidDistribution,
    #[error("focal set is not a box (cross product of per-variable sets)")]
    NonBoxFocal,
    #[error("stochastic strategy requires a seed")]
    MissingSeed,
    #[error("selected set has no residual mass for this row")]
    InadmissibleSelection,
    #[error("search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(usize),
    #[error("trace does not match the marginal: {0}")]
    TraceMismatch(&'static str),
    #[error("certificate witness failed re-validation")]
    CertificateRejected,
    #[error("network is not a valid polytree: {0}")]
    InvalidNetwork(String),
    #[error("variable `{0}` is observed twice")]
    DuplicateObservation(String),
    #[error("total conflict while combining at node `{0}`")]
    ConflictAtNode(String),
    #[error("schedule is not a leaf-to-target order")]
    InvalidSchedule,
}

impl Error {
    /// Stable kebab-case identifier for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyFrame => "empty-frame",
            Error::EmptyVariableName => "empty-variable-name",
            Error::EmptyDomain(..) => "empty-domain",
            Error::DuplicateVariable(..) => "duplicate-variable",
            Error::DuplicateValue { .. } => "duplicate-value",
            Error::DomainTooLarge { .. } => "domain-too-large",
            Error::FrameTooLarge { .. } => "frame-too-large",
            Error::UnknownVariable(..) => "unknown-variable",
            Error::UnknownValue { .. } => "unknown-value",
            Error::EmptyComponent(..) => "empty-component",
            Error::MissingComponent(..) => "missing-component",
            Error::EmptyVariableSubset => "empty-variable-subset",
            Error::SubsetIsWholeFrame => "subset-is-whole-frame",
            Error::OverlappingSubsets(..) => "overlapping-subsets",
            Error::FrameMismatch => "frame-mismatch",
            Error::MassOnEmptySet => "mass-on-empty-set",
            Error::MassSumNotOne(..) => "mass-sum-not-one",
            Error::NotProper => "not-proper",
            Error::TotalConflict => "total-conflict",
            Error::BeliefTableSize { .. } => "belief-table-size",
            Error::BeliefBoundary => "belief-boundary",
            Error::EmptyCaseTable => "empty-case-table",
            Error::NonPositiveCount => "non-positive-count",
            Error::NoCaseSurvives => "no-case-survives",
            Error::SetValuedCell => "set-valued-cell",
            Error::MissingMapping(..) => "missing-mapping",
            Error::InvalidDistribution => "invalid-distribution",
            Error::NonBoxFocal => "non-box-focal",
            Error::MissingSeed => "missing-seed",
            Error::InadmissibleSelection => "inadmissible-selection",
            Error::SearchBudgetExceeded(..) => "search-budget-exceeded",
            Error::TraceMismatch(..) => "trace-mismatch",
            Error::CertificateRejected => "certificate-rejected",
            Error::InvalidNetwork(..) => "invalid-network",
            Error::DuplicateObservation(..) => "duplicate-observation",
            Error::ConflictAtNode(..) => "conflict-at-node",
            Error::InvalidSchedule => "invalid-schedule",
        }
    }
}
