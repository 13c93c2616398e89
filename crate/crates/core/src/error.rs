use thiserror::Error;

/// Everything that can go wrong while building terms, applying rules,
/// running conversions or tactics, or reading theory files.
///
/// Most variants are recoverable failures in the LCF sense: they carry a
/// token (see [`Error::token`]) and alternation combinators such as
/// `ORELSEC` catch them. [`Error::StepLimit`] is the exception.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A plain failure carrying only its token, e.g. `term_match`.
    #[error("evaluation failed {0}")]
    Failure(String),

    /// An inference rule was applied to theorems of the wrong shape.
    #[error("{rule}: {reason}")]
    RuleMismatch { rule: &'static str, reason: String },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    /// A variable that must be generalised or instantiated is free in the
    /// hypotheses.
    #[error("{rule}: variable {var} is free in the hypotheses")]
    VarFreeInHyps { rule: &'static str, var: String },

    #[error("ill-typed: {0}")]
    IllTyped(String),

    #[error("parse error at line {line}, column {column}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("duplicate label {0}")]
    DuplicateLabel(String),

    #[error("theorem {0} has open hypotheses")]
    OpenHypotheses(String),

    #[error("unknown predicate {0}")]
    UnknownPredicate(String),

    #[error("theory error: {0}")]
    Theory(String),

    #[error("io error: {0}")]
    Io(String),

    /// The inference step budget ran out. Not caught by alternation.
    #[error("step budget of {0} inferences exhausted")]
    StepLimit(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn failure(token: impl Into<String>) -> Self {
        Error::Failure(token.into())
    }

    pub(crate) fn rule(rule: &'static str, reason: impl Into<String>) -> Self {
        Error::RuleMismatch {
            rule,
            reason: reason.into(),
        }
    }

    /// The failure token, as printed by `evaluation failed TOKEN`.
    pub fn token(&self) -> String {
        match self {
            Error::Failure(t) => t.clone(),
            Error::RuleMismatch { rule, .. } | Error::VarFreeInHyps { rule, .. } => {
                (*rule).to_string()
            }
            Error::TypeMismatch(_) => "type_mismatch".into(),
            Error::IllTyped(_) => "ill_typed".into(),
            Error::Parse { .. } => "parse".into(),
            Error::UnknownLabel(_) => "unknown_label".into(),
            Error::DuplicateLabel(_) => "duplicate_label".into(),
            Error::OpenHypotheses(_) => "open_hypotheses".into(),
            Error::UnknownPredicate(_) => "unknown_predicate".into(),
            Error::Theory(_) => "theory".into(),
            Error::Io(_) => "io".into(),
            Error::StepLimit(_) => "step_limit".into(),
        }
    }

    /// Whether alternation (`ORELSEC`, `ORELSE`, `FIRST_CONV`, ...) may
    /// catch this error and try something else.
    pub fn is_recoverable(&self) -> bool {
        !matches!(self, Error::StepLimit(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
