use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Expression or file syntax error, with a byte position into the input.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    /// Division by the zero polynomial or zero rational function.
    #[error("division by zero polynomial")]
    DivisionByZero,

    /// An operation required a symmetric Laurent polynomial.
    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),

    /// An operation required a nonzero input.
    #[error("zero input not allowed: {0}")]
    ZeroInput(String),

    /// The matrix is not hermitian with respect to t -> 1/t.
    #[error("matrix is not hermitian at entry ({0}, {1})")]
    NotHermitian(usize, usize),

    /// The matrix is singular over Q(t).
    #[error("matrix is singular over Q(t)")]
    Singular,

    /// Invalid argument (range, reducedness, shape).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A step specification violates membership conditions for the
    /// realizable class; each entry names the violated condition.
    #[error("invalid step specification: {}", .0.join("; "))]
    InvalidStepSpec(Vec<String>),

    /// Seifert matrix invariant failure.
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),

    /// Unit-ball computation is degenerate (profiles rationally proportional).
    #[error("degenerate norm ball: {0}")]
    Degenerate(String),

    /// Malformed JSON input for one of the file formats.
    #[error("invalid input file: {0}")]
    BadInput(String),
}

impl Error {
    /// True for failures of a mathematical precondition rather than of
    /// surface syntax. The CLI maps these to a distinct exit code.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotSymmetric(_)
                | Error::NotHermitian(..)
                | Error::Singular
                | Error::InvalidStepSpec(_)
                | Error::InvalidSeifert(_)
                | Error::Degenerate(_)
                | Error::ZeroInput(_)
        )
    }
}
