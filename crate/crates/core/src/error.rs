use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("duplicate variable {0}")]
    DuplicateVariable(usize),

    #[error("degree {degree} term {vars:?} (coefficient {coeff}) exceeds the quadratic limit")]
    DegreeTooHigh {
        vars: Vec<usize>,
        coeff: f64,
        degree: usize,
    },

    #[error("assignment has {got} bits but {needed} are required")]
    AssignmentTooShort { got: usize, needed: usize },

    #[error("{got} variables exceed the limit of {limit}")]
    TooManyVariables { got: usize, limit: usize },

    #[error("coloring does not cover edge ({0}, {1})")]
    IncompleteColoring(usize, usize),

    #[error("edge ({0}, {1}) is not an edge variable of the problem")]
    MissingEdge(usize, usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
