use thiserror::Error;

/// Errors raised by group construction, character computations and
/// verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group closure exceeds the order cap of {cap}")]
    ClosureCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("construction contract violated for {label}: {reason}")]
    ConstructionContractViolated { label: String, reason: String },
    #[error("subgroup of order {order} is not a {p}-group")]
    NotAPGroup { order: usize, p: u64 },
    #[error("no subgroups of order {p}^{k}")]
    NoSuchSubgroups { p: u64, k: u32 },
    #[error("no prime modulus found below the search bound")]
    ModulusSearchFailed,
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
    #[error("class functions belong to different contexts")]
    ContextMismatch,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not an internal direct product: {0}")]
    NotADirectProduct(String),
    #[error("not a semidirect decomposition: {0}")]
    NotASemidirectDecomposition(String),
    #[error("node {0} is not a Sylow node")]
    NotASylowNode(usize),
    #[error("group action does not preserve components")]
    ActionNotCompatible,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("independent computations disagree: {0}")]
    CrossCheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// What kind of syntax problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownConstructor(String),
    ParameterOutOfRange(String),
}

/// A parse failure with the byte offset where it was detected and the
/// tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", self.render())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn syntax(offset: usize, expected: &[&str]) -> Self {
        ParseError {
            kind: ParseErrorKind::Syntax,
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn render(&self) -> String {
        match &self.kind {
            ParseErrorKind::Syntax => {
                if self.expected.is_empty() {
                    format!("syntax error at offset {}", self.offset)
                } else {
                    format!(
                        "syntax error at offset {}: expected one of {}",
                        self.offset,
                        self.expected.join(", ")
                    )
                }
            }
            ParseErrorKind::UnknownConstructor(name) => {
                format!("unknown constructor `{}` at offset {}", name, self.offset)
            }
            ParseErrorKind::ParameterOutOfRange(msg) => {
                format!("parameter out of range at offset {}: {}", self.offset, msg)
            }
        }
    }
}
