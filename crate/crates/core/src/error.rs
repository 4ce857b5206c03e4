use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("state {state} out of range (automaton has {count} states)")]
    StateOutOfRange { state: usize, count: usize },

    #[error("automaton is not deterministic: {0}")]
    Nondeterministic(String),

    #[error("agent index {index} out of range (architecture has {count} agents)")]
    AgentOutOfRange { index: usize, count: usize },

    #[error("unknown agent `{0}`")]
    UnknownAgent(String),

    #[error("K not a subset of L, witness: {witness}")]
    SpecNotSubset { witness: String },

    #[error("word {word} is not in L")]
    NotInPlant { word: String },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("instance too large for oracle: more than {limit} words in the enumeration frontier")]
    OracleTooLarge { limit: usize },

    #[error("soundness violation: {0}")]
    SoundnessViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate a bug or broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::SoundnessViolation(_) | Error::Internal(_))
    }

    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}
