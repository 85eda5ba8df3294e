use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("automata are defined over different alphabets")]
    AlphabetMismatch,

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("grammar has no productions")]
    EmptyGrammar,

    #[error("`{0}` is not a nonterminal of the grammar")]
    UnknownNonterminal(String),

    #[error("no production {prod} for `{lhs}` or position {pos} out of range")]
    IndexOutOfRange { lhs: String, prod: u32, pos: String },

    #[error("state cap of {cap} exceeded at step `{step}` ({states} states)")]
    StateCapExceeded {
        step: String,
        states: usize,
        cap: usize,
    },

    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("grammar is not uniformly left-linear or right-linear")]
    NotLinear,

    #[error("missing approximation for `{0}`")]
    MissingApproximation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
