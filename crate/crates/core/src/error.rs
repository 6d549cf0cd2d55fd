use alloc::string::String;

use thiserror::Error;

use crate::grammar::{ValidationReport, Word};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Chain violations found while replaying a derivation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("derivation has no steps")]
    Empty,
    #[error("step {step}: rule index {index} out of range ({rule_count} rules)")]
    RuleOutOfRange {
        step: usize,
        index: usize,
        rule_count: usize,
    },
    #[error("step 0: rule starts at {found}, expected start symbol {expected}")]
    WrongStart { expected: String, found: String },
    #[error("step {step}: rule starts at {found}, previous step produced {expected}")]
    BrokenChain {
        step: usize,
        expected: String,
        found: String,
    },
    #[error("step {step}: final rule used before the last step")]
    PrematureFinal { step: usize },
    #[error("last step {step} leaves nonterminal {pending} underived")]
    Unterminated { step: usize, pending: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid grammar: {0}")]
    InvalidGrammar(ValidationReport),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error("symbol {symbol:?} at position {position} is not in the terminal alphabet")]
    UnknownSymbol { position: usize, symbol: char },
    #[error("nonterminal {0} is not declared by the grammar")]
    UnknownNonterminal(String),
    #[error("invalid equivalence: {0}")]
    InvalidEquivalence(String),
    #[error("search budget of {max_nodes} nodes exceeded")]
    BudgetExceeded { max_nodes: u64 },
    #[error("guard exceeded: {what} is {actual}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },
    #[error("{classes} equivalence classes do not fit the {limit}-bit visited set")]
    TooManyClasses { classes: usize, limit: usize },
    #[error("literal references variable {var} but the formula has {var_count} variables")]
    LiteralOutOfRange { var: u32, var_count: usize },
    #[error("assignment has {found} values, formula has {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("assignment does not satisfy the formula")]
    UnsatisfiedAssignment,
    #[error("derivation yields {found}, expected {expected}")]
    WrongWord { expected: Word, found: Word },
}
