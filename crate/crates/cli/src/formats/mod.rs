//! Text formats read and written by the command-line tool.
//!
//! Every reader reports problems with 1-based line numbers. Every writer is
//! deterministic, so equal values serialize to equal bytes.

pub mod derivation;
pub mod dimacs;
pub mod equivalence;
pub mod grammar;
pub mod layout;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: clause has {width} literals, at most 3 are supported")]
    ClauseWidth { line: usize, width: usize },
}

impl FormatError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            message: message.into(),
        }
    }

    pub fn line(&self) -> usize {
        match self {
            FormatError::Syntax { line, .. } | FormatError::ClauseWidth { line, .. } => *line,
        }
    }
}

/// Non-blank lines with `#` comments removed, paired with their line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}
