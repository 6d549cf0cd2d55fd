//! Subcommand dispatch.
//!
//! Exit codes: 0 yes or success, 1 no, 2 usage or input error, 3 search
//! budget exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use repfree_core::{
    assignment_to_derivation, brute_force_sat, build_grammar, build_primed, build_reversed_grammar,
    decide_repfree, decide_repfree_mod, derivation_to_assignment, evaluate, is_repetition_free,
    longest_repfree, quotient, replay, target_word, CnfFormula, Equivalence, Grammar, OnExceed,
    Outcome, SearchBudget, SearchStats, Word, DEFAULT_MAX_NODES,
};
use thiserror::Error;

use crate::formats::derivation::render_derivation;
use crate::formats::dimacs::parse_dimacs;
use crate::formats::equivalence::{parse_equivalence, render_equivalence};
use crate::formats::grammar::{parse_grammar, render_grammar};
use crate::formats::layout::render_layout;
use crate::formats::FormatError;

pub const MAX_NODES_ENV: &str = "REPFREE_MAX_NODES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus {
    pub code: i32,
}

impl ExitStatus {
    pub const YES: ExitStatus = ExitStatus { code: 0 };
    pub const NO: ExitStatus = ExitStatus { code: 1 };
    pub const USAGE: ExitStatus = ExitStatus { code: 2 };
    pub const BUDGET: ExitStatus = ExitStatus { code: 3 };

    fn from_outcome<T>(o: &Outcome<T>) -> Self {
        match o {
            Outcome::Found(_) => Self::YES,
            Outcome::Absent => Self::NO,
            Outcome::Unknown => Self::BUDGET,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Core(#[from] repfree_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn status(&self) -> ExitStatus {
        match self {
            CliError::Core(repfree_core::Error::BudgetExceeded { .. }) => ExitStatus::BUDGET,
            _ => ExitStatus::USAGE,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(source: io::Error) -> Self {
        CliError::Io {
            path: "<output>".into(),
            source,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "repfree",
    version,
    about = "Repetition-free derivations in regular grammars"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the grammar for a DIMACS formula and print its target word.
    Reduce {
        cnf: PathBuf,
        /// Run the variable chains backwards.
        #[arg(long, conflicts_with = "primed")]
        reversed: bool,
        /// Use primed literal copies and also write the twin equivalence.
        #[arg(long)]
        primed: bool,
        #[arg(short, long)]
        output: PathBuf,
        /// Equivalence file for --primed; defaults to `<output>.eq`.
        #[arg(long, requires = "primed")]
        eq_out: Option<PathBuf>,
        /// Also write a `name<TAB>role` map of the nonterminals.
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Decide whether a word has a repetition-free derivation.
    Decide {
        grammar: PathBuf,
        word: String,
        #[arg(long)]
        eq: Option<PathBuf>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Print a derivation when the answer is yes.
        #[arg(long)]
        witness: bool,
        /// Print search counters to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Find a longest word with a repetition-free derivation.
    Longest {
        grammar: PathBuf,
        /// Only consider words containing this terminal.
        #[arg(long)]
        require: Option<char>,
        #[arg(long)]
        eq: Option<PathBuf>,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Decide satisfiability of a DIMACS formula by exhaustive search.
    Sat {
        cnf: PathBuf,
        /// Print the first satisfying assignment in counting order.
        #[arg(long)]
        assign: bool,
    },
    /// Merge each equivalence class of a grammar into one nonterminal.
    Quotient {
        grammar: PathBuf,
        eq: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check that the reduction agrees with exhaustive satisfiability search.
    Verify {
        cnf: PathBuf,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
}

/// Runs one command line, reading `REPFREE_MAX_NODES` from the process
/// environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, |key| std::env::var(key).ok(), out, err)
}

/// [`run`] with an explicit environment lookup.
pub fn run_with_env<I, T>(
    args: I,
    env: impl Fn(&str) -> Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                ExitStatus::USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                ExitStatus::YES
            };
        }
    };
    match dispatch(cli.command, &env, out, err) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status()
        }
    }
}

fn dispatch(
    command: Command,
    env: &dyn Fn(&str) -> Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    match command {
        Command::Reduce {
            cnf,
            reversed,
            primed,
            output,
            eq_out,
            layout,
        } => {
            let f = read_cnf(&cnf)?;
            let (grammar, layout_text) = if primed {
                let p = build_primed(&f);
                let eq_path = eq_out.unwrap_or_else(|| {
                    let mut name = output.clone().into_os_string();
                    name.push(".eq");
                    PathBuf::from(name)
                });
                write_file(&eq_path, &render_equivalence(&p.equivalence))?;
                (p.grammar, render_layout(&p.layout))
            } else {
                let r = if reversed {
                    build_reversed_grammar(&f)
                } else {
                    build_grammar(&f)
                };
                (r.grammar, render_layout(&r.layout))
            };
            write_file(&output, &render_grammar(&grammar))?;
            if let Some(path) = layout {
                write_file(&path, &layout_text)?;
            }
            writeln!(out, "{}", target_word(&f))?;
            Ok(ExitStatus::YES)
        }
        Command::Decide {
            grammar,
            word,
            eq,
            max_nodes,
            witness,
            stats,
        } => {
            let g = read_grammar(&grammar)?;
            let eq = eq.as_deref().map(read_equivalence).transpose()?;
            let budget = budget(max_nodes, env)?;
            let w = Word::from(word.as_str());
            let solved = match &eq {
                Some(eq) => decide_repfree_mod(&g, eq, &w, &budget)?,
                None => decide_repfree(&g, &w, &budget)?,
            };
            report_stats(stats, &solved.stats, err)?;
            match &solved.outcome {
                Outcome::Found(d) => {
                    writeln!(out, "yes")?;
                    if witness {
                        writeln!(out, "{}", render_derivation(d))?;
                    }
                }
                Outcome::Absent => writeln!(out, "no")?,
                Outcome::Unknown => writeln!(out, "unknown")?,
            }
            Ok(ExitStatus::from_outcome(&solved.outcome))
        }
        Command::Longest {
            grammar,
            require,
            eq,
            max_nodes,
            witness,
            stats,
        } => {
            let g = read_grammar(&grammar)?;
            let eq = eq.as_deref().map(read_equivalence).transpose()?;
            let budget = budget(max_nodes, env)?;
            let solved = longest_repfree(&g, eq.as_ref(), require, &budget)?;
            report_stats(stats, &solved.stats, err)?;
            match &solved.outcome {
                Outcome::Found(l) => {
                    writeln!(out, "{} {}", l.length, l.word)?;
                    if witness {
                        writeln!(out, "{}", render_derivation(&l.derivation))?;
                    }
                }
                Outcome::Absent => writeln!(out, "none")?,
                Outcome::Unknown => writeln!(out, "unknown")?,
            }
            Ok(ExitStatus::from_outcome(&solved.outcome))
        }
        Command::Sat { cnf, assign } => {
            let f = read_cnf(&cnf)?;
            match brute_force_sat(&f)? {
                Some(a) => {
                    writeln!(out, "sat")?;
                    if assign {
                        writeln!(out, "{a}")?;
                    }
                    Ok(ExitStatus::YES)
                }
                None => {
                    writeln!(out, "unsat")?;
                    Ok(ExitStatus::NO)
                }
            }
        }
        Command::Quotient {
            grammar,
            eq,
            output,
        } => {
            let g = read_grammar(&grammar)?;
            let eq = read_equivalence(&eq)?;
            write_file(&output, &render_grammar(&quotient(&g, &eq)?))?;
            Ok(ExitStatus::YES)
        }
        Command::Verify { cnf, max_nodes } => {
            let f = read_cnf(&cnf)?;
            verify(&f, &budget(max_nodes, env)?, out)
        }
    }
}

/// Reduce, decide, read back the assignment and compare with `sat`.
fn verify(
    f: &CnfFormula,
    budget: &SearchBudget,
    out: &mut dyn Write,
) -> Result<ExitStatus, CliError> {
    let r = build_grammar(f);
    let w = target_word(f);
    writeln!(out, "formula {f}")?;
    writeln!(out, "target {w}")?;

    let decided = decide_repfree(&r.grammar, &w, budget)?.outcome;
    let sat = brute_force_sat(f)?;
    let mut agree = true;
    match &decided {
        Outcome::Found(d) => {
            writeln!(out, "decide yes")?;
            let a = derivation_to_assignment(f, d)?;
            let holds = evaluate(f, &a)?;
            writeln!(out, "assignment {a}")?;
            writeln!(out, "evaluate {holds}")?;
            agree &= holds;
        }
        Outcome::Absent => writeln!(out, "decide no")?,
        Outcome::Unknown => {
            writeln!(out, "decide unknown")?;
            writeln!(out, "UNKNOWN")?;
            return Ok(ExitStatus::BUDGET);
        }
    }
    match &sat {
        Some(a) => {
            writeln!(out, "sat yes")?;
            let d = assignment_to_derivation(f, a)?;
            let lifted = replay(&r.grammar, &d)? == w && is_repetition_free(&r.grammar, &d, None)?;
            writeln!(out, "lifted {lifted}")?;
            agree &= lifted;
        }
        None => writeln!(out, "sat no")?,
    }
    agree &= decided.is_found() == sat.is_some();
    writeln!(out, "{}", if agree { "PASS" } else { "FAIL" })?;
    Ok(if agree {
        ExitStatus::YES
    } else {
        ExitStatus::NO
    })
}

fn budget(
    flag: Option<u64>,
    env: &dyn Fn(&str) -> Option<String>,
) -> Result<SearchBudget, CliError> {
    let max_nodes = match flag {
        Some(n) => n,
        None => match env(MAX_NODES_ENV) {
            Some(v) => v.trim().parse().map_err(|_| {
                CliError::Usage(format!("{MAX_NODES_ENV}={v:?} is not a node count"))
            })?,
            None => DEFAULT_MAX_NODES,
        },
    };
    Ok(SearchBudget::new(max_nodes, OnExceed::ReportUnknown))
}

fn report_stats(enabled: bool, stats: &SearchStats, err: &mut dyn Write) -> Result<(), CliError> {
    if enabled {
        write!(err, "{stats}")?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn with_path<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Format {
        path: path.display().to_string(),
        source,
    })
}

fn read_cnf(path: &Path) -> Result<CnfFormula, CliError> {
    with_path(path, parse_dimacs(&read(path)?))
}

fn read_grammar(path: &Path) -> Result<Grammar, CliError> {
    with_path(path, parse_grammar(&read(path)?))
}

fn read_equivalence(path: &Path) -> Result<Equivalence, CliError> {
    with_path(path, parse_equivalence(&read(path)?))
}
