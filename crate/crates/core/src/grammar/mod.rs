//! Regular word grammars and their derivations.

mod derivation;
mod equivalence;
mod membership;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use derivation::{is_repetition_free, occurring_nonterminals, replay, Derivation};
pub use equivalence::{ClassMap, Equivalence};
pub use membership::{derives, enumerate_words, enumerate_words_with, EnumerationLimits};

use crate::error::{Error, Result};

/// A rule `lhs ::= terminal rhs`, or `lhs ::= terminal` when `rhs` is absent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: String,
    pub terminal: char,
    pub rhs: Option<String>,
}

impl Rule {
    /// `lhs ::= terminal rhs`
    pub fn chain(lhs: impl Into<String>, terminal: char, rhs: impl Into<String>) -> Self {
        Rule {
            lhs: lhs.into(),
            terminal,
            rhs: Some(rhs.into()),
        }
    }

    /// `lhs ::= terminal`
    pub fn last(lhs: impl Into<String>, terminal: char) -> Self {
        Rule {
            lhs: lhs.into(),
            terminal,
            rhs: None,
        }
    }

    pub fn is_final(&self) -> bool {
        self.rhs.is_none()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            Some(rhs) => write!(f, "{} -> {} {}", self.lhs, self.terminal, rhs),
            None => write!(f, "{} -> {}", self.lhs, self.terminal),
        }
    }
}

/// A finite sequence of terminal symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<char>);

impl Word {
    pub fn new(symbols: Vec<char>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.0.contains(&symbol)
    }

    pub fn push(&mut self, symbol: char) {
        self.0.push(symbol);
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl FromIterator<char> for Word {
    fn from_iter<I: IntoIterator<Item = char>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// One reason a grammar is malformed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    StartUndeclared(String),
    DuplicateNonterminal(String),
    DuplicateTerminal(char),
    /// A nonterminal whose name is also a terminal symbol.
    NameClash(String),
    UndeclaredLhs {
        rule: usize,
        name: String,
    },
    UndeclaredRhs {
        rule: usize,
        name: String,
    },
    UndeclaredTerminal {
        rule: usize,
        terminal: char,
    },
    DuplicateRule {
        rule: usize,
        first: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StartUndeclared(s) => write!(f, "start symbol {s} is not a nonterminal"),
            Violation::DuplicateNonterminal(s) => write!(f, "nonterminal {s} declared twice"),
            Violation::DuplicateTerminal(c) => write!(f, "terminal {c:?} declared twice"),
            Violation::NameClash(s) => write!(f, "{s} is both a nonterminal and a terminal"),
            Violation::UndeclaredLhs { rule, name } => {
                write!(f, "rule {rule}: left-hand side {name} is not a nonterminal")
            }
            Violation::UndeclaredRhs { rule, name } => {
                write!(
                    f,
                    "rule {rule}: right-hand side {name} is not a nonterminal"
                )
            }
            Violation::UndeclaredTerminal { rule, terminal } => {
                write!(
                    f,
                    "rule {rule}: terminal {terminal:?} is not in the alphabet"
                )
            }
            Violation::DuplicateRule { rule, first } => {
                write!(f, "rule {rule} duplicates rule {first}")
            }
        }
    }
}

/// Outcome of [`validate`]: empty when the grammar is well formed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A regular grammar `(N, Σ, R, S)`.
///
/// Nonterminal and terminal lists are ordered; their order fixes class
/// numbering, and rule order fixes the tie-break order of every search.
/// [`Grammar::from_parts`] does not check anything, so a grammar may be
/// malformed until [`validate`] says otherwise. Every operation that needs a
/// well-formed grammar validates first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<char>,
    rules: Vec<Rule>,
    start: String,
}

impl Grammar {
    pub fn from_parts(
        nonterminals: Vec<String>,
        terminals: Vec<char>,
        rules: Vec<Rule>,
        start: impl Into<String>,
    ) -> Self {
        Grammar {
            nonterminals,
            terminals,
            rules,
            start: start.into(),
        }
    }

    /// Like [`Grammar::from_parts`], but rejects malformed grammars.
    pub fn new(
        nonterminals: Vec<String>,
        terminals: Vec<char>,
        rules: Vec<Rule>,
        start: impl Into<String>,
    ) -> Result<Self, ValidationReport> {
        let g = Self::from_parts(nonterminals, terminals, rules, start);
        let report = validate(&g);
        if report.is_ok() {
            Ok(g)
        } else {
            Err(report)
        }
    }

    /// Builds a grammar whose symbol lists are inferred from the rules in
    /// order of first appearance (start symbol first).
    pub fn from_rules(
        start: impl Into<String>,
        rules: Vec<Rule>,
    ) -> Result<Self, ValidationReport> {
        let start = start.into();
        let mut nonterminals = alloc::vec![start.clone()];
        let mut terminals = Vec::new();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        seen.insert(start.as_str());
        let mut pending = Vec::new();
        for r in &rules {
            for name in core::iter::once(&r.lhs).chain(r.rhs.as_ref()) {
                if seen.insert(name.as_str()) {
                    pending.push(name.clone());
                }
            }
            if !terminals.contains(&r.terminal) {
                terminals.push(r.terminal);
            }
        }
        nonterminals.extend(pending);
        Self::new(nonterminals, terminals, rules, start)
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[char] {
        &self.terminals
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> Option<&Rule> {
        self.rules.get(index)
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn nonterminal_index(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    /// Index of the first rule equal to `lhs ::= terminal rhs`.
    pub fn find_rule(&self, lhs: &str, terminal: char, rhs: Option<&str>) -> Option<usize> {
        self.rules
            .iter()
            .position(|r| r.lhs == lhs && r.terminal == terminal && r.rhs.as_deref() == rhs)
    }
}

/// Checks every structural invariant of `g`.
pub fn validate(g: &Grammar) -> ValidationReport {
    let mut violations = Vec::new();

    let mut nts: BTreeSet<&str> = BTreeSet::new();
    for n in &g.nonterminals {
        if !nts.insert(n.as_str()) {
            violations.push(Violation::DuplicateNonterminal(n.clone()));
        }
    }
    let mut ts: BTreeSet<char> = BTreeSet::new();
    for &t in &g.terminals {
        if !ts.insert(t) {
            violations.push(Violation::DuplicateTerminal(t));
        }
    }
    for n in &g.nonterminals {
        let mut chars = n.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if ts.contains(&c) {
                violations.push(Violation::NameClash(n.clone()));
            }
        }
    }
    if !nts.contains(g.start.as_str()) {
        violations.push(Violation::StartUndeclared(g.start.clone()));
    }

    let mut first_seen: BTreeMap<&Rule, usize> = BTreeMap::new();
    for (i, r) in g.rules.iter().enumerate() {
        if !nts.contains(r.lhs.as_str()) {
            violations.push(Violation::UndeclaredLhs {
                rule: i,
                name: r.lhs.clone(),
            });
        }
        if let Some(rhs) = &r.rhs {
            if !nts.contains(rhs.as_str()) {
                violations.push(Violation::UndeclaredRhs {
                    rule: i,
                    name: rhs.clone(),
                });
            }
        }
        if !ts.contains(&r.terminal) {
            violations.push(Violation::UndeclaredTerminal {
                rule: i,
                terminal: r.terminal,
            });
        }
        if let Some(&first) = first_seen.get(r) {
            violations.push(Violation::DuplicateRule { rule: i, first });
        } else {
            first_seen.insert(r, i);
        }
    }

    ValidationReport { violations }
}

/// Index-based view of a validated grammar used by the algorithms.
#[derive(Debug, Clone)]
pub(crate) struct Indexed {
    pub lhs: Vec<usize>,
    pub rhs: Vec<Option<usize>>,
    pub terminal: Vec<usize>,
    pub by_lhs: Vec<Vec<usize>>,
    pub start: usize,
    pub terminals: Vec<char>,
}

impl Indexed {
    pub fn new(g: &Grammar) -> Result<Self> {
        let report = validate(g);
        if !report.is_ok() {
            return Err(Error::InvalidGrammar(report));
        }
        let nt: BTreeMap<&str, usize> = g
            .nonterminals
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut by_lhs = alloc::vec![Vec::new(); g.nonterminals.len()];
        let mut lhs = Vec::with_capacity(g.rules.len());
        let mut rhs = Vec::with_capacity(g.rules.len());
        let mut terminal = Vec::with_capacity(g.rules.len());
        for (i, r) in g.rules.iter().enumerate() {
            let l = nt[r.lhs.as_str()];
            lhs.push(l);
            rhs.push(r.rhs.as_ref().map(|n| nt[n.as_str()]));
            terminal.push(g.terminals.iter().position(|&t| t == r.terminal).unwrap());
            by_lhs[l].push(i);
        }
        Ok(Indexed {
            lhs,
            rhs,
            terminal,
            by_lhs,
            start: nt[g.start.as_str()],
            terminals: g.terminals.clone(),
        })
    }

    pub fn nonterminal_count(&self) -> usize {
        self.by_lhs.len()
    }

    /// Maps a word onto terminal indices.
    pub fn encode(&self, w: &Word) -> Result<Vec<usize>> {
        w.symbols()
            .iter()
            .enumerate()
            .map(|(position, &symbol)| {
                self.terminals
                    .iter()
                    .position(|&t| t == symbol)
                    .ok_or(Error::UnknownSymbol { position, symbol })
            })
            .collect()
    }

    /// Nonterminals from which some word is derivable, repetition ignored.
    pub fn productive(&self) -> Vec<bool> {
        let mut productive = alloc::vec![false; self.nonterminal_count()];
        let mut changed = true;
        while changed {
            changed = false;
            for r in 0..self.lhs.len() {
                if productive[self.lhs[r]] {
                    continue;
                }
                if self.rhs[r].is_none_or(|c| productive[c]) {
                    productive[self.lhs[r]] = true;
                    changed = true;
                }
            }
        }
        productive
    }
}
