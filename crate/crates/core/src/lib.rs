//! Repetition-free derivability for regular word grammars.
//!
//! A regular grammar has rules `A ::= b C` and `A ::= b`. A derivation is
//! *repetition-free* when no nonterminal occurs twice in it (the start symbol
//! included), or, given an equivalence on nonterminals, when no two occurring
//! nonterminals share a class.
//!
//! The crate contains:
//!
//! * [`grammar`]: grammars, words, derivations, validation, replay, standard
//!   membership and repetition predicates.
//! * [`sat`]: 3-CNF formulas, evaluation and a brute-force satisfiability
//!   oracle.
//! * [`reduction`]: the constructive map from a 3-CNF formula to a grammar and
//!   target word whose repetition-free derivability coincides with
//!   satisfiability, plus its reversed and primed variants, quotients and
//!   witness translation.
//! * [`solver`]: depth-first decision procedures, enumeration, longest-word
//!   search and an exhaustive oracle.
//!
//! Everything here is `no_std` with `alloc`; file formats and the CLI live in
//! the `repfree` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod grammar;
pub mod reduction;
pub mod sat;
pub mod solver;

pub use error::{DerivationError, Error, Result};
pub use grammar::{
    derives, enumerate_words, enumerate_words_with, is_repetition_free, occurring_nonterminals,
    replay, validate, ClassMap, Derivation, EnumerationLimits, Equivalence, Grammar, Rule,
    ValidationReport, Violation, Word,
};
pub use reduction::{
    assignment_to_derivation, build_grammar, build_primed, build_reversed_grammar,
    derivation_to_assignment, length_bound, pair_trace, quotient, target_word, PairTrace,
    PrimedReduction, Reduction, ReductionLayout, Role, Variant,
};
pub use sat::{brute_force_sat, evaluate, Assignment, Clause, CnfFormula, Literal};
pub use solver::{
    decide_repfree, decide_repfree_mod, decide_repfree_mod_with, enumerate_repfree_words,
    exists_repfree_word_mod, longest_repfree, oracle_repfree, Longest, OnExceed, Outcome, Pruning,
    SearchBudget, SearchStats, Solved, DEFAULT_MAX_NODES, MAX_CLASSES, ORACLE_MAX_LEN,
    ORACLE_MAX_NODES,
};
