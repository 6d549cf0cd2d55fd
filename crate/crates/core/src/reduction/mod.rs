//! From a 3-CNF formula to a regular grammar and a target word.
//!
//! For a formula with `m` variables and `n` conjuncts the grammar has
//! nonterminals `S0..Sm`, `T0..Tn` and, for every variable `i` and conjunct
//! `j`, a positive and a negative chain member `X_i_j` / `Xb_i_j`.
//!
//! The *upper part* walks from `S0` to `Sm` emitting `n + 1` copies of `a`
//! per variable, either through the `X_i_*` chain (variable false) or the
//! `Xb_i_*` chain (variable true), and then emits `b` into `T0`. The *lower
//! part* walks `T0 → c γ → e T1 → …` where `γ` for conjunct `j` is one of its
//! three literal nonterminals, and ends with `Tn ::= d`. A literal
//! nonterminal that was already visited in the upper part is a repetition,
//! which happens exactly when the literal is false. Hence the target word
//! `a^((n+1)m) b (ce)^n d` has a repetition-free derivation iff the formula
//! is satisfiable.

mod quotient;
mod trace;
mod witness;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use quotient::quotient;
pub use trace::{pair_trace, PairTrace};
pub use witness::{assignment_to_derivation, derivation_to_assignment};

use crate::grammar::{Equivalence, Grammar, Rule, Word};
use crate::sat::{CnfFormula, Literal};

/// Terminal alphabet of every reduction grammar.
pub const TERMINALS: [char; 5] = ['a', 'b', 'c', 'd', 'e'];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Standard,
    /// Upper chains run `X_i_n → … → X_i_1 → S_i`.
    Reversed,
    /// Lower part uses primed copies of the literal nonterminals.
    Primed,
}

/// What a reduction nonterminal stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    S(usize),
    T(usize),
    X {
        var: usize,
        conj: usize,
        negated: bool,
        primed: bool,
    },
}

impl Role {
    /// Conjunction index used by the length-bound bookkeeping: `j` for `T_j`
    /// and for chain members of conjunct `j`, `0` for every `S_i`.
    pub fn conjunction_index(&self) -> usize {
        match *self {
            Role::S(_) => 0,
            Role::T(j) => j,
            Role::X { conj, .. } => conj,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::S(i) => write!(f, "S({i})"),
            Role::T(j) => write!(f, "T({j})"),
            Role::X {
                var,
                conj,
                negated,
                primed,
            } => {
                let bar = if negated { "b" } else { "" };
                let prime = if primed { "'" } else { "" };
                write!(f, "X{bar}{prime}({var},{conj})")
            }
        }
    }
}

/// Naming map between formula structure and grammar nonterminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    variant: Variant,
    var_count: usize,
    clause_count: usize,
    gamma: Vec<[String; 3]>,
    order: Vec<String>,
    roles: BTreeMap<String, Role>,
}

impl ReductionLayout {
    pub fn s_name(i: usize) -> String {
        format!("S{i}")
    }

    pub fn t_name(j: usize) -> String {
        format!("T{j}")
    }

    pub fn x_name(var: usize, conj: usize, negated: bool, primed: bool) -> String {
        let stem = if negated { "Xb" } else { "X" };
        let suffix = if primed { "_p" } else { "" };
        format!("{stem}_{var}_{conj}{suffix}")
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clause_count(&self) -> usize {
        self.clause_count
    }

    /// `γ(j, k)` for conjunct `j ∈ 1..=n` and slot `k ∈ 1..=3`.
    pub fn gamma(&self, j: usize, k: usize) -> &str {
        &self.gamma[j - 1][k - 1]
    }

    pub fn role_of(&self, name: &str) -> Option<Role> {
        self.roles.get(name).copied()
    }

    /// Every nonterminal with its role, in grammar order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, Role)> + '_ {
        self.order.iter().map(|n| (n.as_str(), self.roles[n]))
    }
}

/// A reduction grammar together with its naming map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub grammar: Grammar,
    pub layout: ReductionLayout,
}

/// The primed grammar, its twin-pairing equivalence and naming map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimedReduction {
    pub grammar: Grammar,
    pub equivalence: Equivalence,
    pub layout: ReductionLayout,
}

pub fn build_grammar(f: &CnfFormula) -> Reduction {
    let (grammar, layout) = construct(f, Variant::Standard);
    Reduction { grammar, layout }
}

pub fn build_reversed_grammar(f: &CnfFormula) -> Reduction {
    let (grammar, layout) = construct(f, Variant::Reversed);
    Reduction { grammar, layout }
}

/// The acyclic primed grammar whose only word is [`target_word`]; each
/// primed literal nonterminal is equivalent to its unprimed twin and no
/// other nontrivial equivalences hold.
pub fn build_primed(f: &CnfFormula) -> PrimedReduction {
    let (grammar, layout) = construct(f, Variant::Primed);
    let mut classes = Vec::new();
    for negated in [false, true] {
        for i in 1..=f.var_count() {
            for j in 1..=f.clause_count() {
                classes.push(alloc::vec![
                    ReductionLayout::x_name(i, j, negated, false),
                    ReductionLayout::x_name(i, j, negated, true),
                ]);
            }
        }
    }
    let equivalence = Equivalence::new(classes).expect("twin classes are disjoint");
    PrimedReduction {
        grammar,
        equivalence,
        layout,
    }
}

/// `a^((n+1)m) b (ce)^n d`
pub fn target_word(f: &CnfFormula) -> Word {
    let (m, n) = (f.var_count(), f.clause_count());
    let mut w = Word::default();
    for _ in 0..(n + 1) * m {
        w.push('a');
    }
    w.push('b');
    for _ in 0..n {
        w.push('c');
        w.push('e');
    }
    w.push('d');
    w
}

/// `(n+1)(m+2)`: no repetition-free word of the reduction grammar is longer.
pub fn length_bound(f: &CnfFormula) -> usize {
    (f.clause_count() + 1) * (f.var_count() + 2)
}

fn literal_name(lit: Literal, conj: usize, primed: bool) -> String {
    ReductionLayout::x_name(lit.var as usize, conj, lit.negated, primed)
}

fn construct(f: &CnfFormula, variant: Variant) -> (Grammar, ReductionLayout) {
    let (m, n) = (f.var_count(), f.clause_count());
    let primed = variant == Variant::Primed;
    let s = ReductionLayout::s_name;
    let t = ReductionLayout::t_name;
    let x = |i, j, neg| ReductionLayout::x_name(i, j, neg, false);

    let mut order = Vec::new();
    let mut roles = BTreeMap::new();
    let mut declare = |name: String, role: Role| {
        roles.insert(name.clone(), role);
        order.push(name);
    };
    for i in 0..=m {
        declare(s(i), Role::S(i));
    }
    for negated in [false, true] {
        for i in 1..=m {
            for j in 1..=n {
                let role = Role::X {
                    var: i,
                    conj: j,
                    negated,
                    primed: false,
                };
                declare(x(i, j, negated), role);
            }
        }
    }
    for j in 0..=n {
        declare(t(j), Role::T(j));
    }
    if primed {
        for negated in [false, true] {
            for i in 1..=m {
                for j in 1..=n {
                    let role = Role::X {
                        var: i,
                        conj: j,
                        negated,
                        primed: true,
                    };
                    declare(ReductionLayout::x_name(i, j, negated, true), role);
                }
            }
        }
    }

    let gamma: Vec<[String; 3]> = f
        .clauses()
        .iter()
        .enumerate()
        .map(|(idx, c)| c.literals().map(|lit| literal_name(lit, idx + 1, primed)))
        .collect();

    let mut rules: Vec<Rule> = Vec::new();
    let mut push = |r: Rule| {
        // Repeated literals in a conjunct would repeat lower-part rules.
        if !rules.contains(&r) {
            rules.push(r);
        }
    };

    if n == 0 {
        // Empty chains: each variable contributes a single `a`.
        for i in 1..=m {
            push(Rule::chain(s(i - 1), 'a', s(i)));
        }
    } else {
        let (entry, exit) = match variant {
            Variant::Reversed => (n, 1),
            _ => (1, n),
        };
        for negated in [false, true] {
            for i in 1..=m {
                push(Rule::chain(s(i - 1), 'a', x(i, entry, negated)));
            }
        }
        for negated in [false, true] {
            for i in 1..=m {
                if variant == Variant::Reversed {
                    for j in (2..=n).rev() {
                        push(Rule::chain(x(i, j, negated), 'a', x(i, j - 1, negated)));
                    }
                } else {
                    for j in 1..n {
                        push(Rule::chain(x(i, j, negated), 'a', x(i, j + 1, negated)));
                    }
                }
            }
        }
        for negated in [false, true] {
            for i in 1..=m {
                push(Rule::chain(x(i, exit, negated), 'a', s(i)));
            }
        }
    }
    push(Rule::chain(s(m), 'b', t(0)));
    for (j, names) in gamma.iter().enumerate() {
        for name in names {
            push(Rule::chain(t(j), 'c', name.clone()));
        }
    }
    for (j, names) in gamma.iter().enumerate() {
        for name in names {
            push(Rule::chain(name.clone(), 'e', t(j + 1)));
        }
    }
    push(Rule::last(t(n), 'd'));

    let grammar = Grammar::from_parts(order.clone(), TERMINALS.to_vec(), rules, s(0));
    debug_assert!(crate::grammar::validate(&grammar).is_ok());
    let layout = ReductionLayout {
        variant,
        var_count: m,
        clause_count: n,
        gamma,
        order,
        roles,
    };
    (grammar, layout)
}
