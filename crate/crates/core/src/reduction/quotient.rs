use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grammar::{validate, Equivalence, Grammar, Rule};

/// Collapses nonterminals classwise. Each class is named by its first
/// member in `g`'s nonterminal order. Rules that become equal after
/// renaming are kept once, at the position of their first occurrence.
pub fn quotient(g: &Grammar, eq: &Equivalence) -> Result<Grammar> {
    let report = validate(g);
    if !report.is_ok() {
        return Err(Error::InvalidGrammar(report));
    }
    let classes = eq.class_map(g)?;
    let names = g.nonterminals();
    let rename = |name: &str| {
        let idx = g.nonterminal_index(name).expect("validated");
        names[classes.representative(classes.class_of(idx))].clone()
    };

    let nonterminals = (0..classes.class_count())
        .map(|c| names[classes.representative(c)].clone())
        .collect();
    let mut seen = BTreeSet::new();
    let mut rules = Vec::new();
    for r in g.rules() {
        let merged = Rule {
            lhs: rename(&r.lhs),
            terminal: r.terminal,
            rhs: r.rhs.as_deref().map(rename),
        };
        if seen.insert(merged.clone()) {
            rules.push(merged);
        }
    }
    Ok(Grammar::from_parts(
        nonterminals,
        g.terminals().to_vec(),
        rules,
        rename(g.start()),
    ))
}
