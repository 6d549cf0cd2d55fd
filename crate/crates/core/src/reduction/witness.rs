use alloc::vec::Vec;

use super::{build_grammar, target_word, ReductionLayout, Role};
use crate::error::{Error, Result};
use crate::grammar::{replay, Derivation, Grammar};
use crate::sat::{evaluate, Assignment, CnfFormula};

fn rule_index(g: &Grammar, lhs: &str, terminal: char, rhs: Option<&str>) -> usize {
    g.find_rule(lhs, terminal, rhs)
        .expect("rule present by construction")
}

/// A repetition-free derivation of the target word from [`build_grammar`]
/// for a satisfying assignment.
///
/// Variables assigned 1 take the `Xb` chain, variables assigned 0 the `X`
/// chain. Each conjunct hops through the literal nonterminal of its lowest
/// satisfied slot, which is never on the chosen chains.
pub fn assignment_to_derivation(f: &CnfFormula, a: &Assignment) -> Result<Derivation> {
    if !evaluate(f, a)? {
        return Err(Error::UnsatisfiedAssignment);
    }
    let g = build_grammar(f).grammar;
    let (m, n) = (f.var_count(), f.clause_count());
    let s = ReductionLayout::s_name;
    let t = ReductionLayout::t_name;
    let mut steps = Vec::with_capacity(target_word(f).len());

    for i in 1..=m {
        if n == 0 {
            steps.push(rule_index(&g, &s(i - 1), 'a', Some(&s(i))));
            continue;
        }
        let negated = a.value(i as u32);
        let x = |j| ReductionLayout::x_name(i, j, negated, false);
        steps.push(rule_index(&g, &s(i - 1), 'a', Some(&x(1))));
        for j in 1..n {
            steps.push(rule_index(&g, &x(j), 'a', Some(&x(j + 1))));
        }
        steps.push(rule_index(&g, &x(n), 'a', Some(&s(i))));
    }
    steps.push(rule_index(&g, &s(m), 'b', Some(&t(0))));
    for (idx, clause) in f.clauses().iter().enumerate() {
        let j = idx + 1;
        let lit = clause
            .literals()
            .iter()
            .find(|l| l.is_satisfied_by(a))
            .expect("evaluated as satisfied");
        let gamma = ReductionLayout::x_name(lit.var as usize, j, lit.negated, false);
        steps.push(rule_index(&g, &t(j - 1), 'c', Some(&gamma)));
        steps.push(rule_index(&g, &gamma, 'e', Some(&t(j))));
    }
    steps.push(rule_index(&g, &t(n), 'd', None));
    Ok(Derivation::new(steps))
}

/// Reads the assignment encoded by the part of `d` before its `b` step:
/// `x_i = 1` iff some `Xb_i_j` occurs there.
///
/// `d` need not be repetition-free; a derivation with a repetition may
/// yield an assignment that does not satisfy `f`.
pub fn derivation_to_assignment(f: &CnfFormula, d: &Derivation) -> Result<Assignment> {
    let r = build_grammar(f);
    let word = replay(&r.grammar, d)?;
    let expected = target_word(f);
    if word != expected {
        return Err(Error::WrongWord {
            expected,
            found: word,
        });
    }
    let mut values = alloc::vec![false; f.var_count()];
    for &step in d.steps() {
        let rule = &r.grammar.rules()[step];
        if rule.terminal == 'b' {
            break;
        }
        if let Some(Role::X {
            var, negated: true, ..
        }) = rule.rhs.as_deref().and_then(|n| r.layout.role_of(n))
        {
            values[var - 1] = true;
        }
    }
    Ok(Assignment::new(values))
}
