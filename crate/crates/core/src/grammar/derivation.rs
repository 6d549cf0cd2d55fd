use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Equivalence, Grammar, Rule, Word};
use crate::error::{DerivationError, Error, Result};

/// An ordered list of rule applications, stored as indices into a grammar's
/// rule list.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Derivation {
    steps: Vec<usize>,
}

impl Derivation {
    pub fn new(steps: Vec<usize>) -> Self {
        Derivation { steps }
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl From<Vec<usize>> for Derivation {
    fn from(steps: Vec<usize>) -> Self {
        Derivation { steps }
    }
}

/// Resolves the steps of `d` and checks the chain invariants.
pub(crate) fn resolve<'g>(
    g: &'g Grammar,
    d: &Derivation,
) -> Result<Vec<&'g Rule>, DerivationError> {
    if d.steps.is_empty() {
        return Err(DerivationError::Empty);
    }
    let rule_count = g.rules().len();
    let mut rules = Vec::with_capacity(d.steps.len());
    let last = d.steps.len() - 1;
    let mut expected = g.start();
    for (step, &index) in d.steps.iter().enumerate() {
        let rule = g.rule(index).ok_or(DerivationError::RuleOutOfRange {
            step,
            index,
            rule_count,
        })?;
        if rule.lhs != expected {
            return Err(if step == 0 {
                DerivationError::WrongStart {
                    expected: expected.into(),
                    found: rule.lhs.clone(),
                }
            } else {
                DerivationError::BrokenChain {
                    step,
                    expected: expected.into(),
                    found: rule.lhs.clone(),
                }
            });
        }
        match (&rule.rhs, step == last) {
            (None, false) => return Err(DerivationError::PrematureFinal { step }),
            (Some(pending), true) => {
                return Err(DerivationError::Unterminated {
                    step,
                    pending: pending.clone(),
                })
            }
            (Some(next), false) => expected = next,
            (None, true) => {}
        }
        rules.push(rule);
    }
    Ok(rules)
}

/// The word produced by `d`: the concatenation of its step terminals.
pub fn replay(g: &Grammar, d: &Derivation) -> Result<Word> {
    Ok(resolve(g, d)?.iter().map(|r| r.terminal).collect())
}

/// The start symbol followed by the right-hand side of every non-final step.
pub fn occurring_nonterminals<'g>(g: &'g Grammar, d: &Derivation) -> Result<Vec<&'g str>> {
    let rules = resolve(g, d)?;
    let mut out = Vec::with_capacity(rules.len());
    out.push(g.start());
    out.extend(rules.iter().filter_map(|r| r.rhs.as_deref()));
    Ok(out)
}

/// True iff no two occurring nonterminals of `d` share a class of `eq`
/// (identity classes when `eq` is `None`).
pub fn is_repetition_free(g: &Grammar, d: &Derivation, eq: Option<&Equivalence>) -> Result<bool> {
    let occurring = occurring_nonterminals(g, d)?;
    match eq {
        None => {
            let mut seen = BTreeSet::new();
            Ok(occurring.iter().all(|n| seen.insert(*n)))
        }
        Some(eq) => {
            let classes = eq.class_map(g)?;
            let mut seen = BTreeSet::new();
            for n in occurring {
                let idx = g
                    .nonterminal_index(n)
                    .ok_or_else(|| Error::UnknownNonterminal(n.into()))?;
                if !seen.insert(classes.class_of(idx)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn two_step() -> Grammar {
        Grammar::from_rules(
            "S",
            vec![
                Rule::chain("S", 'a', "X"),
                Rule::last("X", 'b'),
                Rule::last("Y", 'b'),
                Rule::last("S", 'a'),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_step_replays_one_symbol() {
        let g = Grammar::from_rules("S", vec![Rule::last("S", 'a')]).unwrap();
        let d = Derivation::new(vec![0]);
        assert_eq!(replay(&g, &d).unwrap(), Word::from("a"));
        assert_eq!(occurring_nonterminals(&g, &d).unwrap(), vec!["S"]);
        assert!(is_repetition_free(&g, &d, None).unwrap());
    }

    #[test]
    fn two_step_occurrences() {
        let g = two_step();
        let d = Derivation::new(vec![0, 1]);
        assert_eq!(replay(&g, &d).unwrap(), Word::from("ab"));
        assert_eq!(occurring_nonterminals(&g, &d).unwrap(), vec!["S", "X"]);
    }

    #[test]
    fn broken_chain_is_reported() {
        let g = two_step();
        let err = replay(&g, &Derivation::new(vec![0, 2])).unwrap_err();
        assert_eq!(
            err,
            Error::Derivation(DerivationError::BrokenChain {
                step: 1,
                expected: "X".to_string(),
                found: "Y".to_string()
            })
        );
    }

    #[test]
    fn premature_final_and_unterminated() {
        let g = two_step();
        assert_eq!(
            replay(&g, &Derivation::new(vec![3, 1])).unwrap_err(),
            Error::Derivation(DerivationError::PrematureFinal { step: 0 })
        );
        assert!(matches!(
            replay(&g, &Derivation::new(vec![0])).unwrap_err(),
            Error::Derivation(DerivationError::Unterminated { step: 0, .. })
        ));
        assert!(matches!(
            replay(&g, &Derivation::new(vec![9])).unwrap_err(),
            Error::Derivation(DerivationError::RuleOutOfRange { index: 9, .. })
        ));
        assert_eq!(
            replay(&g, &Derivation::new(vec![])).unwrap_err(),
            Error::Derivation(DerivationError::Empty)
        );
    }

    #[test]
    fn returning_to_start_is_a_repetition() {
        let g = Grammar::from_rules("S", vec![Rule::chain("S", 'a', "S"), Rule::last("S", 'a')])
            .unwrap();
        let d = Derivation::new(vec![0, 1]);
        assert_eq!(replay(&g, &d).unwrap(), Word::from("aa"));
        assert!(!is_repetition_free(&g, &d, None).unwrap());
    }

    #[test]
    fn coarser_equivalence_detects_class_repetition() {
        let g = two_step();
        let d = Derivation::new(vec![0, 1]);
        let eq = Equivalence::new(vec![vec!["S".to_string(), "X".to_string()]]).unwrap();
        assert!(is_repetition_free(&g, &d, None).unwrap());
        assert!(!is_repetition_free(&g, &d, Some(&eq)).unwrap());
    }
}
