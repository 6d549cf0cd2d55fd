use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{ReductionLayout, Role};
use crate::error::{Error, Result};
use crate::grammar::{occurring_nonterminals, replay, Derivation, Grammar};

/// `(s*, j*)` after every prefix of a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTrace {
    /// One pair per intermediate word, starting with the start symbol alone.
    pub pairs: Vec<(usize, usize)>,
    /// Strict lexicographic increase on every `a`/`c` step and no change on
    /// every `b`/`d`/`e` step.
    pub monotone: bool,
}

/// Tracks the number of distinct `S_i` seen so far (`s*`) and the current
/// conjunction index (`j*`) along `d`.
pub fn pair_trace(g: &Grammar, layout: &ReductionLayout, d: &Derivation) -> Result<PairTrace> {
    let occurring = occurring_nonterminals(g, d)?;
    let word = replay(g, d)?;
    let role = |name: &str| {
        layout
            .role_of(name)
            .ok_or_else(|| Error::UnknownNonterminal(name.into()))
    };

    let mut seen_s = BTreeSet::new();
    let mut pairs = Vec::with_capacity(occurring.len() + 1);
    for name in &occurring {
        let r = role(name)?;
        if let Role::S(i) = r {
            seen_s.insert(i);
        }
        pairs.push((seen_s.len(), r.conjunction_index()));
    }
    pairs.push((seen_s.len(), layout.clause_count()));

    let monotone = word.symbols().iter().enumerate().all(|(k, &t)| {
        let (before, after) = (pairs[k], pairs[k + 1]);
        match t {
            'a' | 'c' => after > before,
            _ => after == before,
        }
    });
    Ok(PairTrace { pairs, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::tests::example;
    use crate::reduction::{assignment_to_derivation, build_grammar};
    use crate::sat::Assignment;
    use alloc::vec;

    #[test]
    fn example_derivation_is_monotone() {
        let f = example();
        let r = build_grammar(&f);
        let d =
            assignment_to_derivation(&f, &Assignment::new(vec![false, true, false, true])).unwrap();
        let trace = pair_trace(&r.grammar, &r.layout, &d).unwrap();
        assert!(trace.monotone);
        assert_eq!(trace.pairs.len(), 25);
        assert_eq!(trace.pairs[0], (1, 0));
        assert_eq!(trace.pairs[4], (2, 0));
        assert_eq!(*trace.pairs.last().unwrap(), (5, 3));
        assert!(trace
            .pairs
            .iter()
            .all(|&(s, j)| (1..=5).contains(&s) && j <= 3));
    }

    #[test]
    fn long_detour_word_is_monotone() {
        // a^13 e c e c a b c a a e d through X_1_1, X_2_1, X_3_1, X_4_1
        let f = example();
        let r = build_grammar(&f);
        let g = &r.grammar;
        let chain = [
            ("S0", 'a', "X_1_1"),
            ("X_1_1", 'a', "X_1_2"),
            ("X_1_2", 'a', "X_1_3"),
            ("X_1_3", 'a', "S1"),
            ("S1", 'a', "X_2_1"),
            ("X_2_1", 'a', "X_2_2"),
            ("X_2_2", 'a', "X_2_3"),
            ("X_2_3", 'a', "S2"),
            ("S2", 'a', "X_3_1"),
            ("X_3_1", 'a', "X_3_2"),
            ("X_3_2", 'a', "X_3_3"),
            ("X_3_3", 'a', "S3"),
            ("S3", 'a', "X_4_1"),
            ("X_4_1", 'e', "T1"),
            ("T1", 'c', "Xb_4_2"),
            ("Xb_4_2", 'e', "T2"),
            ("T2", 'c', "X_4_3"),
            ("X_4_3", 'a', "S4"),
            ("S4", 'b', "T0"),
            ("T0", 'c', "Xb_2_1"),
            ("Xb_2_1", 'a', "Xb_2_2"),
            ("Xb_2_2", 'a', "Xb_2_3"),
            ("Xb_2_3", 'e', "T3"),
        ];
        let mut steps: Vec<usize> = chain
            .iter()
            .map(|(l, t, r)| g.find_rule(l, *t, Some(r)).unwrap())
            .collect();
        steps.push(g.find_rule("T3", 'd', None).unwrap());
        let d = Derivation::new(steps);
        assert_eq!(
            crate::grammar::replay(g, &d).unwrap(),
            crate::grammar::Word::from("aaaaaaaaaaaaaececabcaaed")
        );
        assert!(crate::grammar::is_repetition_free(g, &d, None).unwrap());
        assert!(pair_trace(g, &r.layout, &d).unwrap().monotone);
    }
}
