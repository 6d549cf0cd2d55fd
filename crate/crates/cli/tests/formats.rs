use proptest::prelude::*;
use repfree::formats::dimacs::parse_dimacs;
use repfree::formats::grammar::{parse_grammar, render_grammar};
use repfree_core::{build_grammar, build_primed, build_reversed_grammar, Assignment};

fn clause() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1i64..=4, any::<bool>()), 1..=3).prop_map(|lits| {
        lits.into_iter()
            .map(|(v, neg)| if neg { -v } else { v })
            .collect()
    })
}

fn dimacs(clauses: &[Vec<i64>]) -> String {
    let mut text = format!("p cnf 4 {}\n", clauses.len());
    for c in clauses {
        for l in c {
            text.push_str(&format!("{l} "));
        }
        text.push_str("0\n");
    }
    text
}

proptest! {
    #[test]
    fn padding_preserves_truth(clauses in prop::collection::vec(clause(), 0..6)) {
        let f = parse_dimacs(&dimacs(&clauses)).unwrap();
        prop_assert_eq!(f.clause_count(), clauses.len());
        for bits in 0..16u64 {
            let a = Assignment::from_bits(bits, 4);
            for (parsed, raw) in f.clauses().iter().zip(&clauses) {
                let original = raw.iter().any(|&l| a.value(l.unsigned_abs() as u32) == (l > 0));
                prop_assert_eq!(parsed.is_satisfied_by(&a), original);
            }
        }
    }

    #[test]
    fn reduction_grammars_round_trip(clauses in prop::collection::vec(clause(), 0..5)) {
        let f = parse_dimacs(&dimacs(&clauses)).unwrap();
        for g in [build_grammar(&f).grammar, build_reversed_grammar(&f).grammar, build_primed(&f).grammar] {
            let text = render_grammar(&g);
            let back = parse_grammar(&text).unwrap();
            prop_assert_eq!(render_grammar(&back), text);
            prop_assert_eq!(back, g);
        }
    }
}
