#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use repfree_core::{Clause, CnfFormula, Equivalence, Grammar, Literal, Rule, Word};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random grammar over `N0..N{k-1}` and the first `t` letters of `abc`.
pub fn random_grammar(
    rng: &mut StdRng,
    max_nts: usize,
    max_terms: usize,
    max_rules: usize,
) -> Grammar {
    let k = rng.gen_range(1..=max_nts);
    let t = rng.gen_range(1..=max_terms);
    let nts: Vec<String> = (0..k).map(|i| format!("N{i}")).collect();
    let terms: Vec<char> = "abc".chars().take(t).collect();
    let count = rng.gen_range(1..=max_rules);
    let mut rules = Vec::new();
    for _ in 0..count {
        let lhs = nts[rng.gen_range(0..k)].clone();
        let terminal = terms[rng.gen_range(0..t)];
        let rule = if rng.gen_bool(0.3) {
            Rule::last(lhs, terminal)
        } else {
            Rule::chain(lhs, terminal, nts[rng.gen_range(0..k)].clone())
        };
        if !rules.contains(&rule) {
            rules.push(rule);
        }
    }
    Grammar::new(nts, terms, rules, "N0").unwrap()
}

/// A random partition of the grammar's nonterminals.
pub fn random_equivalence(rng: &mut StdRng, g: &Grammar) -> Equivalence {
    let buckets = rng.gen_range(1..=g.nonterminals().len());
    let mut classes = vec![Vec::new(); buckets];
    for n in g.nonterminals() {
        classes[rng.gen_range(0..buckets)].push(n.clone());
    }
    classes.retain(|c| !c.is_empty());
    Equivalence::new(classes).unwrap()
}

/// Every word over `alphabet` of length `1..=max_len`.
pub fn all_words(alphabet: &[char], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<char>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in alphabet {
                let mut w = w.clone();
                w.push(c);
                out.push(Word::new(w.clone()));
                next.push(w);
            }
        }
        layer = next;
    }
    out
}

/// A random word drawn by walking the grammar, or `None` if the walk dies.
pub fn random_member(rng: &mut StdRng, g: &Grammar, max_len: usize) -> Option<Word> {
    let mut current = g.start().to_string();
    let mut word = Vec::new();
    while word.len() < max_len {
        let options: Vec<&Rule> = g.rules().iter().filter(|r| r.lhs == current).collect();
        if options.is_empty() {
            return None;
        }
        let r = options[rng.gen_range(0..options.len())];
        word.push(r.terminal);
        match &r.rhs {
            None => return Some(Word::new(word)),
            Some(next) => current = next.clone(),
        }
    }
    None
}

/// 20 distinct-ish words of length `1..=max_len`: members of `L(g)` where the
/// random walk finds them, random strings otherwise.
pub fn sample_words(rng: &mut StdRng, g: &Grammar, count: usize, max_len: usize) -> Vec<Word> {
    let mut words = BTreeSet::new();
    let mut attempts = 0;
    while words.len() < count && attempts < count * 20 {
        attempts += 1;
        let w = if attempts % 2 == 0 {
            random_member(rng, g, max_len)
        } else {
            let len = rng.gen_range(1..=max_len);
            let t = g.terminals();
            Some((0..len).map(|_| t[rng.gen_range(0..t.len())]).collect())
        };
        if let Some(w) = w {
            words.insert(w);
        }
    }
    words.into_iter().collect()
}

fn literals(m: usize) -> Vec<Literal> {
    (1..=m as u32)
        .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
        .collect()
}

pub fn random_formula(rng: &mut StdRng, max_m: usize, max_n: usize) -> CnfFormula {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(0..=max_n);
    let lits = literals(m);
    let clauses = (0..n)
        .map(|_| {
            let mut pick = || lits[rng.gen_range(0..lits.len())];
            Clause::new(pick(), pick(), pick())
        })
        .collect();
    CnfFormula::new(m, clauses).unwrap()
}

pub fn random_formula_exact(rng: &mut StdRng, m: usize, n: usize) -> CnfFormula {
    let lits = literals(m);
    let clauses = (0..n)
        .map(|_| {
            let mut pick = || lits[rng.gen_range(0..lits.len())];
            Clause::new(pick(), pick(), pick())
        })
        .collect();
    CnfFormula::new(m, clauses).unwrap()
}

/// Every formula with exactly `m` variables and `n` ordered conjuncts of
/// ordered literal triples.
pub fn all_formulas(m: usize, n: usize) -> Vec<CnfFormula> {
    let lits = literals(m);
    let mut clauses = Vec::new();
    for &a in &lits {
        for &b in &lits {
            for &c in &lits {
                clauses.push(Clause::new(a, b, c));
            }
        }
    }
    let mut out: Vec<Vec<Clause>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                clauses.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(*c);
                    p
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|cs| CnfFormula::new(m, cs).unwrap())
        .collect()
}

/// The worked example: (x1+~x2+x4)·(x2+x3+~x4)·(~x1+~x2+x4).
pub fn example() -> CnfFormula {
    let (p, n) = (Literal::pos, Literal::neg);
    CnfFormula::new(
        4,
        vec![
            Clause::new(p(1), n(2), p(4)),
            Clause::new(p(2), p(3), n(4)),
            Clause::new(n(1), n(2), p(4)),
        ],
    )
    .unwrap()
}

/// Exhaustive satisfiability, independent of `brute_force_sat`.
pub fn satisfiable_by_sweep(f: &CnfFormula) -> bool {
    let m = f.var_count();
    (0..1u32 << m).any(|bits| {
        f.clauses().iter().all(|c| {
            c.literals()
                .iter()
                .any(|l| ((bits >> (l.var - 1)) & 1 == 1) != l.negated)
        })
    })
}
