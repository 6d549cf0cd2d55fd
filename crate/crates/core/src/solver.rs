//! Searches for repetition-free derivations.
//!
//! All searches are depth-first over `(position, nonterminal, visited)`
//! states and try rules in grammar order, so results are deterministic. The
//! visited set holds equivalence classes (identity classes unless an
//! [`Equivalence`] is given) as bits of a `u64`, numbered by first
//! appearance in the grammar's nonterminal list.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::grammar::{
    is_repetition_free, validate, ClassMap, Derivation, Equivalence, Grammar, Indexed, Word,
};

/// Widest visited set supported by the searches.
pub const MAX_CLASSES: usize = 64;

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

/// What a search does when it runs out of nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OnExceed {
    #[default]
    Error,
    ReportUnknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub on_exceed: OnExceed,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: DEFAULT_MAX_NODES,
            on_exceed: OnExceed::Error,
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64, on_exceed: OnExceed) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
            on_exceed,
        }
    }
}

/// Whether [`decide_repfree_mod_with`] uses the suffix-reachability table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    Enabled,
    Disabled,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub suffix_prunes: u64,
    pub bound_prunes: u64,
    pub max_visited: usize,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes_expanded={}", self.nodes_expanded)?;
        writeln!(f, "suffix_prunes={}", self.suffix_prunes)?;
        writeln!(f, "bound_prunes={}", self.bound_prunes)?;
        writeln!(f, "max_visited={}", self.max_visited)
    }
}

/// Three-valued search result; `Unknown` only arises from an exhausted
/// budget under [`OnExceed::ReportUnknown`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    Absent,
    Unknown,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved<T> {
    pub outcome: Outcome<T>,
    pub stats: SearchStats,
}

/// A longest repetition-free word with one of its derivations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Longest {
    pub length: usize,
    pub word: Word,
    pub derivation: Derivation,
}

struct Exceeded;

struct Search<'a> {
    ix: Indexed,
    classes: ClassMap,
    budget: &'a SearchBudget,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(g: &Grammar, eq: Option<&Equivalence>, budget: &'a SearchBudget) -> Result<Self> {
        let ix = Indexed::new(g)?;
        let classes = match eq {
            Some(eq) => eq.class_map(g)?,
            None => ClassMap::identity(ix.nonterminal_count()),
        };
        if classes.class_count() > MAX_CLASSES {
            return Err(Error::TooManyClasses {
                classes: classes.class_count(),
                limit: MAX_CLASSES,
            });
        }
        Ok(Search {
            ix,
            classes,
            budget,
            stats: SearchStats::default(),
        })
    }

    fn bit(&self, nt: usize) -> u64 {
        1 << self.classes.class_of(nt)
    }

    fn expand(&mut self, visited: u64) -> core::result::Result<(), Exceeded> {
        self.stats.nodes_expanded += 1;
        self.stats.max_visited = self.stats.max_visited.max(visited.count_ones() as usize);
        if self.stats.nodes_expanded > self.budget.max_nodes {
            Err(Exceeded)
        } else {
            Ok(())
        }
    }

    fn finish<T>(self, result: core::result::Result<Option<T>, Exceeded>) -> Result<Solved<T>> {
        let outcome = match result {
            Ok(Some(t)) => Outcome::Found(t),
            Ok(None) => Outcome::Absent,
            Err(Exceeded) => match self.budget.on_exceed {
                OnExceed::Error => {
                    return Err(Error::BudgetExceeded {
                        max_nodes: self.budget.max_nodes,
                    })
                }
                OnExceed::ReportUnknown => Outcome::Unknown,
            },
        };
        Ok(Solved {
            outcome,
            stats: self.stats,
        })
    }

    /// `reach[i][A]`: `word[i..]` is derivable from `A`, repetitions allowed.
    fn suffix_reach(&self, word: &[usize]) -> Vec<Vec<bool>> {
        let ix = &self.ix;
        let n = word.len();
        let mut reach = alloc::vec![alloc::vec![false; ix.nonterminal_count()]; n];
        for i in (0..n).rev() {
            for r in 0..ix.lhs.len() {
                if ix.terminal[r] != word[i] {
                    continue;
                }
                let ok = match ix.rhs[r] {
                    None => i + 1 == n,
                    Some(c) => i + 1 < n && reach[i + 1][c],
                };
                if ok {
                    reach[i][ix.lhs[r]] = true;
                }
            }
        }
        reach
    }

    fn decide(
        &mut self,
        word: &[usize],
        reach: Option<&[Vec<bool>]>,
        pos: usize,
        nt: usize,
        visited: u64,
        path: &mut Vec<usize>,
    ) -> core::result::Result<bool, Exceeded> {
        self.expand(visited)?;
        let last = pos + 1 == word.len();
        for idx in 0..self.ix.by_lhs[nt].len() {
            let r = self.ix.by_lhs[nt][idx];
            if self.ix.terminal[r] != word[pos] {
                continue;
            }
            match self.ix.rhs[r] {
                None if last => {
                    path.push(r);
                    return Ok(true);
                }
                None => {}
                Some(_) if last => {}
                Some(c) => {
                    let bit = self.bit(c);
                    if visited & bit != 0 {
                        continue;
                    }
                    if let Some(reach) = reach {
                        if !reach[pos + 1][c] {
                            self.stats.suffix_prunes += 1;
                            continue;
                        }
                    }
                    path.push(r);
                    if self.decide(word, reach, pos + 1, c, visited | bit, path)? {
                        return Ok(true);
                    }
                    path.pop();
                }
            }
        }
        Ok(false)
    }

    fn exists(
        &mut self,
        productive: &[bool],
        nt: usize,
        visited: u64,
        path: &mut Vec<usize>,
    ) -> core::result::Result<bool, Exceeded> {
        self.expand(visited)?;
        for idx in 0..self.ix.by_lhs[nt].len() {
            let r = self.ix.by_lhs[nt][idx];
            match self.ix.rhs[r] {
                None => {
                    path.push(r);
                    return Ok(true);
                }
                Some(c) => {
                    let bit = self.bit(c);
                    if visited & bit != 0 || !productive[c] {
                        continue;
                    }
                    path.push(r);
                    if self.exists(productive, c, visited | bit, path)? {
                        return Ok(true);
                    }
                    path.pop();
                }
            }
        }
        Ok(false)
    }

    fn enumerate(
        &mut self,
        productive: &[bool],
        nt: usize,
        visited: u64,
        prefix: &mut Vec<char>,
        out: &mut BTreeSet<Word>,
    ) -> core::result::Result<(), Exceeded> {
        self.expand(visited)?;
        for idx in 0..self.ix.by_lhs[nt].len() {
            let r = self.ix.by_lhs[nt][idx];
            prefix.push(self.ix.terminals[self.ix.terminal[r]]);
            match self.ix.rhs[r] {
                None => {
                    out.insert(Word::new(prefix.clone()));
                }
                Some(c) => {
                    let bit = self.bit(c);
                    if visited & bit == 0 && productive[c] {
                        self.enumerate(productive, c, visited | bit, prefix, out)?;
                    }
                }
            }
            prefix.pop();
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn longest(
        &mut self,
        productive: &[bool],
        require: Option<char>,
        nt: usize,
        visited: u64,
        required_seen: usize,
        prefix: &mut Vec<char>,
        path: &mut Vec<usize>,
        best: &mut Option<(Vec<char>, Vec<usize>)>,
    ) -> core::result::Result<(), Exceeded> {
        // Every further step starts from a fresh class, plus the current one.
        let unvisited = self.classes.class_count() - visited.count_ones() as usize;
        let bound = prefix.len() + 1 + unvisited;
        if best.as_ref().is_some_and(|(w, _)| w.len() >= bound) {
            self.stats.bound_prunes += 1;
            return Ok(());
        }
        self.expand(visited)?;
        for idx in 0..self.ix.by_lhs[nt].len() {
            let r = self.ix.by_lhs[nt][idx];
            let t = self.ix.terminals[self.ix.terminal[r]];
            let seen = required_seen + usize::from(Some(t) == require);
            prefix.push(t);
            path.push(r);
            match self.ix.rhs[r] {
                None => {
                    let better = best.as_ref().is_none_or(|(w, _)| prefix.len() > w.len());
                    if better && (require.is_none() || seen > 0) {
                        *best = Some((prefix.clone(), path.clone()));
                    }
                }
                Some(c) => {
                    let bit = self.bit(c);
                    if visited & bit == 0 && productive[c] {
                        self.longest(
                            productive,
                            require,
                            c,
                            visited | bit,
                            seen,
                            prefix,
                            path,
                            best,
                        )?;
                    }
                }
            }
            prefix.pop();
            path.pop();
        }
        Ok(())
    }
}

/// Decides whether `w` has a repetition-free derivation from `g`.
pub fn decide_repfree(g: &Grammar, w: &Word, budget: &SearchBudget) -> Result<Solved<Derivation>> {
    decide_repfree_mod_with(g, None, w, budget, Pruning::Enabled)
}

/// As [`decide_repfree`], with repetition counted per class of `eq`.
pub fn decide_repfree_mod(
    g: &Grammar,
    eq: &Equivalence,
    w: &Word,
    budget: &SearchBudget,
) -> Result<Solved<Derivation>> {
    decide_repfree_mod_with(g, Some(eq), w, budget, Pruning::Enabled)
}

/// The general decision procedure. States whose remaining suffix is not
/// derivable even with repetitions are cut when `pruning` is enabled.
pub fn decide_repfree_mod_with(
    g: &Grammar,
    eq: Option<&Equivalence>,
    w: &Word,
    budget: &SearchBudget,
    pruning: Pruning,
) -> Result<Solved<Derivation>> {
    let mut search = Search::new(g, eq, budget)?;
    let word = search.ix.encode(w)?;
    // A repetition-free derivation has one fresh class per step.
    if word.is_empty() || word.len() > search.classes.class_count() {
        return search.finish(Ok(None));
    }
    let start = search.ix.start;
    let reach = match pruning {
        Pruning::Enabled => Some(search.suffix_reach(&word)),
        Pruning::Disabled => None,
    };
    if reach.as_ref().is_some_and(|r| !r[0][start]) {
        search.stats.suffix_prunes += 1;
        return search.finish(Ok(None));
    }
    let mut path = Vec::with_capacity(word.len());
    let visited = search.bit(start);
    let result = search
        .decide(&word, reach.as_deref(), 0, start, visited, &mut path)
        .map(|found| found.then(|| Derivation::new(path)));
    search.finish(result)
}

/// Finds some word of `L(g)` with a derivation that is repetition-free
/// modulo `eq`.
pub fn exists_repfree_word_mod(
    g: &Grammar,
    eq: &Equivalence,
    budget: &SearchBudget,
) -> Result<Solved<(Word, Derivation)>> {
    let mut search = Search::new(g, Some(eq), budget)?;
    let productive = search.ix.productive();
    let start = search.ix.start;
    let mut path = Vec::new();
    let visited = search.bit(start);
    let result = search.exists(&productive, start, visited, &mut path);
    let ix = &search.ix;
    let result = result.map(|found| {
        found.then(|| {
            let word = path.iter().map(|&r| ix.terminals[ix.terminal[r]]).collect();
            (word, Derivation::new(path))
        })
    });
    search.finish(result)
}

/// Every word with a repetition-free derivation (modulo `eq` if given).
pub fn enumerate_repfree_words(
    g: &Grammar,
    eq: Option<&Equivalence>,
    budget: &SearchBudget,
) -> Result<Solved<BTreeSet<Word>>> {
    let mut search = Search::new(g, eq, budget)?;
    let productive = search.ix.productive();
    let start = search.ix.start;
    let mut out = BTreeSet::new();
    let visited = search.bit(start);
    let result = search.enumerate(&productive, start, visited, &mut Vec::new(), &mut out);
    search.finish(result.map(|()| Some(out)))
}

/// A longest word with a repetition-free derivation, optionally restricted
/// to words containing `require`. Among equally long words the first one
/// found in rule order wins. Branch and bound: a state is cut when its
/// length plus the number of unvisited classes cannot beat the best so far.
pub fn longest_repfree(
    g: &Grammar,
    eq: Option<&Equivalence>,
    require: Option<char>,
    budget: &SearchBudget,
) -> Result<Solved<Longest>> {
    let mut search = Search::new(g, eq, budget)?;
    let productive = search.ix.productive();
    let start = search.ix.start;
    let mut best = None;
    let visited = search.bit(start);
    let result = search.longest(
        &productive,
        require,
        start,
        visited,
        0,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut best,
    );
    search.finish(result.map(|()| {
        best.map(|(word, path)| Longest {
            length: word.len(),
            word: Word::new(word),
            derivation: Derivation::new(path),
        })
    }))
}

pub const ORACLE_MAX_LEN: usize = 12;
pub const ORACLE_MAX_NODES: u64 = 2_000_000;

/// Exhaustive reference: enumerates every derivation of `w` (exactly `|w|`
/// steps) with no pruning at all and returns the first one that
/// [`is_repetition_free`] accepts.
pub fn oracle_repfree(g: &Grammar, w: &Word) -> Result<Option<Derivation>> {
    let report = validate(g);
    if !report.is_ok() {
        return Err(Error::InvalidGrammar(report));
    }
    if w.len() > ORACLE_MAX_LEN {
        return Err(Error::GuardExceeded {
            what: "oracle word length",
            limit: ORACLE_MAX_LEN as u64,
            actual: w.len() as u64,
        });
    }
    for (position, &symbol) in w.symbols().iter().enumerate() {
        if !g.terminals().contains(&symbol) {
            return Err(Error::UnknownSymbol { position, symbol });
        }
    }
    if w.is_empty() {
        return Ok(None);
    }

    struct Walk<'g> {
        g: &'g Grammar,
        w: &'g [char],
        nodes: u64,
    }
    impl Walk<'_> {
        fn go(&mut self, current: &str, steps: &mut Vec<usize>) -> Result<Option<Derivation>> {
            self.nodes += 1;
            if self.nodes > ORACLE_MAX_NODES {
                return Err(Error::GuardExceeded {
                    what: "oracle nodes",
                    limit: ORACLE_MAX_NODES,
                    actual: self.nodes,
                });
            }
            let pos = steps.len();
            let last = pos + 1 == self.w.len();
            for (i, r) in self.g.rules().iter().enumerate() {
                if r.lhs != current || r.terminal != self.w[pos] || r.rhs.is_none() != last {
                    continue;
                }
                steps.push(i);
                match &r.rhs {
                    None => {
                        let d = Derivation::new(steps.clone());
                        if is_repetition_free(self.g, &d, None)? {
                            return Ok(Some(d));
                        }
                    }
                    Some(next) => {
                        if let Some(d) = self.go(next, steps)? {
                            return Ok(Some(d));
                        }
                    }
                }
                steps.pop();
            }
            Ok(None)
        }
    }

    let mut walk = Walk {
        g,
        w: w.symbols(),
        nodes: 0,
    };
    walk.go(g.start(), &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{replay, Rule};
    use crate::reduction::tests::example;
    use crate::reduction::{build_grammar, build_primed, target_word};
    use crate::sat::{Clause, CnfFormula, Literal};
    use alloc::string::ToString;
    use alloc::vec;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn unsat_one_var() -> CnfFormula {
        let (p, n) = (Literal::pos, Literal::neg);
        CnfFormula::new(
            1,
            vec![Clause::new(p(1), p(1), p(1)), Clause::new(n(1), n(1), n(1))],
        )
        .unwrap()
    }

    #[test]
    fn example_target_is_repfree_derivable() {
        let f = example();
        let g = build_grammar(&f).grammar;
        let w = target_word(&f);
        let d = decide_repfree(&g, &w, &budget())
            .unwrap()
            .outcome
            .found()
            .unwrap();
        assert_eq!(replay(&g, &d).unwrap(), w);
        assert!(is_repetition_free(&g, &d, None).unwrap());
    }

    #[test]
    fn unsatisfiable_target_is_absent() {
        let f = unsat_one_var();
        let g = build_grammar(&f).grammar;
        let w = target_word(&f);
        assert_eq!(w.to_string(), "aaabceced");
        let solved = decide_repfree(&g, &w, &budget()).unwrap();
        assert_eq!(solved.outcome, Outcome::Absent);
        assert_eq!(oracle_repfree(&g, &w).unwrap(), None);
    }

    #[test]
    fn self_loop_counts_start() {
        let g = Grammar::from_rules("S", vec![Rule::chain("S", 'a', "S"), Rule::last("S", 'a')])
            .unwrap();
        assert!(decide_repfree(&g, &Word::from("a"), &budget())
            .unwrap()
            .outcome
            .is_found());
        assert_eq!(
            decide_repfree(&g, &Word::from("aa"), &budget())
                .unwrap()
                .outcome,
            Outcome::Absent
        );
    }

    #[test]
    fn budget_exhaustion_is_distinct_from_absent() {
        let f = example();
        let g = build_grammar(&f).grammar;
        let w = target_word(&f);
        let tight = SearchBudget::new(3, OnExceed::ReportUnknown);
        assert_eq!(
            decide_repfree(&g, &w, &tight).unwrap().outcome,
            Outcome::Unknown
        );
        let tight = SearchBudget::new(3, OnExceed::Error);
        assert_eq!(
            decide_repfree(&g, &w, &tight).unwrap_err(),
            Error::BudgetExceeded { max_nodes: 3 }
        );
    }

    #[test]
    fn primed_grammar_decisions() {
        let p = build_primed(&example());
        let w = target_word(&example());
        assert!(
            decide_repfree_mod(&p.grammar, &p.equivalence, &w, &budget())
                .unwrap()
                .outcome
                .is_found()
        );
        let (word, _) = exists_repfree_word_mod(&p.grammar, &p.equivalence, &budget())
            .unwrap()
            .outcome
            .found()
            .unwrap();
        assert_eq!(word, w);

        let f = unsat_one_var();
        let p = build_primed(&f);
        let w = target_word(&f);
        assert_eq!(
            decide_repfree_mod(&p.grammar, &p.equivalence, &w, &budget())
                .unwrap()
                .outcome,
            Outcome::Absent
        );
        assert_eq!(
            exists_repfree_word_mod(&p.grammar, &p.equivalence, &budget())
                .unwrap()
                .outcome,
            Outcome::Absent
        );
    }

    #[test]
    fn single_rule_exists() {
        let g = Grammar::from_rules("S", vec![Rule::last("S", 'a')]).unwrap();
        let (w, d) = exists_repfree_word_mod(&g, &Equivalence::identity(), &budget())
            .unwrap()
            .outcome
            .found()
            .unwrap();
        assert_eq!(w, Word::from("a"));
        assert_eq!(d, Derivation::new(vec![0]));
    }

    #[test]
    fn two_rule_enumeration() {
        let g = Grammar::from_rules(
            "S",
            vec![
                Rule::last("S", 'a'),
                Rule::chain("S", 'a', "T"),
                Rule::last("T", 'b'),
            ],
        )
        .unwrap();
        let words = enumerate_repfree_words(&g, None, &budget())
            .unwrap()
            .outcome
            .found()
            .unwrap();
        let expected: BTreeSet<Word> = [Word::from("a"), Word::from("ab")].into_iter().collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn empty_grammar_has_no_longest() {
        let g = Grammar::from_parts(vec!["S".to_string()], vec!['a'], vec![], "S");
        assert_eq!(
            longest_repfree(&g, None, None, &budget()).unwrap().outcome,
            Outcome::Absent
        );
    }

    #[test]
    fn longest_respects_required_symbol() {
        let g = Grammar::from_rules(
            "S",
            vec![
                Rule::chain("S", 'a', "A"),
                Rule::chain("A", 'a', "B"),
                Rule::last("B", 'a'),
                Rule::last("S", 'b'),
            ],
        )
        .unwrap();
        let best = longest_repfree(&g, None, None, &budget())
            .unwrap()
            .outcome
            .found()
            .unwrap();
        assert_eq!(best.word, Word::from("aaa"));
        let best = longest_repfree(&g, None, Some('b'), &budget())
            .unwrap()
            .outcome
            .found()
            .unwrap();
        assert_eq!(best.word, Word::from("b"));
        assert_eq!(replay(&g, &best.derivation).unwrap(), best.word);
    }

    #[test]
    fn too_many_classes() {
        let mut rules = Vec::new();
        for i in 0..70 {
            rules.push(Rule::chain(
                alloc::format!("N{i}"),
                'a',
                alloc::format!("N{}", i + 1),
            ));
        }
        let g = Grammar::from_rules("N0", rules).unwrap();
        assert!(matches!(
            decide_repfree(&g, &Word::from("a"), &budget()),
            Err(Error::TooManyClasses { classes: 71, .. })
        ));
    }

    #[test]
    fn stats_export_as_key_value_lines() {
        let stats = SearchStats {
            nodes_expanded: 3,
            suffix_prunes: 1,
            bound_prunes: 0,
            max_visited: 2,
        };
        assert_eq!(
            stats.to_string(),
            "nodes_expanded=3\nsuffix_prunes=1\nbound_prunes=0\nmax_visited=2\n"
        );
    }
}
