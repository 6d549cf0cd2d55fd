use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Grammar, Indexed, Word};
use crate::error::{Error, Result};

/// Standard membership: is `w` derivable at all, repetitions allowed?
///
/// Sweeps the word left to right keeping the set of nonterminals that can
/// stand after each prefix, `O(|w| * |R|)`.
pub fn derives(g: &Grammar, w: &Word) -> Result<bool> {
    let ix = Indexed::new(g)?;
    let symbols = ix.encode(w)?;
    let Some((&last, body)) = symbols.split_last() else {
        return Ok(false);
    };
    let mut current = alloc::vec![false; ix.nonterminal_count()];
    current[ix.start] = true;
    for &t in body {
        let mut next = alloc::vec![false; current.len()];
        for r in 0..ix.lhs.len() {
            if let Some(c) = ix.rhs[r] {
                if current[ix.lhs[r]] && ix.terminal[r] == t {
                    next[c] = true;
                }
            }
        }
        current = next;
    }
    Ok((0..ix.lhs.len())
        .any(|r| ix.rhs[r].is_none() && ix.terminal[r] == last && current[ix.lhs[r]]))
}

/// Guards for [`enumerate_words_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_len: usize,
    pub max_states: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_len: 32,
            max_states: 5_000_000,
        }
    }
}

/// All words of `L(g)` with length at most `max_len`, with default guards.
pub fn enumerate_words(g: &Grammar, max_len: usize) -> Result<BTreeSet<Word>> {
    enumerate_words_with(g, max_len, &EnumerationLimits::default())
}

/// Breadth-first expansion over `(nonterminal, prefix)` states.
pub fn enumerate_words_with(
    g: &Grammar,
    max_len: usize,
    limits: &EnumerationLimits,
) -> Result<BTreeSet<Word>> {
    if max_len > limits.max_len {
        return Err(Error::GuardExceeded {
            what: "max_len",
            limit: limits.max_len as u64,
            actual: max_len as u64,
        });
    }
    let ix = Indexed::new(g)?;
    let mut words = BTreeSet::new();
    let mut frontier: BTreeSet<(usize, Vec<char>)> = BTreeSet::new();
    frontier.insert((ix.start, Vec::new()));
    let mut states = 0u64;
    for _ in 0..max_len {
        let mut next = BTreeSet::new();
        for (nt, prefix) in &frontier {
            states += 1;
            if states > limits.max_states {
                return Err(Error::GuardExceeded {
                    what: "enumeration states",
                    limit: limits.max_states,
                    actual: states,
                });
            }
            for &r in &ix.by_lhs[*nt] {
                let mut w = prefix.clone();
                w.push(ix.terminals[ix.terminal[r]]);
                match ix.rhs[r] {
                    None => {
                        words.insert(Word::new(w));
                    }
                    Some(c) => {
                        next.insert((c, w));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(words)
}
