use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Grammar;
use crate::error::{Error, Result};

/// A partition of nonterminal names. Names not listed in any class are
/// singleton classes, so the empty partition is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Equivalence {
    classes: Vec<Vec<String>>,
}

impl Equivalence {
    pub fn identity() -> Self {
        Equivalence::default()
    }

    /// Listed classes must be nonempty and pairwise disjoint.
    pub fn new(classes: Vec<Vec<String>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidEquivalence(format!("class {i} is empty")));
            }
            for name in class {
                if !seen.insert(name.as_str()) {
                    return Err(Error::InvalidEquivalence(format!(
                        "{name} appears in more than one class"
                    )));
                }
            }
        }
        Ok(Equivalence { classes })
    }

    pub fn classes(&self) -> &[Vec<String>] {
        &self.classes
    }

    /// Resolves the partition against `g`. Every listed name must be a
    /// nonterminal of `g`. Classes are numbered by the first appearance of a
    /// member in `g`'s nonterminal order.
    pub fn class_map(&self, g: &Grammar) -> Result<ClassMap> {
        let n = g.nonterminals().len();
        // `group[i]` is the listed class containing nonterminal i, if any.
        let mut group: Vec<Option<usize>> = alloc::vec![None; n];
        for (ci, class) in self.classes.iter().enumerate() {
            for name in class {
                let idx = g
                    .nonterminal_index(name)
                    .ok_or_else(|| Error::UnknownNonterminal(name.clone()))?;
                group[idx] = Some(ci);
            }
        }
        let mut class_of = alloc::vec![usize::MAX; n];
        let mut representative = Vec::new();
        let mut group_class: Vec<Option<usize>> = alloc::vec![None; self.classes.len()];
        for i in 0..n {
            let id = match group[i] {
                Some(gi) => *group_class[gi].get_or_insert_with(|| {
                    representative.push(i);
                    representative.len() - 1
                }),
                None => {
                    representative.push(i);
                    representative.len() - 1
                }
            };
            class_of[i] = id;
        }
        Ok(ClassMap {
            class_of,
            representative,
        })
    }
}

/// Total class lookup over a grammar's nonterminal indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMap {
    class_of: Vec<usize>,
    representative: Vec<usize>,
}

impl ClassMap {
    pub fn identity(nonterminals: usize) -> Self {
        ClassMap {
            class_of: (0..nonterminals).collect(),
            representative: (0..nonterminals).collect(),
        }
    }

    pub fn class_of(&self, nonterminal: usize) -> usize {
        self.class_of[nonterminal]
    }

    pub fn class_count(&self) -> usize {
        self.representative.len()
    }

    /// The first member (in grammar order) of each class.
    pub fn representative(&self, class: usize) -> usize {
        self.representative[class]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.class_of
    }
}
