//! One class per line, whitespace-separated nonterminal names.

use std::collections::BTreeMap;

use repfree_core::Equivalence;

use super::{content_lines, FormatError};

pub fn parse_equivalence(text: &str) -> Result<Equivalence, FormatError> {
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    let mut classes = Vec::new();
    for (line, content) in content_lines(text) {
        let mut class = Vec::new();
        for name in content.split_whitespace() {
            if let Some(first) = seen.insert(name, line) {
                return Err(FormatError::syntax(
                    line,
                    format!("{name} already belongs to the class on line {first}"),
                ));
            }
            class.push(name.to_string());
        }
        classes.push(class);
    }
    Ok(Equivalence::new(classes).expect("classes are non-empty and disjoint"))
}

pub fn render_equivalence(eq: &Equivalence) -> String {
    eq.classes()
        .iter()
        .map(|class| class.join(" ") + "\n")
        .collect()
}
