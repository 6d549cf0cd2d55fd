//! `deriv 0 3 5`: 0-based rule indices on one line.

use repfree_core::Derivation;

use super::{content_lines, FormatError};

pub fn parse_derivation(text: &str) -> Result<Derivation, FormatError> {
    let mut lines = content_lines(text);
    let (line, content) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(1, "expected `deriv <rule indices>`"))?;
    let mut tokens = content.split_whitespace();
    if tokens.next() != Some("deriv") {
        return Err(FormatError::syntax(line, "expected `deriv` prefix"));
    }
    let steps = tokens
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| FormatError::syntax(line, format!("`{t}` is not a rule index")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((extra, _)) = lines.next() {
        return Err(FormatError::syntax(
            extra,
            "unexpected content after derivation",
        ));
    }
    Ok(Derivation::new(steps))
}

pub fn render_derivation(d: &Derivation) -> String {
    let mut out = String::from("deriv");
    for step in d.steps() {
        out.push(' ');
        out.push_str(&step.to_string());
    }
    out
}
