//! Grammar files.
//!
//! ```text
//! # comment
//! start S0
//! nonterminals S0 S1 T0      (optional)
//! terminals a b              (optional)
//! S0 -> a S1
//! S1 -> b
//! ```
//!
//! Without declarations the symbol lists are inferred from the rules in
//! order of first appearance, start symbol first. Declarations let a file
//! carry nonterminals that no rule mentions.

use std::fmt::Write;

use repfree_core::{Grammar, Rule, Violation};

use super::{content_lines, FormatError};

pub fn parse_grammar(text: &str) -> Result<Grammar, FormatError> {
    let mut lines = content_lines(text);
    let (start_line, first) = lines.next().ok_or_else(|| {
        FormatError::syntax(1, "empty grammar file, expected `start <nonterminal>`")
    })?;
    let start = match first.split_whitespace().collect::<Vec<_>>()[..] {
        ["start", name] => name.to_string(),
        _ => {
            return Err(FormatError::syntax(
                start_line,
                "first line must be `start <nonterminal>`",
            ))
        }
    };

    let mut declared_nts: Option<(usize, Vec<String>)> = None;
    let mut declared_ts: Option<(usize, Vec<char>)> = None;
    let mut rules = Vec::new();
    let mut rule_lines = Vec::new();

    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "start" => return Err(FormatError::syntax(line, "second `start` line")),
            "nonterminals" => {
                if declared_nts.is_some() {
                    return Err(FormatError::syntax(line, "second `nonterminals` line"));
                }
                declared_nts = Some((line, tokens[1..].iter().map(|s| s.to_string()).collect()));
            }
            "terminals" => {
                if declared_ts.is_some() {
                    return Err(FormatError::syntax(line, "second `terminals` line"));
                }
                let ts = tokens[1..]
                    .iter()
                    .map(|t| single_char(t).ok_or_else(|| bad_terminal(line, t)))
                    .collect::<Result<_, _>>()?;
                declared_ts = Some((line, ts));
            }
            _ => {
                rules.push(parse_rule(line, &tokens)?);
                rule_lines.push(line);
            }
        }
    }

    let (inferred_nts, inferred_ts) = infer_symbols(&start, &rules);
    let nonterminals = declared_nts
        .as_ref()
        .map_or(inferred_nts, |(_, names)| names.clone());
    let terminals = declared_ts
        .as_ref()
        .map_or(inferred_ts, |(_, ts)| ts.clone());

    Grammar::new(nonterminals, terminals, rules, start).map_err(|report| {
        let v = &report.violations[0];
        let line = match v {
            Violation::UndeclaredLhs { rule, .. }
            | Violation::UndeclaredRhs { rule, .. }
            | Violation::UndeclaredTerminal { rule, .. }
            | Violation::DuplicateRule { rule, .. } => rule_lines[*rule],
            Violation::StartUndeclared(_) => start_line,
            Violation::DuplicateNonterminal(_) | Violation::NameClash(_) => {
                declared_nts.as_ref().map_or(start_line, |(l, _)| *l)
            }
            Violation::DuplicateTerminal(_) => declared_ts.as_ref().map_or(start_line, |(l, _)| *l),
        };
        let message = match v {
            Violation::DuplicateRule { first, .. } => {
                format!("rule duplicates the rule on line {}", rule_lines[*first])
            }
            other => other.to_string(),
        };
        FormatError::syntax(line, message)
    })
}

/// Symbols in order of first appearance, start symbol first.
fn infer_symbols(start: &str, rules: &[Rule]) -> (Vec<String>, Vec<char>) {
    let mut nonterminals = vec![start.to_string()];
    let mut terminals = Vec::new();
    for r in rules {
        for name in std::iter::once(&r.lhs).chain(r.rhs.as_ref()) {
            if !nonterminals.contains(name) {
                nonterminals.push(name.clone());
            }
        }
        if !terminals.contains(&r.terminal) {
            terminals.push(r.terminal);
        }
    }
    (nonterminals, terminals)
}

fn single_char(token: &str) -> Option<char> {
    let mut chars = token.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

fn bad_terminal(line: usize, token: &str) -> FormatError {
    FormatError::syntax(
        line,
        format!("terminal `{token}` is not a single character"),
    )
}

fn parse_rule(line: usize, tokens: &[&str]) -> Result<Rule, FormatError> {
    let (lhs, terminal, rhs) = match tokens {
        [lhs, "->", t] => (lhs, t, None),
        [lhs, "->", t, rhs] => (lhs, t, Some(rhs)),
        _ => {
            return Err(FormatError::syntax(
                line,
                "expected `<NT> -> <terminal> <NT>` or `<NT> -> <terminal>`",
            ))
        }
    };
    let terminal = single_char(terminal).ok_or_else(|| bad_terminal(line, terminal))?;
    Ok(Rule {
        lhs: lhs.to_string(),
        terminal,
        rhs: rhs.map(|s| s.to_string()),
    })
}

/// Writes `g` with explicit symbol declarations, one rule per line.
pub fn render_grammar(g: &Grammar) -> String {
    let mut out = String::new();
    writeln!(out, "start {}", g.start()).unwrap();
    writeln!(out, "nonterminals {}", g.nonterminals().join(" ")).unwrap();
    let terminals: Vec<String> = g.terminals().iter().map(char::to_string).collect();
    writeln!(out, "terminals {}", terminals.join(" ")).unwrap();
    for r in g.rules() {
        match &r.rhs {
            Some(rhs) => writeln!(out, "{} -> {} {}", r.lhs, r.terminal, rhs).unwrap(),
            None => writeln!(out, "{} -> {}", r.lhs, r.terminal).unwrap(),
        }
    }
    out
}
