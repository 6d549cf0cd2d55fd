//! DIMACS CNF input.
//!
//! Clauses with one or two literals are padded to three by repeating their
//! last literal. Wider clauses are rejected.

use repfree_core::{Clause, CnfFormula, Literal};

use super::FormatError;

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, FormatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        if content.starts_with('%') {
            break;
        }
        if content.starts_with('p') {
            if header.is_some() {
                return Err(FormatError::syntax(line, "second problem line"));
            }
            header = Some(parse_header(line, content)?);
            continue;
        }
        let Some((_, var_count, _)) = header else {
            return Err(FormatError::syntax(line, "clause before `p cnf` header"));
        };
        for token in content.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| FormatError::syntax(line, format!("`{token}` is not an integer")))?;
            if value == 0 {
                let at = if pending.is_empty() {
                    line
                } else {
                    pending_line
                };
                clauses.push(finish_clause(at, &mut pending)?);
                continue;
            }
            if value.unsigned_abs() > var_count as u64 {
                return Err(FormatError::syntax(
                    line,
                    format!("literal {value} exceeds the declared {var_count} variables"),
                ));
            }
            if pending.is_empty() {
                pending_line = line;
            }
            pending.push(Literal::from_dimacs(value).expect("non-zero and in range"));
        }
    }

    let Some((header_line, var_count, clause_count)) = header else {
        return Err(FormatError::syntax(
            last_line.max(1),
            "missing `p cnf` header",
        ));
    };
    if !pending.is_empty() {
        clauses.push(finish_clause(pending_line, &mut pending)?);
    }
    if clauses.len() != clause_count {
        return Err(FormatError::syntax(
            header_line,
            format!(
                "header declares {clause_count} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    Ok(CnfFormula::new(var_count, clauses).expect("literals checked against the header"))
}

fn parse_header(line: usize, content: &str) -> Result<(usize, usize, usize), FormatError> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    let malformed =
        || FormatError::syntax(line, "malformed header, expected `p cnf <vars> <clauses>`");
    match fields[..] {
        ["p", "cnf", vars, count] => {
            let vars = vars.parse().map_err(|_| malformed())?;
            let count = count.parse().map_err(|_| malformed())?;
            Ok((line, vars, count))
        }
        _ => Err(malformed()),
    }
}

fn finish_clause(line: usize, pending: &mut Vec<Literal>) -> Result<Clause, FormatError> {
    let clause = match pending[..] {
        [] => return Err(FormatError::syntax(line, "empty clause")),
        [a] => Clause::new(a, a, a),
        [a, b] => Clause::new(a, b, b),
        [a, b, c] => Clause::new(a, b, c),
        _ => {
            return Err(FormatError::ClauseWidth {
                line,
                width: pending.len(),
            })
        }
    };
    pending.clear();
    Ok(clause)
}

/// Writes `f` as DIMACS with every clause on its own line.
pub fn render_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.var_count(), f.clause_count());
    for clause in f.clauses() {
        for lit in clause.literals() {
            let v = lit.var as i64;
            out.push_str(&format!("{} ", if lit.negated { -v } else { v }));
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pads_short_clauses() {
        let f = parse_dimacs("p cnf 1 1\n1 0\n").unwrap();
        assert_eq!(f.to_string(), "(x1+x1+x1)");
        let f = parse_dimacs("p cnf 2 1\n-1 2 0\n").unwrap();
        assert_eq!(f.to_string(), "(~x1+x2+x2)");
    }

    #[test]
    fn reads_worked_example() {
        let text = "c example\np cnf 4 3\n1 -2 4 0\n2 3 -4 0\n-1 -2 4 0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f.to_string(), "(x1+~x2+x4)·(x2+x3+~x4)·(~x1+~x2+x4)");
        assert_eq!(parse_dimacs(&render_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn clauses_may_span_lines() {
        let f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n0\n").unwrap();
        assert_eq!(f.to_string(), "(x1+x2+x3)·(~x1+~x1+~x1)");
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_dimacs("p cnf 4 1\n1 2 3 4 0\n").unwrap_err(),
            FormatError::ClauseWidth { line: 2, width: 4 }
        );
        let cases = [
            ("1 0\n", 1),
            ("p cnf x 1\n1 0\n", 1),
            ("p dnf 1 1\n1 0\n", 1),
            ("p cnf 1 1\n2 0\n", 2),
            ("p cnf 1 1\n1 a 0\n", 2),
            ("p cnf 1 2\n1 0\n", 1),
            ("p cnf 1 1\n0\n", 2),
            ("c only\n", 1),
        ];
        for (text, line) in cases {
            let err = parse_dimacs(text).unwrap_err();
            assert_eq!(err.line(), line, "{text:?}: {err}");
        }
    }

    #[test]
    fn empty_formula() {
        let f = parse_dimacs("p cnf 2 0\n").unwrap();
        assert_eq!(f.clause_count(), 0);
        assert_eq!(f.var_count(), 2);
    }
}
