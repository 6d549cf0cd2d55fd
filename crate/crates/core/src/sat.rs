//! 3-literal conjunctive normal form formulas.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// `x_var` or its negation. Variables are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, negated: true }
    }

    /// Reads a DIMACS-style signed index (`-3` is `~x3`). Zero is rejected.
    pub fn from_dimacs(v: i64) -> Option<Self> {
        let var = u32::try_from(v.unsigned_abs()).ok().filter(|&x| x > 0)?;
        Some(Literal {
            var,
            negated: v < 0,
        })
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        a.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// Exactly three literals; repeats are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause(pub [Literal; 3]);

impl Clause {
    pub fn new(a: Literal, b: Literal, c: Literal) -> Self {
        Clause([a, b, c])
    }

    pub fn literals(&self) -> &[Literal; 3] {
        &self.0
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.0.iter().any(|l| l.is_satisfied_by(a))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "({a}+{b}+{c})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    var_count: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Clause>) -> Result<Self> {
        for clause in &clauses {
            for lit in clause.literals() {
                if lit.var == 0 || lit.var as usize > var_count {
                    return Err(Error::LiteralOutOfRange {
                        var: lit.var,
                        var_count,
                    });
                }
            }
        }
        Ok(CnfFormula { var_count, clauses })
    }

    /// `m`
    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// `n`
    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("()");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Truth values for `x_1 … x_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    /// Bit `i - 1` of `bits` is the value of `x_i`.
    pub fn from_bits(bits: u64, var_count: usize) -> Self {
        Assignment((0..var_count).map(|i| bits >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of `x_var` (1-based).
    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}={}", i + 1, u8::from(*v))?;
        }
        Ok(())
    }
}

pub fn evaluate(f: &CnfFormula, a: &Assignment) -> Result<bool> {
    if a.len() != f.var_count {
        return Err(Error::AssignmentLength {
            expected: f.var_count,
            found: a.len(),
        });
    }
    Ok(f.clauses.iter().all(|c| c.is_satisfied_by(a)))
}

pub const BRUTE_FORCE_MAX_VARS: usize = 24;

/// Sweeps all `2^m` assignments in binary counting order and returns the
/// first satisfying one.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Assignment>> {
    if f.var_count > BRUTE_FORCE_MAX_VARS {
        return Err(Error::GuardExceeded {
            what: "variable count",
            limit: BRUTE_FORCE_MAX_VARS as u64,
            actual: f.var_count as u64,
        });
    }
    for bits in 0..1u64 << f.var_count {
        let a = Assignment::from_bits(bits, f.var_count);
        if f.clauses.iter().all(|c| c.is_satisfied_by(&a)) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
