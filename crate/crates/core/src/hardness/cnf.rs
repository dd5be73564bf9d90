use serde::{Deserialize, Serialize};

use super::HardnessError;

/// Formula in conjunctive normal form with at most three distinct literals
/// per clause. Literals are signed 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CnfRepr", into = "CnfRepr")]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct CnfRepr {
    vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl TryFrom<CnfRepr> for CnfFormula {
    type Error = HardnessError;
    fn try_from(r: CnfRepr) -> Result<Self, HardnessError> {
        CnfFormula::new(r.vars, r.clauses)
    }
}

impl From<CnfFormula> for CnfRepr {
    fn from(c: CnfFormula) -> Self {
        CnfRepr {
            vars: c.vars,
            clauses: c.clauses,
        }
    }
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self, HardnessError> {
        if clauses.is_empty() {
            return Err(HardnessError::MalformedClause("a formula needs at least one clause".into()));
        }
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() || c.len() > 3 {
                return Err(HardnessError::MalformedClause(format!(
                    "clause {} has {} literals",
                    j + 1,
                    c.len()
                )));
            }
            for (i, &l) in c.iter().enumerate() {
                if l == 0 || l.unsigned_abs() as usize > vars {
                    return Err(HardnessError::MalformedClause(format!(
                        "literal {l} in clause {} is out of range",
                        j + 1
                    )));
                }
                if c[..i].contains(&l) {
                    return Err(HardnessError::MalformedClause(format!(
                        "literal {l} repeated in clause {}",
                        j + 1
                    )));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn literal_value(l: i64, assignment: &[bool]) -> bool {
        let v = assignment[l.unsigned_abs() as usize - 1];
        if l > 0 {
            v
        } else {
            !v
        }
    }

    pub fn true_literals(&self, clause: usize, assignment: &[bool]) -> usize {
        self.clauses[clause]
            .iter()
            .filter(|&&l| Self::literal_value(l, assignment))
            .count()
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        (0..self.clauses.len()).all(|j| self.true_literals(j, assignment) > 0)
    }

    /// Truth-table search; returns a satisfying assignment if one exists.
    pub fn satisfying_assignment(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 32, "truth tables are limited to 31 variables");
        (0u64..1 << self.vars)
            .map(|bits| (0..self.vars).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.satisfied_by(a))
    }

    /// Parses DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>`
    /// header, then zero-terminated clauses.
    pub fn parse_dimacs(text: &str) -> Result<Self, HardnessError> {
        let mut vars = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(HardnessError::Dimacs(format!("bad header: {line}")));
                }
                vars = Some(
                    parts[2]
                        .parse()
                        .map_err(|_| HardnessError::Dimacs(format!("bad header: {line}")))?,
                );
                continue;
            }
            for tok in line.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|_| HardnessError::Dimacs(format!("bad literal: {tok}")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(l);
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let vars = vars.ok_or_else(|| HardnessError::Dimacs("missing header".into()))?;
        CnfFormula::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }
}
