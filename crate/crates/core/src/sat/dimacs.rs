use std::fmt::Write;

use super::cnf::Cnf;
use crate::error::{Error, Result};

pub fn to_dimacs(cnf: &Cnf) -> String {
    let mut s = format!("p cnf {} {}\n", cnf.num_vars(), cnf.num_clauses());
    for c in cnf.clauses() {
        for l in c {
            write!(s, "{l} ").unwrap();
        }
        s.push_str("0\n");
    }
    s
}

/// Parses DIMACS CNF. Clauses may span lines; `c` lines and a trailing `%` are ignored.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(u32, usize)> = None;
    let mut cnf = Cnf::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(lineno, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(Error::parse(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = parts[2]
                .parse()
                .map_err(|_| Error::parse(lineno, "bad variable count"))?;
            let clauses = parts[3]
                .parse()
                .map_err(|_| Error::parse(lineno, "bad clause count"))?;
            header = Some((vars, clauses));
            cnf = Cnf::with_vars(vars);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::parse(lineno, "clause before header"));
        };
        for tok in line.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad literal `{tok}`")))?;
            if l == 0 {
                cnf.add_clause(&current);
                current.clear();
            } else if l.unsigned_abs() > vars {
                return Err(Error::parse(lineno, format!("literal {l} exceeds {vars} variables")));
            } else {
                current.push(l);
            }
        }
    }
    let Some((_, expected)) = header else {
        return Err(Error::parse(0, "missing header"));
    };
    if !current.is_empty() {
        cnf.add_clause(&current);
    }
    if cnf.num_clauses() != expected {
        return Err(Error::parse(
            0,
            format!("header declares {expected} clauses, found {}", cnf.num_clauses()),
        ));
    }
    Ok(cnf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut f = Cnf::with_vars(3);
        f.add_clause(&[1, -2]);
        f.add_clause(&[3]);
        f.add_clause(&[-1, 2, -3]);
        let text = to_dimacs(&f);
        assert!(text.starts_with("p cnf 3 3\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), f);
    }

    #[test]
    fn multiline_clauses_and_comments() {
        let f = parse_dimacs("c hi\np cnf 2 2\n1\n-2 0 2 0\n").unwrap();
        assert_eq!(f.clauses(), &[vec![1, -2], vec![2]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
    }
}
