//! LP text interchange for external solvers.
//!
//! Export uses the CPLEX LP file format:
//!
//! ```text
//! \ categorical edge clustering relaxation
//! Minimize
//!  obj: 1 e0 + 2 e1
//! Subject To
//!  n0: x0_1 + x0_2 = 1
//!  r0: x0_1 - e0 <= 0
//! Bounds
//!  0 <= x0_1 <= 1
//! End
//! ```
//!
//! Solutions come back as one `name value` pair per line. Blank lines and
//! lines starting with `#` are skipped, and variables that are not listed
//! are taken to be 0.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;
use std::process::Command;

use super::{LpInstance, LpSolution, Relation};
use crate::error::{Error, Result};

fn push_term(line: &mut String, coeff: f64, name: &str, first: bool) {
    let sign = if coeff < 0.0 { "-" } else { "+" };
    let magnitude = coeff.abs();
    match (first, sign) {
        (true, "+") => {}
        (true, _) => line.push_str("- "),
        _ => {
            let _ = write!(line, " {sign} ");
        }
    }
    if magnitude == 1.0 {
        line.push_str(name);
    } else {
        let _ = write!(line, "{magnitude} {name}");
    }
}

/// Writes the relaxation in CPLEX LP format.
pub fn write_lp_text<W: Write>(lp: &LpInstance, mut out: W) -> Result<()> {
    let names: Vec<String> = (0..lp.variable_count()).map(|i| lp.var_name(i)).collect();
    writeln!(out, "\\ categorical edge clustering relaxation")?;
    writeln!(out, "Minimize")?;
    let mut line = String::from(" obj: ");
    let mut first = true;
    for (i, &c) in lp.cost().iter().enumerate() {
        if c != 0.0 {
            push_term(&mut line, c, &names[i], first);
            first = false;
        }
    }
    if first {
        // an objective needs at least one term
        let _ = write!(line, "0 {}", names.first().map_or("x0_1", String::as_str));
    }
    writeln!(out, "{line}")?;
    writeln!(out, "Subject To")?;
    let mut node_rows = 0;
    let mut cover_rows = 0;
    for row in lp.rows() {
        let mut line = match row.relation {
            Relation::Eq => {
                node_rows += 1;
                format!(" n{}: ", node_rows - 1)
            }
            Relation::Le => {
                cover_rows += 1;
                format!(" r{}: ", cover_rows - 1)
            }
        };
        for (j, &(i, a)) in row.terms.iter().enumerate() {
            push_term(&mut line, a, &names[i], j == 0);
        }
        let op = match row.relation {
            Relation::Eq => "=",
            Relation::Le => "<=",
        };
        writeln!(out, "{line} {op} {}", row.rhs)?;
    }
    writeln!(out, "Bounds")?;
    for name in &names {
        writeln!(out, " 0 <= {name} <= 1")?;
    }
    writeln!(out, "End")?;
    Ok(())
}

/// Reads `name value` lines into a full assignment for `lp`.
pub fn parse_lp_values<R: BufRead>(lp: &LpInstance, input: R) -> Result<Vec<f64>> {
    let index: HashMap<String, usize> = (0..lp.variable_count())
        .map(|i| (lp.var_name(i), i))
        .collect();
    let mut values = vec![0.0; lp.variable_count()];
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(name), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(n + 1, "expected `name value`"));
        };
        let &i = index
            .get(name)
            .ok_or_else(|| Error::parse(n + 1, format!("unknown variable `{name}`")))?;
        values[i] = value
            .parse()
            .map_err(|_| Error::parse(n + 1, format!("bad value `{value}`")))?;
    }
    Ok(values)
}

pub(super) fn solve_external(lp: &LpInstance, solver: &Path) -> Result<LpSolution> {
    let dir = std::env::temp_dir().join(format!(
        "catec-lp-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(Some(&dir), e))?;
    let lp_path = dir.join("relaxation.lp");
    let sol_path = dir.join("relaxation.sol");
    let result = (|| {
        let file = std::fs::File::create(&lp_path).map_err(|e| Error::io(Some(&lp_path), e))?;
        let mut writer = std::io::BufWriter::new(file);
        write_lp_text(lp, &mut writer)?;
        writer.flush()?;
        drop(writer);
        let status = Command::new(solver)
            .arg(&lp_path)
            .arg(&sol_path)
            .status()
            .map_err(|e| Error::io(Some(solver), e))?;
        if !status.success() {
            return Err(Error::Solver(format!(
                "{} exited with {status}",
                solver.display()
            )));
        }
        let file = std::fs::File::open(&sol_path).map_err(|e| Error::io(Some(&sol_path), e))?;
        let values = parse_lp_values(lp, std::io::BufReader::new(file))?;
        lp.accept(values)
    })();
    let _ = std::fs::remove_dir_all(&dir);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{HyperEdge, LabeledHypergraph};
    use crate::lp::{build_lp, solve_lp};

    fn instance() -> LpInstance {
        let h = LabeledHypergraph::new(
            2,
            2,
            vec![HyperEdge::new(vec![0, 1], 2, 2.5)],
        )
        .unwrap();
        build_lp(&h).unwrap()
    }

    #[test]
    fn export_layout() {
        let mut buf = Vec::new();
        write_lp_text(&instance(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = "\
\\ categorical edge clustering relaxation
Minimize
 obj: 2.5 e0
Subject To
 n0: x0_1 + x0_2 = 1
 n1: x1_1 + x1_2 = 1
 r0: x0_2 - e0 <= 0
 r1: x1_2 - e0 <= 0
Bounds
 0 <= x0_1 <= 1
 0 <= x0_2 <= 1
 0 <= x1_1 <= 1
 0 <= x1_2 <= 1
 0 <= e0 <= 1
End
";
        assert_eq!(text, expected);
    }

    #[test]
    fn values_round_trip() {
        let lp = instance();
        let sol = solve_lp(&lp).unwrap();
        let mut text = String::from("# solver output\n\n");
        for (i, x) in sol.values().iter().enumerate() {
            if *x != 0.0 {
                text.push_str(&format!("{} {}\n", lp.var_name(i), x));
            }
        }
        let values = parse_lp_values(&lp, text.as_bytes()).unwrap();
        assert_eq!(values, sol.values());
    }

    #[test]
    fn bad_value_lines() {
        let lp = instance();
        let err = parse_lp_values(&lp, "x0_1 1\nbogus 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_lp_values(&lp, "x0_1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_lp_values(&lp, "x0_1 one\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
