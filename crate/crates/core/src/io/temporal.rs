//! Timestamped edges, one `<timestamp>\t<u> <v> ...` per line.

use std::io::Write;

use super::NameTable;
use crate::error::{Error, Result};
use crate::hypergraph::{TemporalEdge, TemporalEdges};

/// Parses timestamped edges. Blank lines and `#` comments are skipped; node
/// ids are numbered by first appearance.
pub fn parse_temporal(text: &str) -> Result<TemporalEdges> {
    let mut names = NameTable::default();
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((time, ids)) = trimmed.split_once('\t') else {
            return Err(Error::parse(number, "expected `<timestamp>\\t<ids>`"));
        };
        let time: f64 = time
            .trim()
            .parse()
            .ok()
            .filter(|t: &f64| t.is_finite())
            .ok_or_else(|| Error::parse(number, format!("bad timestamp `{}`", time.trim())))?;
        let mut nodes = Vec::new();
        for id in ids.split_whitespace() {
            let v = names.intern(id);
            if nodes.contains(&v) {
                return Err(Error::DuplicateNodeInEdge {
                    line: number,
                    node: id.to_owned(),
                });
            }
            nodes.push(v);
        }
        if nodes.len() < 2 {
            return Err(Error::parse(number, "an edge needs at least two nodes"));
        }
        nodes.sort_unstable();
        edges.push(TemporalEdge { time, nodes });
    }
    let n = names.len();
    Ok(TemporalEdges {
        node_names: names.finish(n),
        edges,
    })
}

pub fn write_temporal<W: Write>(t: &TemporalEdges, mut out: W) -> Result<()> {
    for e in &t.edges {
        let ids: Vec<&str> = e.nodes.iter().map(|&v| t.node_names[v].as_str()).collect();
        writeln!(out, "{}\t{}", e.time, ids.join(" "))?;
    }
    Ok(())
}
