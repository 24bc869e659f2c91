//! Text formats for instances, clusterings, timestamped edges and reports.
//!
//! Instance format:
//!
//! ```text
//! catec v1 nodes=<n> categories=<k>
//! # comment
//! <label>\t<weight>\t<id> <id> ...
//! <label>\t<id> <id> ...
//! ```
//!
//! The weight column is optional and defaults to 1. Node ids are arbitrary
//! whitespace-free strings, numbered in order of first appearance; nodes that
//! appear in no edge get the remaining indices and a synthetic name. Label 0
//! marks an unlabeled edge.
//!
//! Clustering format: one `<id>\t<category>` line per node.
//!
//! Any input file may be gzip-compressed; compression is detected from the
//! file's leading bytes.

mod convert;
mod reports;
mod temporal;

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use crate::error::{Error, Result};
use crate::hypergraph::{Category, Clustering, HyperEdge, LabeledHypergraph};

pub use convert::convert_parallel_files;
pub use reports::{append_report, read_reports, write_reports_csv};
pub use temporal::{parse_temporal, write_temporal};

const HEADER_MAGIC: &str = "catec";
const HEADER_VERSION: &str = "v1";

/// Opens a file for buffered reading, decompressing gzip transparently.
pub fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    let file = File::open(path).map_err(|e| Error::io(Some(path), e))?;
    let mut reader = BufReader::new(file);
    let head = reader.fill_buf().map_err(|e| Error::io(Some(path), e))?;
    if head.starts_with(&[0x1f, 0x8b]) {
        Ok(Box::new(BufReader::new(MultiGzDecoder::new(reader))))
    } else {
        Ok(Box::new(reader))
    }
}

/// Reads a whole (possibly gzip-compressed) text file.
pub fn read_text(path: &Path) -> Result<String> {
    let mut text = String::new();
    open_input(path)?
        .read_to_string(&mut text)
        .map_err(|e| Error::io(Some(path), e))?;
    Ok(text)
}

/// Creates `path` and hands a buffered writer to `body`.
pub fn write_file<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<()>,
{
    let file = File::create(path).map_err(|e| Error::io(Some(path), e))?;
    let mut writer = BufWriter::new(file);
    body(&mut writer)?;
    writer.flush().map_err(|e| Error::io(Some(path), e))
}

/// Assigns dense indices to names in first-appearance order.
#[derive(Default)]
pub(crate) struct NameTable {
    index: HashMap<String, usize>,
    names: Vec<String>,
}

impl NameTable {
    pub(crate) fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.to_owned(), i);
        self.names.push(name.to_owned());
        i
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }

    /// Pads with synthetic names up to `n` nodes: the node's index, with
    /// underscores appended until it clashes with no other name.
    pub(crate) fn finish(mut self, n: usize) -> Vec<String> {
        let taken: HashSet<String> = self.names.iter().cloned().collect();
        for i in self.names.len()..n {
            let mut name = i.to_string();
            while taken.contains(&name) {
                name.push('_');
            }
            self.names.push(name);
        }
        self.names
    }
}

fn parse_header(line: &str, number: usize) -> Result<(usize, u32)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = || {
        Error::parse(
            number,
            format!("expected `{HEADER_MAGIC} {HEADER_VERSION} nodes=<n> categories=<k>`"),
        )
    };
    let [magic, version, nodes, categories] = fields[..] else {
        return Err(bad());
    };
    if magic != HEADER_MAGIC || version != HEADER_VERSION {
        return Err(bad());
    }
    let n = nodes
        .strip_prefix("nodes=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(bad)?;
    let k = categories
        .strip_prefix("categories=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(bad)?;
    Ok((n, k))
}

/// Parses the instance format.
pub fn parse_hypergraph(text: &str) -> Result<LabeledHypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
    let Some((number, header)) = lines.next() else {
        return Err(Error::parse(1, "missing header"));
    };
    let (n, k) = parse_header(header, number)?;
    if n == 0 || k == 0 {
        return Err(Error::parse(number, "an instance needs nodes and categories"));
    }

    let mut names = NameTable::default();
    let mut edges = Vec::new();
    for (number, line) in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        let (label, weight, ids) = match fields[..] {
            [label, ids] => (label, None, ids),
            [label, weight, ids] => (label, Some(weight), ids),
            _ => {
                return Err(Error::parse(
                    number,
                    "expected `<label>\\t[<weight>\\t]<ids>`",
                ))
            }
        };
        let label: u64 = label
            .trim()
            .parse()
            .map_err(|_| Error::parse(number, format!("bad label `{}`", label.trim())))?;
        if label > k as u64 {
            return Err(Error::LabelOutOfRange {
                line: number,
                label,
                categories: k,
            });
        }
        let weight = match weight {
            None => 1.0,
            Some(w) => {
                let w: f64 = w
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(number, format!("bad weight `{}`", w.trim())))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::parse(number, "weight must be positive and finite"));
                }
                w
            }
        };
        let mut nodes = Vec::new();
        let mut seen = HashSet::new();
        for id in ids.split_whitespace() {
            if !seen.insert(id) {
                return Err(Error::DuplicateNodeInEdge {
                    line: number,
                    node: id.to_owned(),
                });
            }
            let v = names.intern(id);
            if v >= n {
                return Err(Error::parse(
                    number,
                    format!("more than the declared {n} nodes"),
                ));
            }
            nodes.push(v);
        }
        if nodes.len() < 2 {
            return Err(Error::parse(number, "an edge needs at least two nodes"));
        }
        edges.push(HyperEdge::new(nodes, label as Category, weight));
    }
    debug_assert!(names.len() <= n);
    LabeledHypergraph::new(n, k, edges)?.with_node_names(names.finish(n))
}

/// Reads an instance file.
pub fn read_hypergraph(path: &Path) -> Result<LabeledHypergraph> {
    parse_hypergraph(&read_text(path)?)
}

/// Writes the instance format. Weights equal to 1 are omitted.
pub fn write_hypergraph<W: Write>(h: &LabeledHypergraph, mut out: W) -> Result<()> {
    writeln!(
        out,
        "{HEADER_MAGIC} {HEADER_VERSION} nodes={} categories={}",
        h.node_count(),
        h.category_count()
    )?;
    let names: Vec<String> = (0..h.node_count()).map(|v| h.node_name(v)).collect();
    let mut ids = String::new();
    for e in h.edges() {
        ids.clear();
        for (i, &v) in e.nodes().iter().enumerate() {
            if i > 0 {
                ids.push(' ');
            }
            ids.push_str(&names[v]);
        }
        if e.weight() == 1.0 {
            writeln!(out, "{}\t{ids}", e.label())?;
        } else {
            writeln!(out, "{}\t{}\t{ids}", e.label(), e.weight())?;
        }
    }
    Ok(())
}

/// Node numbering that [`parse_hypergraph`] assigns to the output of
/// [`write_hypergraph`]: entry `i` is the index in `h` of the node read back
/// as `i`. Nodes are numbered by first appearance in the edge list, then
/// nodes in no edge follow in increasing order. Isolated nodes read back
/// with synthesized names, so data keyed by node (such as ground truth)
/// should be written against the re-read instance.
pub fn canonical_order(h: &LabeledHypergraph) -> Vec<usize> {
    let mut seen = vec![false; h.node_count()];
    let mut order = Vec::with_capacity(h.node_count());
    for e in h.edges() {
        for &v in e.nodes() {
            if !std::mem::replace(&mut seen[v], true) {
                order.push(v);
            }
        }
    }
    order.extend((0..h.node_count()).filter(|&v| !seen[v]));
    order
}

pub fn hypergraph_to_string(h: &LabeledHypergraph) -> String {
    let mut buf = Vec::new();
    write_hypergraph(h, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("names are UTF-8")
}

/// Parses a clustering of `h`, which must cover every node exactly once.
pub fn parse_clustering(text: &str, h: &LabeledHypergraph) -> Result<Clustering> {
    let index: HashMap<String, usize> = (0..h.node_count()).map(|v| (h.node_name(v), v)).collect();
    let mut labels: Vec<Option<Category>> = vec![None; h.node_count()];
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let number = i + 1;
        last = number;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(id), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(number, "expected `<node-id>\\t<category>`"));
        };
        let &v = index
            .get(id)
            .ok_or_else(|| Error::parse(number, format!("unknown node `{id}`")))?;
        let c: u64 = c
            .parse()
            .map_err(|_| Error::parse(number, format!("bad category `{c}`")))?;
        if c == 0 || c > h.category_count() as u64 {
            return Err(Error::LabelOutOfRange {
                line: number,
                label: c,
                categories: h.category_count(),
            });
        }
        if labels[v].replace(c as Category).is_some() {
            return Err(Error::parse(number, format!("node `{id}` listed twice")));
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(v, c)| {
            c.ok_or_else(|| {
                Error::parse(last + 1, format!("node `{}` has no category", h.node_name(v)))
            })
        })
        .collect::<Result<_>>()?;
    Ok(Clustering::new(labels))
}

pub fn read_clustering(path: &Path, h: &LabeledHypergraph) -> Result<Clustering> {
    parse_clustering(&read_text(path)?, h)
}

/// Writes one `<id>\t<category>` line per node, in index order.
pub fn write_clustering<W: Write>(h: &LabeledHypergraph, y: &Clustering, mut out: W) -> Result<()> {
    for v in 0..h.node_count() {
        writeln!(out, "{}\t{}", h.node_name(v), y[v])?;
    }
    Ok(())
}
