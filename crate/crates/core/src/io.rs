//! Plain-text file formats.
//!
//! * Edge lists: one `u v` or `u v w` per line, whitespace separated.
//!   Lines starting with `#` or `%` are comments.
//! * Partitions: one `vertex cluster` pair per line (LFR community files use
//!   the same layout with one-based ids).
//! * Masks: one `vertex 0|1` pair per line.
//! * DOT export of a weighted graph for visual inspection.
//!
//! All writers emit vertices ascending, edges in `(u, v)` order and reals
//! with six decimals so output is byte-stable.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMask};
use crate::partition::Partition;

/// Whether vertex ids in a file start at 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Indexing {
    #[default]
    ZeroBased,
    OneBased,
}

impl Indexing {
    fn offset(self) -> u64 {
        match self {
            Indexing::ZeroBased => 0,
            Indexing::OneBased => 1,
        }
    }

    fn normalize(self, raw: u64, line: usize) -> Result<u64> {
        raw.checked_sub(self.offset()).ok_or(Error::Parse {
            line,
            message: "vertex id 0 in a one-based file".into(),
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    pub indexing: Indexing,
    /// Read the optional third column as the edge weight. When unset every
    /// edge gets weight 1.
    pub weighted: bool,
    /// Renumber the ids that occur in the file densely (ascending) instead
    /// of using them verbatim.
    pub compact_ids: bool,
}

/// A graph read from disk.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Zero-based file id of each vertex, present only with `compact_ids`.
    pub original_ids: Option<Vec<u64>>,
}

fn data_lines<R: BufRead>(source: R) -> impl Iterator<Item = Result<(usize, String)>> {
    source
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(Error::Io(e))),
            Ok(text) => {
                let t = text.trim();
                if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
                    None
                } else {
                    Some(Ok((i + 1, t.to_string())))
                }
            }
        })
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("malformed vertex id {token:?}"),
    })
}

fn parse_real(token: &str, line: usize) -> Result<f64> {
    match token.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Parse {
            line,
            message: format!("malformed weight {token:?}"),
        }),
    }
}

fn to_index(id: u64, line: usize) -> Result<usize> {
    usize::try_from(id).map_err(|_| Error::Parse {
        line,
        message: format!("vertex id {id} too large"),
    })
}

/// Reads an edge list. The vertex count is one more than the largest id
/// (after index normalization), so ids that never occur become isolated
/// vertices unless `compact_ids` is set.
pub fn load_edge_list<R: BufRead>(source: R, opts: LoadOptions) -> Result<LoadedGraph> {
    let mut raw: Vec<(u64, u64, f64)> = Vec::new();
    for item in data_lines(source) {
        let (line, text) = item?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 or 3 fields, found {}", tokens.len()),
            });
        }
        let u = opts.indexing.normalize(parse_id(tokens[0], line)?, line)?;
        let v = opts.indexing.normalize(parse_id(tokens[1], line)?, line)?;
        let mut w = 1.0;
        if tokens.len() == 3 {
            let parsed = parse_real(tokens[2], line)?;
            if opts.weighted {
                w = parsed;
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        if w <= 0.0 {
            return Err(Error::NonPositiveWeight { line, weight: w });
        }
        raw.push((u, v, w));
    }

    if opts.compact_ids {
        let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let graph = Graph::from_edges(
            ids.len(),
            raw.iter().map(|&(u, v, w)| (index[&u], index[&v], w)),
        )?;
        return Ok(LoadedGraph {
            graph,
            original_ids: Some(ids),
        });
    }

    let n = match raw.iter().map(|&(u, v, _)| u.max(v)).max() {
        Some(max) => to_index(max, 0)? + 1,
        None => 0,
    };
    let graph = Graph::from_edges(n, raw.into_iter().map(|(u, v, w)| (u as usize, v as usize, w)))?;
    Ok(LoadedGraph {
        graph,
        original_ids: None,
    })
}

fn format_real(x: f64) -> String {
    format!("{x:.6}")
}

pub fn write_partition<W: Write>(p: &Partition, indexing: Indexing, sink: &mut W) -> Result<()> {
    let off = indexing.offset() as usize;
    for (v, &c) in p.labels().iter().enumerate() {
        writeln!(sink, "{} {}", v + off, c + off)?;
    }
    Ok(())
}

/// Reads a partition file. Every vertex `0..n` must be listed exactly once;
/// cluster labels may be arbitrary non-negative integers.
pub fn read_partition<R: BufRead>(source: R, indexing: Indexing) -> Result<Partition> {
    let mut pairs: Vec<(usize, u64, usize)> = Vec::new();
    for item in data_lines(source) {
        let (line, text) = item?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, found {}", tokens.len()),
            });
        }
        let v = to_index(indexing.normalize(parse_id(tokens[0], line)?, line)?, line)?;
        let c = parse_id(tokens[1], line)?;
        pairs.push((v, c, line));
    }
    let n = pairs.iter().map(|&(v, _, _)| v + 1).max().unwrap_or(0);
    let mut labels: Vec<Option<u64>> = vec![None; n];
    for (v, c, line) in pairs {
        if labels[v].replace(c).is_some() {
            return Err(Error::Parse {
                line,
                message: "vertex listed twice".into(),
            });
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(v, c)| {
            c.ok_or(Error::Parse {
                line: 0,
                message: format!("vertex {} has no cluster", v as u64 + indexing.offset()),
            })
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(Partition::from_labels(&labels))
}

/// Writes `u v w` lines, with `w` taken from `weights` when given and from
/// the graph otherwise.
pub fn write_weighted_edges<W: Write>(
    g: &Graph,
    weights: Option<&[f64]>,
    indexing: Indexing,
    sink: &mut W,
) -> Result<()> {
    if let Some(ws) = weights {
        if ws.len() != g.num_edges() {
            return Err(Error::SizeMismatch {
                expected: g.num_edges(),
                found: ws.len(),
            });
        }
    }
    let off = indexing.offset() as usize;
    for (i, e) in g.edges().iter().enumerate() {
        let w = weights.map_or(e.w, |ws| ws[i]);
        writeln!(sink, "{} {} {}", e.u + off, e.v + off, format_real(w))?;
    }
    Ok(())
}

/// Reads a weighted edge list and aligns it to the edges of `g`. Every edge
/// of `g` must appear exactly once and no other edge may appear.
pub fn read_edge_weights<R: BufRead>(g: &Graph, source: R, indexing: Indexing) -> Result<Vec<f64>> {
    let mut weights: Vec<Option<f64>> = vec![None; g.num_edges()];
    for item in data_lines(source) {
        let (line, text) = item?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 fields, found {}", tokens.len()),
            });
        }
        let u = to_index(indexing.normalize(parse_id(tokens[0], line)?, line)?, line)?;
        let v = to_index(indexing.normalize(parse_id(tokens[1], line)?, line)?, line)?;
        let w = parse_real(tokens[2], line)?;
        let e = g.find_edge(u, v).ok_or(Error::Parse {
            line,
            message: format!("edge ({}, {}) is not in the graph", tokens[0], tokens[1]),
        })?;
        if weights[e].replace(w).is_some() {
            return Err(Error::Parse {
                line,
                message: "edge listed twice".into(),
            });
        }
    }
    weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| {
                let e = g.edge(i);
                Error::Parse {
                    line: 0,
                    message: format!("no weight for edge ({}, {})", e.u, e.v),
                }
            })
        })
        .collect()
}

pub fn write_mask<W: Write>(mask: &VertexMask, indexing: Indexing, sink: &mut W) -> Result<()> {
    let off = indexing.offset() as usize;
    for (v, &b) in mask.as_slice().iter().enumerate() {
        writeln!(sink, "{} {}", v + off, u8::from(b))?;
    }
    Ok(())
}

/// Reads a `vertex 0|1` mask. Unlisted vertices below the largest listed id
/// are unmarked.
pub fn read_mask<R: BufRead>(source: R, indexing: Indexing) -> Result<VertexMask> {
    let mut marks = Vec::new();
    for item in data_lines(source) {
        let (line, text) = item?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields, found {}", tokens.len()),
            });
        }
        let v = to_index(indexing.normalize(parse_id(tokens[0], line)?, line)?, line)?;
        let flag = match tokens[1] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("mask flag must be 0 or 1, got {other:?}"),
                })
            }
        };
        if marks.len() <= v {
            marks.resize(v + 1, false);
        }
        marks[v] = flag;
    }
    Ok(VertexMask::new(marks))
}

/// Graphviz export. Edges carry their weight and a pen width proportional
/// to it; `highlight` is drawn double-circled. `labels` renames vertices
/// (e.g. back to parent-graph ids).
pub fn write_dot<W: Write>(
    g: &Graph,
    weights: Option<&[f64]>,
    highlight: Option<usize>,
    labels: Option<&[usize]>,
    sink: &mut W,
) -> Result<()> {
    if let Some(ws) = weights {
        if ws.len() != g.num_edges() {
            return Err(Error::SizeMismatch {
                expected: g.num_edges(),
                found: ws.len(),
            });
        }
    }
    if let Some(ls) = labels {
        if ls.len() != g.num_vertices() {
            return Err(Error::SizeMismatch {
                expected: g.num_vertices(),
                found: ls.len(),
            });
        }
    }
    let name = |v: usize| labels.map_or(v, |ls| ls[v]);
    writeln!(sink, "graph G {{")?;
    for v in 0..g.num_vertices() {
        if Some(v) == highlight {
            writeln!(sink, "  {} [shape=doublecircle];", name(v))?;
        } else {
            writeln!(sink, "  {};", name(v))?;
        }
    }
    for (i, e) in g.edges().iter().enumerate() {
        let w = weights.map_or(e.w, |ws| ws[i]);
        writeln!(
            sink,
            "  {} -- {} [weight={}, penwidth={}];",
            name(e.u),
            name(e.v),
            format_real(w),
            format_real(4.0 * w)
        )?;
    }
    writeln!(sink, "}}")?;
    Ok(())
}
