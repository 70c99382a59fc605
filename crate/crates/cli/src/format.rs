//! The graph file format.
//!
//! ```text
//! c optional comment
//! p bip <nV> <nW> <nE>
//! e <i> <j>
//! ```
//!
//! The header declares the class sizes and edge count; exactly `nE` edge
//! lines follow with 1-based indices. Blank lines and lines starting with
//! `c` are ignored anywhere.

use std::path::Path;

use ipoly::BipartiteGraph;

use crate::CliError;

fn parse_error(path: &str, line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_string(),
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph_str(text: &str, path: &str) -> Result<BipartiteGraph, CliError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (fields.first().copied(), &mut header) {
            (Some("p"), None) => {
                if fields.len() != 5 || fields[1] != "bip" {
                    return Err(parse_error(
                        path,
                        line_no,
                        "expected header `p bip <nV> <nW> <nE>`",
                    ));
                }
                let mut nums = fields[2..].iter().map(|f| f.parse::<usize>());
                match (nums.next().unwrap(), nums.next().unwrap(), nums.next().unwrap()) {
                    (Ok(nv), Ok(nw), Ok(ne)) => header = Some((nv, nw, ne)),
                    _ => return Err(parse_error(path, line_no, "malformed header counts")),
                }
            }
            (Some("p"), Some(_)) => {
                return Err(parse_error(path, line_no, "duplicate header line"));
            }
            (Some("e"), Some((nv, nw, ne))) => {
                if edges.len() == *ne {
                    return Err(parse_error(
                        path,
                        line_no,
                        format!("more than the declared {ne} edges"),
                    ));
                }
                let (i, j) = match fields[..] {
                    [_, a, b] => match (a.parse::<u32>(), b.parse::<u32>()) {
                        (Ok(i), Ok(j)) => (i, j),
                        _ => return Err(parse_error(path, line_no, "malformed edge indices")),
                    },
                    _ => return Err(parse_error(path, line_no, "expected `e <i> <j>`")),
                };
                if i < 1 || i as usize > *nv || j < 1 || j as usize > *nw {
                    return Err(CliError::Core(ipoly::Error::InvalidEdge {
                        i,
                        j,
                        v_count: *nv,
                        w_count: *nw,
                    }));
                }
                edges.push((i - 1, j - 1));
            }
            (Some("e"), None) => {
                return Err(parse_error(path, line_no, "edge line before the header"));
            }
            _ => {
                return Err(parse_error(
                    path,
                    line_no,
                    format!("unrecognized line `{line}`"),
                ));
            }
        }
    }
    let (nv, nw, ne) = header.ok_or_else(|| parse_error(path, 1, "missing header line"))?;
    if edges.len() != ne {
        return Err(parse_error(
            path,
            text.lines().count() + 1,
            format!("declared {ne} edges but found {}", edges.len()),
        ));
    }
    Ok(BipartiteGraph::new(nv, nw, edges)?)
}

pub fn parse_graph_file(path: &Path) -> Result<BipartiteGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph_str(&text, &path.display().to_string())
}

/// Emits the format above; edges ascending, 1-based, so output is stable.
pub fn format_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("p bip {} {} {}\n", g.v_count(), g.w_count(), g.edge_count());
    for &(i, j) in g.edges() {
        out.push_str(&format!("e {} {}\n", i + 1, j + 1));
    }
    out
}
