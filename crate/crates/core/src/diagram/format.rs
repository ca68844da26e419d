//! The line-oriented `.srd` text format.
//!
//! ```text
//! srd 1
//! vertex v1
//! crossing c1 0
//! edge e1 v1.1 c1.oi
//! loop l1
//! disk d1
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use super::{Edge, NodeKind, PortRef, RibbonDiagram, CROSSING_PORT_NAMES};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct Token {
    text: String,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: line[s..i].to_string(),
                    col: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

enum Item {
    Edge { line: usize, ends: [(Token, Token); 2] },
    Loop,
    Disk,
}

fn port_name(kind: NodeKind, p: u8) -> String {
    match kind {
        NodeKind::Vertex => (p + 1).to_string(),
        NodeKind::Crossing { .. } => CROSSING_PORT_NAMES[p as usize].to_string(),
    }
}

fn parse_port(kind: NodeKind, s: &str) -> Option<u8> {
    match kind {
        NodeKind::Vertex => match s {
            "1" => Some(0),
            "2" => Some(1),
            "3" => Some(2),
            _ => None,
        },
        NodeKind::Crossing { .. } => CROSSING_PORT_NAMES.iter().position(|&n| n == s).map(|p| p as u8),
    }
}

fn split_port(t: &Token, line: usize) -> Result<(Token, Token)> {
    let (node, port) = t
        .text
        .rsplit_once('.')
        .ok_or_else(|| Error::parse(line, t.col, format!("expected <node>.<port>, got `{}`", t.text)))?;
    Ok((
        Token {
            text: node.to_string(),
            col: t.col,
        },
        Token {
            text: port.to_string(),
            col: t.col + node.chars().count() + 1,
        },
    ))
}

/// Parses a diagram. Edge tags follow the order of `edge`, `loop` and `disk` lines.
pub fn parse_srd(text: &str) -> Result<RibbonDiagram> {
    let mut nodes: Vec<(NodeKind, String, usize)> = Vec::new();
    let mut node_index: HashMap<String, usize> = HashMap::new();
    let mut edge_ids: HashMap<String, usize> = HashMap::new();
    let mut items: Vec<Item> = Vec::new();
    let mut header = false;

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        if !header {
            if head.text != "srd" || toks.len() != 2 || toks[1].text != "1" {
                return Err(Error::parse(ln, head.col, "expected header `srd 1`"));
            }
            header = true;
            continue;
        }
        let arity = |n: usize| -> Result<()> {
            if toks.len() != n {
                let col = toks.get(n).map_or(head.col, |t| t.col);
                return Err(Error::parse(
                    ln,
                    col,
                    format!("`{}` takes {} argument(s)", head.text, n - 1),
                ));
            }
            Ok(())
        };
        let mut fresh_edge_id = |t: &Token| -> Result<()> {
            if let Some(prev) = edge_ids.insert(t.text.clone(), ln) {
                return Err(Error::parse(
                    ln,
                    t.col,
                    format!("id `{}` already used on line {prev}", t.text),
                ));
            }
            Ok(())
        };
        match head.text.as_str() {
            "vertex" | "crossing" => {
                let kind = if head.text == "vertex" {
                    arity(2)?;
                    NodeKind::Vertex
                } else {
                    arity(3)?;
                    let side = match toks[2].text.as_str() {
                        "0" => 0,
                        "1" => 1,
                        _ => return Err(Error::parse(ln, toks[2].col, "side must be 0 or 1")),
                    };
                    NodeKind::Crossing { side }
                };
                let id = &toks[1];
                if let Some(&prev) = node_index.get(&id.text) {
                    return Err(Error::parse(
                        ln,
                        id.col,
                        format!("node `{}` already declared on line {}", id.text, nodes[prev].2),
                    ));
                }
                node_index.insert(id.text.clone(), nodes.len());
                nodes.push((kind, id.text.clone(), ln));
            }
            "edge" => {
                arity(4)?;
                fresh_edge_id(&toks[1])?;
                let ends = [split_port(&toks[2], ln)?, split_port(&toks[3], ln)?];
                items.push(Item::Edge { line: ln, ends });
            }
            "loop" => {
                arity(2)?;
                fresh_edge_id(&toks[1])?;
                items.push(Item::Loop);
            }
            "disk" => {
                arity(2)?;
                fresh_edge_id(&toks[1])?;
                items.push(Item::Disk);
            }
            other => {
                return Err(Error::parse(ln, head.col, format!("unknown directive `{other}`")));
            }
        }
    }
    if !header {
        return Err(Error::parse(1, 1, "missing header `srd 1`"));
    }

    let mut d = RibbonDiagram::new();
    d.nodes = nodes.iter().map(|n| n.0).collect();
    let mut used: HashMap<PortRef, usize> = HashMap::new();
    for (tag, item) in items.into_iter().enumerate() {
        let tag = tag as u64;
        match item {
            Item::Loop => d.edges.push(Edge { ends: None, tag }),
            Item::Disk => d.disks.push(tag),
            Item::Edge { line, ends } => {
                let mut refs = [PortRef::new(0, 0); 2];
                for (k, (node, port)) in ends.iter().enumerate() {
                    let &n = node_index
                        .get(&node.text)
                        .ok_or_else(|| Error::parse(line, node.col, format!("unknown node `{}`", node.text)))?;
                    let p = parse_port(d.nodes[n], &port.text)
                        .ok_or_else(|| Error::parse(line, port.col, format!("bad port `{}`", port.text)))?;
                    let r = PortRef::new(n, p);
                    if let Some(prev) = used.insert(r, line) {
                        return Err(Error::parse(
                            line,
                            node.col,
                            format!("port {}.{} already used on line {prev}", node.text, port.text),
                        ));
                    }
                    refs[k] = r;
                }
                d.edges.push(Edge { ends: Some(refs), tag });
            }
        }
    }
    for (n, (kind, name, decl)) in nodes.iter().enumerate() {
        for p in 0..kind.port_count() {
            if !used.contains_key(&PortRef::new(n, p)) {
                return Err(Error::parse(
                    *decl,
                    1,
                    format!("port {name}.{} is not connected", port_name(*kind, p)),
                ));
            }
        }
    }
    Ok(d)
}

/// Serializes a diagram; nodes are renamed `v<k>` / `c<k>` and entries are
/// emitted in tag order so that a round trip keeps component order.
pub fn write_srd(d: &RibbonDiagram) -> String {
    let mut names = Vec::with_capacity(d.nodes.len());
    let (mut nv, mut nc) = (0, 0);
    let mut out = String::from("srd 1\n");
    for kind in &d.nodes {
        match kind {
            NodeKind::Vertex => {
                nv += 1;
                names.push(format!("v{nv}"));
                let _ = writeln!(out, "vertex v{nv}");
            }
            NodeKind::Crossing { side } => {
                nc += 1;
                names.push(format!("c{nc}"));
                let _ = writeln!(out, "crossing c{nc} {side}");
            }
        }
    }
    let mut entries: Vec<(u64, Option<usize>)> = d
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.tag, Some(i)))
        .chain(d.disks.iter().map(|&t| (t, None)))
        .collect();
    entries.sort_by_key(|&(t, i)| (t, i.is_none(), i));
    let (mut ne, mut nl, mut nd) = (0, 0, 0);
    for (_, e) in entries {
        match e.map(|i| d.edges[i].ends) {
            Some(Some([a, b])) => {
                ne += 1;
                let _ = writeln!(
                    out,
                    "edge e{ne} {}.{} {}.{}",
                    names[a.node],
                    port_name(d.nodes[a.node], a.port),
                    names[b.node],
                    port_name(d.nodes[b.node], b.port)
                );
            }
            Some(None) => {
                nl += 1;
                let _ = writeln!(out, "loop l{nl}");
            }
            None => {
                nd += 1;
                let _ = writeln!(out, "disk d{nd}");
            }
        }
    }
    out
}
