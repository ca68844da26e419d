//! Combinatorial surface-ribbon diagrams.
//!
//! A diagram is a set of nodes (trivalent fat vertices and ribbon crossings)
//! whose ports are paired by ribbon edges, plus free loops and isolated disks.
//! Every edge carries a tag; the surface components are ordered by their
//! smallest tag, which the local moves preserve.

mod boundary;
pub mod builders;
mod format;
mod realize;

pub use boundary::{Arc, BoundaryCycle, BoundaryStructure, Event, Passage, StrandId};
pub use format::{parse_srd, write_srd};
pub use realize::{realize_group, route_band_over, Realization};

use crate::error::{Error, Result};

/// Crossing port: incoming end of the over ribbon.
pub const OI: u8 = 0;
/// Crossing port: outgoing end of the over ribbon.
pub const OO: u8 = 1;
/// Crossing port: incoming end of the under ribbon.
pub const UI: u8 = 2;
/// Crossing port: outgoing end of the under ribbon.
pub const UO: u8 = 3;

pub const CROSSING_PORT_NAMES: [&str; 4] = ["oi", "oo", "ui", "uo"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    /// Ports `0, 1, 2` in counterclockwise order.
    Vertex,
    /// `side = 0`: the under ribbon passes from the right of the over ribbon
    /// to its left (counterclockwise ports `oi, ui, oo, uo`); `side = 1` is
    /// the mirror (`oi, uo, oo, ui`).
    Crossing { side: u8 },
}

impl NodeKind {
    pub fn port_count(self) -> u8 {
        match self {
            NodeKind::Vertex => 3,
            NodeKind::Crossing { .. } => 4,
        }
    }

    pub fn is_vertex(self) -> bool {
        self == NodeKind::Vertex
    }

    /// Ports in counterclockwise order.
    pub fn ccw_ports(self) -> &'static [u8] {
        match self {
            NodeKind::Vertex => &[0, 1, 2],
            NodeKind::Crossing { side: 0 } => &[OI, UI, OO, UO],
            NodeKind::Crossing { .. } => &[OI, UO, OO, UI],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub node: usize,
    pub port: u8,
}

impl PortRef {
    pub fn new(node: usize, port: u8) -> Self {
        Self { node, port }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    /// `None` for a free loop.
    pub ends: Option<[PortRef; 2]>,
    pub tag: u64,
}

/// A surface-ribbon diagram.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RibbonDiagram {
    pub(crate) nodes: Vec<NodeKind>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) disks: Vec<u64>,
}

/// Topology of one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentSummary {
    pub euler: i64,
    pub boundaries: usize,
    pub genus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopologySummary {
    pub components: Vec<ComponentSummary>,
}

impl TopologySummary {
    pub fn nu(&self) -> usize {
        self.components.len()
    }

    pub fn total_boundaries(&self) -> usize {
        self.components.iter().map(|c| c.boundaries).sum()
    }

    pub fn total_genus(&self) -> usize {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn total_euler(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }
}

/// Which edge end sits at each port.
#[derive(Debug, Clone)]
pub(crate) struct Wiring {
    at: Vec<[Option<(usize, u8)>; 4]>,
}

impl Wiring {
    /// `(edge, end)` attached to `p`.
    pub fn at(&self, p: PortRef) -> (usize, u8) {
        self.at[p.node][p.port as usize].expect("validated wiring")
    }
}

impl RibbonDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nodes(&self) -> &[NodeKind] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn disks(&self) -> &[u64] {
        &self.disks
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.iter().filter(|k| k.is_vertex()).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.len() - self.vertex_count()
    }

    pub fn crossings(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| !self.nodes[i].is_vertex())
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty() && self.disks.is_empty()
    }

    fn next_tag(&self) -> u64 {
        self.edges
            .iter()
            .map(|e| e.tag + 1)
            .chain(self.disks.iter().map(|t| t + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.nodes.push(NodeKind::Vertex);
        self.nodes.len() - 1
    }

    pub fn add_crossing(&mut self, side: u8) -> usize {
        self.nodes.push(NodeKind::Crossing { side: side & 1 });
        self.nodes.len() - 1
    }

    /// Adds an edge with a fresh tag and returns its index.
    pub fn add_edge(&mut self, a: PortRef, b: PortRef) -> usize {
        let tag = self.next_tag();
        self.add_edge_tagged(a, b, tag)
    }

    pub fn add_edge_tagged(&mut self, a: PortRef, b: PortRef, tag: u64) -> usize {
        self.edges.push(Edge {
            ends: Some([a, b]),
            tag,
        });
        self.edges.len() - 1
    }

    pub fn add_loop(&mut self) -> usize {
        let tag = self.next_tag();
        self.edges.push(Edge { ends: None, tag });
        self.edges.len() - 1
    }

    pub fn add_disk(&mut self) {
        let tag = self.next_tag();
        self.disks.push(tag);
    }

    pub(crate) fn wiring(&self) -> Result<Wiring> {
        let mut at = vec![[None; 4]; self.nodes.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            let Some(ends) = edge.ends else { continue };
            for (end, p) in ends.iter().enumerate() {
                let kind = self
                    .nodes
                    .get(p.node)
                    .ok_or_else(|| Error::InvalidDiagram(format!("edge {e} references missing node {}", p.node)))?;
                if p.port >= kind.port_count() {
                    return Err(Error::InvalidDiagram(format!(
                        "edge {e} references port {} of node {}",
                        p.port, p.node
                    )));
                }
                let slot = &mut at[p.node][p.port as usize];
                if let Some((other, _)) = *slot {
                    return Err(Error::InvalidDiagram(format!(
                        "port {} of node {} used by edges {other} and {e}",
                        p.port, p.node
                    )));
                }
                *slot = Some((e, end as u8));
            }
        }
        for (n, kind) in self.nodes.iter().enumerate() {
            for p in 0..kind.port_count() {
                if at[n][p as usize].is_none() {
                    return Err(Error::InvalidDiagram(format!("dangling port {p} of node {n}")));
                }
            }
        }
        Ok(Wiring { at })
    }

    /// Surface component of every edge and disk, components ordered by
    /// smallest tag.
    pub(crate) fn components(&self, wiring: &Wiring) -> ComponentMap {
        // union-find over edges; a node ties together the edges it connects
        let ne = self.edges.len();
        let mut uf = UnionFind::new(ne);
        for (n, kind) in self.nodes.iter().enumerate() {
            let groups: &[&[u8]] = match kind {
                NodeKind::Vertex => &[&[0, 1, 2]],
                NodeKind::Crossing { .. } => &[&[OI, OO], &[UI, UO]],
            };
            for g in groups {
                let first = wiring.at(PortRef::new(n, g[0])).0;
                for &p in &g[1..] {
                    uf.union(first, wiring.at(PortRef::new(n, p)).0);
                }
            }
        }
        let mut min_tag: Vec<Option<u64>> = vec![None; ne];
        for e in 0..ne {
            let r = uf.find(e);
            let t = self.edges[e].tag;
            min_tag[r] = Some(min_tag[r].map_or(t, |m: u64| m.min(t)));
        }
        // (tag, root or disk)
        let mut keys: Vec<(u64, std::result::Result<usize, usize>)> = (0..ne)
            .filter(|&e| uf.find(e) == e)
            .map(|r| (min_tag[r].unwrap(), Ok(r)))
            .chain(self.disks.iter().enumerate().map(|(i, &t)| (t, Err(i))))
            .collect();
        keys.sort();
        let mut root_comp = vec![usize::MAX; ne];
        let mut disk_comp = vec![0; self.disks.len()];
        for (c, (_, k)) in keys.iter().enumerate() {
            match *k {
                Ok(r) => root_comp[r] = c,
                Err(d) => disk_comp[d] = c,
            }
        }
        let edge_comp = (0..ne).map(|e| root_comp[uf.find(e)]).collect();
        ComponentMap {
            count: keys.len(),
            edge_comp,
            disk_comp,
        }
    }

    /// Surface component index of each edge.
    pub fn edge_components(&self) -> Result<Vec<usize>> {
        let w = self.wiring()?;
        Ok(self.components(&w).edge_comp)
    }

    /// Checks port pairing and computes `(χ, b, g)` per component.
    pub fn validate(&self) -> Result<TopologySummary> {
        if self.is_empty() {
            return Err(Error::InvalidDiagram("empty diagram".into()));
        }
        let bs = self.boundary()?;
        Ok(bs.summary().clone())
    }

    /// Boundary arcs, cycles and under-passage events.
    pub fn boundary(&self) -> Result<BoundaryStructure> {
        BoundaryStructure::compute(self)
    }

    /// The other end of the edge at `p`.
    pub(crate) fn partner(&self, wiring: &Wiring, p: PortRef) -> PortRef {
        let (e, end) = wiring.at(p);
        self.edges[e].ends.unwrap()[1 - end as usize]
    }

    /// Disjoint union; the second diagram's tags are shifted above the first's.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut d = self.clone();
        let shift = d.next_tag();
        let off = d.nodes.len();
        d.nodes.extend_from_slice(&other.nodes);
        for e in &other.edges {
            d.edges.push(Edge {
                ends: e
                    .ends
                    .map(|[a, b]| [PortRef::new(a.node + off, a.port), PortRef::new(b.node + off, b.port)]),
                tag: e.tag + shift,
            });
        }
        d.disks.extend(other.disks.iter().map(|t| t + shift));
        d
    }

    /// Relabels tags to `0..` preserving their order.
    pub fn normalize_tags(&mut self) {
        let mut tags: Vec<u64> = self
            .edges
            .iter()
            .map(|e| e.tag)
            .chain(self.disks.iter().copied())
            .collect();
        tags.sort_unstable();
        tags.dedup();
        let rank = |t: u64| tags.binary_search(&t).unwrap() as u64;
        for e in &mut self.edges {
            e.tag = rank(e.tag);
        }
        for t in &mut self.disks {
            *t = rank(*t);
        }
    }

    /// `V − E + F` per connected projection, counted over faces of the
    /// rotation system. Every component of a planar diagram gives 2.
    pub fn face_euler_characteristics(&self) -> Result<Vec<i64>> {
        let w = self.wiring()?;
        let faces = self.faces(&w);
        let comps = self.components_projection();
        let mut out = vec![0i64; comps.1];
        for n in 0..self.nodes.len() {
            out[comps.0[n]] += 1;
        }
        for e in &self.edges {
            if let Some([a, _]) = e.ends {
                out[comps.0[a.node]] -= 1;
            }
        }
        for f in &faces {
            out[comps.0[f[0].node]] += 1;
        }
        Ok(out)
    }

    /// Faces of the projection as cycles of arrival ports. Turning at a node
    /// follows the clockwise-next port, so faces keep the region on the left.
    pub(crate) fn faces(&self, w: &Wiring) -> Vec<Vec<PortRef>> {
        let mut seen: Vec<[bool; 4]> = vec![[false; 4]; self.nodes.len()];
        let mut faces = Vec::new();
        for n in 0..self.nodes.len() {
            for p in 0..self.nodes[n].port_count() {
                if seen[n][p as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = PortRef::new(n, p);
                while !seen[cur.node][cur.port as usize] {
                    seen[cur.node][cur.port as usize] = true;
                    face.push(cur);
                    let out = self.cw_next(cur);
                    cur = self.partner(w, out);
                }
                faces.push(face);
            }
        }
        faces
    }

    pub(crate) fn cw_next(&self, p: PortRef) -> PortRef {
        let order = self.nodes[p.node].ccw_ports();
        let i = order.iter().position(|&q| q == p.port).unwrap();
        PortRef::new(p.node, order[(i + order.len() - 1) % order.len()])
    }

    pub(crate) fn ccw_next(&self, p: PortRef) -> PortRef {
        let order = self.nodes[p.node].ccw_ports();
        let i = order.iter().position(|&q| q == p.port).unwrap();
        PortRef::new(p.node, order[(i + 1) % order.len()])
    }

    /// Connected components of the projection graph (nodes only).
    fn components_projection(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.nodes.len());
        for e in &self.edges {
            if let Some([a, b]) = e.ends {
                uf.union(a.node, b.node);
            }
        }
        let mut id = vec![usize::MAX; self.nodes.len()];
        let mut count = 0;
        let mut out = vec![0; self.nodes.len()];
        for n in 0..self.nodes.len() {
            let r = uf.find(n);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            out[n] = id[r];
        }
        (out, count)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct ComponentMap {
    pub count: usize,
    pub edge_comp: Vec<usize>,
    pub disk_comp: Vec<usize>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}
