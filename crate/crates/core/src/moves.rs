//! Local moves on diagrams: RII, RIII, CL, IH and the vertex slides YI / IY.
//!
//! Sites are found on the faces of the planar rotation system; applying a
//! site rewires a few ports and keeps edge tags on their ribbons.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{NodeKind, PortRef, RibbonDiagram, OI, OO, UI, UO};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Rii,
    Riii,
    Cl,
    Ih,
    /// A ribbon slides under a vertex.
    Yi,
    /// A ribbon slides over a vertex.
    Iy,
}

pub const ALL_KINDS: [MoveKind; 6] = [
    MoveKind::Rii,
    MoveKind::Riii,
    MoveKind::Cl,
    MoveKind::Ih,
    MoveKind::Yi,
    MoveKind::Iy,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Adds crossings (RII, CL) or moves a crossing across a vertex (YI, IY).
    Forward,
    Backward,
}

/// An edge traversed from `ends[from]` to the other end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub from: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    /// Push `over` across `under`; both darts bound the same face on their left.
    Darts {
        over: Dart,
        under: Dart,
    },
    /// Fold an edge (or free loop) across itself.
    Fold {
        edge: usize,
        from: u8,
        over_first: bool,
        mirror: bool,
    },
    Edge(usize),
    Nodes(Vec<usize>),
    /// Vertex port `m` runs straight into a crossing.
    Slide {
        vertex: usize,
        port: u8,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub direction: Direction,
    pub anchor: Anchor,
}

impl MoveSite {
    /// Net change in crossing count.
    pub fn growth(&self) -> i32 {
        match (self.kind, self.direction) {
            (MoveKind::Rii | MoveKind::Cl, Direction::Forward) => 2,
            (MoveKind::Rii | MoveKind::Cl, Direction::Backward) => -2,
            (MoveKind::Yi | MoveKind::Iy, Direction::Forward) => 1,
            (MoveKind::Yi | MoveKind::Iy, Direction::Backward) => -1,
            _ => 0,
        }
    }
}

fn through(port: u8) -> u8 {
    match port {
        OI => OO,
        OO => OI,
        UI => UO,
        _ => UI,
    }
}

fn is_over(port: u8) -> bool {
    port == OI || port == OO
}

/// Read-only view with port lookups.
struct View<'a> {
    d: &'a RibbonDiagram,
    at: Vec<[(usize, u8); 4]>,
}

impl<'a> View<'a> {
    fn new(d: &'a RibbonDiagram) -> Result<Self> {
        let w = d.wiring()?;
        let at = (0..d.nodes().len())
            .map(|n| {
                let mut row = [(usize::MAX, 0u8); 4];
                for p in 0..d.nodes()[n].port_count() {
                    row[p as usize] = w.at(PortRef::new(n, p));
                }
                row
            })
            .collect();
        Ok(Self { d, at })
    }

    fn edge_at(&self, p: PortRef) -> usize {
        self.at[p.node][p.port as usize].0
    }

    fn partner(&self, p: PortRef) -> PortRef {
        let (e, end) = self.at[p.node][p.port as usize];
        self.d.edges()[e].ends.unwrap()[1 - end as usize]
    }

    fn kind(&self, n: usize) -> NodeKind {
        self.d.nodes()[n]
    }

    fn is_crossing(&self, n: usize) -> bool {
        !self.kind(n).is_vertex()
    }

    /// Faces as lists of darts, each face keeping the region on its left.
    fn faces(&self) -> Vec<Vec<(PortRef, PortRef)>> {
        let d = self.d;
        let mut seen: Vec<[bool; 4]> = vec![[false; 4]; d.nodes().len()];
        let mut faces = Vec::new();
        for n in 0..d.nodes().len() {
            for p in 0..d.nodes()[n].port_count() {
                if seen[n][p as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = PortRef::new(n, p);
                while !seen[cur.node][cur.port as usize] {
                    seen[cur.node][cur.port as usize] = true;
                    let out = d.cw_next(cur);
                    let next = self.partner(out);
                    face.push((out, next));
                    cur = next;
                }
                faces.push(face);
            }
        }
        faces
    }

    fn dart(&self, from: PortRef) -> Dart {
        let (edge, end) = self.at[from.node][from.port as usize];
        Dart { edge, from: end }
    }

    /// Crossing writhe if `n` is a kink: `(writhe, curl edge)`.
    fn kink(&self, n: usize) -> Option<(i32, usize)> {
        let NodeKind::Crossing { side } = self.kind(n) else {
            return None;
        };
        for p in [OI, OO] {
            let q = self.partner(PortRef::new(n, p));
            if q.node == n && !is_over(q.port) {
                let consistent = (p == OO && q.port == UI) || (p == OI && q.port == UO);
                let sign = if side == 0 { 1 } else { -1 };
                return Some((if consistent { sign } else { -sign }, self.edge_at(q)));
            }
        }
        None
    }
}

/// All sites of one kind, in a deterministic order.
pub fn find_sites(d: &RibbonDiagram, kind: MoveKind) -> Result<Vec<MoveSite>> {
    let v = View::new(d)?;
    let mut out = Vec::new();
    let site = |direction, anchor| MoveSite {
        kind,
        direction,
        anchor,
    };
    match kind {
        MoveKind::Rii => {
            let faces = v.faces();
            for face in &faces {
                for (i, &(a, _)) in face.iter().enumerate() {
                    for (j, &(b, _)) in face.iter().enumerate() {
                        let (da, db) = (v.dart(a), v.dart(b));
                        if i != j && da.edge != db.edge {
                            out.push(site(Direction::Forward, Anchor::Darts { over: da, under: db }));
                        }
                    }
                }
            }
            for face in &faces {
                for &(a, _) in face {
                    let da = v.dart(a);
                    for over_first in [true, false] {
                        out.push(site(
                            Direction::Forward,
                            Anchor::Fold {
                                edge: da.edge,
                                from: da.from,
                                over_first,
                                mirror: false,
                            },
                        ));
                    }
                }
            }
            for (e, edge) in d.edges().iter().enumerate() {
                if edge.ends.is_none() {
                    for over_first in [true, false] {
                        for mirror in [false, true] {
                            out.push(site(
                                Direction::Forward,
                                Anchor::Fold {
                                    edge: e,
                                    from: 0,
                                    over_first,
                                    mirror,
                                },
                            ));
                        }
                    }
                }
            }
            for face in &faces {
                if let Some(nodes) = bigon(&v, face) {
                    out.push(site(Direction::Backward, Anchor::Nodes(nodes)));
                }
            }
        }
        MoveKind::Riii => {
            for face in &v.faces() {
                if let Some(nodes) = triangle(&v, face) {
                    out.push(site(Direction::Forward, Anchor::Nodes(nodes)));
                }
            }
        }
        MoveKind::Cl => {
            for e in 0..d.edges().len() {
                out.push(site(Direction::Forward, Anchor::Edge(e)));
            }
            for (e, edge) in d.edges().iter().enumerate() {
                let Some([a, b]) = edge.ends else { continue };
                if a.node == b.node {
                    continue;
                }
                if let (Some((w1, c1)), Some((w2, c2))) = (v.kink(a.node), v.kink(b.node)) {
                    if w1 == -w2 && c1 != e && c2 != e {
                        out.push(site(Direction::Backward, Anchor::Nodes(vec![a.node, b.node])));
                    }
                }
            }
        }
        MoveKind::Ih => {
            for (e, edge) in d.edges().iter().enumerate() {
                let Some([a, b]) = edge.ends else { continue };
                if a.node != b.node && !v.is_crossing(a.node) && !v.is_crossing(b.node) {
                    out.push(site(Direction::Forward, Anchor::Edge(e)));
                }
            }
        }
        MoveKind::Yi | MoveKind::Iy => {
            let r_over = kind == MoveKind::Iy;
            for n in 0..d.nodes().len() {
                if v.is_crossing(n) {
                    continue;
                }
                for m in 0..3u8 {
                    if slide_forward_ok(&v, n, m) == Some(r_over) {
                        out.push(site(Direction::Forward, Anchor::Slide { vertex: n, port: m }));
                    }
                }
            }
            for n in 0..d.nodes().len() {
                if v.is_crossing(n) {
                    continue;
                }
                for m in 0..3u8 {
                    if let Some((ca, cb, over)) = slide_backward_ok(&v, n, m) {
                        if over == r_over {
                            out.push(site(Direction::Backward, Anchor::Nodes(vec![n, m as usize, ca, cb])));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Bigon with one ribbon over at both crossings.
fn bigon(v: &View, face: &[(PortRef, PortRef)]) -> Option<Vec<usize>> {
    if face.len() != 2 {
        return None;
    }
    let (x, y) = (face[0].0.node, face[1].0.node);
    if x == y || !v.is_crossing(x) || !v.is_crossing(y) {
        return None;
    }
    let e1 = face[0];
    let e2 = face[1];
    let over1 = is_over(e1.0.port) && is_over(e1.1.port);
    let under1 = !is_over(e1.0.port) && !is_over(e1.1.port);
    let over2 = is_over(e2.0.port) && is_over(e2.1.port);
    let under2 = !is_over(e2.0.port) && !is_over(e2.1.port);
    if (over1 && under2) || (under1 && over2) {
        Some(vec![x.min(y), x.max(y)])
    } else {
        None
    }
}

/// Triangle of three crossings with one ribbon over at both of its crossings.
fn triangle(v: &View, face: &[(PortRef, PortRef)]) -> Option<Vec<usize>> {
    if face.len() != 3 {
        return None;
    }
    let nodes: Vec<usize> = face.iter().map(|(a, _)| a.node).collect();
    if nodes.iter().any(|&n| !v.is_crossing(n)) || nodes[0] == nodes[1] || nodes[1] == nodes[2] || nodes[0] == nodes[2]
    {
        return None;
    }
    let top = face.iter().any(|(a, b)| is_over(a.port) && is_over(b.port));
    if !top {
        return None;
    }
    // anchor by the leaving port of the first dart so apply can recover the face
    let mut out = nodes;
    let start = face[0].0;
    out.push(start.port as usize);
    Some(out)
}

/// `Some(r_over)` when vertex port `m` runs straight into a crossing whose
/// other ribbon could slide across the vertex.
fn slide_forward_ok(v: &View, n: usize, m: u8) -> Option<bool> {
    let vm = PortRef::new(n, m);
    let cx = v.partner(vm);
    let c = cx.node;
    if c == n || !v.is_crossing(c) {
        return None;
    }
    let r_ports = if is_over(cx.port) { [UI, UO] } else { [OI, OO] };
    let cy = PortRef::new(c, through(cx.port));
    let mut outside = vec![v.partner(cy)];
    for p in r_ports {
        outside.push(v.partner(PortRef::new(c, p)));
    }
    for k in 1..3u8 {
        outside.push(v.partner(PortRef::new(n, (m + k) % 3)));
    }
    if outside.iter().any(|q| q.node == n || q.node == c) {
        return None;
    }
    Some(!is_over(cx.port))
}

/// `(ca, cb, r_over)` when the two other ports of vertex `n` (counterclockwise
/// after `m`) meet crossings joined by one ribbon that bounds a triangle
/// with the vertex.
fn slide_backward_ok(v: &View, n: usize, m: u8) -> Option<(usize, usize, bool)> {
    let a = PortRef::new(n, (m + 1) % 3);
    let b = PortRef::new(n, (m + 2) % 3);
    let pa = v.partner(a);
    let pb = v.partner(b);
    let (ca, cb) = (pa.node, pb.node);
    if ca == cb || ca == n || cb == n || !v.is_crossing(ca) || !v.is_crossing(cb) {
        return None;
    }
    if is_over(pa.port) != is_over(pb.port) {
        return None;
    }
    let r_over = !is_over(pa.port);
    // face: arrive at b, leave by a, reach ca, go along the ribbon to cb, back to b
    let d = v.d;
    let l1 = d.cw_next(pa);
    if is_over(l1.port) != r_over {
        return None;
    }
    let q = v.partner(l1);
    if q.node != cb || is_over(q.port) != r_over {
        return None;
    }
    let l2 = d.cw_next(q);
    if l2 != pb {
        return None;
    }
    let mut outside = vec![
        v.partner(PortRef::new(n, m)),
        v.partner(PortRef::new(ca, through(pa.port))),
        v.partner(PortRef::new(cb, through(pb.port))),
        v.partner(PortRef::new(ca, through(l1.port))),
        v.partner(PortRef::new(cb, through(q.port))),
    ];
    outside.dedup();
    if outside.iter().any(|p| p.node == n || p.node == ca || p.node == cb) {
        return None;
    }
    Some((ca, cb, r_over))
}

/// Rebuilds `d` without the listed nodes and edges.
fn compact(d: &RibbonDiagram, dead_nodes: &[usize], dead_edges: &[usize]) -> RibbonDiagram {
    let mut map = vec![usize::MAX; d.nodes().len()];
    let mut out = RibbonDiagram::new();
    for (n, &k) in d.nodes().iter().enumerate() {
        if !dead_nodes.contains(&n) {
            map[n] = out.nodes.len();
            out.nodes.push(k);
        }
    }
    for (e, edge) in d.edges().iter().enumerate() {
        if dead_edges.contains(&e) {
            continue;
        }
        let mut edge = *edge;
        if let Some([a, b]) = edge.ends {
            edge.ends = Some([PortRef::new(map[a.node], a.port), PortRef::new(map[b.node], b.port)]);
        }
        out.edges.push(edge);
    }
    out.disks = d.disks().to_vec();
    out
}

fn find_edge(d: &RibbonDiagram, p: PortRef) -> (usize, u8) {
    for (e, edge) in d.edges().iter().enumerate() {
        if let Some(ends) = edge.ends {
            for (k, q) in ends.iter().enumerate() {
                if *q == p {
                    return (e, k as u8);
                }
            }
        }
    }
    unreachable!("port {p:?} is attached")
}

/// Removes crossing `n` from its two ribbons, joining the loose ends.
/// Emptied edges are marked in `dead`.
fn splice_out(d: &mut RibbonDiagram, n: usize, dead: &mut Vec<usize>) {
    for (a, b) in [(OI, OO), (UI, UO)] {
        let (ea, ka) = find_edge(d, PortRef::new(n, a));
        let (eb, kb) = find_edge(d, PortRef::new(n, b));
        if ea == eb {
            d.edges[ea].ends = None;
            continue;
        }
        let far_a = d.edges[ea].ends.unwrap()[1 - ka as usize];
        let far_b = d.edges[eb].ends.unwrap()[1 - kb as usize];
        let tag = d.edges[ea].tag.min(d.edges[eb].tag);
        d.edges[ea].ends = Some([far_a, far_b]);
        d.edges[ea].tag = tag;
        d.edges[eb].ends = Some([PortRef::new(usize::MAX, 0); 2]);
        dead.push(eb);
    }
}

/// Replaces the ends of every edge according to `map`.
fn remap_ports(d: &mut RibbonDiagram, map: &[(PortRef, PortRef)]) {
    for edge in &mut d.edges {
        if let Some(ends) = edge.ends.as_mut() {
            for p in ends.iter_mut() {
                if let Some(&(_, to)) = map.iter().find(|(from, _)| from == p) {
                    *p = to;
                }
            }
        }
    }
}

/// Applies a site found by [`find_sites`] on the same diagram.
pub fn apply(d: &RibbonDiagram, s: &MoveSite) -> Result<RibbonDiagram> {
    if !find_sites(d, s.kind)?.contains(s) {
        return Err(Error::InvalidSite(format!("stale site {s:?}")));
    }
    Ok(apply_unchecked(d, s))
}

fn apply_unchecked(d: &RibbonDiagram, s: &MoveSite) -> RibbonDiagram {
    let v = View::new(d).expect("site was found on a valid diagram");
    let mut out = d.clone();
    let pr = PortRef::new;
    match (&s.anchor, s.kind) {
        (Anchor::Darts { over, under }, _) => {
            let ends = |dart: &Dart| {
                let e = d.edges()[dart.edge].ends.unwrap();
                (
                    e[dart.from as usize],
                    e[1 - dart.from as usize],
                    d.edges()[dart.edge].tag,
                )
            };
            let (p, q, t1) = ends(over);
            let (r, s2, t2) = ends(under);
            let x = out.add_crossing(0);
            let y = out.add_crossing(1);
            out.edges[over.edge].ends = Some([p, pr(x, OI)]);
            out.add_edge_tagged(pr(x, OO), pr(y, OI), t1);
            out.add_edge_tagged(pr(y, OO), q, t1);
            out.edges[under.edge].ends = Some([r, pr(y, UI)]);
            out.add_edge_tagged(pr(y, UO), pr(x, UI), t2);
            out.add_edge_tagged(pr(x, UO), s2, t2);
        }
        (
            &Anchor::Fold {
                edge,
                from,
                over_first,
                mirror,
            },
            _,
        ) => {
            let tag = d.edges()[edge].tag;
            let (sx, sy) = if over_first { (0, 1) } else { (1, 0) };
            let flip = u8::from(mirror);
            let x = out.add_crossing(sx ^ flip);
            let y = out.add_crossing(sy ^ flip);
            let (a1, a2, b1, b2) = if over_first { (OI, OO, UI, UO) } else { (UI, UO, OI, OO) };
            // p → x.a1, x.a2 → y.a1, y.a2 → y.b1, y.b2 → x.b1, x.b2 → q
            let (p, q) = match d.edges()[edge].ends {
                Some(e) => (e[from as usize], e[1 - from as usize]),
                None => (pr(x, b2), pr(x, a1)),
            };
            out.edges[edge].ends = Some([p, pr(x, a1)]);
            out.add_edge_tagged(pr(x, a2), pr(y, a1), tag);
            out.add_edge_tagged(pr(y, a2), pr(y, b1), tag);
            out.add_edge_tagged(pr(y, b2), pr(x, b1), tag);
            if d.edges()[edge].ends.is_some() {
                out.add_edge_tagged(pr(x, b2), q, tag);
            }
        }
        (Anchor::Nodes(nodes), MoveKind::Rii | MoveKind::Cl) => {
            let mut dead = Vec::new();
            splice_out(&mut out, nodes[0], &mut dead);
            splice_out(&mut out, nodes[1], &mut dead);
            return compact(&out, &[nodes[0], nodes[1]], &dead);
        }
        (&Anchor::Edge(e), MoveKind::Cl) => {
            let tag = d.edges()[e].tag;
            let k1 = out.add_crossing(0);
            let k2 = out.add_crossing(1);
            let (p, q) = match d.edges()[e].ends {
                Some([a, b]) => (a, b),
                None => (pr(k2, UO), pr(k1, OI)),
            };
            out.edges[e].ends = Some([p, pr(k1, OI)]);
            out.add_edge_tagged(pr(k1, OO), pr(k1, UI), tag);
            out.add_edge_tagged(pr(k1, UO), pr(k2, OI), tag);
            out.add_edge_tagged(pr(k2, OO), pr(k2, UI), tag);
            if d.edges()[e].ends.is_some() {
                out.add_edge_tagged(pr(k2, UO), q, tag);
            }
        }
        (&Anchor::Edge(e), MoveKind::Ih) => {
            let [pu, pv] = d.edges()[e].ends.unwrap();
            let (u, mu) = (pu.node, pu.port);
            let (w, mw) = (pv.node, pv.port);
            let r = |n: usize, m: u8, k: u8| pr(n, (m + k) % 3);
            remap_ports(
                &mut out,
                &[
                    (r(u, mu, 1), r(w, mw, 2)),
                    (r(u, mu, 2), r(u, mu, 1)),
                    (r(w, mw, 1), r(u, mu, 2)),
                    (r(w, mw, 2), r(w, mw, 1)),
                ],
            );
        }
        (Anchor::Nodes(nodes), MoveKind::Riii) => {
            let face = v
                .faces()
                .into_iter()
                .find(|f| f[0].0 == pr(nodes[0], nodes[3] as u8))
                .expect("triangle face");
            let mut map = Vec::new();
            let mut new_edges = Vec::new();
            for &(l, a) in &face {
                let e = v.edge_at(l);
                let pext = pr(l.node, through(l.port));
                let qext = pr(a.node, through(a.port));
                map.push((pext, a));
                map.push((qext, l));
                new_edges.push((e, qext, pext));
            }
            remap_ports(&mut out, &map);
            for (e, a, b) in new_edges {
                out.edges[e].ends = Some([a, b]);
            }
        }
        (&Anchor::Slide { vertex: n, port: m }, _) => {
            let vm = pr(n, m);
            let cx = v.partner(vm);
            let c = cx.node;
            let cy = pr(c, through(cx.port));
            let r_over = !is_over(cx.port);
            // r1 is the ribbon port counterclockwise after cx
            let r1 = d.ccw_next(cx);
            let r2 = pr(c, through(r1.port));
            let (north, south) = (v.partner(r1), v.partner(r2));
            let far_m = v.partner(cy);
            let a = pr(n, (m + 1) % 3);
            let b = pr(n, (m + 2) % 3);
            let (far_a, far_b) = (v.partner(a), v.partner(b));
            let tag_r = d.edges()[v.edge_at(r1)].tag.min(d.edges()[v.edge_at(r2)].tag);
            let tag_m = d.edges()[v.edge_at(vm)].tag.min(d.edges()[v.edge_at(cy)].tag);
            let tag_a = d.edges()[v.edge_at(a)].tag;
            let tag_b = d.edges()[v.edge_at(b)].tag;
            let dead_edges = vec![
                v.edge_at(vm),
                v.edge_at(cy),
                v.edge_at(r1),
                v.edge_at(r2),
                v.edge_at(a),
                v.edge_at(b),
            ];
            let side = if r_over { 0 } else { 1 };
            let ca = out.add_crossing(side);
            let cb = out.add_crossing(side);
            let (ri, ro, xi, xo) = if r_over { (OI, OO, UI, UO) } else { (UI, UO, OI, OO) };
            out.add_edge_tagged(vm, far_m, tag_m);
            out.add_edge_tagged(north, pr(cb, ri), tag_r);
            out.add_edge_tagged(pr(cb, ro), pr(ca, ri), tag_r);
            out.add_edge_tagged(pr(ca, ro), south, tag_r);
            out.add_edge_tagged(a, pr(ca, xi), tag_a);
            out.add_edge_tagged(pr(ca, xo), far_a, tag_a);
            out.add_edge_tagged(b, pr(cb, xi), tag_b);
            out.add_edge_tagged(pr(cb, xo), far_b, tag_b);
            return compact(&out, &[c], &dead_edges);
        }
        (Anchor::Nodes(nodes), MoveKind::Yi | MoveKind::Iy) => {
            let (n, m, ca, cb) = (nodes[0], nodes[1] as u8, nodes[2], nodes[3]);
            let vm = pr(n, m);
            let a = pr(n, (m + 1) % 3);
            let b = pr(n, (m + 2) % 3);
            let pa = v.partner(a);
            let pb = v.partner(b);
            let l1 = d.cw_next(pa);
            let q = v.partner(l1);
            let south = v.partner(pr(ca, through(l1.port)));
            let north = v.partner(pr(cb, through(q.port)));
            let far_a = v.partner(pr(ca, through(pa.port)));
            let far_b = v.partner(pr(cb, through(pb.port)));
            let far_m = v.partner(vm);
            let r_over = !is_over(pa.port);
            let e = |p: PortRef| v.edge_at(p);
            let tag = |p: PortRef| d.edges()[e(p)].tag;
            let tag_r = tag(l1)
                .min(tag(pr(ca, through(l1.port))))
                .min(tag(pr(cb, through(q.port))));
            let tag_a = tag(a).min(tag(pr(ca, through(pa.port))));
            let tag_b = tag(b).min(tag(pr(cb, through(pb.port))));
            let tag_m = tag(vm);
            let dead_edges = vec![
                e(vm),
                e(a),
                e(b),
                e(l1),
                e(pr(ca, through(l1.port))),
                e(pr(cb, through(q.port))),
                e(pr(ca, through(pa.port))),
                e(pr(cb, through(pb.port))),
            ];
            let c = out.add_crossing(if r_over { 1 } else { 0 });
            let (mi, mo, ri, ro) = if r_over { (UI, UO, OI, OO) } else { (OI, OO, UI, UO) };
            out.add_edge_tagged(vm, pr(c, mi), tag_m);
            out.add_edge_tagged(pr(c, mo), far_m, tag_m);
            out.add_edge_tagged(north, pr(c, ri), tag_r);
            out.add_edge_tagged(pr(c, ro), south, tag_r);
            out.add_edge_tagged(a, far_a, tag_a);
            out.add_edge_tagged(b, far_b, tag_b);
            let mut dead = dead_edges;
            dead.sort_unstable();
            dead.dedup();
            return compact(&out, &[ca, cb], &dead);
        }
        _ => unreachable!("anchor does not fit move kind"),
    }
    out
}

/// One step of a fuzz run.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub site: MoveSite,
    pub crossings_after: usize,
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub steps: usize,
    pub seed: u64,
    /// Above half this edge count only non-growing moves are drawn.
    pub max_edges: usize,
}

impl FuzzConfig {
    pub fn new(seed: u64, steps: usize) -> Self {
        Self {
            steps,
            seed,
            max_edges: 200,
        }
    }
}

/// Applies `steps` random applicable moves drawn from a seeded generator.
pub fn fuzz(d: &RibbonDiagram, cfg: &FuzzConfig) -> Result<(RibbonDiagram, Vec<TraceStep>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = d.clone();
    let mut trace = Vec::with_capacity(cfg.steps);
    for _ in 0..cfg.steps {
        let mut by_kind: Vec<Vec<MoveSite>> = Vec::new();
        let crowded = cur.edges().len() * 2 > cfg.max_edges;
        for kind in ALL_KINDS {
            let sites: Vec<MoveSite> = find_sites(&cur, kind)?
                .into_iter()
                .filter(|s| !crowded || s.growth() <= 0)
                .collect();
            // forward and backward count as separate kinds
            let (fw, bw): (Vec<_>, Vec<_>) = sites.into_iter().partition(|s| s.direction == Direction::Forward);
            for group in [fw, bw] {
                if !group.is_empty() {
                    by_kind.push(group);
                }
            }
        }
        let Some(group) = by_kind.choose(&mut rng) else { break };
        let site = group[rng.gen_range(0..group.len())].clone();
        cur = apply_unchecked(&cur, &site);
        trace.push(TraceStep {
            site,
            crossings_after: cur.crossing_count(),
        });
    }
    Ok((cur, trace))
}
