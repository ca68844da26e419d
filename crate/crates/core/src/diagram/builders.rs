//! Constructors for the standard example surfaces.

use super::{PortRef, RibbonDiagram, StrandId, OI, OO, UI, UO};
use crate::error::{Error, Result};

pub fn disk() -> RibbonDiagram {
    let mut d = RibbonDiagram::new();
    d.add_disk();
    d
}

pub fn annulus() -> RibbonDiagram {
    let mut d = RibbonDiagram::new();
    d.add_loop();
    d
}

/// Routes a ribbon from `from` to `to` through `count` kinks, each a crossing
/// whose outgoing over end feeds straight back into its own under end.
pub(crate) fn kink_chain(d: &mut RibbonDiagram, from: PortRef, to: PortRef, count: usize, side: u8, tag: u64) {
    let mut cur = from;
    for _ in 0..count {
        let k = d.add_crossing(side);
        d.add_edge_tagged(cur, PortRef::new(k, OI), tag);
        d.add_edge_tagged(PortRef::new(k, OO), PortRef::new(k, UI), tag);
        cur = PortRef::new(k, UO);
    }
    d.add_edge_tagged(cur, to, tag);
}

/// A closed band with `m` full twists, drawn as `m` kinks.
pub fn looped_band(m: usize) -> RibbonDiagram {
    if m == 0 {
        return annulus();
    }
    let mut d = RibbonDiagram::new();
    let ks: Vec<usize> = (0..m).map(|_| d.add_crossing(0)).collect();
    for i in 0..m {
        d.add_edge_tagged(PortRef::new(ks[i], OO), PortRef::new(ks[i], UI), 0);
        d.add_edge_tagged(PortRef::new(ks[i], UO), PortRef::new(ks[(i + 1) % m], OI), 0);
    }
    d
}

/// Two ribbons braided `2k + 1` times and closed into a genus-one surface
/// with one boundary component.
pub fn torus_t1(k: usize) -> RibbonDiagram {
    let mut d = RibbonDiagram::new();
    let p = d.add_vertex();
    let q = d.add_vertex();
    d.add_edge_tagged(PortRef::new(p, 0), PortRef::new(q, 0), 0);
    let mut inner = PortRef::new(p, 1);
    let mut outer = PortRef::new(p, 2);
    for _ in 0..2 * k + 1 {
        // the outer ribbon dives over the inner one
        let x = d.add_crossing(0);
        d.add_edge_tagged(outer, PortRef::new(x, OI), 0);
        d.add_edge_tagged(inner, PortRef::new(x, UI), 0);
        inner = PortRef::new(x, OO);
        outer = PortRef::new(x, UO);
    }
    d.add_edge_tagged(inner, PortRef::new(q, 2), 0);
    d.add_edge_tagged(outer, PortRef::new(q, 1), 0);
    d
}

/// Two annuli linked once; each passes over the other at one crossing.
pub fn hopf_annuli() -> RibbonDiagram {
    let mut d = RibbonDiagram::new();
    let top = d.add_crossing(0);
    let bot = d.add_crossing(0);
    d.add_edge_tagged(PortRef::new(top, OO), PortRef::new(bot, UI), 0);
    d.add_edge_tagged(PortRef::new(bot, UO), PortRef::new(top, OI), 0);
    d.add_edge_tagged(PortRef::new(bot, OO), PortRef::new(top, UI), 1);
    d.add_edge_tagged(PortRef::new(top, UO), PortRef::new(bot, OI), 1);
    d
}

/// A middle annulus linked once with each of two further, mutually unlinked
/// annuli. Components are ordered middle, first ring, second ring.
pub fn three_annuli_chain() -> RibbonDiagram {
    let mut d = RibbonDiagram::new();
    let c: Vec<usize> = (0..4).map(|_| d.add_crossing(0)).collect();
    let p = |i: usize, port: u8| PortRef::new(c[i], port);
    // middle: over the second ring at c0, under the first at c1,
    // over the first at c2, under the second at c3
    d.add_edge_tagged(p(0, OO), p(1, UI), 0);
    d.add_edge_tagged(p(1, UO), p(2, OI), 0);
    d.add_edge_tagged(p(2, OO), p(3, UI), 0);
    d.add_edge_tagged(p(3, UO), p(0, OI), 0);
    d.add_edge_tagged(p(1, OO), p(2, UI), 1);
    d.add_edge_tagged(p(2, UO), p(1, OI), 1);
    d.add_edge_tagged(p(3, OO), p(0, UI), 2);
    d.add_edge_tagged(p(0, UO), p(3, OI), 2);
    d
}

/// Inserts a vertex on the edge of strand `s`, with its third port on the
/// side of that strand. Returns the new vertex's free port; the caller must
/// attach it.
pub(crate) fn branch_off(d: &mut RibbonDiagram, s: StrandId) -> Result<PortRef> {
    let e = s / 2;
    let edge = *d
        .edges
        .get(e)
        .ok_or_else(|| Error::InvalidSite(format!("no strand {s}")))?;
    // strand 2e+1 runs on the left of the travel end 0 → end 1
    let left = s % 2 == 1;
    let w = d.add_vertex();
    let (xb, branch, xa) = if left { (0, 1, 2) } else { (0, 2, 1) };
    match edge.ends {
        Some([a, b]) => {
            d.edges[e].ends = Some([a, PortRef::new(w, xa)]);
            d.add_edge_tagged(PortRef::new(w, xb), b, edge.tag);
        }
        None => {
            d.edges[e].ends = Some([PortRef::new(w, xb), PortRef::new(w, xa)]);
        }
    }
    Ok(PortRef::new(w, branch))
}

/// A strand on boundary cycle `cycle`, or `None` for an isolated disk.
fn strand_on_cycle(d: &RibbonDiagram, cycle: usize) -> Result<Option<(StrandId, usize)>> {
    let bs = d.boundary()?;
    let c = bs
        .cycles
        .get(cycle)
        .ok_or_else(|| Error::InvalidSite(format!("no boundary component {cycle}")))?;
    let arc = &bs.arcs[c.arcs[0]];
    Ok(arc.strands.first().map(|&s| (s, c.component)))
}

fn remove_disk_of_component(d: &mut RibbonDiagram, comp: usize) -> Result<()> {
    let w = d.wiring()?;
    let map = d.components(&w);
    let i = map.disk_comp.iter().position(|&c| c == comp).unwrap();
    d.disks.remove(i);
    Ok(())
}

/// Joins boundary cycle `b1` of `d1` to boundary cycle `b2` of `d2` by a band.
pub fn boundary_connected_sum(d1: &RibbonDiagram, b1: usize, d2: &RibbonDiagram, b2: usize) -> Result<RibbonDiagram> {
    connected_sum_sites(d1, b1, d2, b2).map(|(d, _)| d)
}

/// As [`boundary_connected_sum`], also returning the strands of the sum on
/// either side of the band foot in `d1` (`None` when that side is a disk).
pub(crate) fn connected_sum_sites(
    d1: &RibbonDiagram,
    b1: usize,
    d2: &RibbonDiagram,
    b2: usize,
) -> Result<(RibbonDiagram, Option<(StrandId, StrandId)>)> {
    let s1 = strand_on_cycle(d1, b1)?;
    let s2 = strand_on_cycle(d2, b2)?;
    let shift = 2 * d1.edges.len();
    let mut d = d1.disjoint_union(d2);
    let mut halves = None;
    match (s1, s2) {
        (Some((s1, _)), Some((s2, _))) => {
            let tag = d.edges[s1 / 2].tag;
            let before = d.edges.len();
            let p1 = branch_off(&mut d, s1)?;
            // the far half of a split edge is appended; a split loop stays whole
            let far = if d.edges.len() > before {
                2 * before + s1 % 2
            } else {
                s1
            };
            halves = Some((s1, far));
            let p2 = branch_off(&mut d, s2 + shift)?;
            d.add_edge_tagged(p1, p2, tag);
        }
        (None, _) | (_, None) => {
            // a disk summand changes nothing; drop one disk atom
            let comp = match (s1, s2) {
                (None, _) => d1.boundary()?.cycles[b1].component,
                _ => d2.boundary()?.cycles[b2].component + d1.boundary()?.component_count(),
            };
            remove_disk_of_component(&mut d, comp)?;
        }
    }
    d.normalize_tags();
    Ok((d, halves))
}

/// Boundary connected sum of several pieces, always glued along boundary 0.
fn sum_all(pieces: impl IntoIterator<Item = RibbonDiagram>) -> Result<RibbonDiagram> {
    let mut acc = disk();
    for p in pieces {
        acc = boundary_connected_sum(&acc, 0, &p, 0)?;
    }
    Ok(acc)
}

/// `m` trivial bands and `n` crossed band pairs on a disk.
pub fn trivial_band_closure(m: usize, n: usize) -> Result<RibbonDiagram> {
    sum_all(
        std::iter::repeat_with(annulus)
            .take(m)
            .chain(std::iter::repeat_with(|| torus_t1(0)).take(n)),
    )
}

/// A disk with looped bands of `ms[i]` twists and `k` untwisted bands.
pub fn punctured_disk(ms: &[usize], k: usize) -> Result<RibbonDiagram> {
    sum_all(
        ms.iter()
            .map(|&m| looped_band(m))
            .chain(std::iter::repeat_with(annulus).take(k)),
    )
}

/// Attaches a band from strand `s1` to strand `s2` carrying `|twists|` full
/// twists (kink side from the sign). When `s1 == s2` both feet sit next to
/// each other on the same edge side.
pub fn add_twisted_band(d: &RibbonDiagram, s1: StrandId, s2: StrandId, twists: i64) -> Result<RibbonDiagram> {
    let ns = 2 * d.edges.len();
    if s1 >= ns || s2 >= ns {
        return Err(Error::InvalidSite(format!("no strand {}", s1.max(s2))));
    }
    let mut out = d.clone();
    let tag = out.edges[s1 / 2].tag;
    let p1 = branch_off(&mut out, s1)?;
    // on a shared edge the first split keeps index s1/2 for the near half
    let p2 = branch_off(&mut out, s2)?;
    let side = if twists < 0 { 1 } else { 0 };
    kink_chain(&mut out, p2, p1, twists.unsigned_abs() as usize, side, tag);
    out.validate()?;
    Ok(out)
}

/// Adds a 1-handle at edge `e`: a band leaves the left side of `e`, passes
/// under it twice and over it once, and lands on its right side. The two
/// sides of `e` get equal colors and the new boundary curve is free.
pub fn stabilize(d: &RibbonDiagram, e: usize) -> Result<RibbonDiagram> {
    let edge = *d
        .edges
        .get(e)
        .ok_or_else(|| Error::InvalidSite(format!("no edge {e}")))?;
    let mut out = d.clone();
    let tag = edge.tag;
    let c = [out.add_crossing(1), out.add_crossing(0), out.add_crossing(0)];
    let f1 = out.add_vertex();
    let f2 = out.add_vertex();
    let p = PortRef::new;
    // along e: c0 over, c1 over, c2 under, left foot f1, right foot f2
    let chain = [
        (p(c[0], OI), p(c[0], OO)),
        (p(c[1], OI), p(c[1], OO)),
        (p(c[2], UI), p(c[2], UO)),
        (p(f1, 2), p(f1, 0)),
        (p(f2, 1), p(f2, 0)),
    ];
    let (start, end) = match edge.ends {
        Some([a, b]) => (a, b),
        None => (chain[4].1, chain[0].0),
    };
    out.edges[e].ends = Some([start, chain[0].0]);
    for w in chain.windows(2) {
        out.add_edge_tagged(w[0].1, w[1].0, tag);
    }
    out.add_edge_tagged(chain[4].1, end, tag);
    if edge.ends.is_none() {
        out.edges.pop();
        out.edges[e].ends = Some([chain[4].1, chain[0].0]);
    }
    out.add_edge_tagged(p(f1, 1), p(c[0], UI), tag);
    out.add_edge_tagged(p(c[0], UO), p(c[1], UI), tag);
    out.add_edge_tagged(p(c[1], UO), p(c[2], OI), tag);
    out.add_edge_tagged(p(c[2], OO), p(f2, 2), tag);
    Ok(out)
}

/// Stabilizes the three ribbon ends of crossing `c` at ports oi, ui and uo.
pub fn stabilize_crossing(d: &RibbonDiagram, c: usize) -> Result<RibbonDiagram> {
    if d.nodes.get(c).is_none_or(|k| k.is_vertex()) {
        return Err(Error::InvalidSite(format!("node {c} is not a crossing")));
    }
    let mut out = d.clone();
    for port in [OI, UI, UO] {
        let (e, _) = out.wiring()?.at(PortRef::new(c, port));
        out = stabilize(&out, e)?;
    }
    Ok(out)
}

/// Stabilizes every crossing of `d`.
pub fn stabilize_all_crossings(d: &RibbonDiagram) -> Result<RibbonDiagram> {
    let crossings: Vec<usize> = d.crossings().collect();
    let mut out = d.clone();
    for c in crossings {
        out = stabilize_crossing(&out, c)?;
    }
    Ok(out)
}
