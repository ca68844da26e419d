//! Surfaces whose fundamental heap contains a prescribed group as a free
//! factor.

use std::collections::{HashMap, VecDeque};

use super::builders::{branch_off, stabilize};
use super::{PortRef, RibbonDiagram, StrandId, OI, OO, UI, UO};
use crate::error::{Error, Result};
use crate::presentation::tietze::{cyclic_reduce, free_reduce};
use crate::presentation::GroupPresentation;

/// Attaches a band from strand `s1` to strand `s2` (on different edges) that
/// passes over every ribbon it meets. The route crosses as few edges as
/// possible. Returns the diagram and the index of the band's first edge.
pub fn route_band_over(d: &RibbonDiagram, s1: StrandId, s2: StrandId) -> Result<(RibbonDiagram, usize)> {
    let ne = d.edges.len();
    if s1 / 2 >= ne || s2 / 2 >= ne {
        return Err(Error::InvalidSite(format!("no strand {}", s1.max(s2))));
    }
    if s1 / 2 == s2 / 2 {
        return Err(Error::InvalidSite("band feet must lie on different edges".into()));
    }
    for s in [s1, s2] {
        if d.edges[s / 2].ends.is_none() {
            return Err(Error::InvalidSite(format!("strand {s} lies on a free loop")));
        }
    }
    let path = face_path(d, s1, s2)?;
    let mut out = d.clone();
    let mut crossings = Vec::with_capacity(path.len());
    for (e, from) in path {
        let [a, b] = out.edges[e].ends.unwrap();
        let tag = out.edges[e].tag;
        let x = out.add_crossing(0);
        // the band goes from the left of the dart to its right
        if from == 0 {
            out.edges[e].ends = Some([a, PortRef::new(x, UI)]);
            out.add_edge_tagged(PortRef::new(x, UO), b, tag);
        } else {
            out.edges[e].ends = Some([a, PortRef::new(x, UO)]);
            out.add_edge_tagged(PortRef::new(x, UI), b, tag);
        }
        crossings.push(x);
    }
    let tag = out.edges.iter().map(|e| e.tag).max().unwrap_or(0) + 1;
    let f1 = branch_off(&mut out, s1)?;
    let f2 = branch_off(&mut out, s2)?;
    let first = out.edges.len();
    let mut prev = f1;
    for x in crossings {
        out.add_edge_tagged(prev, PortRef::new(x, OI), tag);
        prev = PortRef::new(x, OO);
    }
    out.add_edge_tagged(prev, f2, tag);
    out.normalize_tags();
    Ok((out, first))
}

/// Cuts the edges of left strands `s1` and `s2` and rejoins them by two
/// parallel strips that pass over every ribbon on the way. Two annuli
/// become one whose boundary circles join left to left and right to right.
fn band_sum(d: &RibbonDiagram, s1: StrandId, s2: StrandId) -> Result<RibbonDiagram> {
    let path = face_path(d, s1, s2)?;
    let mut out = d.clone();
    let (e1, e2) = (s1 / 2, s2 / 2);
    let [a1, b1] = out.edges[e1].ends.unwrap();
    let [a2, b2] = out.edges[e2].ends.unwrap();
    let tag = out.edges[e1].tag;
    // travelling along the path, the strip from a1 is on the left
    let mut left = Vec::with_capacity(path.len());
    let mut right = Vec::with_capacity(path.len());
    for (e, from) in path {
        let [a, b] = out.edges[e].ends.unwrap();
        let etag = out.edges[e].tag;
        let xl = out.add_crossing(0);
        let xr = out.add_crossing(0);
        // the dart meets the right strip first
        let (first, second) = if from == 0 { (xr, xl) } else { (xl, xr) };
        let (pin, pout) = if from == 0 { (UI, UO) } else { (UO, UI) };
        out.edges[e].ends = Some([a, PortRef::new(first, pin)]);
        out.add_edge_tagged(PortRef::new(first, pout), PortRef::new(second, pin), etag);
        out.add_edge_tagged(PortRef::new(second, pout), b, etag);
        left.push(xl);
        right.push(xr);
    }
    let chain = |out: &mut RibbonDiagram, start: PortRef, xs: &[usize], end: PortRef, keep: Option<usize>| {
        let mut prev = start;
        let mut ends = Vec::new();
        for &x in xs {
            ends.push([prev, PortRef::new(x, OI)]);
            prev = PortRef::new(x, OO);
        }
        ends.push([prev, end]);
        for (i, pair) in ends.into_iter().enumerate() {
            match keep {
                Some(e) if i == 0 => out.edges[e].ends = Some(pair),
                _ => {
                    out.add_edge_tagged(pair[0], pair[1], tag);
                }
            }
        }
    };
    chain(&mut out, a1, &left, b2, Some(e1));
    out.edges[e2].ends = None;
    chain(&mut out, b1, &right, a2, Some(e2));
    out.normalize_tags();
    Ok(out)
}

/// Darts `(edge, from)` crossed on a shortest route through the faces from
/// the face beside `s1` to the face beside `s2`, never crossing the edges
/// of `s1` and `s2` themselves. Feet in different projection components
/// need no crossings.
fn face_path(d: &RibbonDiagram, s1: StrandId, s2: StrandId) -> Result<Vec<(usize, u8)>> {
    let w = d.wiring()?;
    let faces = d.faces(&w);
    let mut face_of: HashMap<PortRef, usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &p in f {
            face_of.insert(p, i);
        }
    }
    // strand 2e+1 sees the face on the left of end 0 → end 1
    let dart_face = |e: usize, from: u8| {
        let leave = d.edges[e].ends.unwrap()[from as usize];
        face_of[&d.ccw_next(leave)]
    };
    let strand_face = |s: StrandId| dart_face(s / 2, if s % 2 == 1 { 0 } else { 1 });
    let (start, goal) = (strand_face(s1), strand_face(s2));
    let mut prev: Vec<Option<(usize, usize, u8)>> = vec![None; faces.len()];
    let mut seen = vec![false; faces.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(f) = queue.pop_front() {
        if f == goal {
            break;
        }
        for &arrival in &faces[f] {
            let leave = d.cw_next(arrival);
            let (e, end) = w.at(leave);
            if e == s1 / 2 || e == s2 / 2 {
                continue;
            }
            let g = dart_face(e, 1 - end);
            if !seen[g] {
                seen[g] = true;
                prev[g] = Some((f, e, end));
                queue.push_back(g);
            }
        }
    }
    if !seen[goal] {
        // separate pieces of the projection: place one inside the other's face
        return Ok(Vec::new());
    }
    let mut path = Vec::new();
    let mut cur = goal;
    while let Some((f, e, end)) = prev[cur] {
        path.push((e, end));
        cur = f;
    }
    path.reverse();
    Ok(path)
}

/// Threads a free annulus around edge `e` with `|twists|` full twists of a
/// two-strand braid, signed by the crossing side. Returns the diagram, the
/// edge continuing `e` past the clasp, and the annulus edge that closes the
/// braid.
fn clasp(d: &RibbonDiagram, e: usize, twists: i64) -> (RibbonDiagram, usize, usize) {
    let mut out = d.clone();
    let tag = out.edges[e].tag;
    let ring_tag = out.edges.iter().map(|x| x.tag).max().unwrap_or(0) + 1;
    let side = if twists > 0 { 0 } else { 1 };
    let n = 2 * twists.unsigned_abs() as usize;
    let xs: Vec<usize> = (0..n).map(|_| out.add_crossing(side)).collect();
    let [a, b] = out.edges[e].ends.unwrap();
    // e is over at even positions, the annulus at odd ones
    let pair = |i: usize, on_e: bool| {
        if i.is_multiple_of(2) == on_e {
            (OI, OO)
        } else {
            (UI, UO)
        }
    };
    let mut prev = a;
    for (i, &x) in xs.iter().enumerate() {
        let (pin, pout) = pair(i, true);
        if i == 0 {
            out.edges[e].ends = Some([prev, PortRef::new(x, pin)]);
        } else {
            out.add_edge_tagged(prev, PortRef::new(x, pin), tag);
        }
        prev = PortRef::new(x, pout);
    }
    let rest = out.add_edge_tagged(prev, b, tag);
    let mut ring = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        let (pin, pout) = pair(i, false);
        ring.push((PortRef::new(x, pin), PortRef::new(x, pout)));
    }
    for w in ring.windows(2) {
        out.add_edge_tagged(w[0].1, w[1].0, ring_tag);
    }
    let closing = out.add_edge_tagged(ring[n - 1].1, ring[0].0, ring_tag);
    (out, rest, closing)
}

/// A realizing surface and the rank of the free factor it adds.
#[derive(Debug, Clone)]
pub struct Realization {
    pub diagram: RibbonDiagram,
    /// Number of free factors `k`: generators plus relators plus one.
    pub free_factors: usize,
}

/// Builds a connected surface whose fundamental heap is `F_k * G` for the
/// group `G` presented by `p`.
///
/// Each relator gets a stabilized ring carrying one clasped annulus per
/// run of equal letters, twisted as often as the run's exponent. The
/// annuli of one generator are band-summed into a single annulus, which is
/// tied to the base by a stabilized band passing over everything. Unused
/// generators get an unclasped annulus.
pub fn realize_group(p: &GroupPresentation) -> Result<Realization> {
    let n = p.generator_count();
    if p.relators.is_empty() {
        return Err(Error::EmptyPresentation);
    }
    let relators: Vec<Vec<i32>> = p.relators.iter().map(|r| cyclic_reduce(&free_reduce(r))).collect();
    let m = relators.len();

    // rings first: each is a stabilized loop followed by its clasps
    let mut d = RibbonDiagram::new();
    let mut base: Vec<usize> = Vec::new();
    // (closing edge of the annulus, generator)
    let mut annuli: Vec<(usize, usize)> = Vec::new();
    for j in 0..m {
        let mut ring = RibbonDiagram::new();
        let e = ring.add_loop();
        ring = stabilize(&ring, e)?;
        let mut cur = e;
        let mut local = Vec::new();
        if let Some(r) = relators.get(j) {
            for (g, exp) in runs(r) {
                let (next, rest, closing) = clasp(&ring, cur, exp);
                ring = next;
                local.push((closing, g));
                cur = rest;
            }
        }
        let shift = d.edges.len();
        d = d.disjoint_union(&ring);
        base.push(e + shift);
        annuli.extend(local.into_iter().map(|(c, g)| (c + shift, g)));
    }
    for g in 0..n {
        if !annuli.iter().any(|&(_, h)| h == g) {
            let shift = d.edges.len();
            d = d.disjoint_union(&kinked_ring());
            annuli.push((shift, g));
        }
    }
    // all annuli of one generator become a single annulus
    let mut first_of: Vec<Option<usize>> = vec![None; n];
    for &(closing, g) in &annuli {
        match first_of[g] {
            None => first_of[g] = Some(closing),
            Some(c0) => d = band_sum(&d, 2 * c0 + 1, 2 * closing + 1)?,
        }
    }
    let x0 = 2 * base[0] + 1;
    for &b in &base[1..] {
        d = route_band_over(&d, x0, 2 * b + 1)?.0;
    }
    for c in first_of.into_iter().flatten() {
        let (next, band) = route_band_over(&d, 2 * c + 1, x0)?;
        d = stabilize(&next, band)?;
    }
    d.validate()?;
    Ok(Realization {
        diagram: d,
        free_factors: n + m + 1,
    })
}

/// An annulus drawn with two opposite kinks, so that it has edges to
/// attach bands to.
fn kinked_ring() -> RibbonDiagram {
    let mut d = RibbonDiagram::new();
    let k1 = d.add_crossing(0);
    let k2 = d.add_crossing(1);
    let p = PortRef::new;
    d.add_edge(p(k2, UO), p(k1, OI));
    d.add_edge_tagged(p(k1, OO), p(k1, UI), 0);
    d.add_edge_tagged(p(k1, UO), p(k2, OI), 0);
    d.add_edge_tagged(p(k2, OO), p(k2, UI), 0);
    d
}

/// Maximal runs of one generator: `(generator index, signed length)`.
fn runs(w: &[i32]) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for &l in w {
        let g = l.unsigned_abs() as usize - 1;
        let s = l.signum() as i64;
        match out.last_mut() {
            Some((h, e)) if *h == g && e.signum() == s => *e += s,
            _ => out.push((g, s)),
        }
    }
    out
}
