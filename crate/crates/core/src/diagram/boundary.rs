//! Boundary traversal.
//!
//! Strand `2e + k` runs along edge `e` on the side that travels into end `k`
//! with the surface on its right. At a vertex the boundary turns to the
//! clockwise-previous port; at a crossing it passes straight through. Under
//! passages cut the boundary into arcs.

use super::{ComponentSummary, NodeKind, PortRef, RibbonDiagram, TopologySummary, Wiring};
use super::{OI, OO, UI, UO};
use crate::error::{Error, Result};

pub type StrandId = usize;

/// What happens at the end of a strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Passage {
    Vertex {
        node: usize,
    },
    /// Along the over ribbon; `left` is the strand running `oi → oo`.
    Over {
        crossing: usize,
        left: bool,
    },
    /// Under the over ribbon; `forward` runs `ui → uo`.
    Under {
        crossing: usize,
        forward: bool,
    },
    /// Free loops close on themselves.
    Loop,
}

/// An under-passage: `after = T(before, first, second)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    pub crossing: usize,
    pub forward: bool,
    pub before: usize,
    pub after: usize,
    pub first: usize,
    pub second: usize,
    /// Surface component of the over ribbon.
    pub over_component: usize,
}

/// A maximal boundary segment between under-passages.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    pub strands: Vec<StrandId>,
    pub cycle: usize,
}

/// One boundary curve: `arcs[j]` passes under at `events[j]` into `arcs[j + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryCycle {
    pub component: usize,
    pub arcs: Vec<usize>,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryStructure {
    pub arcs: Vec<Arc>,
    pub cycles: Vec<BoundaryCycle>,
    /// Cycle indices per surface component.
    pub component_cycles: Vec<Vec<usize>>,
    strand_arc: Vec<usize>,
    summary: TopologySummary,
}

fn strand_into(w: &Wiring, p: PortRef) -> StrandId {
    let (e, end) = w.at(p);
    2 * e + end as usize
}

fn strand_away(w: &Wiring, p: PortRef) -> StrandId {
    let (e, end) = w.at(p);
    2 * e + 1 - end as usize
}

impl BoundaryStructure {
    pub(crate) fn compute(d: &RibbonDiagram) -> Result<Self> {
        let w = d.wiring()?;
        let comps = d.components(&w);
        let ns = 2 * d.edges.len();
        let mut visited = vec![false; ns];
        let mut walks: Vec<(Vec<StrandId>, Vec<Passage>)> = Vec::new();
        for start in 0..ns {
            if visited[start] {
                continue;
            }
            let (mut strands, mut passages) = (Vec::new(), Vec::new());
            let mut s = start;
            while !visited[s] {
                visited[s] = true;
                strands.push(s);
                let (e, end) = (s / 2, (s % 2));
                let Some(ends) = d.edges[e].ends else {
                    passages.push(Passage::Loop);
                    break;
                };
                let p = ends[end];
                let (exit, passage) = match d.nodes[p.node] {
                    NodeKind::Vertex => ((p.port + 2) % 3, Passage::Vertex { node: p.node }),
                    NodeKind::Crossing { .. } => {
                        let c = p.node;
                        match p.port {
                            OI => (
                                OO,
                                Passage::Over {
                                    crossing: c,
                                    left: true,
                                },
                            ),
                            OO => (
                                OI,
                                Passage::Over {
                                    crossing: c,
                                    left: false,
                                },
                            ),
                            UI => (
                                UO,
                                Passage::Under {
                                    crossing: c,
                                    forward: true,
                                },
                            ),
                            _ => (
                                UI,
                                Passage::Under {
                                    crossing: c,
                                    forward: false,
                                },
                            ),
                        }
                    }
                };
                passages.push(passage);
                s = strand_away(&w, PortRef::new(p.node, exit));
            }
            walks.push((strands, passages));
        }

        let mut arcs: Vec<Arc> = Vec::new();
        let mut strand_arc = vec![usize::MAX; ns];
        let mut cycles: Vec<BoundaryCycle> = Vec::new();
        let mut cuts: Vec<Vec<usize>> = Vec::new();
        for (ci, (strands, passages)) in walks.iter().enumerate() {
            let under: Vec<usize> = (0..passages.len())
                .filter(|&i| matches!(passages[i], Passage::Under { .. }))
                .collect();
            let mut segs: Vec<Vec<StrandId>> = Vec::new();
            if under.is_empty() {
                segs.push(strands.clone());
            } else {
                let last = *under.last().unwrap();
                let mut first: Vec<StrandId> = strands[last + 1..].to_vec();
                first.extend_from_slice(&strands[..=under[0]]);
                segs.push(first);
                for win in under.windows(2) {
                    segs.push(strands[win[0] + 1..=win[1]].to_vec());
                }
            }
            let mut ids = Vec::new();
            for seg in segs {
                let id = arcs.len();
                for &s in &seg {
                    strand_arc[s] = id;
                }
                arcs.push(Arc {
                    strands: seg,
                    cycle: ci,
                });
                ids.push(id);
            }
            cycles.push(BoundaryCycle {
                component: comps.edge_comp[strands[0] / 2],
                arcs: ids,
                events: Vec::new(),
            });
            cuts.push(under);
        }

        for (ci, (_, passages)) in walks.iter().enumerate() {
            let m = cycles[ci].arcs.len();
            let mut events = Vec::new();
            for (j, &u) in cuts[ci].iter().enumerate() {
                let Passage::Under { crossing, forward } = passages[u] else {
                    unreachable!()
                };
                let NodeKind::Crossing { side } = d.nodes[crossing] else {
                    unreachable!()
                };
                let left = strand_arc[strand_into(&w, PortRef::new(crossing, OI))];
                let right = strand_arc[strand_into(&w, PortRef::new(crossing, OO))];
                let (first, second) = if (side == 0) == forward {
                    (right, left)
                } else {
                    (left, right)
                };
                let (inp, outp) = if forward { (UI, UO) } else { (UO, UI) };
                let before = strand_arc[strand_into(&w, PortRef::new(crossing, inp))];
                let after = strand_arc[strand_away(&w, PortRef::new(crossing, outp))];
                debug_assert_eq!(before, cycles[ci].arcs[j]);
                debug_assert_eq!(after, cycles[ci].arcs[(j + 1) % m]);
                events.push(Event {
                    crossing,
                    forward,
                    before,
                    after,
                    first,
                    second,
                    over_component: comps.edge_comp[w.at(PortRef::new(crossing, OI)).0],
                });
            }
            cycles[ci].events = events;
        }

        for &c in &comps.disk_comp {
            let id = arcs.len();
            arcs.push(Arc {
                strands: Vec::new(),
                cycle: cycles.len(),
            });
            cycles.push(BoundaryCycle {
                component: c,
                arcs: vec![id],
                events: Vec::new(),
            });
        }

        let mut component_cycles = vec![Vec::new(); comps.count];
        for (i, c) in cycles.iter().enumerate() {
            component_cycles[c.component].push(i);
        }

        let mut verts = vec![0i64; comps.count];
        for (n, k) in d.nodes.iter().enumerate() {
            if k.is_vertex() {
                verts[comps.edge_comp[w.at(PortRef::new(n, 0)).0]] += 1;
            }
        }
        let mut is_disk = vec![false; comps.count];
        for &c in &comps.disk_comp {
            is_disk[c] = true;
        }
        let mut components = Vec::new();
        for c in 0..comps.count {
            let euler = if is_disk[c] { 1 } else { -verts[c] / 2 };
            let b = component_cycles[c].len();
            let twice_g = 2 - euler - b as i64;
            if twice_g < 0 || twice_g % 2 != 0 {
                return Err(Error::InvalidDiagram(format!(
                    "component {c} has χ = {euler} and b = {b}, giving a non-integral or negative genus"
                )));
            }
            components.push(ComponentSummary {
                euler,
                boundaries: b,
                genus: (twice_g / 2) as usize,
            });
        }

        Ok(Self {
            arcs,
            cycles,
            component_cycles,
            strand_arc,
            summary: TopologySummary { components },
        })
    }

    pub fn summary(&self) -> &TopologySummary {
        &self.summary
    }

    pub fn arc_of_strand(&self, s: StrandId) -> usize {
        self.strand_arc[s]
    }

    pub fn events(&self) -> impl Iterator<Item = &Event> {
        self.cycles.iter().flat_map(|c| c.events.iter())
    }

    pub fn component_count(&self) -> usize {
        self.component_cycles.len()
    }
}
