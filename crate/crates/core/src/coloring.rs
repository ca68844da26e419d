//! Heap colorings of boundary arcs.

use crate::diagram::{BoundaryStructure, RibbonDiagram};
use crate::error::Result;
use crate::heap::FiniteHeap;
use crate::presentation::{count_homomorphisms, presentation_of, tietze_simplify};

/// A color for every boundary arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

/// Arc constraints `after = T(before, first, second)` prepared for search.
#[derive(Debug, Clone)]
pub struct ColoringProblem {
    vars: usize,
    // [before, first, second, after]
    cons: Vec<[usize; 4]>,
    var_cons: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl ColoringProblem {
    pub fn new(bs: &BoundaryStructure) -> Self {
        let cons: Vec<[usize; 4]> = bs.events().map(|e| [e.before, e.first, e.second, e.after]).collect();
        Self::from_constraints(bs.arcs.len(), cons)
    }

    pub fn from_constraints(vars: usize, cons: Vec<[usize; 4]>) -> Self {
        let mut var_cons = vec![Vec::new(); vars];
        for (i, c) in cons.iter().enumerate() {
            for &v in c {
                if !var_cons[v].contains(&i) {
                    var_cons[v].push(i);
                }
            }
        }
        let order = branch_order(vars, &cons, &var_cons);
        Self {
            vars,
            cons,
            var_cons,
            order,
        }
    }

    pub fn variable_count(&self) -> usize {
        self.vars
    }

    /// Visits every coloring in lexicographic order of the branching
    /// sequence; the visitor returns `false` to stop.
    pub fn search(&self, x: &FiniteHeap, mut visit: impl FnMut(&[usize]) -> bool) {
        let mut state = Search {
            p: self,
            x,
            val: vec![usize::MAX; self.vars],
            trail: Vec::new(),
        };
        state.descend(0, &mut visit);
    }

    pub fn count(&self, x: &FiniteHeap) -> u64 {
        let mut n = 0u64;
        self.search(x, |_| {
            n += 1;
            true
        });
        n
    }
}

/// Greedy branching order: each step picks the variable whose value,
/// once known, lets propagation fix the most others.
fn branch_order(vars: usize, cons: &[[usize; 4]], var_cons: &[Vec<usize>]) -> Vec<usize> {
    // closure of `known` after marking `v`, by unit propagation
    let close = |known: &mut Vec<bool>, v: usize, log: &mut Vec<usize>| {
        known[v] = true;
        log.push(v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &ci in &var_cons[u] {
                let unknown: Vec<usize> = cons[ci].iter().copied().filter(|&w| !known[w]).collect();
                if let [w] = unknown[..] {
                    known[w] = true;
                    log.push(w);
                    stack.push(w);
                }
            }
        }
    };
    let mut known = vec![false; vars];
    let mut order = Vec::new();
    while let Some(start) = known.iter().position(|&k| !k) {
        let mut best = (0, start);
        for v in start..vars {
            if known[v] {
                continue;
            }
            let mut log = Vec::new();
            close(&mut known, v, &mut log);
            if log.len() > best.0 {
                best = (log.len(), v);
            }
            for w in log {
                known[w] = false;
            }
        }
        order.push(best.1);
        close(&mut known, best.1, &mut Vec::new());
    }
    order
}

struct Search<'a> {
    p: &'a ColoringProblem,
    x: &'a FiniteHeap,
    val: Vec<usize>,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.val[v] = c;
        self.trail.push(v);
        let mut queue = vec![v];
        while let Some(v) = queue.pop() {
            for &ci in &self.p.var_cons[v] {
                let [b, f, s, a] = self.p.cons[ci];
                let known = [b, f, s, a].map(|u| self.val[u] != usize::MAX);
                let unknown: Vec<usize> = (0..4).filter(|&k| !known[k]).collect();
                let t = |p: usize, q: usize, r: usize| self.x.t(self.val[p], self.val[q], self.val[r]);
                match unknown.as_slice() {
                    [] => {
                        if t(b, f, s) != self.val[a] {
                            return false;
                        }
                    }
                    [k] => {
                        let (target, value) = match k {
                            0 => (b, t(a, s, f)),
                            1 => (f, t(s, a, b)),
                            2 => (s, t(f, b, a)),
                            _ => (a, t(b, f, s)),
                        };
                        self.val[target] = value;
                        self.trail.push(target);
                        queue.push(target);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.val[v] = usize::MAX;
        }
    }

    fn descend(&mut self, mut pos: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        while pos < self.p.order.len() && self.val[self.p.order[pos]] != usize::MAX {
            pos += 1;
        }
        if pos == self.p.order.len() {
            return visit(&self.val);
        }
        let v = self.p.order[pos];
        for c in 0..self.x.size() {
            let mark = self.trail.len();
            let ok = self.assign(v, c);
            let go_on = !ok || self.descend(pos + 1, visit);
            self.undo(mark);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// All colorings of `d` by `x`.
pub fn enumerate_colorings(d: &RibbonDiagram, x: &FiniteHeap) -> Result<Vec<Coloring>> {
    let bs = d.boundary()?;
    let mut out = Vec::new();
    ColoringProblem::new(&bs).search(x, |c| {
        out.push(Coloring { colors: c.to_vec() });
        true
    });
    Ok(out)
}

/// `Col_X(S)`, counted without storing colorings. For a group heap the
/// colorings are the homomorphisms from the arc presentation to the group,
/// which are counted on its Tietze simplification.
pub fn count_colorings(d: &RibbonDiagram, x: &FiniteHeap) -> Result<u64> {
    let bs = d.boundary()?;
    match x.group() {
        Some(g) => {
            let p = presentation_of(&bs);
            let budget = p.generator_count();
            count_homomorphisms(&tietze_simplify(&p, budget), g)
        }
        None => Ok(ColoringProblem::new(&bs).count(x)),
    }
}

/// `Col_X(S)` by direct search over arc colors, for any finite heap.
pub fn count_colorings_by_search(d: &RibbonDiagram, x: &FiniteHeap) -> Result<u64> {
    let bs = d.boundary()?;
    Ok(ColoringProblem::new(&bs).count(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::builders::*;
    use crate::group::FiniteGroup;
    use crate::heap::group_heap;

    fn z(n: usize) -> FiniteHeap {
        group_heap(&FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn annulus_and_disk() {
        assert_eq!(count_colorings(&annulus(), &z(4)).unwrap(), 16);
        assert_eq!(count_colorings(&disk(), &z(4)).unwrap(), 4);
    }

    #[test]
    fn looped_band_counts() {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for m in 1..5 {
            for q in 1..6 {
                let c = count_colorings(&looped_band(m), &z(q)).unwrap();
                assert_eq!(c as usize, q * gcd(m, q), "m={m} q={q}");
            }
        }
    }

    #[test]
    fn group_heap_counts_agree_with_search() {
        let heaps = [z(4), group_heap(&FiniteGroup::dihedral(3).unwrap())];
        let ds = [
            annulus(),
            looped_band(3),
            torus_t1(1),
            torus_t1(2),
            hopf_annuli(),
            three_annuli_chain(),
            punctured_disk(&[2, 3], 1).unwrap(),
        ];
        for x in &heaps {
            for d in &ds {
                assert_eq!(count_colorings(d, x).unwrap(), count_colorings_by_search(d, x).unwrap());
            }
        }
    }

    #[test]
    fn colorings_satisfy_relations() {
        let d = torus_t1(1);
        let x = group_heap(&FiniteGroup::dihedral(3).unwrap());
        let bs = d.boundary().unwrap();
        let cols = enumerate_colorings(&d, &x).unwrap();
        assert!(!cols.is_empty());
        for c in &cols {
            for e in bs.events() {
                let v = &c.colors;
                assert_eq!(v[e.after], x.t(v[e.before], v[e.first], v[e.second]));
            }
        }
        let mut sorted = cols.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), cols.len());
    }
}
