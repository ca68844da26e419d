//! Group presentations: extraction from diagrams, Tietze moves, abelianization.

mod smith;
pub(crate) mod tietze;

pub use smith::{smith_invariants, AbelianInvariants};
pub use tietze::{tietze_simplify, DEFAULT_BUDGET_FACTOR};

use std::fmt;

use crate::diagram::{BoundaryStructure, RibbonDiagram};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Letter `±(i + 1)` stands for generator `i` or its inverse.
pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// Default generator names `a … z, a1 … z1, …`.
pub fn default_name(i: usize) -> String {
    let c = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => c.to_string(),
        k => format!("{c}{k}"),
    }
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len() as i32;
        for r in &relators {
            if let Some(&l) = r.iter().find(|&&l| l == 0 || l.abs() > n) {
                return Err(Error::InvalidSite(format!("relator letter {l} out of range")));
            }
        }
        Ok(Self { generators, relators })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            generators: (0..rank).map(default_name).collect(),
            relators: Vec::new(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Generators absent from every relator.
    pub fn unused_generators(&self) -> Vec<usize> {
        let mut used = vec![false; self.generators.len()];
        for r in &self.relators {
            for &l in r {
                used[l.unsigned_abs() as usize - 1] = true;
            }
        }
        (0..used.len()).filter(|&i| !used[i]).collect()
    }

    /// Drops the given generators (which must not occur in any relator).
    pub(crate) fn remove_generators(&mut self, drop: &[usize]) {
        let mut map = vec![0i32; self.generators.len()];
        let mut kept = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if drop.contains(&i) {
                continue;
            }
            kept.push(g.clone());
            map[i] = kept.len() as i32;
        }
        for r in &mut self.relators {
            for l in r.iter_mut() {
                let m = map[l.unsigned_abs() as usize - 1];
                debug_assert!(m != 0);
                *l = m * l.signum();
            }
        }
        self.generators = kept;
    }

    pub fn word_to_string(&self, w: &[i32]) -> String {
        w.iter()
            .map(|&l| {
                let name = &self.generators[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    name.clone()
                } else {
                    name.to_uppercase()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `gens: a b c` followed by `rel: a b A` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, 1, "expected `gens:` or `rel:`"))?;
            let col0 = raw.find(':').unwrap_or(0) + 2;
            match head.trim() {
                "gens" => {
                    if gens.is_some() {
                        return Err(Error::parse(ln, 1, "duplicate `gens:` line"));
                    }
                    let mut names = Vec::new();
                    for g in rest.split_whitespace() {
                        if g.chars().any(|c| c.is_uppercase()) || !g.chars().next().unwrap().is_alphabetic() {
                            let col = col0 + rest.find(g).unwrap_or(0);
                            return Err(Error::parse(
                                ln,
                                col,
                                format!("generator `{g}` must be lowercase and start with a letter"),
                            ));
                        }
                        if names.contains(&g.to_string()) {
                            return Err(Error::parse(ln, col0, format!("duplicate generator `{g}`")));
                        }
                        names.push(g.to_string());
                    }
                    gens = Some(names);
                }
                "rel" => {
                    let names = gens
                        .as_ref()
                        .ok_or_else(|| Error::parse(ln, 1, "`rel:` before `gens:`"))?;
                    let mut word = Vec::new();
                    let mut offset = 0;
                    for tok in rest.split(' ') {
                        if !tok.is_empty() {
                            let lower = tok.to_lowercase();
                            let idx =
                                names.iter().position(|n| *n == lower).ok_or_else(|| {
                                    Error::parse(ln, col0 + offset, format!("unknown generator `{tok}`"))
                                })? as i32;
                            let inv = tok.chars().next().unwrap().is_uppercase();
                            word.push(if inv { -(idx + 1) } else { idx + 1 });
                        }
                        offset += tok.len() + 1;
                    }
                    rels.push(word);
                }
                other => {
                    return Err(Error::parse(ln, 1, format!("unknown line kind `{other}`")));
                }
            }
        }
        let generators = gens.ok_or_else(|| Error::parse(1, 1, "missing `gens:` line"))?;
        Self::new(generators, rels)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            let w = self.word_to_string(r);
            if w.is_empty() {
                writeln!(f, "rel:")?;
            } else {
                writeln!(f, "rel: {w}")?;
            }
        }
        Ok(())
    }
}

/// One generator per boundary arc (isolated disks included) and one relator
/// `after · second⁻¹ · first · before⁻¹` per under-passage.
pub fn fundamental_presentation(d: &RibbonDiagram) -> Result<GroupPresentation> {
    let bs = d.boundary()?;
    Ok(presentation_of(&bs))
}

pub(crate) fn presentation_of(bs: &BoundaryStructure) -> GroupPresentation {
    let generators = (0..bs.arcs.len()).map(default_name).collect();
    let g = |a: usize| a as i32 + 1;
    let relators = bs
        .events()
        .map(|e| vec![g(e.after), -g(e.second), g(e.first), -g(e.before)])
        .collect();
    GroupPresentation { generators, relators }
}

/// Homomorphisms from the presented group to `g`. Generators are assigned
/// in order of first use and each relator is checked as soon as its last
/// generator has a value.
pub fn count_homomorphisms(p: &GroupPresentation, g: &FiniteGroup) -> Result<u64> {
    let n = p.generator_count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut pos = vec![usize::MAX; n];
    let mut by_len: Vec<&Word> = p.relators.iter().collect();
    by_len.sort_by_key(|r| r.len());
    for r in &by_len {
        for &l in r.iter() {
            let x = l.unsigned_abs() as usize - 1;
            if pos[x] == usize::MAX {
                pos[x] = order.len();
                order.push(x);
            }
        }
    }
    let free = n - order.len();
    // relators to check once position i is assigned
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); order.len()];
    for r in by_len {
        if let Some(last) = r.iter().map(|&l| pos[l.unsigned_abs() as usize - 1]).max() {
            due[last].push(r);
        }
    }
    fn go(i: usize, order: &[usize], due: &[Vec<&Word>], g: &FiniteGroup, val: &mut [usize]) -> Option<u64> {
        if i == order.len() {
            return Some(1);
        }
        let mut total = 0u64;
        for c in 0..g.order() {
            val[order[i]] = c;
            let ok = due[i].iter().all(|r| {
                let v = r.iter().fold(g.identity(), |acc, &l| {
                    let x = val[l.unsigned_abs() as usize - 1];
                    g.mul(acc, if l > 0 { x } else { g.inv(x) })
                });
                v == g.identity()
            });
            if ok {
                total = total.checked_add(go(i + 1, order, due, g, val)?)?;
            }
        }
        Some(total)
    }
    let mut val = vec![0usize; n];
    let bound = go(0, &order, &due, g, &mut val).ok_or(Error::CountOverflow)?;
    (0..free)
        .try_fold(bound, |acc, _| acc.checked_mul(g.order() as u64))
        .ok_or(Error::CountOverflow)
}

/// Counts and removes generators that occur in no relator.
pub fn split_free_factor(p: &GroupPresentation) -> (usize, GroupPresentation) {
    let unused = p.unused_generators();
    let mut reduced = p.clone();
    reduced.remove_generators(&unused);
    (unused.len(), reduced)
}

/// Exponent-sum matrix reduced to Smith normal form.
pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    let n = p.generator_count();
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for &l in r {
                row[l.unsigned_abs() as usize - 1] += l.signum() as i64;
            }
            row
        })
        .collect();
    smith_invariants(&rows, n)
}
