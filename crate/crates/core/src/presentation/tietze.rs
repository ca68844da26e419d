//! Budgeted, deterministic Tietze simplification.

use super::{inverse, GroupPresentation, Word};

/// The default budget is this factor times the generator count.
pub const DEFAULT_BUDGET_FACTOR: usize = 10;

pub(crate) fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub(crate) fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

/// Lexicographically least rotation of `w` or of its inverse.
fn canonical_cyclic(w: &[i32]) -> Word {
    let mut best: Option<Word> = None;
    for cand in [w.to_vec(), inverse(w)] {
        for k in 0..cand.len().max(1) {
            let mut r = cand[k..].to_vec();
            r.extend_from_slice(&cand[..k]);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

fn tidy(p: &mut GroupPresentation) {
    let mut seen = std::collections::HashSet::new();
    let rels = std::mem::take(&mut p.relators);
    for r in rels {
        let r = cyclic_reduce(&r);
        if r.is_empty() {
            continue;
        }
        if seen.insert(canonical_cyclic(&r)) {
            p.relators.push(r);
        }
    }
}

/// A relator index and a generator that occurs exactly once in it.
fn elimination_site(p: &GroupPresentation) -> Option<(usize, i32)> {
    let mut order: Vec<usize> = (0..p.relators.len()).collect();
    order.sort_by_key(|&i| (p.relators[i].len(), i));
    for i in order {
        let r = &p.relators[i];
        let mut count = vec![0usize; p.generators.len()];
        for &l in r {
            count[l.unsigned_abs() as usize - 1] += 1;
        }
        if let Some(g) = (0..count.len()).find(|&g| count[g] == 1) {
            return Some((i, g as i32 + 1));
        }
    }
    None
}

/// Eliminates generators defined by a relator, then reduces. Each of at most
/// `budget` passes removes one generator; the generator count never grows.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> GroupPresentation {
    let mut p = p.clone();
    tidy(&mut p);
    for _ in 0..budget {
        let Some((ri, g)) = elimination_site(&p) else { break };
        let r = p.relators.remove(ri);
        let pos = r.iter().position(|&l| l.abs() == g).unwrap();
        // r rotated to g^ε u = 1, so g = (u)^(-ε)
        let mut u: Word = r[pos + 1..].to_vec();
        u.extend_from_slice(&r[..pos]);
        let eps = r[pos].signum();
        let value = if eps > 0 { inverse(&u) } else { u };
        let value_inv = inverse(&value);
        for rel in &mut p.relators {
            let mut out = Vec::with_capacity(rel.len());
            for &l in rel.iter() {
                if l == g {
                    out.extend_from_slice(&value);
                } else if l == -g {
                    out.extend_from_slice(&value_inv);
                } else {
                    out.push(l);
                }
            }
            *rel = out;
        }
        p.remove_generators(&[g as usize - 1]);
        tidy(&mut p);
    }
    p
}
