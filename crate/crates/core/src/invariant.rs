//! The 2-cocycle invariant: Boltzmann weights summed over colorings.

use std::collections::BTreeMap;
use std::fmt;

use crate::abelian::AbelianGroup;
use crate::cochain::{additive_witness, cocycle_witness, mutual_distributivity_witness, reversible_witness, Cochain2};
use crate::coloring::{Coloring, ColoringProblem};
use crate::diagram::{builders, BoundaryStructure, RibbonDiagram};
use crate::error::{Error, Result};
use crate::heap::FiniteHeap;

/// One cocycle per surface component, all on a common heap and coefficient
/// group. Construction verifies the 2-cocycle condition, reversibility,
/// additivity and pairwise mutual distributivity.
#[derive(Debug, Clone)]
pub struct Decoration {
    cocycles: Vec<Cochain2>,
}

impl Decoration {
    pub fn new(cocycles: Vec<Cochain2>) -> Result<Self> {
        let first = cocycles
            .first()
            .ok_or_else(|| Error::Inadmissible("no cocycles given".into()))?;
        for (i, c) in cocycles.iter().enumerate() {
            if c.heap().op() != first.heap().op() {
                return Err(Error::CarrierMismatch(format!(
                    "cocycle {} lives on another heap",
                    i + 1
                )));
            }
            if c.coeffs() != first.coeffs() {
                return Err(Error::CoefficientMismatch(format!(
                    "cocycle {} has other coefficients",
                    i + 1
                )));
            }
        }
        // identical tables need checking once
        let mut distinct: Vec<(usize, &Cochain2)> = Vec::new();
        for (i, c) in cocycles.iter().enumerate() {
            if !distinct.iter().any(|(_, d)| *d == c) {
                distinct.push((i, c));
            }
        }
        for &(i, c) in &distinct {
            let checks = [
                ("2-cocycle condition", cocycle_witness(c)),
                ("reversibility", reversible_witness(c)),
                ("additivity", additive_witness(c)),
            ];
            for (name, w) in checks {
                if let Some(w) = w {
                    return Err(Error::Inadmissible(format!("cocycle {} fails {name} at {w:?}", i + 1)));
                }
            }
        }
        for (a, &(i, p)) in distinct.iter().enumerate() {
            for &(j, q) in &distinct[a + 1..] {
                let (w1, w2) = mutual_distributivity_witness(p, q)?;
                if let Some(w) = w1.or(w2) {
                    return Err(Error::Inadmissible(format!(
                        "cocycles {} and {} are not mutually distributive at {w:?}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { cocycles })
    }

    /// The same cocycle on `count` components.
    pub fn uniform(psi: &Cochain2, count: usize) -> Result<Self> {
        Self::new(vec![psi.clone(); count.max(1)]).map(|mut d| {
            d.cocycles.truncate(count);
            d
        })
    }

    pub fn cocycles(&self) -> &[Cochain2] {
        &self.cocycles
    }

    pub fn len(&self) -> usize {
        self.cocycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cocycles.is_empty()
    }

    pub fn heap(&self) -> &FiniteHeap {
        self.cocycles[0].heap()
    }

    pub fn coeffs(&self) -> &AbelianGroup {
        self.cocycles[0].coeffs()
    }
}

/// Formal sum of joint terms. A term holds, per surface component, the
/// sorted weights of its boundary components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantValue {
    coeffs: AbelianGroup,
    terms: BTreeMap<Vec<Vec<u32>>, u64>,
}

impl InvariantValue {
    pub fn new(coeffs: AbelianGroup) -> Self {
        Self {
            coeffs,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `mult` copies of a term; factors are sorted here.
    pub fn add_term(&mut self, mut term: Vec<Vec<u32>>, mult: u64) {
        for t in &mut term {
            t.sort_unstable();
        }
        *self.terms.entry(term).or_insert(0) += mult;
    }

    /// `count` times the all-identity term with the given boundary counts.
    pub fn trivial(coeffs: AbelianGroup, boundaries: &[usize], count: u64) -> Self {
        let mut v = Self::new(coeffs);
        if count > 0 {
            v.add_term(boundaries.iter().map(|&b| vec![0; b]).collect(), count);
        }
        v
    }

    pub fn coeffs(&self) -> &AbelianGroup {
        &self.coeffs
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Vec<u32>>, u64> {
        &self.terms
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Per-component projections.
    pub fn componentwise(&self) -> Vec<BTreeMap<Vec<u32>, u64>> {
        let n = self.terms.keys().next().map_or(0, |t| t.len());
        let mut out = vec![BTreeMap::new(); n];
        for (t, &m) in &self.terms {
            for (c, f) in t.iter().enumerate() {
                *out[c].entry(f.clone()).or_insert(0) += m;
            }
        }
        out
    }

    pub fn factor_names(&self, factors: &[u32]) -> Vec<String> {
        factors.iter().map(|&a| self.coeffs.name(a)).collect()
    }

    pub fn merge(&mut self, other: &Self) {
        for (t, &m) in &other.terms {
            *self.terms.entry(t.clone()).or_insert(0) += m;
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, m) in &self.terms {
            write!(f, "{m} ×")?;
            for (c, factors) in t.iter().enumerate() {
                write!(f, " [{}: ({})]", c + 1, self.factor_names(factors).join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Product of `ψ_ℓ(before, first, second)` over the under-passages of one
/// boundary cycle, `ℓ` being the component of the over ribbon.
pub fn boltzmann(bs: &BoundaryStructure, coloring: &Coloring, cycle: usize, decoration: &Decoration) -> u32 {
    cycle_weight(bs, &coloring.colors, cycle, decoration)
}

fn cycle_weight(bs: &BoundaryStructure, c: &[usize], cycle: usize, dec: &Decoration) -> u32 {
    let a = dec.coeffs();
    bs.cycles[cycle].events.iter().fold(0, |acc, e| {
        let psi = &dec.cocycles[e.over_component];
        a.add(acc, psi.eval(c[e.before], c[e.first], c[e.second]))
    })
}

fn joint_term(bs: &BoundaryStructure, c: &[usize], dec: &Decoration) -> Vec<Vec<u32>> {
    bs.component_cycles
        .iter()
        .map(|cycles| cycles.iter().map(|&k| cycle_weight(bs, c, k, dec)).collect())
        .collect()
}

fn check_decoration(bs: &BoundaryStructure, dec: &Decoration) -> Result<()> {
    if dec.len() != bs.component_count() {
        return Err(Error::Inadmissible(format!(
            "diagram has {} components but {} cocycles were given",
            bs.component_count(),
            dec.len()
        )));
    }
    Ok(())
}

/// `Ψ(S)`: the sum over all colorings of the joint term.
pub fn cocycle_invariant(d: &RibbonDiagram, dec: &Decoration) -> Result<InvariantValue> {
    let bs = d.boundary()?;
    check_decoration(&bs, dec)?;
    let mut v = InvariantValue::new(dec.coeffs().clone());
    ColoringProblem::new(&bs).search(dec.heap(), |c| {
        v.add_term(joint_term(&bs, c, dec), 1);
        true
    });
    Ok(v)
}

/// Outcome of comparing a boundary connected sum with its parts.
#[derive(Debug, Clone)]
pub struct ConnectedSumReport {
    /// `Ψ` of the sum, computed directly.
    pub direct: InvariantValue,
    /// The glued product of the parts' invariants.
    pub product: InvariantValue,
    /// Colorings of the sum whose two glued arcs differ in color.
    pub residual_count: u64,
    pub residual: InvariantValue,
    /// `direct = product + residual`.
    pub formula_holds: bool,
}

/// Glues boundary `b1` of `d1` to boundary `b2` of `d2` and checks the
/// decomposition of the invariant. The sum is decorated by `dec1` followed by
/// `dec2` without the glued component, whose cocycles must agree.
pub fn connected_sum_check(
    d1: &RibbonDiagram,
    b1: usize,
    dec1: &Decoration,
    d2: &RibbonDiagram,
    b2: usize,
    dec2: &Decoration,
) -> Result<ConnectedSumReport> {
    let bs1 = d1.boundary()?;
    let bs2 = d2.boundary()?;
    check_decoration(&bs1, dec1)?;
    check_decoration(&bs2, dec2)?;
    let cyc1 = bs1
        .cycles
        .get(b1)
        .ok_or_else(|| Error::InvalidSite(format!("no boundary component {b1}")))?;
    let cyc2 = bs2
        .cycles
        .get(b2)
        .ok_or_else(|| Error::InvalidSite(format!("no boundary component {b2}")))?;
    let (r, s) = (cyc1.component, cyc2.component);
    if dec1.cocycles[r] != dec2.cocycles[s] {
        return Err(Error::Inadmissible("glued components carry different cocycles".into()));
    }
    if dec1.heap().op() != dec2.heap().op() || dec1.coeffs() != dec2.coeffs() {
        return Err(Error::CarrierMismatch(
            "decorations use different heaps or coefficients".into(),
        ));
    }
    let mut sum_cocycles = dec1.cocycles.clone();
    sum_cocycles.extend(
        dec2.cocycles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != s)
            .map(|(_, c)| c.clone()),
    );
    let dec = Decoration { cocycles: sum_cocycles };
    let x = dec.heap();
    let a = dec.coeffs();

    // the glued arcs of the parts
    let arc1 = cyc1.arcs[0];
    let arc2 = cyc2.arcs[0];
    let (sum, sites) = builders::connected_sum_sites(d1, b1, d2, b2)?;
    let bs = sum.boundary()?;
    check_decoration(&bs, &dec)?;
    let halves = sites.map(|(p, q)| (bs.arc_of_strand(p), bs.arc_of_strand(q)));

    let mut direct = InvariantValue::new(a.clone());
    let mut residual = InvariantValue::new(a.clone());
    let mut residual_count = 0;
    ColoringProblem::new(&bs).search(x, |c| {
        let term = joint_term(&bs, c, &dec);
        if let Some((h1, h2)) = halves {
            if c[h1] != c[h2] {
                residual_count += 1;
                residual.add_term(term.clone(), 1);
            }
        }
        direct.add_term(term, 1);
        true
    });

    // glued product of the parts
    let mut by_color: Vec<Vec<Vec<Vec<u32>>>> = vec![Vec::new(); x.size()];
    ColoringProblem::new(&bs2).search(x, |c| {
        by_color[c[arc2]].push(
            bs2.component_cycles
                .iter()
                .map(|cs| cs.iter().map(|&k| cycle_weight(&bs2, c, k, dec2)).collect())
                .collect(),
        );
        true
    });
    let pos2 = bs2.component_cycles[s].iter().position(|&k| k == b2).unwrap();
    let pos1 = bs1.component_cycles[r].iter().position(|&k| k == b1).unwrap();
    let mut product = InvariantValue::new(a.clone());
    ColoringProblem::new(&bs1).search(x, |c| {
        let t1: Vec<Vec<u32>> = bs1
            .component_cycles
            .iter()
            .map(|cs| cs.iter().map(|&k| cycle_weight(&bs1, c, k, dec1)).collect())
            .collect();
        for t2 in &by_color[c[arc1]] {
            let mut term = t1.clone();
            let glued = &mut term[r];
            glued[pos1] = a.add(glued[pos1], t2[s][pos2]);
            glued.extend(t2[s].iter().enumerate().filter(|&(k, _)| k != pos2).map(|(_, &w)| w));
            term.extend(t2.iter().enumerate().filter(|&(k, _)| k != s).map(|(_, t)| t.clone()));
            product.add_term(term, 1);
        }
        true
    });

    let mut expected = product.clone();
    expected.merge(&residual);
    Ok(ConnectedSumReport {
        formula_holds: expected == direct,
        direct,
        product,
        residual_count,
        residual,
    })
}
