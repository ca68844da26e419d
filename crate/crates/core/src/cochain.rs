//! Ternary 2-cochains `X³ → A`, their predicates and the standard families.

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::heap::{group_heap, search, FiniteHeap, TernaryOp, Witness, MAX_CARRIER};

/// A dense 2-cochain on a finite heap with coefficients in a finite abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    heap: FiniteHeap,
    coeffs: AbelianGroup,
    table: Vec<u32>,
}

impl Cochain2 {
    pub fn from_fn(heap: &FiniteHeap, coeffs: &AbelianGroup, f: impl Fn(usize, usize, usize) -> u32) -> Result<Self> {
        let n = heap.size();
        let mut table = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = f(x, y, z);
                    if v as usize >= coeffs.order() {
                        return Err(Error::CoefficientMismatch(format!(
                            "value {v} at ({x},{y},{z}) outside a group of order {}",
                            coeffs.order()
                        )));
                    }
                    table.push(v);
                }
            }
        }
        Ok(Self {
            heap: heap.clone(),
            coeffs: coeffs.clone(),
            table,
        })
    }

    pub fn zero(heap: &FiniteHeap, coeffs: &AbelianGroup) -> Self {
        Self::from_fn(heap, coeffs, |_, _, _| 0).expect("zero is in every group")
    }

    pub fn heap(&self) -> &FiniteHeap {
        &self.heap
    }

    pub fn coeffs(&self) -> &AbelianGroup {
        &self.coeffs
    }

    #[inline]
    pub fn eval(&self, x: usize, y: usize, z: usize) -> u32 {
        let n = self.heap.size();
        self.table[(x * n + y) * n + z]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.heap.op() != other.heap.op() {
            return Err(Error::CarrierMismatch("cochains live on different heaps".into()));
        }
        if self.coeffs != other.coeffs {
            return Err(Error::CoefficientMismatch(
                "cochains have different coefficient groups".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a = &self.coeffs;
        Ok(Self {
            heap: self.heap.clone(),
            coeffs: a.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&p, &q)| a.add(p, q))
                .collect(),
        })
    }

    pub fn scale(&self, k: i64) -> Self {
        let a = &self.coeffs;
        Self {
            heap: self.heap.clone(),
            coeffs: a.clone(),
            table: self.table.iter().map(|&p| a.scale(p, k)).collect(),
        }
    }

    /// Parses `x y z value` lines; unlisted triples are the identity.
    pub fn parse_table(text: &str, heap: &FiniteHeap, coeffs: &AbelianGroup) -> Result<Self> {
        let n = heap.size();
        let mut table = vec![0u32; n * n * n];
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums = parse_row(line, ln + 1)?;
            if nums.len() != 4 {
                return Err(Error::parse(ln + 1, 1, "expected `x y z value`"));
            }
            if nums[..3].iter().any(|&v| v >= n) {
                return Err(Error::parse(ln + 1, 1, "element index out of range"));
            }
            if nums[3] >= coeffs.order() {
                return Err(Error::parse(ln + 1, 1, "coefficient index out of range"));
            }
            table[(nums[0] * n + nums[1]) * n + nums[2]] = nums[3] as u32;
        }
        Ok(Self {
            heap: heap.clone(),
            coeffs: coeffs.clone(),
            table,
        })
    }
}

pub(crate) fn parse_row(line: &str, ln: usize) -> Result<Vec<usize>> {
    let mut col = 1;
    let mut out = Vec::new();
    for tok in line.split(' ') {
        if !tok.is_empty() {
            out.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(ln, col, format!("bad number `{tok}`")))?,
            );
        }
        col += tok.chars().count() + 1;
    }
    Ok(out)
}

/// First 5-tuple violating the 2-cocycle condition.
pub fn cocycle_witness(psi: &Cochain2) -> Witness {
    mutdist_one(psi, psi)
}

pub fn is_cocycle(psi: &Cochain2) -> bool {
    cocycle_witness(psi).is_none()
}

// ψ1(x,y,z) + ψ2(T(x,y,z),u,v) = ψ2(x,u,v) + ψ1(T(x,u,v),T(y,u,v),T(z,u,v))
fn mutdist_one(p1: &Cochain2, p2: &Cochain2) -> Witness {
    let h = &p1.heap;
    let a = &p1.coeffs;
    search::<5>(h.size(), |&[x, y, z, u, v]| {
        let lhs = a.add(p1.eval(x, y, z), p2.eval(h.t(x, y, z), u, v));
        let rhs = a.add(p2.eval(x, u, v), p1.eval(h.t(x, u, v), h.t(y, u, v), h.t(z, u, v)));
        lhs == rhs
    })
}

/// Both exchange identities, each reported with its first failing tuple.
pub fn mutual_distributivity_witness(p1: &Cochain2, p2: &Cochain2) -> Result<(Witness, Witness)> {
    p1.check_compatible(p2)?;
    Ok((mutdist_one(p1, p2), mutdist_one(p2, p1)))
}

pub fn is_mutually_distributive(p1: &Cochain2, p2: &Cochain2) -> Result<bool> {
    let (a, b) = mutual_distributivity_witness(p1, p2)?;
    Ok(a.is_none() && b.is_none())
}

/// Exhaustive evaluation of the cocycle-level predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleReport {
    pub is_cocycle: bool,
    pub is_nondegenerate: bool,
    pub is_reversible: bool,
    pub is_additive: bool,
    pub is_separable: bool,
    pub cocycle_witness: Witness,
    pub nondegenerate_witness: Witness,
    pub reversible_witness: Witness,
    pub additive_witness: Witness,
    pub separable_witness: Witness,
}

impl CocycleReport {
    /// Reversible and additive.
    pub fn is_ra(&self) -> bool {
        self.is_reversible && self.is_additive
    }
}

pub fn nondegenerate_witness(psi: &Cochain2) -> Witness {
    search::<2>(psi.heap.size(), |&[x, y]| psi.eval(x, y, y) == 0)
}

pub fn reversible_witness(psi: &Cochain2) -> Witness {
    let h = &psi.heap;
    let a = &psi.coeffs;
    search::<3>(h.size(), |&[w, x, y]| {
        a.add(psi.eval(w, x, y), psi.eval(h.t(w, x, y), y, x)) == 0
    })
}

pub fn additive_witness(psi: &Cochain2) -> Witness {
    let h = &psi.heap;
    let a = &psi.coeffs;
    search::<4>(h.size(), |&[w, x, y, z]| {
        a.add(psi.eval(w, x, y), psi.eval(h.t(w, x, y), y, z)) == psi.eval(w, x, z)
    })
}

pub fn check_cocycle_conditions(psi: &Cochain2) -> CocycleReport {
    let cw = cocycle_witness(psi);
    let nw = nondegenerate_witness(psi);
    let rw = reversible_witness(psi);
    let aw = additive_witness(psi);
    let zero = Cochain2::zero(&psi.heap, &psi.coeffs);
    let (s1, s2) = mutual_distributivity_witness(psi, &zero).expect("same carrier");
    let sw = s1.or(s2);
    CocycleReport {
        is_cocycle: cw.is_none(),
        is_nondegenerate: nw.is_none(),
        is_reversible: rw.is_none(),
        is_additive: aw.is_none(),
        is_separable: sw.is_none(),
        cocycle_witness: cw,
        nondegenerate_witness: nw,
        reversible_witness: rw,
        additive_witness: aw,
        separable_witness: sw,
    }
}

/// `δf(x,y,z) = f(x) − f(T(x,y,z))`.
pub fn coboundary(heap: &FiniteHeap, coeffs: &AbelianGroup, f: &[u32]) -> Result<Cochain2> {
    if f.len() != heap.size() {
        return Err(Error::LengthMismatch {
            expected: heap.size(),
            got: f.len(),
        });
    }
    if let Some(&v) = f.iter().find(|&&v| v as usize >= coeffs.order()) {
        return Err(Error::CoefficientMismatch(format!("f takes value {v}")));
    }
    Cochain2::from_fn(heap, coeffs, |x, y, z| coeffs.sub(f[x], f[heap.t(x, y, z)]))
}

/// Searches for `f` with `δf = ψ` for every listed cochain simultaneously.
///
/// Returns `Ok(None)` when no such `f` exists and an error when the search
/// space `|A|^|X|` exceeds `limit`.
pub fn common_coboundary(psis: &[Cochain2], limit: u64) -> Result<Option<Vec<u32>>> {
    let first = psis.first().ok_or(Error::EmptyPresentation)?;
    for p in psis {
        first.check_compatible(p)?;
    }
    let n = first.heap.size();
    let a = first.coeffs.order() as u64;
    let space = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(a));
    if space.is_none_or(|s| s > limit) {
        return Err(Error::TooLarge(n));
    }
    let mut f = vec![0u32; n];
    loop {
        let d = coboundary(&first.heap, &first.coeffs, &f)?;
        if psis.iter().all(|p| p.table == d.table) {
            return Ok(Some(f));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(None);
            }
            f[i] += 1;
            if (f[i] as u64) < a {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

fn cyclic_setup(n: usize) -> Result<(FiniteHeap, AbelianGroup)> {
    Ok((group_heap(&FiniteGroup::cyclic(n)?), AbelianGroup::cyclic(n)?))
}

/// `φ_i` on `Z_n` with coefficients in `Z_n`: the indicator of `z = y ζ^i`.
pub fn phi_i(n: usize, i: usize) -> Result<Cochain2> {
    check_index(i, n)?;
    let (x, a) = cyclic_setup(n)?;
    Cochain2::from_fn(&x, &a, |_, y, z| u32::from((y + i) % n == z))
}

/// `Σ a_i φ_i` on `Z_n`; `a` has length `n` and `a[0] = 0`.
pub fn phi_vec(n: usize, a: &[usize]) -> Result<Cochain2> {
    check_vec(n, a)?;
    let (x, coeffs) = cyclic_setup(n)?;
    Cochain2::from_fn(&x, &coeffs, |_, y, z| (a[(z + n - y) % n] % n) as u32)
}

fn check_vec(n: usize, a: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if a.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: a.len(),
        });
    }
    if !a[0].is_multiple_of(n) {
        return Err(Error::CoefficientMismatch("a_0 must vanish".into()));
    }
    Ok(())
}

/// The `k` with `(y, z) = (ζ^j, ζ^{j+k})` or `(aζ^{-j}, aζ^{-j-k})`; `None` for
/// a rotation paired with a reflection.
fn dihedral_offset(n: usize, y: usize, z: usize) -> Option<usize> {
    match (y < n, z < n) {
        (true, true) => Some((z + n - y) % n),
        (false, false) => Some((y + n - z) % n),
        _ => None,
    }
}

/// `ψ_i` on `D_n` with coefficients in `Z_n`.
pub fn psi_i_dihedral(n: usize, i: usize) -> Result<Cochain2> {
    check_index(i, n)?;
    let x = group_heap(&FiniteGroup::dihedral(n)?);
    let a = AbelianGroup::cyclic(n)?;
    Cochain2::from_fn(&x, &a, |_, y, z| u32::from(dihedral_offset(n, y, z) == Some(i)))
}

/// `Σ a_i ψ_i` on `D_n`.
pub fn psi_vec(n: usize, a: &[usize]) -> Result<Cochain2> {
    check_vec(n, a)?;
    let x = group_heap(&FiniteGroup::dihedral(n)?);
    let coeffs = AbelianGroup::cyclic(n)?;
    Cochain2::from_fn(&x, &coeffs, |_, y, z| {
        dihedral_offset(n, y, z).map_or(0, |k| (a[k] % n) as u32)
    })
}

/// `ψ_(a,b)(x,y,z) = (a x + b (z − y)) (z − y) mod n` on the additive heap of `Z_n`.
pub fn ring_cocycle(n: usize, a: usize, b: usize) -> Result<Cochain2> {
    let (x, coeffs) = cyclic_setup(n)?;
    Cochain2::from_fn(&x, &coeffs, |x, y, z| {
        let d = (z + n - y) % n;
        (((a * x + b * d) % n * d) % n) as u32
    })
}

/// `T̂((x,a),(y,b),(z,c)) = (T(x,y,z), a + ψ(x,y,z))` on `X × A`, with `(x,a)`
/// encoded as `x·|A| + a`.
pub fn extension_tsd(psi: &Cochain2) -> Result<TernaryOp> {
    let m = psi.coeffs.order();
    let size = psi
        .heap
        .size()
        .checked_mul(m)
        .filter(|&s| s <= MAX_CARRIER)
        .ok_or(Error::TooLarge(psi.heap.size() * m))?;
    let h = &psi.heap;
    let a = &psi.coeffs;
    TernaryOp::from_fn(size, |p, q, r| {
        let (x, s) = (p / m, (p % m) as u32);
        let (y, z) = (q / m, r / m);
        h.t(x, y, z) * m + a.add(s, psi.eval(x, y, z)) as usize
    })
}
