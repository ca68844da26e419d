//! Ternary operations, heaps and their axiom checkers.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Largest carrier for which a ternary table is built.
pub const MAX_CARRIER: usize = 256;

/// A ternary operation on the dense carrier `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryOp {
    size: usize,
    table: Vec<u32>,
}

impl TernaryOp {
    pub fn from_fn(size: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if size > MAX_CARRIER {
            return Err(Error::TooLarge(size));
        }
        let mut table = Vec::with_capacity(size * size * size);
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    let v = f(x, y, z);
                    if v >= size {
                        return Err(Error::NotAHeap(format!("T({x},{y},{z}) = {v} outside carrier")));
                    }
                    table.push(v as u32);
                }
            }
        }
        Ok(Self { size, table })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize, z: usize) -> usize {
        self.table[(x * self.size + y) * self.size + z] as usize
    }
}

/// First failing tuple of an identity, if any.
pub type Witness = Option<Vec<usize>>;

pub(crate) fn search<const K: usize>(n: usize, mut holds: impl FnMut(&[usize; K]) -> bool) -> Witness {
    let mut t = [0usize; K];
    loop {
        if !holds(&t) {
            return Some(t.to_vec());
        }
        let mut i = K;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// First tuple violating a heap axiom, labelled by the axiom's name.
pub fn heap_witness(op: &TernaryOp) -> Option<(&'static str, Vec<usize>)> {
    let n = op.size();
    let t = |a, b, c| op.apply(a, b, c);
    if let Some(w) = search::<2>(n, |&[x, y]| t(x, x, y) == y) {
        return Some(("[x,x,y] = y", w));
    }
    if let Some(w) = search::<2>(n, |&[x, y]| t(x, y, y) == x) {
        return Some(("[x,y,y] = x", w));
    }
    if let Some(w) = search::<5>(n, |&[x, y, z, u, v]| {
        let a = t(t(x, y, z), u, v);
        a == t(x, y, t(z, u, v)) && a == t(x, t(u, z, y), v)
    }) {
        return Some(("para-associativity", w));
    }
    None
}

pub fn is_heap(op: &TernaryOp) -> bool {
    heap_witness(op).is_none()
}

/// First 5-tuple violating ternary self-distributivity.
pub fn tsd_witness(op: &TernaryOp) -> Witness {
    let t = |a, b, c| op.apply(a, b, c);
    search::<5>(op.size(), |&[x, y, z, u, v]| {
        t(t(x, y, z), u, v) == t(t(x, u, v), t(y, u, v), t(z, u, v))
    })
}

pub fn is_tsd(op: &TernaryOp) -> bool {
    tsd_witness(op).is_none()
}

/// Idempotency, reversibility and additivity of an operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpReport {
    pub idempotency: bool,
    pub reversibility: bool,
    pub additivity: bool,
    pub idempotency_witness: Witness,
    pub reversibility_witness: Witness,
    pub additivity_witness: Witness,
}

pub fn check_op_conditions(op: &TernaryOp) -> OpReport {
    let t = |a, b, c| op.apply(a, b, c);
    let n = op.size();
    let idem = search::<2>(n, |&[w, x]| t(w, x, x) == w);
    let rev = search::<3>(n, |&[w, x, y]| t(t(w, x, y), y, x) == w);
    let add = search::<4>(n, |&[w, x, y, z]| t(t(w, x, y), y, z) == t(w, x, z));
    OpReport {
        idempotency: idem.is_none(),
        reversibility: rev.is_none(),
        additivity: add.is_none(),
        idempotency_witness: idem,
        reversibility_witness: rev,
        additivity_witness: add,
    }
}

/// Where a heap's operation came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeapSource {
    Group(FiniteGroup),
    Table,
}

/// A finite heap. The heap axioms are verified on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHeap {
    op: TernaryOp,
    source: HeapSource,
}

impl FiniteHeap {
    /// The group heap `T(x,y,z) = x y⁻¹ z`.
    pub fn from_group(g: &FiniteGroup) -> Result<Self> {
        let op = TernaryOp::from_fn(g.order(), |x, y, z| g.mul(g.mul(x, g.inv(y)), z))?;
        debug_assert!(is_heap(&op));
        Ok(Self {
            op,
            source: HeapSource::Group(g.clone()),
        })
    }

    pub fn from_op(op: TernaryOp) -> Result<Self> {
        if let Some((axiom, w)) = heap_witness(&op) {
            return Err(Error::NotAHeap(format!("{axiom} fails at {w:?}")));
        }
        Ok(Self {
            op,
            source: HeapSource::Table,
        })
    }

    pub fn size(&self) -> usize {
        self.op.size()
    }

    #[inline]
    pub fn t(&self, x: usize, y: usize, z: usize) -> usize {
        self.op.apply(x, y, z)
    }

    pub fn op(&self) -> &TernaryOp {
        &self.op
    }

    pub fn source(&self) -> &HeapSource {
        &self.source
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.source {
            HeapSource::Group(g) => Some(g),
            HeapSource::Table => None,
        }
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.source {
            HeapSource::Group(g) => g.name(x).to_string(),
            HeapSource::Table => x.to_string(),
        }
    }

    /// The group obtained by fixing `e`: `x * y = T(x, e, y)`.
    pub fn retract(&self, e: usize) -> Result<FiniteGroup> {
        let n = self.size();
        let rows = (0..n).map(|x| (0..n).map(|y| self.t(x, e, y)).collect()).collect();
        FiniteGroup::from_table(rows, None)
    }
}

pub fn group_heap(g: &FiniteGroup) -> FiniteHeap {
    FiniteHeap::from_group(g).expect("group carriers are bounded by MAX_CARRIER")
}
