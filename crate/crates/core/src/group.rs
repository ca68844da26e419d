//! Finite groups given by multiplication tables.

use crate::error::{Error, Result};

/// A finite group on the dense carrier `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking the group axioms.
    pub fn from_table(mul: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range")));
                }
                flat.push(v);
            }
        }
        let at = |a: usize, b: usize| flat[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inv = vec![0; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            *slot = (0..order)
                .find(|&y| at(y, x) == identity && at(x, y) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
        }
        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(Error::LengthMismatch {
                    expected: order,
                    got: n.len(),
                })
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(Self {
            order,
            mul: flat,
            inv,
            identity,
            names,
        })
    }

    /// Cyclic group Z_n, written multiplicatively; element `j` is ζ^j.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let inv = (0..n).map(|j| (n - j) % n).collect();
        let names = (0..n).map(|j| power_name("ζ", j)).collect();
        Ok(Self {
            order: n,
            mul,
            inv,
            identity: 0,
            names,
        })
    }

    /// Dihedral group D_n of order 2n generated by a rotation ζ and a
    /// reflection a with aζa = ζ⁻¹.
    ///
    /// Element `j` (for `j < n`) is ζ^j and element `n + j` is aζ^j.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let order = 2 * n;
        // (s, j) stands for a^s ζ^j; ζ^j a = a ζ^{-j}.
        let decode = |x: usize| (x / n, x % n);
        let encode = |s: usize, j: usize| s * n + j % n;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let (s1, j1) = decode(x);
                let (s2, j2) = decode(y);
                let j = if s2 == 0 { j1 + j2 } else { (n - j1) % n + j2 };
                mul.push(encode((s1 + s2) % 2, j));
            }
        }
        let inv = (0..order)
            .map(|x| {
                let (s, j) = decode(x);
                if s == 0 {
                    encode(0, n - j)
                } else {
                    x
                }
            })
            .collect();
        let names = (0..order)
            .map(|x| {
                let (s, j) = decode(x);
                if s == 0 {
                    power_name("ζ", j)
                } else if j == 0 {
                    "a".to_string()
                } else {
                    format!("a{}", power_name("ζ", j))
                }
            })
            .collect();
        Ok(Self {
            order,
            mul,
            inv,
            identity: 0,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// x^k for a possibly negative exponent.
    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// Parses a multiplication table: one row per line, space-separated indices.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                let col = line.find(tok).unwrap_or(0) + 1;
                row.push(
                    tok.parse::<usize>()
                        .map_err(|_| Error::parse(ln + 1, col, format!("bad index `{tok}`")))?,
                );
            }
            rows.push(row);
        }
        Self::from_table(rows, None)
    }
}

fn power_name(base: &str, j: usize) -> String {
    match j {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{j}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cyclic_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(FiniteGroup::cyclic(0), Err(Error::InvalidOrder(0)));
        assert_eq!(FiniteGroup::dihedral(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn cyclic_products() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(1, 2), z3.identity());
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z6.mul(4, 5), (4 + 5) % 6);
        assert_eq!(z6.mul(4, 5), 3);
    }

    /// Permutation model of D_n acting on the vertices of an n-gon.
    fn perm_dihedral(n: usize) -> Vec<Vec<usize>> {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> {
            // (p q)(i) = p(q(i))
            (0..n).map(|i| p[q[i]]).collect()
        };
        let mut elems = Vec::new();
        let mut r: Vec<usize> = (0..n).collect();
        for _ in 0..n {
            elems.push(r.clone());
            r = compose(&rot, &r);
        }
        let mut out = elems.clone();
        for e in &elems {
            out.push(compose(&refl, e));
        }
        out
    }

    #[test]
    fn dihedral_matches_permutation_model() {
        for n in 3..=5 {
            let g = FiniteGroup::dihedral(n).unwrap();
            let perms = perm_dihedral(n);
            for x in 0..2 * n {
                for y in 0..2 * n {
                    let prod: Vec<usize> = (0..n).map(|i| perms[x][perms[y][i]]).collect();
                    assert_eq!(perms[g.mul(x, y)], prod, "n={n} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn dihedral_three() {
        let g = FiniteGroup::dihedral(3).unwrap();
        assert!(!g.is_abelian());
        let a = 3;
        let zeta = 1;
        let a_zeta = g.mul(a, zeta);
        let zeta_a = g.mul(zeta, a);
        assert_eq!(g.mul(a_zeta, a_zeta), g.identity());
        assert_eq!(zeta_a, g.mul(a, g.inv(zeta)));
        assert_eq!(g.mul(a_zeta, zeta_a), g.pow(zeta, -2));
        // aζa = ζ⁻¹
        assert_eq!(g.mul(g.mul(a, zeta), a), g.inv(zeta));
    }

    #[test]
    fn dihedral_one_is_z2() {
        let g = FiniteGroup::dihedral(1).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.is_abelian());
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn dihedral_four_center() {
        let g = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(g.center(), vec![0, 2]);
    }

    #[test]
    fn table_round_trip() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let text: String = (0..4)
            .map(|a| (0..4).map(|b| g.mul(a, b).to_string()).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        let h = FiniteGroup::parse_table(&text).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.mul(3, 3), 2);
    }

    #[test]
    fn non_associative_table_rejected() {
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(FiniteGroup::from_table(t, None).is_err());
    }
}
