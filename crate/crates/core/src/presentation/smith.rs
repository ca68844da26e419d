//! Smith normal form over the integers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

/// `Z^free_rank ⊕ Z_{d1} ⊕ … ⊕ Z_{dk}` with `d1 | d2 | … | dk` and `di ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(|d| d.to_u64()).collect()
    }

    pub fn from_parts(free_rank: usize, torsion: &[u64]) -> Self {
        Self {
            free_rank,
            torsion: torsion.iter().map(|&d| BigUint::from(d)).collect(),
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Invariant factors of the cokernel of the relation matrix `rows`
/// (one row per relator, `cols` columns).
pub fn smith_invariants(rows: &[Vec<i64>], cols: usize) -> AbelianInvariants {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let nr = m.len();
    let mut diag: Vec<BigInt> = Vec::new();
    let mut t = 0;
    while t < nr.min(cols) {
        // pivot on the smallest nonzero entry of the trailing block
        let Some((pi, pj)) = min_entry(&m, t, cols) else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if !m[i][t].is_zero() {
                    let q = &m[i][t] / &m[t][t];
                    for j in t..cols {
                        let v = &m[t][j] * &q;
                        m[i][j] -= v;
                    }
                    dirty |= !m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = &m[t][j] / &m[t][t];
                    for row in m.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                    dirty |= !m[t][j].is_zero();
                }
            }
            if !dirty {
                // divisibility: fold an offending row into the pivot row
                let bad = (t + 1..nr).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                    }
                }
            }
            let (pi, pj) = min_entry_in_cross(&m, t, cols);
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    let rank = diag.len();
    let torsion = diag
        .into_iter()
        .filter(|d| d > &BigInt::from(1))
        .map(|d| d.to_biguint().unwrap())
        .collect();
    AbelianInvariants {
        free_rank: cols - rank,
        torsion,
    }
}

fn min_entry(m: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` and column `t` (the pivot itself if all
/// others vanish).
fn min_entry_in_cross(m: &[Vec<BigInt>], t: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |v: &BigInt, b: (usize, usize)| !v.is_zero() && (m[b.0][b.1].is_zero() || v.abs() < m[b.0][b.1].abs());
    for i in t..m.len() {
        if better(&m[i][t], best) {
            best = (i, t);
        }
    }
    for j in t..cols {
        if better(&m[t][j], best) {
            best = (t, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(rows: &[&[i64]], cols: usize) -> (usize, Vec<u64>) {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        let a = smith_invariants(&rows, cols);
        (a.free_rank, a.torsion_u64().unwrap())
    }

    #[test]
    fn small_cases() {
        assert_eq!(inv(&[], 3), (3, vec![]));
        assert_eq!(inv(&[&[2, 0], &[0, 3]], 2), (0, vec![6]));
        assert_eq!(inv(&[&[2, 4], &[6, 8]], 2), (0, vec![2, 4]));
        assert_eq!(inv(&[&[0, 0, 0]], 3), (3, vec![]));
        assert_eq!(inv(&[&[1, -1, 0], &[0, 1, -1]], 3), (1, vec![]));
        assert_eq!(inv(&[&[4, 6], &[6, 9]], 2), (1, vec![]));
        assert_eq!(inv(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]], 3), (0, vec![30, 30]));
    }

    #[test]
    fn display() {
        assert_eq!(AbelianInvariants::from_parts(1, &[6]).to_string(), "Z ⊕ Z_6");
        assert_eq!(AbelianInvariants::from_parts(0, &[]).to_string(), "0");
    }
}
