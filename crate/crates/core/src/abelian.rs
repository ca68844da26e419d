//! Finite abelian coefficient groups `Z_{d1} ⊕ … ⊕ Z_{dr}`.

use std::fmt;

use crate::error::{Error, Result};

/// Elements are encoded as mixed-radix indices; the first factor is the
/// least significant digit. Index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    order: usize,
}

impl AbelianGroup {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidOrder(d));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&o| o <= u32::MAX as usize)
            .ok_or(Error::TooLarge(usize::MAX))?;
        Ok(Self { factors, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self {
            factors: Vec::new(),
            order: 1,
        }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn decode(&self, a: u32) -> Vec<usize> {
        let mut a = a as usize;
        self.factors
            .iter()
            .map(|&d| {
                let r = a % d;
                a /= d;
                r
            })
            .collect()
    }

    pub fn encode(&self, digits: &[usize]) -> u32 {
        let mut acc = 0usize;
        for (&d, &x) in self.factors.iter().zip(digits).rev() {
            acc = acc * d + x % d;
        }
        acc as u32
    }

    /// The element `k · g_i`.
    pub fn gen_multiple(&self, i: usize, k: i64) -> u32 {
        let mut digits = vec![0; self.factors.len()];
        let d = self.factors[i] as i64;
        digits[i] = k.rem_euclid(d) as usize;
        self.encode(&digits)
    }

    fn zip_with(&self, a: u32, b: u32, f: impl Fn(usize, usize, usize) -> usize) -> u32 {
        let (mut a, mut b) = (a as usize, b as usize);
        let mut acc = 0usize;
        let mut place = 1usize;
        for &d in &self.factors {
            acc += f(a % d, b % d, d) * place;
            a /= d;
            b /= d;
            place *= d;
        }
        acc as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.factors.len() == 1 {
            let d = self.factors[0] as u32;
            return (a + b) % d;
        }
        self.zip_with(a, b, |x, y, d| (x + y) % d)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.factors.len() == 1 {
            let d = self.factors[0] as u32;
            return (d - a) % d;
        }
        self.zip_with(a, 0, |x, _, d| (d - x) % d)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: u32, k: i64) -> u32 {
        self.zip_with(a, 0, |x, _, d| {
            ((x as i64 * k.rem_euclid(d as i64)) % d as i64) as usize
        })
    }

    /// Multiplicative name: `e`, `g^3`, `g1^2·g2`.
    pub fn name(&self, a: u32) -> String {
        let digits = self.decode(a);
        let parts: Vec<String> = digits
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| {
                let g = if self.factors.len() == 1 {
                    "g".to_string()
                } else {
                    format!("g{}", i + 1)
                };
                if x == 1 {
                    g
                } else {
                    format!("{g}^{x}")
                }
            })
            .collect();
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join("·")
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z_{d}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = AbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(a.order(), 6);
        let x = a.encode(&[1, 2]);
        let y = a.encode(&[1, 2]);
        assert_eq!(a.decode(a.add(x, y)), vec![0, 1]);
        assert_eq!(a.add(x, a.neg(x)), 0);
        assert_eq!(a.decode(a.scale(x, 5)), vec![1, 1]);
        assert_eq!(a.name(x), "g1·g2^2");
    }

    #[test]
    fn cyclic_names() {
        let a = AbelianGroup::cyclic(5).unwrap();
        assert_eq!(a.name(0), "e");
        assert_eq!(a.name(1), "g");
        assert_eq!(a.name(3), "g^3");
        assert_eq!(a.gen_multiple(0, -1), 4);
    }

    #[test]
    fn zero_factor_rejected() {
        assert!(AbelianGroup::new(vec![3, 0]).is_err());
    }
}
