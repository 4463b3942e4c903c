use std::fmt;

use serde::{Deserialize, Serialize};

use super::mpoly::MPoly;
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Square 2x2 or 3x3 matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Result<Self> {
        let dim = rows.len();
        if !(2..=3).contains(&dim) {
            return Err(Error::DimensionMismatch(dim, 3));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(r.len(), dim));
        }
        Ok(PolyMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Parse each entry from polynomial text.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| e.parse()).collect::<Result<Vec<MPoly>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, MPoly::one())
    }

    pub fn zero(dim: usize) -> Self {
        PolyMatrix {
            dim,
            entries: vec![MPoly::zero(); dim * dim],
        }
    }

    pub fn scalar(dim: usize, p: MPoly) -> Self {
        assert!((2..=3).contains(&dim));
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = p.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> Self {
        PolyMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&MPoly) -> Result<MPoly>) -> Result<Self> {
        Ok(PolyMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn check(&self, rhs: &PolyMatrix) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<Self> {
        self.check(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { dim: self.dim, entries })
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<Self> {
        self.check(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        Ok(PolyMatrix { dim: self.dim, entries })
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<Self> {
        self.check(rhs)?;
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = MPoly::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { dim: n, entries })
    }

    /// Product of a chain of matrices, left to right.
    pub fn product(factors: &[&PolyMatrix]) -> Result<Self> {
        let mut it = factors.iter();
        let first = it.next().expect("at least one factor");
        it.try_fold((*first).clone(), |acc, m| acc.mul(m))
    }

    pub fn scale(&self, p: &MPoly) -> Self {
        self.map(|e| e * p)
    }

    pub fn scale_scalar(&self, c: &ExactScalar) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn trace(&self) -> MPoly {
        (0..self.dim).fold(MPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn det(&self) -> MPoly {
        let e = |i, j| self.get(i, j);
        if self.dim == 2 {
            return &(e(0, 0) * e(1, 1)) - &(e(0, 1) * e(1, 0));
        }
        let c0 = &(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1));
        let c1 = &(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0));
        let c2 = &(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0));
        &(&(e(0, 0) * &c0) - &(e(0, 1) * &c1)) + &(e(0, 2) * &c2)
    }

    /// Classical adjugate, so that `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.dim;
        let e = |i: usize, j: usize| self.get(i, j);
        if n == 2 {
            return PolyMatrix {
                dim: 2,
                entries: vec![e(1, 1).clone(), -e(0, 1), -e(1, 0), e(0, 0).clone()],
            };
        }
        let mut entries = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                // cofactor of (j, i)
                let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                let minor = &(e(rows[0], cols[0]) * e(rows[1], cols[1])) - &(e(rows[0], cols[1]) * e(rows[1], cols[0]));
                entries.push(if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        PolyMatrix { dim: 3, entries }
    }

    /// Inverse of a determinant-one matrix via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let d = self.det();
        if d != MPoly::one() {
            return Err(Error::NotUnimodular(d.to_string()));
        }
        Ok(self.adjugate())
    }

    /// `A^k` by binary exponentiation; negative `k` requires `det A = 1`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 {
            self.inverse_unimodular()?
        } else {
            self.clone()
        };
        Ok(base.pow_with(k.unsigned_abs(), |m| m))
    }

    /// Like [`PolyMatrix::pow`] for `k >= 0`, applying `reduce` to every intermediate product.
    pub fn pow_with(&self, k: u64, reduce: impl Fn(PolyMatrix) -> PolyMatrix) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = reduce(result.mul(&base).expect("same dimension"));
            }
            k >>= 1;
            if k > 0 {
                base = reduce(base.mul(&base).expect("same dimension"));
            }
        }
        result
    }

    /// `(sigma_1, sigma_2, sigma_3)` = (trace, second elementary symmetric function, det).
    pub fn sigma_invariants(&self) -> Result<(MPoly, MPoly, MPoly)> {
        if self.dim != 3 {
            return Err(Error::DimensionMismatch(self.dim, 3));
        }
        let tr = self.trace();
        let tr2 = self.mul(self)?.trace();
        let half = ExactScalar::new(1, 2)?;
        let s2 = (&(&tr * &tr) - &tr2).scale(&half);
        Ok((tr, s2, self.det()))
    }

    /// The six 2x2 minors mixing the entries of `a` and `b`; equals `tr(a)tr(b) - tr(ab)`.
    pub fn minor_expansion_identity(a: &PolyMatrix, b: &PolyMatrix) -> Result<MPoly> {
        if a.dim != 3 {
            return Err(Error::DimensionMismatch(a.dim, 3));
        }
        a.check(b)?;
        let det2 = |p: &MPoly, q: &MPoly, r: &MPoly, s: &MPoly| &(p * s) - &(q * r);
        let mut acc = MPoly::zero();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            acc = &acc + &det2(a.get(i, i), a.get(i, j), b.get(j, i), b.get(j, j));
            acc = &acc + &det2(b.get(i, i), b.get(i, j), a.get(j, i), a.get(j, j));
        }
        Ok(acc)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::parse_rows(rows).unwrap()
    }

    #[test]
    fn elementary_products() {
        let e12 = m(&[&["0", "1"], &["0", "0"]]);
        let e21 = m(&[&["0", "0"], &["1", "0"]]);
        let e11 = m(&[&["1", "0"], &["0", "0"]]);
        assert_eq!(e12.mul(&e21).unwrap(), e11);
        let a = m(&[&["u", "s"], &["1", "t"]]);
        assert_eq!(PolyMatrix::identity(2).mul(&a).unwrap(), a);
        assert!(matches!(
            a.mul(&PolyMatrix::identity(3)),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn powers_and_inverse() {
        let a = m(&[&["1", "u"], &["s", "1 + s*u"]]);
        assert_eq!(a.det(), MPoly::one());
        assert_eq!(a.pow(0).unwrap(), PolyMatrix::identity(2));
        assert_eq!(a.pow(1).unwrap(), a);
        assert_eq!(a.mul(&a.pow(-1).unwrap()).unwrap(), PolyMatrix::identity(2));
        assert_eq!(
            a.pow(3).unwrap().mul(&a.pow(-3).unwrap()).unwrap(),
            PolyMatrix::identity(2)
        );
        let b = m(&[&["2", "0"], &["0", "1"]]);
        assert!(matches!(b.pow(-1), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn adjugate_3x3() {
        let a = m(&[&["1", "2", "u"], &["0", "s", "1"], &["t", "0", "3"]]);
        let prod = a.mul(&a.adjugate()).unwrap();
        assert_eq!(prod, PolyMatrix::scalar(3, a.det()));
    }

    #[test]
    fn sigma_examples() {
        let (s1, s2, s3) = PolyMatrix::identity(3).sigma_invariants().unwrap();
        assert_eq!((s1, s2, s3), (MPoly::from(3), MPoly::from(3), MPoly::from(1)));
        let (s1, s2, s3) = PolyMatrix::zero(3).sigma_invariants().unwrap();
        assert!(s1.is_zero() && s2.is_zero() && s3.is_zero());
        let i3 = PolyMatrix::identity(3);
        assert_eq!(PolyMatrix::minor_expansion_identity(&i3, &i3).unwrap(), MPoly::from(6));
        assert!(PolyMatrix::minor_expansion_identity(&i3, &PolyMatrix::zero(3))
            .unwrap()
            .is_zero());
    }
}
