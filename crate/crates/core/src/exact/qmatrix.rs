//! Dense square matrices over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    dim: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(dim: usize) -> Self {
        QMatrix { dim, data: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = QMatrix::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = QMatrix::zero(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend(row);
        }
        Ok(QMatrix { dim, data })
    }

    /// Convenience constructor from integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diag(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// Nonzero entries as `(row, col, value)`, zero-based.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / self.dim, k % self.dim, v))
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    fn check_dim(&self, other: &QMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = QMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_dim(other)?;
        Ok(QMatrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_dim(other)?;
        Ok(QMatrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &QMatrix) -> Result<QMatrix> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn pow(&self, k: usize) -> QMatrix {
        let mut acc = QMatrix::identity(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// All powers `self^0 .. self^(count-1)`.
    pub fn powers(&self, count: usize) -> Vec<QMatrix> {
        let mut out = Vec::with_capacity(count);
        let mut acc = QMatrix::identity(self.dim);
        for _ in 0..count {
            let next = &acc * self;
            out.push(acc);
            acc = next;
        }
        out
    }

    /// Exact rank by Gaussian elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        let n = self.dim;
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].recip().expect("nonzero pivot");
            for r in rank + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = &rows[r][col] * &inv;
                for c in col..n {
                    let d = &f * &rows[rank][c];
                    rows[r][c] -= d;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<QMatrix> {
        let n = self.dim;
        let mut a = self.rows();
        let mut inv = QMatrix::identity(n).rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let pivot_inv = a[col][col].recip()?;
            for c in 0..n {
                a[col][c] *= &pivot_inv;
                inv[col][c] *= &pivot_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                    let e = &f * &inv[col][c];
                    inv[r][c] -= e;
                }
            }
        }
        QMatrix::from_rows(inv)
    }

    /// `s * self * s^{-1}`
    pub fn conjugate_by(&self, s: &QMatrix) -> Result<QMatrix> {
        let s_inv = s.inverse()?;
        s.try_mul(self)?.try_mul(&s_inv)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    /// Panics on dimension mismatch; see [`QMatrix::try_mul`].
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.try_mul(rhs).expect("dimension mismatch")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { dim: self.dim, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Serialized as a list of rows of rational strings.
impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        QMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
