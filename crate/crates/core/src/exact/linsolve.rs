//! Exact linear systems by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// A particular solution (free variables fixed to zero) and the dimension of
/// the homogeneous solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub nullity: usize,
}

/// Solves `A x = b` for rectangular `A` (rows of equal length `ncols`).
/// Returns `Ok(None)` when the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Result<Option<LinearSolution>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    if let Some(row) = a.iter().find(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch { expected: ncols, found: row.len() });
    }

    // Clear denominators row by row: each augmented row becomes integral.
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let lcm = row.iter().chain(std::iter::once(rhs)).fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
            row.iter().chain(std::iter::once(rhs)).map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();

    let nrows = m.len();
    let width = ncols + 1;
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..width {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if c == ncols {
            // Pivot in the augmented column: 0 = nonzero.
            return Ok(None);
        }
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..width {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                // Bareiss: the division is exact.
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let mut x = vec![Rational::zero(); ncols];
    for (row, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from(m[row][ncols].clone());
        for j in c + 1..ncols {
            if !m[row][j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from(m[row][j].clone()) * &x[j];
            }
        }
        x[c] = &acc / &Rational::from(m[row][c].clone());
    }
    Ok(Some(LinearSolution { particular: x, nullity: ncols - pivots.len() }))
}
