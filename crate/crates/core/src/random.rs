//! Seeded generators for random rational test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{QMatrix, Rational};
use crate::observables::Observable;

/// Default bound: `|numerator| ≤ 9`, `1 ≤ denominator ≤ 9`.
pub const DEFAULT_BOUND: i64 = 9;

/// Deterministic rational generator; the seed fully determines the stream.
pub struct RationalSampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        RationalSampler::with_bound(seed, DEFAULT_BOUND)
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1);
        RationalSampler { rng: ChaCha8Rng::seed_from_u64(seed), bound }
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-self.bound..=self.bound);
        let den = self.rng.gen_range(1..=self.bound);
        Rational::new(num, den)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn matrix(&mut self, n: usize) -> QMatrix {
        let rows = (0..n).map(|_| (0..n).map(|_| self.rational()).collect()).collect();
        QMatrix::from_rows(rows).expect("square")
    }

    pub fn observable(&mut self, n: usize) -> Observable {
        Observable::new(self.matrix(n))
    }

    pub fn observables(&mut self, n: usize, count: usize) -> Vec<Observable> {
        (0..count).map(|_| self.observable(n)).collect()
    }

    /// A random matrix that has an exact inverse.
    pub fn invertible(&mut self, n: usize) -> QMatrix {
        loop {
            let m = self.matrix(n);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// `S T S⁻¹` with `T` upper triangular and at least one nonzero diagonal
    /// entry, so the spectrum contains a nonzero rational.
    pub fn planted_nonzero_spectrum(&mut self, n: usize) -> QMatrix {
        let mut t = QMatrix::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                t.set(i, j, self.rational());
            }
        }
        let planted = self.rng.gen_range(0..n);
        t.set(planted, planted, self.nonzero_rational());
        let s = self.invertible(n);
        t.conjugate_by(&s).expect("invertible")
    }

    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.gen_range(0..upper)
    }
}
