//! Conformal Hamiltonians: construction from partitions, the dilation
//! commutator, nilpotency, dilation search and the `ad_L` spectrum.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{solve, QMatrix, Rational};
use crate::partitions::Partition;

/// A finite-rank conformal quantum mechanics: nilpotent `H` and a dilation
/// generator `L` with `[L,H] = -H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    partition: Partition,
    hamiltonian: QMatrix,
    dilation: QMatrix,
    nilpotency_index: usize,
}

/// `H = ⊕ J(λᵢ)` (ones on the superdiagonal of each block) in row-major box order.
pub fn jordan_hamiltonian(partition: &Partition) -> QMatrix {
    let mut h = QMatrix::zero(partition.rank());
    for (&len, start) in partition.parts().iter().zip(partition.block_offsets()) {
        for k in 0..len.saturating_sub(1) {
            h.set(start + k, start + k + 1, Rational::one());
        }
    }
    h
}

/// `L = ⊕ diag(0, 1, …, λᵢ - 1)`.
pub fn canonical_dilation(partition: &Partition) -> QMatrix {
    let diag: Vec<Rational> = partition.contents().iter().map(|&c| Rational::from_int(c as i64)).collect();
    QMatrix::diagonal(&diag)
}

impl Theory {
    /// The canonical theory of a Young diagram.
    pub fn build(partition: &Partition) -> Result<Theory> {
        if partition.is_empty() {
            return Err(Error::EmptyTheory);
        }
        Ok(Theory {
            partition: partition.clone(),
            hamiltonian: jordan_hamiltonian(partition),
            dilation: canonical_dilation(partition),
            nilpotency_index: partition.largest(),
        })
    }

    /// Wraps an arbitrary pair, checking nilpotency and the commutator.
    /// The partition is recovered from the ranks of powers of `H`.
    pub fn from_pair(hamiltonian: QMatrix, dilation: QMatrix) -> Result<Theory> {
        if hamiltonian.dim() == 0 {
            return Err(Error::EmptyTheory);
        }
        if !check_dilation_pair(&hamiltonian, &dilation)? {
            return Err(Error::NotDilationPair);
        }
        let partition = jordan_type(&hamiltonian)?;
        Ok(Theory { nilpotency_index: partition.largest(), partition, hamiltonian, dilation })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &QMatrix {
        &self.hamiltonian
    }

    pub fn dilation(&self) -> &QMatrix {
        &self.dilation
    }

    /// Smallest `N` with `H^N = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    /// Eigenvalues of `L` per basis vector when `L` is diagonal.
    pub fn dilation_weights(&self) -> Result<Vec<Rational>> {
        if !self.dilation.is_diagonal() {
            return Err(Error::Unsupported("dilation generator is not diagonal".into()));
        }
        Ok(self.dilation.diag())
    }

    pub fn to_json(&self) -> TheoryJson {
        TheoryJson {
            partition: self.partition.clone(),
            hamiltonian: self.hamiltonian.clone(),
            dilation: self.dilation.clone(),
            nilpotency_index: self.nilpotency_index,
        }
    }
}

/// `{"partition":[...], "H":[[...]], "L":[[...]], "N":k}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoryJson {
    pub partition: Partition,
    #[serde(rename = "H")]
    pub hamiltonian: QMatrix,
    #[serde(rename = "L")]
    pub dilation: QMatrix,
    #[serde(rename = "N")]
    pub nilpotency_index: usize,
}

/// True iff `LH - HL = -H` exactly.
pub fn check_dilation_pair(hamiltonian: &QMatrix, dilation: &QMatrix) -> Result<bool> {
    let c = dilation.commutator(hamiltonian)?;
    Ok(c == -hamiltonian)
}

/// Zero spectrum test: `H^dim = 0`.
pub fn is_conformal(hamiltonian: &QMatrix) -> bool {
    hamiltonian.pow(hamiltonian.dim()).is_zero()
}

/// Smallest `k` with `H^k = 0`, if `H` is nilpotent.
pub fn nilpotency_index(hamiltonian: &QMatrix) -> Option<usize> {
    let mut power = QMatrix::identity(hamiltonian.dim());
    for k in 0..=hamiltonian.dim() {
        if power.is_zero() {
            return Some(k);
        }
        power = &power * hamiltonian;
    }
    None
}

/// Jordan type of a nilpotent matrix: the number of blocks of size `≥ k` is
/// `rank(H^{k-1}) - rank(H^k)`.
pub fn jordan_type(hamiltonian: &QMatrix) -> Result<Partition> {
    let n = nilpotency_index(hamiltonian).ok_or(Error::NotNilpotent)?;
    let ranks: Vec<usize> = hamiltonian.powers(n + 1).iter().map(QMatrix::rank).collect();
    let at_least: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut parts = Vec::new();
    for k in (1..=n).rev() {
        let longer = if k < n { at_least[k] } else { 0 };
        parts.extend(std::iter::repeat_n(k, at_least[k - 1] - longer));
    }
    Partition::new(parts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationSolution {
    pub dilation: QMatrix,
    /// Dimension of the commutant of `H` (homogeneous solutions of `[L,H] = 0`).
    pub solution_space_dim: usize,
}

/// Solves `LH - HL = -H` for `L` as an `n² × n²` exact system.
/// Free variables are set to zero; `None` when no solution exists.
pub fn find_dilation(hamiltonian: &QMatrix) -> Option<DilationSolution> {
    let n = hamiltonian.dim();
    let var = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // (LH)_ij - (HL)_ij = Σ_k L_ik H_kj - Σ_k H_ik L_kj
            let mut row = vec![Rational::zero(); n * n];
            for k in 0..n {
                row[var(i, k)] += hamiltonian.get(k, j);
                row[var(k, j)] -= hamiltonian.get(i, k);
            }
            rows.push(row);
            rhs.push(-hamiltonian.get(i, j));
        }
    }
    let sol = solve(&rows, &rhs, n * n).expect("well-formed system")?;
    let dilation =
        QMatrix::from_rows(sol.particular.chunks(n.max(1)).take(n).map(<[_]>::to_vec).collect()).expect("square");
    Some(DilationSolution { dilation, solution_space_dim: sol.nullity })
}

/// Eigenvalues of `L` and of `ad_L`, each with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    /// Eigenvalue of `L` on each basis vector.
    pub weights: Vec<Rational>,
    pub dilation_spectrum: BTreeMap<Rational, usize>,
    /// Multiset `{σᵢ - σⱼ}` of size `n²`.
    pub ad_spectrum: BTreeMap<Rational, usize>,
}

impl SpectrumReport {
    pub fn distinct_deltas(&self) -> Vec<Rational> {
        self.ad_spectrum.keys().cloned().collect()
    }
}

/// `ad_L` spectrum of a theory with diagonal `L`.
pub fn ad_spectrum(theory: &Theory) -> Result<SpectrumReport> {
    let weights = theory.dilation_weights()?;
    let mut dilation_spectrum = BTreeMap::new();
    let mut ad = BTreeMap::new();
    for si in &weights {
        *dilation_spectrum.entry(si.clone()).or_insert(0) += 1;
        for sj in &weights {
            *ad.entry(si - sj).or_insert(0) += 1;
        }
    }
    Ok(SpectrumReport { weights, dilation_spectrum, ad_spectrum: ad })
}

/// `(SHS⁻¹, SLS⁻¹)`, an equivalent presentation of the same theory.
pub fn conjugate_theory(theory: &Theory, s: &QMatrix) -> Result<Theory> {
    let s_inv = s.inverse()?;
    let h = s.try_mul(theory.hamiltonian())?.try_mul(&s_inv)?;
    let l = s.try_mul(theory.dilation())?.try_mul(&s_inv)?;
    Theory::from_pair(h, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn theory(s: &str) -> Theory {
        Theory::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn single_box() {
        let t = theory("1");
        assert_eq!(t.hamiltonian(), &QMatrix::zero(1));
        assert_eq!(t.dilation(), &QMatrix::zero(1));
        assert_eq!(t.nilpotency_index(), 1);
    }

    #[test]
    fn empty_partition_rejected() {
        assert_eq!(Theory::build(&Partition::empty()).unwrap_err(), Error::EmptyTheory);
    }

    #[test]
    fn dilation_pair_examples() {
        let h = jordan_hamiltonian(&"2".parse().unwrap());
        assert!(!check_dilation_pair(&h, &QMatrix::zero(2)).unwrap());
        let l = QMatrix::from_int_rows(&[&[3, 7], &[-1, 5]]).unwrap();
        assert!(check_dilation_pair(&QMatrix::zero(2), &l).unwrap());
        assert!(check_dilation_pair(&h, &QMatrix::zero(3)).is_err());
    }

    #[test]
    fn conformality_examples() {
        let d = QMatrix::from_int_rows(&[&[1, 0], &[0, 2]]).unwrap();
        assert!(!is_conformal(&d));
        assert!(is_conformal(theory("3,1").hamiltonian()));
    }

    #[test]
    fn find_dilation_examples() {
        let h = jordan_hamiltonian(&"2".parse().unwrap());
        let sol = find_dilation(&h).unwrap();
        assert!(check_dilation_pair(&h, &sol.dilation).unwrap());
        // Commutant of a single 2x2 Jordan block: span{I, H}.
        assert_eq!(sol.solution_space_dim, 2);

        assert!(find_dilation(&QMatrix::identity(3)).is_none());

        let zero = find_dilation(&QMatrix::zero(3)).unwrap();
        assert_eq!(zero.dilation, QMatrix::zero(3));
        assert_eq!(zero.solution_space_dim, 9);
    }

    #[test]
    fn spectrum_examples() {
        let all_zero = ad_spectrum(&theory("1,1")).unwrap();
        assert_eq!(all_zero.ad_spectrum, BTreeMap::from([(Rational::zero(), 4)]));

        let two = ad_spectrum(&theory("2")).unwrap();
        assert_eq!(
            two.ad_spectrum,
            BTreeMap::from([(Rational::from_int(-1), 1), (Rational::zero(), 2), (Rational::one(), 1)])
        );

        let hook = ad_spectrum(&theory("2,1,1")).unwrap();
        assert_eq!(
            hook.ad_spectrum,
            BTreeMap::from([(Rational::from_int(-1), 3), (Rational::zero(), 10), (Rational::one(), 3)])
        );
    }

    #[test]
    fn jordan_type_recovers_partition() {
        for n in 1..=6 {
            for p in enumerate_partitions(n) {
                assert_eq!(jordan_type(&jordan_hamiltonian(&p)).unwrap(), p);
            }
        }
        assert_eq!(jordan_type(&QMatrix::identity(2)).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn conjugation_keeps_commutator() {
        let t = theory("2,1");
        let s = QMatrix::from_int_rows(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]).unwrap();
        let c = conjugate_theory(&t, &s).unwrap();
        assert_eq!(c.partition(), t.partition());
        assert!(check_dilation_pair(c.hamiltonian(), c.dilation()).unwrap());
        assert!(ad_spectrum(&c).is_err() || c.dilation().is_diagonal());
        assert_eq!(conjugate_theory(&t, &QMatrix::identity(3)).unwrap(), t);
        let singular = QMatrix::from_int_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(conjugate_theory(&t, &singular).unwrap_err(), Error::Singular);
    }
}
