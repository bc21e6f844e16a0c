//! Dense pure states and density matrices of small qubit registers.
//!
//! Qubit 1 is the most significant bit of the basis index, so the ket
//! `|q1 q2 ... qN>` sits at index `sum_k q_k * 2^(N-k)` and kets written
//! left-to-right read off directly.

use std::fmt;

use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Largest register accepted by [`random_pure_state`].
pub const MAX_RANDOM_QUBITS: usize = 6;

/// Bit of `qubit` (1-based) inside a basis index of an `n`-qubit register.
#[inline]
pub fn bit(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - qubit)) & 1
}

fn log2_exact(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::BadDimension(format!("length {len} is not 2^n with n >= 1")));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Ordered set of distinct 1-based qubit positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    indices: Vec<usize>,
}

impl QubitSubset {
    /// Sorts the positions and rejects duplicates, zero, or positions past `n_qubits`.
    pub fn new(indices: &[usize], n_qubits: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::BadSubset("empty subset".into()));
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::BadSubset(format!("duplicate qubit {}", w[0])));
            }
        }
        if let Some(&bad) = sorted.iter().find(|&&q| q == 0 || q > n_qubits) {
            return Err(Error::BadSubset(format!(
                "qubit {bad} outside 1..={n_qubits}"
            )));
        }
        Ok(QubitSubset { indices: sorted })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Key used in reports, e.g. `"134"`.
    pub fn label(&self) -> String {
        self.indices.iter().map(|q| q.to_string()).collect()
    }

    fn complement(&self, n_qubits: usize) -> Vec<usize> {
        (1..=n_qubits).filter(|q| !self.indices.contains(q)).collect()
    }
}

impl fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Normalised amplitude vector of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Rescales `raw` to unit norm, keeping relative phases.
    pub fn normalize(raw: Vec<Complex64>) -> Result<Self> {
        let n_qubits = log2_exact(raw.len())?;
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < tol::ZERO_NORM {
            return Err(Error::ZeroVector);
        }
        let amplitudes = raw.into_iter().map(|a| a / norm).collect();
        Ok(PureState { n_qubits, amplitudes })
    }

    pub fn from_real(raw: &[f64]) -> Result<Self> {
        Self::normalize(raw.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds a state from `(ket, amplitude)` pairs such as `("0110", c)`.
    pub fn from_kets(terms: &[(&str, Complex64)]) -> Result<Self> {
        let n = terms
            .first()
            .map(|(k, _)| k.len())
            .ok_or_else(|| Error::BadParam("no kets given".into()))?;
        if n == 0 {
            return Err(Error::BadParam("empty ket label".into()));
        }
        let mut raw = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (ket, amp) in terms {
            if ket.len() != n {
                return Err(Error::BadParam(format!("ket {ket} has the wrong length")));
            }
            let idx = usize::from_str_radix(ket, 2)
                .map_err(|_| Error::BadParam(format!("ket {ket} is not binary")))?;
            raw[idx] += amp;
        }
        Self::normalize(raw)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || index >= 1 << n_qubits {
            return Err(Error::BadDimension(format!(
                "basis index {index} for {n_qubits} qubits"
            )));
        }
        let mut raw = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        raw[index] = Complex64::new(1.0, 0.0);
        Ok(PureState { n_qubits, amplitudes: raw })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Register of `self` followed by the register of `other`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        PureState { n_qubits: self.n_qubits + other.n_qubits, amplitudes }
    }

    pub fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit == 0 || qubit > self.n_qubits {
            return Err(Error::BadIndex { index: qubit, n_qubits: self.n_qubits });
        }
        Ok(())
    }

    /// Applies `op` to one qubit and renormalises; for unitaries the norm is untouched.
    pub fn apply_local(&self, qubit: usize, op: &Matrix2<Complex64>) -> Result<PureState> {
        self.check_qubit(qubit)?;
        Self::normalize(apply_local_raw(&self.amplitudes, qubit, op))
    }

    /// Reorders the register so that new qubit `k` is old qubit `order[k-1]`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<PureState> {
        let n = self.n_qubits;
        let mut seen = order.to_vec();
        seen.sort_unstable();
        if seen != (1..=n).collect::<Vec<_>>() {
            return Err(Error::BadSubset(format!("{order:?} is not a permutation of 1..={n}")));
        }
        Ok(PureState { n_qubits: n, amplitudes: permute_raw(&self.amplitudes, order) })
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        let d = self.dim();
        let entries = DMatrix::from_fn(d, d, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityMatrix { n_qubits: self.n_qubits, entries }
    }

    /// Reduced density matrix on `keep`, computed as `A A^dagger` with `A` the
    /// amplitude tensor reshaped into kept x traced indices.
    pub fn partial_trace(&self, keep: &QubitSubset) -> Result<DensityMatrix> {
        let n = self.n_qubits;
        if keep.indices().last().copied().unwrap_or(0) > n {
            return Err(Error::BadSubset(format!("{keep} exceeds {n} qubits")));
        }
        let traced = keep.complement(n);
        let rows = 1 << keep.len();
        let cols = 1 << traced.len();
        let mut a = DMatrix::<Complex64>::zeros(rows, cols);
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let r = sub_index(idx, keep.indices(), n);
            let c = sub_index(idx, &traced, n);
            a[(r, c)] = *amp;
        }
        let entries = &a * a.adjoint();
        Ok(DensityMatrix { n_qubits: keep.len(), entries })
    }

    /// Convenience wrapper taking plain qubit positions.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.partial_trace(&QubitSubset::new(keep, self.n_qubits)?)
    }

    pub fn to_json(&self) -> StateFile {
        StateFile {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

/// Packs the bits of `qubits` (in order) of a full basis index into a sub-index.
pub fn sub_index(index: usize, qubits: &[usize], n: usize) -> usize {
    qubits.iter().fold(0, |acc, &q| (acc << 1) | bit(index, q, n))
}

/// `op` acting on `qubit` of a raw amplitude vector, without renormalising.
pub fn apply_local_raw(amps: &[Complex64], qubit: usize, op: &Matrix2<Complex64>) -> Vec<Complex64> {
    let n = amps.len().trailing_zeros() as usize;
    let stride = 1usize << (n - qubit);
    let mut out = amps.to_vec();
    for idx in 0..amps.len() {
        if idx & stride == 0 {
            let (a0, a1) = (amps[idx], amps[idx | stride]);
            out[idx] = op[(0, 0)] * a0 + op[(0, 1)] * a1;
            out[idx | stride] = op[(1, 0)] * a0 + op[(1, 1)] * a1;
        }
    }
    out
}

/// Qubit permutation on a raw amplitude vector; new qubit `k` is old qubit `order[k-1]`.
pub fn permute_raw(amps: &[Complex64], order: &[usize]) -> Vec<Complex64> {
    let n = order.len();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    for (old, amp) in amps.iter().enumerate() {
        out[sub_index(old, order, n)] = *amp;
    }
    out
}

/// Haar-random pure state from normalised complex Gaussian components.
pub fn random_pure_state(n_qubits: usize, seed: u64) -> Result<PureState> {
    if !(1..=MAX_RANDOM_QUBITS).contains(&n_qubits) {
        return Err(Error::BadDimension(format!(
            "random states support 1..={MAX_RANDOM_QUBITS} qubits, got {n_qubits}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = (0..1usize << n_qubits)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    PureState::normalize(raw)
}

/// Hermitian, unit-trace, positive semidefinite matrix on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates hermiticity, trace and positivity at the global tolerances.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let d = entries.nrows();
        if d != entries.ncols() {
            return Err(Error::BadDimension(format!("{}x{} is not square", d, entries.ncols())));
        }
        let n_qubits = log2_exact(d)?;
        let herm_err = (&entries - entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm_err > tol::STRUCTURAL {
            return Err(Error::NotDensityMatrix(format!("hermiticity defect {herm_err:.3e}")));
        }
        let tr = entries.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol::STRUCTURAL {
            return Err(Error::NotDensityMatrix(format!("trace {tr}")));
        }
        let rho = DensityMatrix { n_qubits, entries };
        rho.eigen()?;
        Ok(rho)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Eigenpairs sorted by descending eigenvalue. Eigenvalues in the clamping
    /// window `[-1e-10, 0)` are set to zero, anything more negative is an error.
    pub fn eigen(&self) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
        let herm = (&self.entries + self.entries.adjoint()).scale(0.5);
        let eig = SymmetricEigen::new(herm);
        let mut pairs: Vec<(f64, Vec<Complex64>)> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, eig.eigenvectors.column(k).iter().copied().collect()))
            .collect();
        for (v, _) in pairs.iter_mut() {
            if *v < -tol::SPECTRAL {
                return Err(Error::NotDensityMatrix(format!("negative eigenvalue {v:.3e}")));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        Ok(pairs.into_iter().unzip())
    }

    /// Number of eigenvalues above `threshold`.
    pub fn rank(&self, threshold: f64) -> Result<usize> {
        Ok(self.eigen()?.0.iter().filter(|&&v| v > threshold).count())
    }

    pub fn determinant(&self) -> Complex64 {
        self.entries.determinant()
    }

    pub fn partial_trace(&self, keep: &QubitSubset) -> Result<DensityMatrix> {
        let n = self.n_qubits;
        if keep.indices().last().copied().unwrap_or(0) > n {
            return Err(Error::BadSubset(format!("{keep} exceeds {n} qubits")));
        }
        let d = self.dim();
        let k = 1 << keep.len();
        let traced = keep.complement(n);
        let mut out = DMatrix::<Complex64>::zeros(k, k);
        for i in 0..d {
            let ti = sub_index(i, &traced, n);
            let ri = sub_index(i, keep.indices(), n);
            for j in 0..d {
                if sub_index(j, &traced, n) == ti {
                    out[(ri, sub_index(j, keep.indices(), n))] += self.entries[(i, j)];
                }
            }
        }
        Ok(DensityMatrix { n_qubits: keep.len(), entries: out })
    }

    pub fn frobenius_distance(&self, other: &DensityMatrix) -> f64 {
        (&self.entries - &other.entries).norm()
    }

    /// Weighted mixture of pure-state projectors; weights are used as given.
    pub fn mixture(terms: &[(f64, PureState)]) -> Result<DensityMatrix> {
        let first = terms.first().ok_or_else(|| Error::BadParam("empty mixture".into()))?;
        let d = first.1.dim();
        let mut entries = DMatrix::<Complex64>::zeros(d, d);
        for (w, psi) in terms {
            if psi.dim() != d {
                return Err(Error::BadDimension("mixed register sizes".into()));
            }
            entries += psi.density_matrix().entries.scale(*w);
        }
        Ok(DensityMatrix { n_qubits: first.1.n_qubits(), entries })
    }
}

/// On-disk pure state: `{ "n_qubits": n, "amplitudes": [[re, im], ...] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n_qubits: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

/// A state read from a [`StateFile`] together with the factor applied to normalise it.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedState {
    pub state: PureState,
    pub norm_factor: f64,
}

impl StateFile {
    pub fn parse(text: &str) -> Result<LoadedState> {
        let file: StateFile = serde_json::from_str(text)?;
        file.load()
    }

    pub fn load(&self) -> Result<LoadedState> {
        if self.n_qubits == 0 || self.amplitudes.len() != 1usize << self.n_qubits.min(30) {
            return Err(Error::BadDimension(format!(
                "n_qubits = {} but {} amplitudes",
                self.n_qubits,
                self.amplitudes.len()
            )));
        }
        let raw: Vec<Complex64> = self.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let state = PureState::normalize(raw)?;
        Ok(LoadedState { state, norm_factor: 1.0 / norm })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalize_examples() {
        let bell = PureState::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!((bell.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((bell.amplitudes()[3].re - FRAC_1_SQRT_2).abs() < 1e-15);

        assert!(matches!(PureState::from_real(&[0.0; 4]), Err(Error::ZeroVector)));
        assert!(matches!(PureState::from_real(&[1.0, 0.0, 0.0]), Err(Error::BadDimension(_))));
        assert!(matches!(PureState::from_real(&[1.0]), Err(Error::BadDimension(_))));

        let s = PureState::normalize(vec![c(0.0, 2.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(s.amplitudes()[0], c(0.0, 1.0));
    }

    #[test]
    fn ket_index_convention() {
        let s = PureState::from_kets(&[("10", c(1.0, 0.0))]).unwrap();
        assert_eq!(s.amplitudes()[2], c(1.0, 0.0));
        assert_eq!(bit(2, 1, 2), 1);
        assert_eq!(bit(2, 2, 2), 0);
    }

    #[test]
    fn tensor_examples() {
        let one = PureState::basis(1, 1).unwrap();
        let zero = PureState::basis(1, 0).unwrap();
        assert_eq!(one.tensor(&zero), PureState::basis(2, 2).unwrap());

        let plus = PureState::from_real(&[1.0, 1.0]).unwrap();
        for a in plus.tensor(&plus).amplitudes() {
            assert!((a - c(0.5, 0.0)).norm() < 1e-15);
        }

        let ghz2 = PureState::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        let expected = PureState::from_kets(&[("001", c(1.0, 0.0)), ("111", c(1.0, 0.0))]).unwrap();
        let got = ghz2.tensor(&one);
        for (a, b) in got.amplitudes().iter().zip(expected.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn subset_validation() {
        assert!(QubitSubset::new(&[1, 1], 3).is_err());
        assert!(QubitSubset::new(&[0], 3).is_err());
        assert!(QubitSubset::new(&[4], 3).is_err());
        assert!(QubitSubset::new(&[], 3).is_err());
        assert_eq!(QubitSubset::new(&[3, 1], 3).unwrap().indices(), &[1, 3]);
    }

    #[test]
    fn ghz_marginal_is_maximally_mixed() {
        let ghz = PureState::from_kets(&[("000", c(1.0, 0.0)), ("111", c(1.0, 0.0))]).unwrap();
        let rho = ghz.reduce(&[1]).unwrap();
        assert!((rho.entries()[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((rho.entries()[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!(rho.entries()[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn product_marginal() {
        let plus = PureState::from_real(&[1.0, 1.0]).unwrap();
        let s = PureState::basis(1, 0).unwrap().tensor(&plus);
        let rho = s.reduce(&[2]).unwrap();
        for v in rho.entries().iter() {
            assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn density_partial_trace_matches_pure_route() {
        let psi = random_pure_state(4, 11).unwrap();
        let full = psi.density_matrix();
        for keep in [vec![1], vec![2, 4], vec![1, 3, 4]] {
            let k = QubitSubset::new(&keep, 4).unwrap();
            let a = psi.partial_trace(&k).unwrap();
            let b = full.partial_trace(&k).unwrap();
            assert!(a.frobenius_distance(&b) < 1e-13);
        }
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = DMatrix::<Complex64>::identity(2, 2);
        assert!(DensityMatrix::new(bad_trace).is_err());
        let mut neg = DMatrix::<Complex64>::zeros(2, 2);
        neg[(0, 0)] = c(1.1, 0.0);
        neg[(1, 1)] = c(-0.1, 0.0);
        assert!(DensityMatrix::new(neg).is_err());
        let mut tiny = DMatrix::<Complex64>::zeros(2, 2);
        tiny[(0, 0)] = c(1.0 + 5e-13, 0.0);
        tiny[(1, 1)] = c(-5e-13, 0.0);
        let rho = DensityMatrix::new(tiny).unwrap();
        assert_eq!(rho.eigen().unwrap().0[1], 0.0);
    }

    #[test]
    fn random_state_range_and_determinism() {
        assert!(random_pure_state(0, 1).is_err());
        assert!(random_pure_state(7, 1).is_err());
        let a = random_pure_state(1, 7).unwrap();
        let norm: f64 = a.amplitudes().iter().map(|x| x.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(random_pure_state(3, 5).unwrap(), random_pure_state(3, 5).unwrap());
        assert_ne!(random_pure_state(3, 5).unwrap(), random_pure_state(3, 6).unwrap());
    }

    #[test]
    fn permute_moves_qubits() {
        let s = PureState::from_kets(&[("100", c(1.0, 0.0))]).unwrap();
        let p = s.permute_qubits(&[2, 3, 1]).unwrap();
        assert_eq!(p, PureState::from_kets(&[("001", c(1.0, 0.0))]).unwrap());
        assert!(s.permute_qubits(&[1, 1, 2]).is_err());
    }

    #[test]
    fn state_file_records_norm_factor() {
        let loaded = StateFile::parse(r#"{"n_qubits":1,"amplitudes":[[3,0],[0,4]]}"#).unwrap();
        assert!((loaded.norm_factor - 0.2).abs() < 1e-15);
        assert!((loaded.state.amplitudes()[1] - c(0.0, 0.8)).norm() < 1e-15);
        assert!(StateFile::parse(r#"{"n_qubits":2,"amplitudes":[[1,0]]}"#).is_err());
        assert!(StateFile::parse("{not json").is_err());
    }
}
