//! Reference implementations written without the library's fast paths.
#![allow(dead_code)]

use num_complex::Complex64;
use qtangle::comb::{CombSpec, Slot, METRIC};
use qtangle::PureState;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `sigma_mu[row][col]` written out by hand.
fn sigma(mu: u8, row: usize, col: usize) -> Complex64 {
    let z = c(0.0, 0.0);
    match (mu, row, col) {
        (0, r, k) if r == k => c(1.0, 0.0),
        (1, r, k) if r != k => c(1.0, 0.0),
        (2, 0, 1) => c(0.0, -1.0),
        (2, 1, 0) => c(0.0, 1.0),
        (3, 0, 0) => c(1.0, 0.0),
        (3, 1, 1) => c(-1.0, 0.0),
        _ => z,
    }
}

fn bit(idx: usize, q: usize, n: usize) -> usize {
    (idx >> (n - 1 - q)) & 1
}

/// Full double sum over basis pairs of `psi_x (sigma_w)_xy psi_y`.
pub fn naive_bilinear(amps: &[Complex64], word: &[u8]) -> Complex64 {
    let n = word.len();
    let mut total = c(0.0, 0.0);
    for x in 0..amps.len() {
        for y in 0..amps.len() {
            let mut m = c(1.0, 0.0);
            for (q, &w) in word.iter().enumerate() {
                m *= sigma(w, bit(x, q, n), bit(y, q, n));
            }
            total += amps[x] * m * amps[y];
        }
    }
    total
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Nested loops over every assignment of every contraction variable to
/// `0..4`, slot-permuted copies of the words for symmetrised combs.
pub fn naive_comb(spec: &CombSpec, amps: &[Complex64]) -> Complex64 {
    let n = spec.n_qubits();
    let vars = spec.variables();
    let perms = if spec.is_symmetrized() {
        permutations(&(0..n).collect::<Vec<_>>())
    } else {
        vec![(0..n).collect()]
    };
    let mut total = c(0.0, 0.0);
    for perm in &perms {
        for code in 0..4usize.pow(vars.len() as u32) {
            let assign: Vec<u8> = (0..vars.len()).map(|k| ((code >> (2 * k)) & 3) as u8).collect();
            let mut term = c(assign.iter().map(|&a| METRIC[a as usize]).product(), 0.0);
            for word in spec.words() {
                let w: Vec<u8> = perm
                    .iter()
                    .map(|&slot| match word[slot] {
                        Slot::Pauli(p) => p,
                        Slot::Var(v) => assign[vars.iter().position(|&x| x == v).unwrap()],
                    })
                    .collect();
                term *= naive_bilinear(amps, &w);
            }
            total += term;
        }
    }
    total * spec.prefactor() / perms.len() as f64
}

/// Cayley hyperdeterminant form `4 |d1 - 2 d2 + 4 d3|`.
pub fn hyperdet_tau3(a: &[Complex64]) -> f64 {
    let d1 = a[0] * a[0] * a[7] * a[7] + a[1] * a[1] * a[6] * a[6] + a[2] * a[2] * a[5] * a[5] + a[4] * a[4] * a[3] * a[3];
    let d2 = a[0] * a[7] * a[3] * a[4]
        + a[0] * a[7] * a[5] * a[2]
        + a[0] * a[7] * a[6] * a[1]
        + a[3] * a[4] * a[5] * a[2]
        + a[3] * a[4] * a[6] * a[1]
        + a[5] * a[2] * a[6] * a[1];
    let d3 = a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4];
    4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm()
}

/// Reduced density matrix on `keep` (1-based, ascending) by explicit index loops.
pub fn naive_partial_trace(state: &PureState, keep: &[usize]) -> Vec<Vec<Complex64>> {
    let n = state.n_qubits();
    let amps = state.amplitudes();
    let k = keep.len();
    let mut rho = vec![vec![c(0.0, 0.0); 1 << k]; 1 << k];
    for x in 0..amps.len() {
        for y in 0..amps.len() {
            let traced_equal = (1..=n)
                .filter(|q| !keep.contains(q))
                .all(|q| bit(x, q - 1, n) == bit(y, q - 1, n));
            if !traced_equal {
                continue;
            }
            let sub = |idx: usize| keep.iter().fold(0, |acc, &q| (acc << 1) | bit(idx, q - 1, n));
            rho[sub(x)][sub(y)] += amps[x] * amps[y].conj();
        }
    }
    rho
}

/// Concurrence from the Hermitian matrix `sqrt(sqrt(rho) rho~ sqrt(rho))`.
pub fn hermitian_concurrence(rho: &[Vec<Complex64>]) -> f64 {
    use nalgebra::DMatrix;
    let m = DMatrix::from_fn(4, 4, |i, j| rho[i][j]);
    let eig = m.clone().symmetric_eigen();
    let sqrt_rho = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| c(l.max(0.0).sqrt(), 0.0)))
        * eig.eigenvectors.adjoint();
    let yy = DMatrix::from_fn(4, 4, |i, j| {
        let (a, b) = (i >> 1, i & 1);
        let (p, q) = (j >> 1, j & 1);
        sigma(2, a, p) * sigma(2, b, q)
    });
    let tilde = &yy * m.conjugate() * &yy;
    let r = &sqrt_rho * tilde * &sqrt_rho;
    let r = (&r + r.adjoint()).scale(0.5);
    let mut l: Vec<f64> = r.symmetric_eigenvalues().iter().map(|x| x.max(0.0).sqrt()).collect();
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

pub fn max_abs_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
