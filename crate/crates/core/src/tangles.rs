//! One-tangles, Wootters concurrence, two-tangles, pure three-tangles and the
//! CKW residue.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::Serialize;

use crate::comb::{self, pauli};
use crate::error::{Error, Result};
use crate::qstate::{DensityMatrix, PureState};
use crate::roof::{self, RoofOptions};
use crate::tol;

/// `4 det rho_j`, clamped into `[0, 1]`.
pub fn one_tangle(state: &PureState, j: usize) -> Result<f64> {
    state.check_qubit(j)?;
    let rho = state.reduce(&[j])?;
    Ok(clamp_unit(4.0 * rho.determinant().re))
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

fn spin_flip() -> DMatrix<Complex64> {
    let yy = pauli(2).kronecker(&pauli(2));
    DMatrix::from_fn(4, 4, |i, j| yy[(i, j)])
}

/// Square roots of the eigenvalues of `rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y)`,
/// sorted descending.
///
/// They are the singular values of the complex symmetric matrix
/// `T_ij = sqrt(l_i l_j) <v_i*| sigma_y x sigma_y |v_j>` built from the
/// eigenpairs of `rho`, which avoids square roots of tiny eigenvalues.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    if rho.n_qubits() != 2 {
        return Err(Error::BadDimension(format!(
            "concurrence needs a two-qubit matrix, got {} qubits",
            rho.n_qubits()
        )));
    }
    let (values, vectors) = rho.eigen()?;
    // eigenvalues at the solver's noise floor would enter as sqrt(noise) ~ 1e-8
    let floor = 16.0 * f64::EPSILON * values.iter().cloned().fold(0.0, f64::max);
    let w = DMatrix::from_fn(4, 4, |i, k| {
        let l = values[k];
        if l > floor { vectors[k][i] * l.sqrt() } else { Complex64::new(0.0, 0.0) }
    });
    let t = w.transpose() * spin_flip() * &w;
    let mut out = [0.0; 4];
    for (k, s) in t.singular_values().iter().enumerate() {
        out[k] = *s;
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// The same quantities through the Schur form of `rho rho~`.
pub fn wootters_lambdas_schur(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let yy = spin_flip();
    let m = rho.entries();
    let product = m * &yy * m.conjugate() * &yy;
    let (_, t) = Schur::new(product).unpack();
    let mut out = [0.0; 4];
    for (k, ev) in t.diagonal().iter().enumerate() {
        if ev.im.abs() > tol::SPECTRAL_IMAG {
            return Err(Error::SpectralFailure(format!("complex eigenvalue {ev}")));
        }
        if ev.re < -tol::SPECTRAL {
            return Err(Error::SpectralFailure(format!("negative eigenvalue {ev}")));
        }
        out[k] = ev.re.max(0.0).sqrt();
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Squared concurrence of the `(j, k)` marginal.
pub fn two_tangle(state: &PureState, j: usize, k: usize) -> Result<f64> {
    if j == k {
        return Err(Error::BadPair(j, k));
    }
    let c = concurrence(&state.reduce(&[j, k])?)?;
    Ok(clamp_unit(c * c))
}

pub fn three_tangle_pure(state: &PureState) -> Result<f64> {
    comb::invariant_tau3_pure(state)
}

/// `tau_1^(j) - sum_{k != j} tau_2^(jk)`, unclamped.
pub fn ckw_residue(state: &PureState, j: usize) -> Result<f64> {
    state.check_qubit(j)?;
    if state.n_qubits() < 2 {
        return Err(Error::BadArity { expected: 2, got: state.n_qubits() });
    }
    let mut r = one_tangle(state, j)?;
    for k in (1..=state.n_qubits()).filter(|&k| k != j) {
        r -= two_tangle(state, j, k)?;
    }
    Ok(r)
}

/// How a three-tangle entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThreeTangleKind {
    Pure,
    RoofEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreeTangle {
    pub value: f64,
    pub kind: ThreeTangleKind,
}

/// Every one-, two- and three-tangle of a state plus the CKW residues.
/// Map keys list qubit positions in ascending order (`"1"`, `"12"`, `"123"`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangleReport {
    pub n_qubits: usize,
    pub one_tangles: BTreeMap<String, f64>,
    pub two_tangles: BTreeMap<String, f64>,
    pub three_tangles: BTreeMap<String, ThreeTangle>,
    pub residues: BTreeMap<String, f64>,
}

impl TangleReport {
    /// Three-qubit states get the pure three-tangle; four-qubit states get
    /// roof estimates on every triple when `roof` is given.
    pub fn compute(state: &PureState, roof: Option<&RoofOptions>) -> Result<Self> {
        let n = state.n_qubits();
        let mut one_tangles = BTreeMap::new();
        let mut two_tangles = BTreeMap::new();
        let mut three_tangles = BTreeMap::new();
        let mut residues = BTreeMap::new();
        for j in 1..=n {
            one_tangles.insert(j.to_string(), one_tangle(state, j)?);
        }
        for j in 1..=n {
            for k in j + 1..=n {
                two_tangles.insert(format!("{j}{k}"), two_tangle(state, j, k)?);
            }
        }
        if n >= 2 {
            for j in 1..=n {
                let sum: f64 = two_tangles
                    .iter()
                    .filter(|(key, _)| key.contains(char::from_digit(j as u32, 10).unwrap()))
                    .map(|(_, v)| v)
                    .sum();
                residues.insert(j.to_string(), one_tangles[&j.to_string()] - sum);
            }
        }
        if n == 3 {
            three_tangles.insert(
                "123".to_string(),
                ThreeTangle { value: three_tangle_pure(state)?, kind: ThreeTangleKind::Pure },
            );
        } else if n == 4 {
            if let Some(opts) = roof {
                for (key, res) in roof::roof_three_tangles_all(state, opts)? {
                    three_tangles.insert(
                        key,
                        ThreeTangle { value: res.value, kind: ThreeTangleKind::RoofEstimate },
                    );
                }
            }
        }
        Ok(TangleReport { n_qubits: n, one_tangles, two_tangles, three_tangles, residues })
    }

    /// Residues clamped at zero, for checks that need a monotone view.
    pub fn residues_clamped(&self) -> BTreeMap<String, f64> {
        self.residues.iter().map(|(k, v)| (k.clone(), v.max(0.0))).collect()
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str("qubit  tau1        sum tau2    residue\n");
        for j in 1..=self.n_qubits {
            let key = j.to_string();
            let t1 = self.one_tangles[&key];
            let r = self.residues.get(&key).copied().unwrap_or(f64::NAN);
            out.push_str(&format!("{:<6} {:<11} {:<11} {}\n", j, fmt6(t1), fmt6(t1 - r), fmt6(r)));
        }
        if !self.two_tangles.is_empty() {
            out.push_str("\npair   tau2\n");
            for (k, v) in &self.two_tangles {
                out.push_str(&format!("{:<6} {}\n", k, fmt6(*v)));
            }
        }
        if !self.three_tangles.is_empty() {
            out.push_str("\ntriple tau3        kind\n");
            for (k, v) in &self.three_tangles {
                let kind = match v.kind {
                    ThreeTangleKind::Pure => "pure",
                    ThreeTangleKind::RoofEstimate => "roof (upper bound)",
                };
                out.push_str(&format!("{:<6} {:<11} {}\n", k, fmt6(v.value), kind));
            }
        }
        out
    }
}

/// Six significant digits, as used by every table view.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.5e}", x);
    let v: f64 = s.parse().unwrap_or(x);
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        let t = format!("{:.*}", decimals, v);
        if t.contains('.') {
            t.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            t
        }
    } else {
        s
    }
}
