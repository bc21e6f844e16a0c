//! Antilinear multi-copy Pauli contractions ("combs") and the named
//! polynomial SL(2,C) invariants built from them.
//!
//! A comb is a list of Pauli words, one per copy of the state. Each slot holds
//! either a fixed Pauli index or a contraction variable; every variable occurs
//! in exactly two slots and is summed over `mu` with weight `G_mu` taken from
//! [`METRIC`]. A copy contributes the bilinear form `<psi*| word |psi>`, which
//! does not conjugate amplitudes.
//!
//! Textual form used by [`CombSpec::parse`]: words separated by `.`, one
//! character per slot, digits `0..=3` for fixed Paulis and letters for
//! variables. The three-tangle comb reads `m22.m22`.

use std::collections::HashMap;
use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::{permute_raw, PureState};

/// Contraction metric `(G_0, G_1, G_2, G_3)`.
pub const METRIC: [f64; 4] = [-1.0, 1.0, 0.0, 1.0];

/// Names addressable through [`evaluate_named`].
pub const REGISTRY: [&str; 8] = ["tau3", "H", "C4_14", "C4_13", "C4_12", "F1", "F2", "F3"];

/// The registry entries defined on four-qubit states.
pub const FOUR_QUBIT_INVARIANTS: [&str; 7] = ["H", "C4_14", "C4_13", "C4_12", "F1", "F2", "F3"];

/// `sigma_mu` with `sigma_0` the identity.
pub fn pauli(mu: u8) -> Matrix2<Complex64> {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match mu {
        0 => Matrix2::new(o, z, z, o),
        1 => Matrix2::new(z, o, o, z),
        2 => Matrix2::new(z, -i, i, z),
        3 => Matrix2::new(o, z, z, -o),
        _ => panic!("Pauli index {mu} out of range"),
    }
}

/// `sum_ij psi_i (sigma_w1 x ... x sigma_wN)_ij psi_j` for a word of Pauli indices.
pub fn bilinear_form(state: &PureState, word: &[u8]) -> Result<Complex64> {
    if word.len() != state.n_qubits() {
        return Err(Error::BadWord(format!(
            "word of length {} for {} qubits",
            word.len(),
            state.n_qubits()
        )));
    }
    if let Some(bad) = word.iter().find(|&&w| w > 3) {
        return Err(Error::BadWord(format!("Pauli index {bad}")));
    }
    Ok(bilinear_raw(state.amplitudes(), word))
}

/// Unchecked bilinear form on a raw amplitude vector.
///
/// A Pauli word maps `|x>` to `phase(x) |x xor flip>`; `sigma_2` contributes
/// `i (-1)^bit` and `sigma_3` contributes `(-1)^bit`.
pub fn bilinear_raw(amps: &[Complex64], word: &[u8]) -> Complex64 {
    let n = word.len();
    let (mut flip, mut sign_mask, mut n_y) = (0usize, 0usize, 0u32);
    for (k, &w) in word.iter().enumerate() {
        let b = 1usize << (n - 1 - k);
        match w {
            1 => flip |= b,
            2 => {
                flip |= b;
                sign_mask |= b;
                n_y += 1;
            }
            3 => sign_mask |= b,
            _ => {}
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, &a) in amps.iter().enumerate() {
        let t = amps[x ^ flip] * a;
        if (x & sign_mask).count_ones() % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc * Complex64::new(0.0, 1.0).powu(n_y)
}

/// One slot of a comb word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Pauli(u8),
    Var(char),
}

/// Symbolic multi-copy contraction.
#[derive(Debug, Clone, PartialEq)]
pub struct CombSpec {
    n_qubits: usize,
    words: Vec<Vec<Slot>>,
    vars: Vec<char>,
    symmetrize: bool,
    prefactor: f64,
}

impl CombSpec {
    pub fn new(words: Vec<Vec<Slot>>, symmetrize: bool, prefactor: f64) -> Result<Self> {
        let n_qubits = words
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::BadComb("no copies".into()))?;
        if n_qubits == 0 {
            return Err(Error::BadComb("empty word".into()));
        }
        let mut counts: Vec<(char, usize)> = Vec::new();
        for w in &words {
            if w.len() != n_qubits {
                return Err(Error::BadComb("words of different lengths".into()));
            }
            for slot in w {
                match *slot {
                    Slot::Pauli(p) if p > 3 => {
                        return Err(Error::BadWord(format!("Pauli index {p}")))
                    }
                    Slot::Var(v) => match counts.iter_mut().find(|(c, _)| *c == v) {
                        Some((_, k)) => *k += 1,
                        None => counts.push((v, 1)),
                    },
                    _ => {}
                }
            }
        }
        if let Some((v, k)) = counts.iter().find(|(_, k)| *k != 2) {
            return Err(Error::BadComb(format!("variable {v} occurs {k} times")));
        }
        let vars = counts.into_iter().map(|(v, _)| v).collect();
        Ok(CombSpec { n_qubits, words, vars, symmetrize, prefactor })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let words = text
            .split(|c: char| c == '.' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(|w| {
                w.chars()
                    .map(|c| match c {
                        '0'..='3' => Ok(Slot::Pauli(c as u8 - b'0')),
                        c if c.is_ascii_alphabetic() => Ok(Slot::Var(c)),
                        c => Err(Error::BadComb(format!("unexpected character {c:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(words, false, 1.0)
    }

    pub fn symmetrized(mut self) -> Self {
        self.symmetrize = true;
        self
    }

    pub fn scaled(mut self, prefactor: f64) -> Self {
        self.prefactor = prefactor;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_copies(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Vec<Slot>] {
        &self.words
    }

    pub fn variables(&self) -> &[char] {
        &self.vars
    }

    pub fn is_symmetrized(&self) -> bool {
        self.symmetrize
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// Degree of the comb as a polynomial in the amplitudes.
    pub fn homogeneity_degree(&self) -> u32 {
        2 * self.words.len() as u32
    }

    pub fn eval(&self, state: &PureState) -> Result<InvariantValue> {
        let raw = self.eval_raw(state.amplitudes())?;
        Ok(InvariantValue::new(raw, self.homogeneity_degree()))
    }

    /// Comb value on an arbitrary (not necessarily normalised) amplitude vector.
    pub fn eval_raw(&self, amps: &[Complex64]) -> Result<Complex64> {
        if amps.len() != 1usize << self.n_qubits {
            return Err(Error::BadArity {
                expected: self.n_qubits,
                got: amps.len().trailing_zeros() as usize,
            });
        }
        let value = if self.symmetrize {
            let perms = permutations(self.n_qubits);
            let total: Complex64 = perms
                .iter()
                .map(|p| self.contract(&permute_raw(amps, p)))
                .sum();
            total / perms.len() as f64
        } else {
            self.contract(amps)
        };
        Ok(value * self.prefactor)
    }

    fn contract(&self, amps: &[Complex64]) -> Complex64 {
        // G_2 = 0, so variables only run over 0, 1, 3.
        const ACTIVE: [u8; 3] = [0, 1, 3];
        let nv = self.vars.len();
        let mut memo: HashMap<Vec<u8>, Complex64> = HashMap::new();
        let mut assign = vec![0usize; nv];
        let mut total = Complex64::new(0.0, 0.0);
        let mut word = vec![0u8; self.n_qubits];
        loop {
            let weight: f64 = assign.iter().map(|&a| METRIC[ACTIVE[a] as usize]).product();
            let mut prod = Complex64::new(weight, 0.0);
            for w in &self.words {
                for (slot, out) in w.iter().zip(word.iter_mut()) {
                    *out = match *slot {
                        Slot::Pauli(p) => p,
                        Slot::Var(v) => {
                            let k = self.vars.iter().position(|&c| c == v).unwrap();
                            ACTIVE[assign[k]]
                        }
                    };
                }
                let b = *memo
                    .entry(word.clone())
                    .or_insert_with(|| bilinear_raw(amps, &word));
                prod *= b;
            }
            total += prod;

            let mut k = 0;
            loop {
                if k == nv {
                    return total;
                }
                assign[k] += 1;
                if assign[k] < ACTIVE.len() {
                    break;
                }
                assign[k] = 0;
                k += 1;
            }
        }
    }
}

impl fmt::Display for CombSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|s| match s {
                        Slot::Pauli(p) => char::from(b'0' + p),
                        Slot::Var(v) => *v,
                    })
                    .collect()
            })
            .collect();
        write!(f, "{}", words.join("."))?;
        if self.symmetrize {
            write!(f, " [sym]")?;
        }
        if self.prefactor != 1.0 {
            write!(f, " x{}", self.prefactor)?;
        }
        Ok(())
    }
}

/// All permutations of `1..=n` as 1-based qubit orders.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let q = rest.remove(i);
            prefix.push(q);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, q);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// Value of a polynomial invariant before and after taking the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantValue {
    pub raw: Complex64,
    pub modulus: f64,
    pub homogeneity_degree: u32,
}

impl InvariantValue {
    pub fn new(raw: Complex64, homogeneity_degree: u32) -> Self {
        InvariantValue { raw, modulus: raw.norm(), homogeneity_degree }
    }

    /// `modulus^(4/degree)`, the value rescaled to homogeneity degree four.
    pub fn normalized(&self) -> f64 {
        self.modulus.powf(4.0 / self.homogeneity_degree as f64)
    }
}

fn require_qubits(state: &PureState, n: usize) -> Result<()> {
    if state.n_qubits() != n {
        return Err(Error::BadArity { expected: n, got: state.n_qubits() });
    }
    Ok(())
}

pub fn tau3_comb() -> CombSpec {
    CombSpec::parse("m22.m22").expect("static comb")
}

/// Pair invariant with contracted slots `i < j` and `sigma_2` elsewhere.
pub fn c4_comb(i: usize, j: usize) -> Result<CombSpec> {
    if !(1..=4).contains(&i) || !(1..=4).contains(&j) || i >= j {
        return Err(Error::BadPair(i, j));
    }
    let word: String = (1..=4)
        .map(|q| if q == i { 'm' } else if q == j { 'n' } else { '2' })
        .collect();
    CombSpec::parse(&format!("{word}.{word}"))
}

pub fn f1_comb() -> CombSpec {
    CombSpec::parse("mn22.m2l2.2nl2").expect("static comb")
}

pub fn f2_comb() -> CombSpec {
    CombSpec::parse("mn22.m2l2.2n2t.22lt").expect("static comb").symmetrized()
}

/// Three independent two-copy pair contractions on qubit pairs (1,2), (1,3), (2,3).
pub fn f3_comb() -> CombSpec {
    CombSpec::parse("mn22.mn22.r2t2.r2t2.2kl2.2kl2").expect("static comb").scaled(0.5)
}

/// Pure-state three-tangle.
pub fn invariant_tau3_pure(state: &PureState) -> Result<f64> {
    require_qubits(state, 3)?;
    Ok(tau3_raw(state.amplitudes()))
}

/// Three-tangle comb on an unnormalised three-qubit amplitude vector (degree 4).
pub fn tau3_raw(amps: &[Complex64]) -> f64 {
    tau3_poly(amps).norm()
}

/// The complex quartic whose modulus is [`tau3_raw`].
pub fn tau3_poly(amps: &[Complex64]) -> Complex64 {
    let b0 = bilinear_raw(amps, &[0, 2, 2]);
    let b1 = bilinear_raw(amps, &[1, 2, 2]);
    let b3 = bilinear_raw(amps, &[3, 2, 2]);
    -b0 * b0 + b1 * b1 + b3 * b3
}

/// Four-qubit `H = <psi*| sigma_2^(x4) |psi> / 2`.
pub fn invariant_h(state: &PureState) -> Result<Complex64> {
    require_qubits(state, 4)?;
    Ok(bilinear_raw(state.amplitudes(), &[2, 2, 2, 2]) / 2.0)
}

pub fn invariant_c4(state: &PureState, pair: (usize, usize)) -> Result<InvariantValue> {
    require_qubits(state, 4)?;
    c4_comb(pair.0, pair.1)?.eval(state)
}

pub fn invariant_f1(state: &PureState) -> Result<InvariantValue> {
    require_qubits(state, 4)?;
    f1_comb().eval(state)
}

pub fn invariant_f2(state: &PureState) -> Result<InvariantValue> {
    require_qubits(state, 4)?;
    f2_comb().eval(state)
}

pub fn invariant_f3(state: &PureState) -> Result<InvariantValue> {
    require_qubits(state, 4)?;
    f3_comb().eval(state)
}

/// Evaluates a registered invariant by name. Besides [`REGISTRY`], the
/// remaining pair invariants `C4_23`, `C4_24`, `C4_34` are accepted.
pub fn evaluate_named(name: &str, state: &PureState) -> Result<InvariantValue> {
    match name {
        "tau3" => {
            require_qubits(state, 3)?;
            tau3_comb().eval(state)
        }
        "H" => Ok(InvariantValue::new(invariant_h(state)?, 2)),
        "F1" => invariant_f1(state),
        "F2" => invariant_f2(state),
        "F3" => invariant_f3(state),
        _ => {
            let digits = name
                .strip_prefix("C4_")
                .filter(|d| d.len() == 2)
                .ok_or_else(|| Error::Parse(format!("unknown invariant {name:?}")))?;
            let mut ds = digits.chars().map(|c| c.to_digit(10).unwrap_or(0) as usize);
            let (i, j) = (ds.next().unwrap_or(0), ds.next().unwrap_or(0));
            invariant_c4(state, (i, j))
        }
    }
}
