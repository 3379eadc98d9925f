//! Bit encryption in the group algebra of a small symmetric group.
//!
//! The secret key is an odd involution π. A public-key copy is the coset
//! superposition |φ_σ⟩ = (|σ⟩ + |σπ⟩)/√2 for a uniformly sampled σ, so the
//! copy handed out is the uniform mixture of those states across trials.
//! Bit 0 forwards the copy; bit 1 applies the sign-phase map |σ⟩ → sgn(σ)|σ⟩,
//! which flips the coset state into (|σ⟩ − |σπ⟩)/√2 up to a global phase
//! because sgn(σπ) = −sgn(σ) for odd π. Decryption measures the ±1
//! eigenspaces of the involution unitary U_π: |σ⟩ → |σπ⟩; honest ciphertexts
//! lie entirely in one eigenspace, so decryption is exact.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, RngCore};

use crate::pke::{Ciphertext, DecryptionKey, PlaintextSpace, Scheme};
use crate::qsim::linalg::{cr, CMat, CVec};
use crate::qsim::{
    apply_unitary, MixedState, ProjectiveMeasurement, PureState, QuantumState, UnitaryOp,
};
use crate::{Error, Result};

/// A permutation of {0..k-1} stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm((0..k).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0usize; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// +1 for even, −1 for odd, by inversion counting.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0usize;
        for i in 0..self.0.len() {
            for j in (i + 1)..self.0.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// One-based image string, e.g. "21" for the swap on two points.
    pub fn label(&self) -> String {
        self.0.iter().map(|&x| (x + 1).to_string()).collect()
    }

    pub fn parse_label(k: usize, s: &str) -> Result<Perm> {
        let images: Vec<usize> = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .filter(|&d| d >= 1)
                    .map(|d| d - 1)
                    .ok_or_else(|| Error::Domain(format!("bad permutation label {s:?}")))
            })
            .collect::<Result<_>>()?;
        if images.len() != k {
            return Err(Error::Domain(format!(
                "label {s:?} has wrong degree for k={k}"
            )));
        }
        Perm::from_images(images)
    }
}

/// S_k with a fixed lexicographic enumeration of its elements and cached
/// element-to-index lookup.
#[derive(Debug, Clone)]
pub struct SymmetricGroup {
    k: usize,
    elements: Vec<Perm>,
    index: HashMap<Vec<usize>, usize>,
}

fn permutations_lex(k: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn rec(k: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if current.len() == k {
            out.push(Perm(current.clone()));
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(k, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(k, &mut current, &mut used, &mut out);
    out
}

impl SymmetricGroup {
    pub fn new(k: usize) -> Self {
        let elements = permutations_lex(k);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.0.clone(), i))
            .collect();
        Self { k, elements, index }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> usize {
        self.index[&p.0]
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|p| p.label()).collect()
    }

    /// All odd involutions, in enumeration order.
    pub fn odd_involutions(&self) -> Vec<Perm> {
        self.elements
            .iter()
            .filter(|p| !p.is_identity() && p.is_involution() && p.sign() == -1)
            .cloned()
            .collect()
    }

    /// Right-multiplication unitary U_π: |σ⟩ → |σπ⟩.
    pub fn right_mult_unitary(&self, pi: &Perm) -> Result<UnitaryOp> {
        let images: Vec<usize> = self
            .elements
            .iter()
            .map(|sigma| self.index_of(&sigma.compose(pi)))
            .collect();
        UnitaryOp::from_basis_map(&images)
    }

    /// Right-multiplication matrix without the unitarity re-check.
    pub fn right_mult_matrix(&self, pi: &Perm) -> CMat {
        let n = self.order();
        let mut m = CMat::zeros(n, n);
        for (i, sigma) in self.elements.iter().enumerate() {
            m[(self.index_of(&sigma.compose(pi)), i)] = cr(1.0);
        }
        m
    }

    /// Sign-phase unitary S: |σ⟩ → sgn(σ)|σ⟩.
    pub fn sign_phase_unitary(&self) -> Result<UnitaryOp> {
        let phases: Vec<Complex64> = self
            .elements
            .iter()
            .map(|p| cr(p.sign() as f64))
            .collect();
        UnitaryOp::diagonal(&phases)
    }

    /// Coset superposition (|σ⟩ + |σπ⟩)/√2.
    pub fn coset_state(&self, sigma: &Perm, pi: &Perm) -> Result<PureState> {
        let n = self.order();
        let i = self.index_of(sigma);
        let j = self.index_of(&sigma.compose(pi));
        if i == j {
            return Err(Error::Domain("coset state needs sigma != sigma*pi".into()));
        }
        let mut amps = CVec::zeros(n);
        amps[i] = cr(std::f64::consts::FRAC_1_SQRT_2);
        amps[j] = cr(std::f64::consts::FRAC_1_SQRT_2);
        PureState::new(amps.iter().cloned().collect(), Some(self.labels()))
    }
}

/// Uniformly samples an odd involution of S_k.
pub fn perm_keygen(group: &SymmetricGroup, rng: &mut dyn RngCore) -> Result<Perm> {
    let k = group.degree();
    if !(2..=5).contains(&k) {
        return Err(Error::Domain(format!("group degree {k} outside 2..=5")));
    }
    let involutions = group.odd_involutions();
    let i = rng.gen_range(0..involutions.len());
    Ok(involutions[i].clone())
}

/// The permutation-phase bit encryption scheme.
pub struct PermScheme {
    k: usize,
    group: SymmetricGroup,
}

impl PermScheme {
    pub fn new(k: usize) -> Result<Self> {
        if !(2..=5).contains(&k) {
            return Err(Error::Domain(format!(
                "perm scheme degree k={k} outside 2..=5"
            )));
        }
        Ok(Self {
            k,
            group: SymmetricGroup::new(k),
        })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn key_of(&self, pi: &Perm) -> DecryptionKey {
        DecryptionKey(format!("pi={}", pi.label()))
    }

    pub fn perm_of(&self, key: &DecryptionKey) -> Result<Perm> {
        let label = key
            .0
            .strip_prefix("pi=")
            .ok_or_else(|| Error::Domain(format!("bad perm key {:?}", key.0)))?;
        let pi = Perm::parse_label(self.k, label)?;
        if !pi.is_involution() || pi.is_identity() || pi.sign() != -1 {
            return Err(Error::Domain(format!(
                "key permutation {label} is not an odd involution"
            )));
        }
        Ok(pi)
    }

    fn plus_projector(&self, pi: &Perm) -> CMat {
        let n = self.group.order();
        (CMat::identity(n, n) + self.group.right_mult_matrix(pi)).scale(0.5)
    }
}

impl Scheme for PermScheme {
    fn name(&self) -> &str {
        "perm"
    }

    fn id(&self) -> String {
        format!("perm:k={}", self.k)
    }

    fn keygen(&self, rng: &mut dyn RngCore) -> Result<DecryptionKey> {
        Ok(self.key_of(&perm_keygen(&self.group, rng)?))
    }

    fn derive_pub(&self, key: &DecryptionKey, rng: &mut dyn RngCore) -> Result<MixedState> {
        let pi = self.perm_of(key)?;
        let sigma = &self.group.elements()[rng.gen_range(0..self.group.order())];
        Ok(self.group.coset_state(sigma, &pi)?.to_density())
    }

    fn plaintext_space(&self) -> PlaintextSpace {
        PlaintextSpace::new(vec!["0".into(), "1".into()], "single bit").expect("non-empty")
    }

    fn ciphertext_dim(&self) -> usize {
        self.group.order()
    }

    fn encrypt(
        &self,
        copy: QuantumState,
        plaintext: &str,
        _rng: &mut dyn RngCore,
    ) -> Result<Ciphertext> {
        if copy.dim() != self.ciphertext_dim() {
            return Err(Error::Shape(format!(
                "public-key copy dim {} != {}",
                copy.dim(),
                self.ciphertext_dim()
            )));
        }
        let state = match plaintext {
            "0" => copy,
            "1" => {
                let s = self.group.sign_phase_unitary()?;
                apply_unitary(&s, &copy, 0..copy.factors().len())?
            }
            other => {
                return Err(Error::Domain(format!(
                    "perm scheme encrypts bits, got {other:?}"
                )))
            }
        };
        Ok(Ciphertext {
            state,
            classical_part: None,
        })
    }

    fn decryption_measurement(&self, key: &DecryptionKey) -> Result<ProjectiveMeasurement> {
        let pi = self.perm_of(key)?;
        let plus = self.plus_projector(&pi);
        ProjectiveMeasurement::binary(plus, "0", "1")
    }

    fn exact_ciphertext_density(
        &self,
        key: &DecryptionKey,
        plaintext: &str,
    ) -> Result<MixedState> {
        let pi = self.perm_of(key)?;
        let n = self.group.order();
        let u = self.group.right_mult_matrix(&pi);
        let id = CMat::identity(n, n);
        // Averaging |φ_σ⟩⟨φ_σ| over σ gives (I + U_π)/n; the sign phase
        // conjugates it to (I − U_π)/n.
        let rho = match plaintext {
            "0" => (id + u).scale(1.0 / n as f64),
            "1" => (id - u).scale(1.0 / n as f64),
            other => {
                return Err(Error::Domain(format!(
                    "perm scheme encrypts bits, got {other:?}"
                )))
            }
        };
        Ok(MixedState::new(rho, Some(self.group.labels()))?)
    }

    fn exact_pubkey_density(&self, key: &DecryptionKey) -> Result<MixedState> {
        self.exact_ciphertext_density(key, "0")
    }

    fn enumerate_keys(&self) -> Option<Vec<DecryptionKey>> {
        Some(
            self.group
                .odd_involutions()
                .iter()
                .map(|pi| self.key_of(pi))
                .collect(),
        )
    }
}
