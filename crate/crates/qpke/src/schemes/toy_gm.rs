//! Classical probabilistic bit encryption from quadratic residuosity,
//! embedded in computational-basis states as the degenerate-quantum
//! negative control.
//!
//! The modulus is a tiny semiprime N = p·q and y is a non-residue modulo
//! both primes with Jacobi symbol one. A bit b encrypts to r²·y^b mod N for
//! a random unit r; decryption is the residuosity test modulo p. At these
//! parameters a brute-force adversary decrypts exactly, which is the point.

use rand::{Rng, RngCore};

use crate::pke::{Ciphertext, DecryptionKey, PlaintextSpace, Scheme};
use crate::qsim::linalg::{cr, CMat};
use crate::qsim::{MixedState, ProjectiveMeasurement, PureState, QuantumState};
use crate::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Quadratic residues modulo a prime, by brute-force squaring.
pub fn residue_table(p: u64) -> Vec<u64> {
    let mut table: Vec<u64> = (1..p).map(|x| x * x % p).collect();
    table.sort_unstable();
    table.dedup();
    table
}

pub fn is_qr(x: u64, p: u64) -> bool {
    residue_table(p).contains(&(x % p))
}

/// Jacobi symbol (a/n) for odd n > 0.
pub fn jacobi(mut a: u64, mut n: u64) -> i32 {
    assert!(n % 2 == 1 && n > 0);
    a %= n;
    let mut result = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The toy quadratic-residuosity scheme with fixed public parameters.
pub struct ToyGmScheme {
    modulus: u64,
    y: u64,
    p: u64,
    q: u64,
}

impl ToyGmScheme {
    pub fn new(modulus: u64, y: u64) -> Result<Self> {
        if modulus > 10_000 {
            return Err(Error::Domain(format!(
                "modulus {modulus} exceeds the 10^4 parameter bound"
            )));
        }
        let mut factors = None;
        let mut d = 2u64;
        while d * d <= modulus {
            if modulus % d == 0 {
                factors = Some((d, modulus / d));
                break;
            }
            d += 1;
        }
        let (p, q) =
            factors.ok_or_else(|| Error::Domain(format!("modulus {modulus} is prime")))?;
        if !is_prime(p) || !is_prime(q) || p == q {
            return Err(Error::Domain(format!(
                "modulus {modulus} is not a product of two distinct primes"
            )));
        }
        if y == 0 || y >= modulus || gcd(y, modulus) != 1 {
            return Err(Error::Domain(format!("y={y} is not a unit mod {modulus}")));
        }
        if jacobi(y, modulus) != 1 || is_qr(y, p) || is_qr(y, q) {
            return Err(Error::Domain(format!(
                "y={y} must be a non-residue mod both primes with Jacobi symbol 1"
            )));
        }
        Ok(Self { modulus, y, p, q })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn public_y(&self) -> u64 {
        self.y
    }

    fn parse_key(&self, key: &DecryptionKey) -> Result<(u64, u64)> {
        let parts: Vec<&str> = key.0.split(',').collect();
        let p = parts
            .first()
            .and_then(|s| s.strip_prefix("p="))
            .and_then(|s| s.parse::<u64>().ok());
        let q = parts
            .get(1)
            .and_then(|s| s.strip_prefix("q="))
            .and_then(|s| s.parse::<u64>().ok());
        match (p, q) {
            (Some(p), Some(q)) if p * q == self.modulus => Ok((p, q)),
            _ => Err(Error::Domain(format!("bad key {:?}", key.0))),
        }
    }

    /// Residuosity decryption of a classical ciphertext value.
    pub fn classical_decrypt_bit(&self, c: u64, p: u64) -> u64 {
        if c % p == 0 || is_qr(c, p) {
            0
        } else {
            1
        }
    }
}

impl Scheme for ToyGmScheme {
    fn name(&self) -> &str {
        "toy-gm"
    }

    fn id(&self) -> String {
        format!("toy-gm:N={},y={}", self.modulus, self.y)
    }

    fn keygen(&self, _rng: &mut dyn RngCore) -> Result<DecryptionKey> {
        Ok(DecryptionKey(format!("p={},q={}", self.p, self.q)))
    }

    fn derive_pub(&self, _key: &DecryptionKey, _rng: &mut dyn RngCore) -> Result<MixedState> {
        // The classical public key (N, y) embedded as the basis state |y⟩
        // of the dimension-N register.
        MixedState::basis(self.modulus as usize, self.y as usize, None)
    }

    fn plaintext_space(&self) -> PlaintextSpace {
        PlaintextSpace::new(vec!["0".into(), "1".into()], "single bit").expect("non-empty")
    }

    fn ciphertext_dim(&self) -> usize {
        self.modulus as usize
    }

    fn encrypt(
        &self,
        _copy: QuantumState,
        plaintext: &str,
        rng: &mut dyn RngCore,
    ) -> Result<Ciphertext> {
        let bit = match plaintext {
            "0" => 0u64,
            "1" => 1u64,
            other => {
                return Err(Error::Domain(format!(
                    "toy-gm encrypts bits, got {other:?}"
                )))
            }
        };
        let n = self.modulus;
        let r = loop {
            let candidate = rng.gen_range(1..n);
            if gcd(candidate, n) == 1 {
                break candidate;
            }
        };
        let c = r * r % n * if bit == 1 { self.y } else { 1 } % n;
        Ok(Ciphertext {
            state: QuantumState::Pure(PureState::basis(n as usize, c as usize, None)?),
            classical_part: Some(c.to_string()),
        })
    }

    fn decryption_measurement(&self, key: &DecryptionKey) -> Result<ProjectiveMeasurement> {
        let (p, _q) = self.parse_key(key)?;
        let n = self.modulus as usize;
        let mut p0 = CMat::zeros(n, n);
        let mut p1 = CMat::zeros(n, n);
        for c in 0..n {
            if self.classical_decrypt_bit(c as u64, p) == 0 {
                p0[(c, c)] = cr(1.0);
            } else {
                p1[(c, c)] = cr(1.0);
            }
        }
        ProjectiveMeasurement::new(vec![p0, p1], vec!["0".into(), "1".into()])
    }

    fn exact_ciphertext_density(
        &self,
        _key: &DecryptionKey,
        plaintext: &str,
    ) -> Result<MixedState> {
        let bit = match plaintext {
            "0" => 0u64,
            "1" => 1u64,
            other => {
                return Err(Error::Domain(format!(
                    "toy-gm encrypts bits, got {other:?}"
                )))
            }
        };
        let n = self.modulus;
        let units: Vec<u64> = (1..n).filter(|&r| gcd(r, n) == 1).collect();
        let weight = 1.0 / units.len() as f64;
        let mut rho = CMat::zeros(n as usize, n as usize);
        for r in units {
            let c = (r * r % n * if bit == 1 { self.y } else { 1 } % n) as usize;
            rho[(c, c)] += cr(weight);
        }
        MixedState::new(rho, None)
    }

    fn exact_pubkey_density(&self, key: &DecryptionKey) -> Result<MixedState> {
        let mut throwaway = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        self.derive_pub(key, &mut throwaway)
    }

    fn enumerate_keys(&self) -> Option<Vec<DecryptionKey>> {
        Some(vec![DecryptionKey(format!("p={},q={}", self.p, self.q))])
    }
}

use rand::SeedableRng;
