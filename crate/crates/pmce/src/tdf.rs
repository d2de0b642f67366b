//! The same blind-and-encode construction over any injective trapdoor
//! function: coins are sampled directly (no hash binds them to an error
//! vector, so decryption has no hash recheck — a deterministic C2 leaves
//! each image a single preimage) and C2 = F(ek, r).
//!
//! Two instantiations ship for tests: a toy modular-exponentiation family
//! (small RSA-style modulus; strictly a correctness vehicle, never for
//! production) and an adapter wrapping McEliece with a fixed error vector,
//! which is injective because the public generator has full row rank.

use crate::bits::BitString;
use crate::cca2::{self, PrgId, RejectReason, SchemeError};
use crate::mceliece::{self, McEliecePublicKey, McElieceSecretKey, McElieceError};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TdfError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("input length {got} differs from required {expected}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    McEliece(#[from] McElieceError),
}

/// An injective trapdoor function family over k-bit inputs.
pub trait TrapdoorFamily {
    type EvalKey: Clone;
    type Trapdoor: Clone;
    type Image: Clone + PartialEq + std::fmt::Debug;

    /// The input length k.
    fn input_bits(&self) -> usize;

    fn generate<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(Self::EvalKey, Self::Trapdoor), TdfError>;

    fn forward(&self, ek: &Self::EvalKey, x: &BitString) -> Result<Self::Image, TdfError>;

    /// Inverts an image; `None` when the image has no k-bit preimage.
    fn invert(&self, td: &Self::Trapdoor, image: &Self::Image) -> Option<BitString>;
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
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

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn modinv(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = egcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Toy modular-exponentiation trapdoor family. Small modulus, trial-division
/// primes: a correctness vehicle for the construction, with no security.
#[derive(Clone, Copy, Debug)]
pub struct ToyModularTdf {
    pub input_bits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyEvalKey {
    pub input_bits: usize,
    pub modulus: BigUint,
    pub exponent: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyTrapdoor {
    pub input_bits: usize,
    pub modulus: BigUint,
    pub secret_exponent: BigUint,
}

impl ToyModularTdf {
    pub fn new(input_bits: usize) -> Result<ToyModularTdf, TdfError> {
        if !(3..=56).contains(&input_bits) {
            return Err(TdfError::Parameter(format!(
                "toy family supports 3..=56 input bits, got {input_bits}"
            )));
        }
        Ok(ToyModularTdf { input_bits })
    }
}

impl TrapdoorFamily for ToyModularTdf {
    type EvalKey = ToyEvalKey;
    type Trapdoor = ToyTrapdoor;
    type Image = BigUint;

    fn input_bits(&self) -> usize {
        self.input_bits
    }

    fn generate<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(ToyEvalKey, ToyTrapdoor), TdfError> {
        // Primes two bits longer than k/2 make the modulus exceed 2^k, so
        // every k-bit input is below it and the map is injective.
        let half_bits = self.input_bits / 2 + 2;
        let exponent = 65_537u64;
        let sample_prime = |rng: &mut R| loop {
            let candidate = (rng.gen_range(1u64 << (half_bits - 1)..1u64 << half_bits)) | 1;
            if is_prime(candidate) {
                return candidate;
            }
        };
        loop {
            let p = sample_prime(rng);
            let q = sample_prime(rng);
            if p == q {
                continue;
            }
            let lambda = (p - 1) / num_integer::gcd(p - 1, q - 1) * (q - 1);
            let Some(secret) = modinv(exponent % lambda, lambda) else {
                continue;
            };
            let modulus = p * q;
            debug_assert!(modulus > (1u64 << self.input_bits));
            return Ok((
                ToyEvalKey {
                    input_bits: self.input_bits,
                    modulus: modulus.into(),
                    exponent: exponent.into(),
                },
                ToyTrapdoor {
                    input_bits: self.input_bits,
                    modulus: modulus.into(),
                    secret_exponent: secret.into(),
                },
            ));
        }
    }

    fn forward(&self, ek: &ToyEvalKey, x: &BitString) -> Result<BigUint, TdfError> {
        if x.len() != self.input_bits {
            return Err(TdfError::Length {
                expected: self.input_bits,
                got: x.len(),
            });
        }
        let value = x.to_integer().to_u64().expect("k <= 56 bits");
        let modulus = ek.modulus.to_u64().expect("modulus fits u64");
        let exponent = ek.exponent.to_u64().expect("exponent fits u64");
        Ok(powmod(value, exponent, modulus).into())
    }

    fn invert(&self, td: &ToyTrapdoor, image: &BigUint) -> Option<BitString> {
        let modulus = td.modulus.to_u64().expect("modulus fits u64");
        let image = image.to_u64().filter(|&v| v < modulus)?;
        let secret = td.secret_exponent.to_u64().expect("exponent fits u64");
        let preimage = powmod(image, secret, modulus);
        if preimage >> self.input_bits != 0 {
            return None;
        }
        BitString::from_integer(&preimage.into(), self.input_bits).ok()
    }
}

/// McEliece with a fixed public error vector, as a second injective family
/// for cross-checks: c = x·G_pub ⊕ e_fixed determines x·G_pub uniquely, and
/// the generator has full row rank.
#[derive(Clone, Copy, Debug)]
pub struct McElieceWrapTdf {
    pub m: u32,
    pub t: usize,
}

#[derive(Clone)]
pub struct McElieceWrapEval {
    pub pk: McEliecePublicKey,
    pub error: BitString,
}

#[derive(Clone)]
pub struct McElieceWrapTrapdoor {
    pub sk: McElieceSecretKey,
}

impl TrapdoorFamily for McElieceWrapTdf {
    type EvalKey = McElieceWrapEval;
    type Trapdoor = McElieceWrapTrapdoor;
    type Image = BitString;

    fn input_bits(&self) -> usize {
        (1usize << self.m) - self.m as usize * self.t
    }

    fn generate<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(McElieceWrapEval, McElieceWrapTrapdoor), TdfError> {
        let (pk, sk) = mceliece::keygen(self.m, self.t, rng)?;
        let error = BitString::random_of_weight(pk.code_len(), pk.t, rng);
        Ok((McElieceWrapEval { pk, error }, McElieceWrapTrapdoor { sk }))
    }

    fn forward(&self, ek: &McElieceWrapEval, x: &BitString) -> Result<BitString, TdfError> {
        Ok(mceliece::encrypt(&ek.pk, x, &ek.error)?)
    }

    fn invert(&self, td: &McElieceWrapTrapdoor, image: &BitString) -> Option<BitString> {
        mceliece::decrypt(&td.sk, image).map(|(msg, _)| msg)
    }
}

#[derive(Clone)]
pub struct TdfPublicKey<F: TrapdoorFamily> {
    pub eval_key: F::EvalKey,
    pub prg_id: PrgId,
    pub input_bits: usize,
}

#[derive(Clone)]
pub struct TdfSecretKey<F: TrapdoorFamily> {
    pub trapdoor: F::Trapdoor,
    pub prg_id: PrgId,
    pub input_bits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdfCiphertext<I> {
    pub c1: BigUint,
    pub c2: I,
    pub msg_len: usize,
}

/// Pipeline intermediates of one encryption, mirroring the code-based
/// scheme's trace so the two can be diffed stage by stage.
#[derive(Clone, Debug)]
pub struct TdfEncryptionTrace {
    pub coins: BitString,
    pub weight: usize,
    pub block_count: usize,
    pub carry_sum: u64,
    pub shift: usize,
    pub masked: BitString,
    pub encoded: BitString,
    pub shifted: BitString,
}

pub fn keygen<F: TrapdoorFamily, R: Rng + ?Sized>(
    family: &F,
    rng: &mut R,
) -> Result<(TdfPublicKey<F>, TdfSecretKey<F>), TdfError> {
    let input_bits = family.input_bits();
    if input_bits < 3 {
        return Err(TdfError::Parameter(format!(
            "input length {input_bits} below 3: no two-block split exists"
        )));
    }
    let (eval_key, trapdoor) = family.generate(rng)?;
    Ok((
        TdfPublicKey {
            eval_key,
            prg_id: PrgId::Sha256Ctr,
            input_bits,
        },
        TdfSecretKey {
            trapdoor,
            prg_id: PrgId::Sha256Ctr,
            input_bits,
        },
    ))
}

/// Uniform coins, rejecting the all-zero and all-one strings.
pub fn sample_coins<R: Rng + ?Sized>(input_bits: usize, rng: &mut R) -> BitString {
    loop {
        let coins = BitString::random(input_bits, rng);
        let w = coins.weight();
        if w != 0 && w != input_bits {
            return coins;
        }
    }
}

pub fn encrypt<F: TrapdoorFamily, R: Rng + ?Sized>(
    family: &F,
    pk: &TdfPublicKey<F>,
    msg: &BitString,
    rng: &mut R,
) -> Result<TdfCiphertext<F::Image>, TdfError> {
    let coins = sample_coins(pk.input_bits, rng);
    encrypt_with_coins(family, pk, msg, &coins).map(|(ct, _)| ct)
}

/// Encryption under caller-chosen coins; the deterministic core of
/// [`encrypt`], exposed for pipeline diffing and vector generation.
pub fn encrypt_with_coins<F: TrapdoorFamily>(
    family: &F,
    pk: &TdfPublicKey<F>,
    msg: &BitString,
    coins: &BitString,
) -> Result<(TdfCiphertext<F::Image>, TdfEncryptionTrace), TdfError> {
    if coins.len() != pk.input_bits {
        return Err(TdfError::Length {
            expected: pk.input_bits,
            got: coins.len(),
        });
    }
    let parts = cca2::blind_encode(msg, coins, pk.prg_id)?;
    let c2 = family.forward(&pk.eval_key, coins)?;
    Ok((
        TdfCiphertext {
            c1: parts.c1,
            c2,
            msg_len: msg.len(),
        },
        TdfEncryptionTrace {
            coins: coins.clone(),
            weight: parts.layout.weight,
            block_count: parts.layout.block_count,
            carry_sum: parts.carry_sum,
            shift: parts.shift,
            masked: parts.masked,
            encoded: parts.encoded,
            shifted: parts.shifted,
        },
    ))
}

/// Decryption with the rejection reason exposed. The code-based scheme's
/// hash recheck has no analogue here; only the unblinding and pad checks
/// apply.
pub fn decrypt_diag<F: TrapdoorFamily>(
    family: &F,
    sk: &TdfSecretKey<F>,
    ct: &TdfCiphertext<F::Image>,
) -> Result<BitString, RejectReason> {
    if ct.msg_len == 0 {
        return Err(RejectReason::DecodeFail);
    }
    let Some(coins) = family.invert(&sk.trapdoor, &ct.c2) else {
        return Err(RejectReason::DecodeFail);
    };
    let w = coins.weight();
    if w == 0 || w == coins.len() {
        return Err(RejectReason::DegenerateR);
    }
    cca2::blind_decode(&ct.c1, ct.msg_len, &coins, sk.prg_id).outcome
}

pub fn decrypt<F: TrapdoorFamily>(
    family: &F,
    sk: &TdfSecretKey<F>,
    ct: &TdfCiphertext<F::Image>,
) -> Option<BitString> {
    decrypt_diag(family, sk, ct).ok()
}
