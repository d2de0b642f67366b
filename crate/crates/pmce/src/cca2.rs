//! The layered chosen-ciphertext-secure construction.
//!
//! Encryption of an n-bit message under a key with code dimension k:
//!
//! 1. sample a weight-t error vector e and set the coins r = T(e), retrying
//!    on all-zero/all-one digests (T is a fixed k-bit hash);
//! 2. mask the message with a PRG stream: m̃ = m ⊕ G(r);
//! 3. derive the factorial carry digits u_i = (r+i) mod (l−i) from the coin
//!    value, encode m̃ with the block permutation they select, and rotate
//!    the result left by q = r mod n;
//! 4. blind the rotated value y into C1 = (h·y + r̄)·r + z over the
//!    integers, where h is the coin weight, r̄ the complement value and z
//!    the digit sum;
//! 5. C2 encrypts the coins themselves: C2 = r·G_pub ⊕ e.
//!
//! Decryption recovers r from C2, recomputes e = C2 ⊕ r·G_pub and applies
//! three consistency checks: the hash recheck r = T(e) (which kills the
//! two-bit-swap mauling of C2), exact-division/range recovery of y from C1,
//! and the pad-equality check on the trailing bits. Every failure is the
//! single value ⊥ at the public interface; a diagnostic variant names the
//! failing check for the test harness.

use crate::bits::BitString;
use crate::matrix::vec_mat_mul;
use crate::mceliece::{self, McEliecePublicKey, McElieceSecretKey, McElieceError};
use crate::pca::{self, FactorialCarry, PcaError, PcaLayout};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemeError {
    #[error(transparent)]
    McEliece(#[from] McElieceError),
    #[error(transparent)]
    Pca(#[from] PcaError),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("message must be at least one bit")]
    EmptyMessage,
}

/// Identifier of the fixed hash instantiation (counter-mode SHA-256).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HashId {
    Sha256Ctr,
}

/// Identifier of the fixed PRG instantiation (counter-mode SHA-256).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrgId {
    Sha256Ctr,
}

impl HashId {
    pub fn code(self) -> u8 {
        1
    }

    pub fn from_code(code: u8) -> Option<HashId> {
        (code == 1).then_some(HashId::Sha256Ctr)
    }
}

impl PrgId {
    pub fn code(self) -> u8 {
        1
    }

    pub fn from_code(code: u8) -> Option<PrgId> {
        (code == 1).then_some(PrgId::Sha256Ctr)
    }
}

fn hash_stream(tag: &[u8], input: &BitString, out_bits: usize) -> BitString {
    let input_bytes = input.to_bytes();
    let nbytes = out_bits.div_ceil(8);
    let mut out = Vec::with_capacity(nbytes + 32);
    let mut counter: u64 = 0;
    while out.len() < nbytes {
        let mut h = Sha256::new();
        h.update(tag);
        h.update(counter.to_le_bytes());
        h.update((input.len() as u64).to_le_bytes());
        h.update(&input_bytes);
        out.extend_from_slice(&h.finalize());
        counter += 1;
    }
    out.truncate(nbytes);
    if out_bits % 8 != 0 {
        *out.last_mut().expect("out_bits >= 1") &= 0xffu8 << (8 - out_bits % 8);
    }
    BitString::from_bytes(&out, out_bits).expect("padding cleared")
}

/// The target-collision-resistant hash T, producing exactly `out_bits` bits.
/// The domain is any bit string (the error vector is longer than k).
pub fn tcr_hash(id: HashId, input: &BitString, out_bits: usize) -> BitString {
    match id {
        HashId::Sha256Ctr => hash_stream(b"PMCE-TCR-v1", input, out_bits),
    }
}

/// The pseudorandom generator G in counter mode; prefixes are consistent
/// across output lengths.
pub fn prg_expand(id: PrgId, seed: &BitString, out_bits: usize) -> BitString {
    match id {
        PrgId::Sha256Ctr => hash_stream(b"PMCE-PRG-v1", seed, out_bits),
    }
}

#[derive(Clone, Debug)]
pub struct Cca2PublicKey {
    pub mce: McEliecePublicKey,
    pub hash_id: HashId,
    pub prg_id: PrgId,
}

impl Cca2PublicKey {
    /// The coin length k equals the code dimension: coins are the McEliece
    /// plaintext.
    pub fn coin_bits(&self) -> usize {
        self.mce.code_dim()
    }
}

#[derive(Clone)]
pub struct Cca2SecretKey {
    pub mce_sk: McElieceSecretKey,
    /// Needed to recompute e = C2 ⊕ r·G_pub during decryption.
    pub mce_pk: McEliecePublicKey,
    pub hash_id: HashId,
    pub prg_id: PrgId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cca2Ciphertext {
    /// Arbitrary-precision blinding of the encoded message.
    pub c1: BigUint,
    /// McEliece encryption of the coins, code_len bits.
    pub c2: BitString,
    /// Plaintext bit length n; decryption needs it before anything else.
    pub msg_len: usize,
}

/// Why a decryption was rejected. Diagnostic only: the public interface
/// collapses every case to ⊥.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// McEliece decryption returned ⊥ (or the ciphertext was malformed).
    DecodeFail,
    /// Hash recheck r = T(e) failed.
    Eq2Fail,
    /// Recovered coins were all-zero or all-one.
    DegenerateR,
    /// Divisibility/range recovery of the encoded value failed.
    Eq3Fail,
    /// Trailing pad bits did not equal the leading coin bits.
    Eq4Fail,
}

pub fn keygen<R: Rng + ?Sized>(
    m: u32,
    t: usize,
    rng: &mut R,
) -> Result<(Cca2PublicKey, Cca2SecretKey), SchemeError> {
    let (mce_pk, mce_sk) = mceliece::keygen(m, t, rng)?;
    if mce_pk.code_dim() < 3 {
        return Err(SchemeError::Parameter(format!(
            "code dimension {} below 3: no two-block split exists",
            mce_pk.code_dim()
        )));
    }
    Ok((
        Cca2PublicKey {
            mce: mce_pk.clone(),
            hash_id: HashId::Sha256Ctr,
            prg_id: PrgId::Sha256Ctr,
        },
        Cca2SecretKey {
            mce_sk,
            mce_pk,
            hash_id: HashId::Sha256Ctr,
            prg_id: PrgId::Sha256Ctr,
        },
    ))
}

/// Samples weight-t error vectors until the hash of one yields usable coins
/// (not all-zero, not all-one). Returns (error vector, coins).
pub fn derive_coins<R: Rng + ?Sized>(pk: &Cca2PublicKey, rng: &mut R) -> (BitString, BitString) {
    let k = pk.coin_bits();
    loop {
        let e = BitString::random_of_weight(pk.mce.code_len(), pk.mce.t, rng);
        let coins = tcr_hash(pk.hash_id, &e, k);
        let w = coins.weight();
        if w != 0 && w != k {
            return (e, coins);
        }
    }
}

/// Reduces a multi-limb value modulo a u64.
fn mod_limbs(limbs: &[u64], modulus: u64) -> u64 {
    let mut acc: u128 = 0;
    for &limb in limbs.iter().rev() {
        acc = ((acc << 64) | limb as u128) % modulus as u128;
    }
    acc as u64
}

/// The factorial carry digits determined by the coin value:
/// u_i = (value + i) mod (l − i) for i < l and u_l = 0. Since
/// (value + i) ≡ (value + l) (mod l − i), all digits are residues of the
/// single shifted value, which lets consecutive moduli share one long
/// reduction per 63-bit batch.
pub fn carry_from_coins(value: &BigUint, block_count: usize) -> FactorialCarry {
    assert!(block_count >= 2, "at least two blocks required");
    let l = block_count;
    let shifted = value + BigUint::from(l as u64);
    let limbs = shifted.to_u64_digits();
    let mut digits = vec![0usize; l];
    let mut hi = l - 1;
    while hi >= 1 {
        let mut prod: u128 = hi as u128;
        let mut lo = hi;
        while lo > 1 && prod * (lo as u128 - 1) < (1u128 << 63) {
            lo -= 1;
            prod *= lo as u128;
        }
        let reduced = mod_limbs(&limbs, prod as u64);
        for d in lo..=hi {
            digits[l - 1 - d] = (reduced % d as u64) as usize;
        }
        if lo == 1 {
            break;
        }
        hi = lo - 1;
    }
    FactorialCarry::from_digits(digits).expect("residues respect positional bounds")
}

/// Intermediates of the shared blind-and-encode pipeline.
pub(crate) struct BlindParts {
    pub layout: PcaLayout,
    pub carry: FactorialCarry,
    pub carry_sum: u64,
    pub shift: usize,
    pub masked: BitString,
    pub encoded: BitString,
    pub shifted: BitString,
    pub c1: BigUint,
}

/// The encode half shared between the code-based scheme and the generic
/// trapdoor-function scheme: mask, permute, rotate, blind.
pub(crate) fn blind_encode(
    msg: &BitString,
    coins: &BitString,
    prg: PrgId,
) -> Result<BlindParts, SchemeError> {
    if msg.is_empty() {
        return Err(SchemeError::EmptyMessage);
    }
    let layout = pca::derive_layout(msg.len(), coins)?;
    let value = coins.to_integer();
    let carry = carry_from_coins(&value, layout.block_count);
    let carry_sum = carry.digit_sum();
    let mask = prg_expand(prg, coins, msg.len());
    let masked = msg.xor(&mask).expect("equal lengths");
    let encoded = pca::encode_with_carry(&masked, &layout, &carry)?;
    let shift = (&value % msg.len()).to_usize().expect("shift below n");
    let shifted = pca::circular_shift(&encoded, shift)?;
    let weight = BigUint::from(layout.weight as u64);
    let c1 = (weight * shifted.to_integer() + coins.complement_value()) * &value + carry_sum;
    Ok(BlindParts {
        layout,
        carry,
        carry_sum,
        shift,
        masked,
        encoded,
        shifted,
        c1,
    })
}

/// Inverts the blinding: computes ((c1 − carry_sum)/coin_value − complement)
/// / weight with exact-division checks at each step, and rejects unless the
/// result is representable in `expected_bits` bits (leading zeros allowed).
pub fn recover_blinded(
    c1: &BigUint,
    coin_value: &BigUint,
    complement: &BigUint,
    weight: usize,
    carry_sum: u64,
    expected_bits: usize,
) -> Option<BitString> {
    if coin_value.is_zero() || weight == 0 {
        return None;
    }
    let z = BigUint::from(carry_sum);
    if *c1 < z {
        return None;
    }
    let (quotient, rem) = (c1 - z).div_rem(coin_value);
    if !rem.is_zero() || quotient < *complement {
        return None;
    }
    let (value, rem) = (quotient - complement).div_rem(&BigUint::from(weight as u64));
    if !rem.is_zero() || value.bits() as usize > expected_bits {
        return None;
    }
    Some(BitString::from_integer(&value, expected_bits).expect("range checked"))
}

/// Intermediates of the shared decode pipeline; fields stay `None` past the
/// first rejection.
pub(crate) struct UnblindParts {
    pub recovered: Option<BitString>,
    pub unshifted: Option<BitString>,
    pub padded: Option<BitString>,
    pub outcome: Result<BitString, RejectReason>,
}

/// The decode half shared between both schemes: unblind (Eq. 3 checks),
/// unrotate, unpermute, unmask, pad check (Eq. 4).
pub(crate) fn blind_decode(
    c1: &BigUint,
    msg_len: usize,
    coins: &BitString,
    prg: PrgId,
) -> UnblindParts {
    let mut parts = UnblindParts {
        recovered: None,
        unshifted: None,
        padded: None,
        outcome: Err(RejectReason::DegenerateR),
    };
    let layout = match pca::derive_layout(msg_len, coins) {
        Ok(layout) => layout,
        Err(_) => return parts,
    };
    let value = coins.to_integer();
    let carry = carry_from_coins(&value, layout.block_count);
    let Some(recovered) = recover_blinded(
        c1,
        &value,
        &coins.complement_value(),
        layout.weight,
        carry.digit_sum(),
        layout.padded_len(),
    ) else {
        parts.outcome = Err(RejectReason::Eq3Fail);
        return parts;
    };
    let shift = (&value % msg_len).to_usize().expect("shift below n");
    let unshifted = pca::circular_unshift(&recovered, shift).expect("shift in range");
    let padded = pca::decode_with_carry(&unshifted, &layout, &carry).expect("lengths match");
    let mask = prg_expand(prg, coins, msg_len);
    let msg = padded
        .msb(msg_len)
        .expect("padded holds at least n bits")
        .xor(&mask)
        .expect("equal lengths");
    let tail = padded.lsb(layout.pad_len).expect("pad_len bits present");
    parts.recovered = Some(recovered);
    parts.unshifted = Some(unshifted);
    parts.padded = Some(padded);
    parts.outcome = if tail == layout.pad_bits {
        Ok(msg)
    } else {
        Err(RejectReason::Eq4Fail)
    };
    parts
}

/// Every intermediate of one encryption, for known-answer vectors and
/// white-box tests.
#[derive(Clone, Debug)]
pub struct EncryptionTrace {
    pub error_vec: BitString,
    pub coins: BitString,
    pub weight: usize,
    pub block_count: usize,
    pub block_len: usize,
    pub pad_len: usize,
    pub carry: FactorialCarry,
    /// The permutation index s reconstructed from the carry digits.
    pub perm_index: BigUint,
    /// The digit sum z.
    pub carry_sum: u64,
    /// The rotation amount q.
    pub shift: usize,
    /// The masked message m ⊕ G(r).
    pub masked: BitString,
    /// The permuted (pre-rotation) encoding.
    pub encoded: BitString,
    /// The rotated encoding whose value is blinded into C1.
    pub shifted: BitString,
}

pub fn encrypt<R: Rng + ?Sized>(
    pk: &Cca2PublicKey,
    msg: &BitString,
    rng: &mut R,
) -> Result<Cca2Ciphertext, SchemeError> {
    if msg.is_empty() {
        return Err(SchemeError::EmptyMessage);
    }
    let (error_vec, coins) = derive_coins(pk, rng);
    let parts = blind_encode(msg, &coins, pk.prg_id)?;
    let c2 = mceliece::encrypt(&pk.mce, &coins, &error_vec)?;
    Ok(Cca2Ciphertext {
        c1: parts.c1,
        c2,
        msg_len: msg.len(),
    })
}

pub fn encrypt_with_trace<R: Rng + ?Sized>(
    pk: &Cca2PublicKey,
    msg: &BitString,
    rng: &mut R,
) -> Result<(Cca2Ciphertext, EncryptionTrace), SchemeError> {
    if msg.is_empty() {
        return Err(SchemeError::EmptyMessage);
    }
    let (error_vec, coins) = derive_coins(pk, rng);
    let parts = blind_encode(msg, &coins, pk.prg_id)?;
    let c2 = mceliece::encrypt(&pk.mce, &coins, &error_vec)?;
    let ct = Cca2Ciphertext {
        c1: parts.c1,
        c2,
        msg_len: msg.len(),
    };
    let trace = EncryptionTrace {
        error_vec,
        coins,
        weight: parts.layout.weight,
        block_count: parts.layout.block_count,
        block_len: parts.layout.block_len,
        pad_len: parts.layout.pad_len,
        perm_index: pca::carry_to_index(&parts.carry),
        carry: parts.carry,
        carry_sum: parts.carry_sum,
        shift: parts.shift,
        masked: parts.masked,
        encoded: parts.encoded,
        shifted: parts.shifted,
    };
    Ok((ct, trace))
}

/// Decryption intermediates for white-box probes; fields stay `None` past
/// the first failed stage.
#[derive(Clone, Debug)]
pub struct DecryptionTrace {
    pub coins: Option<BitString>,
    pub error_vec: Option<BitString>,
    /// The value recovered from C1 before unrotating (the Eq. 3 output).
    pub recovered: Option<BitString>,
    pub unshifted: Option<BitString>,
    pub padded: Option<BitString>,
    pub outcome: Result<BitString, RejectReason>,
}

pub fn decrypt_with_trace(sk: &Cca2SecretKey, ct: &Cca2Ciphertext) -> DecryptionTrace {
    let mut trace = DecryptionTrace {
        coins: None,
        error_vec: None,
        recovered: None,
        unshifted: None,
        padded: None,
        outcome: Err(RejectReason::DecodeFail),
    };
    if ct.msg_len == 0 || ct.c2.len() != sk.mce_pk.code_len() {
        return trace;
    }
    let Some((coins, _)) = mceliece::decrypt(&sk.mce_sk, &ct.c2) else {
        return trace;
    };
    let codeword = vec_mat_mul(&coins, &sk.mce_pk.g_pub).expect("dimensions match");
    let error_vec = ct.c2.xor(&codeword).expect("equal lengths");
    trace.coins = Some(coins.clone());
    trace.error_vec = Some(error_vec.clone());
    let k = sk.mce_pk.code_dim();
    if tcr_hash(sk.hash_id, &error_vec, k) != coins {
        trace.outcome = Err(RejectReason::Eq2Fail);
        return trace;
    }
    let w = coins.weight();
    if w == 0 || w == k {
        trace.outcome = Err(RejectReason::DegenerateR);
        return trace;
    }
    let parts = blind_decode(&ct.c1, ct.msg_len, &coins, sk.prg_id);
    trace.recovered = parts.recovered;
    trace.unshifted = parts.unshifted;
    trace.padded = parts.padded;
    trace.outcome = parts.outcome;
    trace
}

/// Decryption with the rejection reason exposed; for tests and harness use.
pub fn decrypt_diag(sk: &Cca2SecretKey, ct: &Cca2Ciphertext) -> Result<BitString, RejectReason> {
    decrypt_with_trace(sk, ct).outcome
}

/// Public decryption: uniform ⊥ on any failure.
pub fn decrypt(sk: &Cca2SecretKey, ct: &Cca2Ciphertext) -> Option<BitString> {
    decrypt_diag(sk, ct).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn tiny_keypair(seed: u64) -> (Cca2PublicKey, Cca2SecretKey) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        keygen(4, 2, &mut rng).unwrap()
    }

    #[test]
    fn tcr_hash_contract() {
        let input: BitString = "1100101".parse().unwrap();
        let a = tcr_hash(HashId::Sha256Ctr, &input, 8);
        let b = tcr_hash(HashId::Sha256Ctr, &input, 8);
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        assert_eq!(tcr_hash(HashId::Sha256Ctr, &input, 524).len(), 524);
    }

    #[test]
    fn tcr_hash_no_collisions_at_64_bits() {
        let mut rng = ChaCha20Rng::seed_from_u64(70);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..10_000 {
            let input = BitString::random(128, &mut rng);
            let digest = tcr_hash(HashId::Sha256Ctr, &input, 64);
            assert!(seen.insert(digest.to_bytes()), "collision at 64 bits");
        }
    }

    #[test]
    fn prg_prefix_consistency() {
        let seed: BitString = "10110101".parse().unwrap();
        let long = prg_expand(PrgId::Sha256Ctr, &seed, 128);
        let short = prg_expand(PrgId::Sha256Ctr, &seed, 64);
        assert_eq!(long.msb(64).unwrap(), short);
        assert_eq!(prg_expand(PrgId::Sha256Ctr, &seed, 128), long);
    }

    #[test]
    fn prg_monobit_sanity() {
        let seed: BitString = "0101***".replace('*', "1").parse().unwrap();
        let stream = prg_expand(PrgId::Sha256Ctr, &seed, 10_000);
        let weight = stream.weight() as f64;
        let sigma = (10_000f64 / 4.0).sqrt();
        assert!((weight - 5000.0).abs() <= 3.0 * sigma, "weight {weight} too far from n/2");
    }

    #[test]
    fn derive_coins_contract() {
        let (pk, _) = tiny_keypair(71);
        let mut rng = ChaCha20Rng::seed_from_u64(72);
        for _ in 0..50 {
            let (e, coins) = derive_coins(&pk, &mut rng);
            assert_eq!(e.weight(), pk.mce.t);
            assert_eq!(coins, tcr_hash(pk.hash_id, &e, pk.coin_bits()));
            assert!(coins.weight() != 0 && coins.weight() != pk.coin_bits());
        }
    }

    #[test]
    fn carry_from_coins_examples() {
        let carry = carry_from_coins(&181u32.into(), 5);
        assert_eq!(carry.digits(), &[2, 0, 0, 0, 0]);
        assert_eq!(pca::carry_to_index(&carry), 48u32.into());
        assert_eq!(carry.digit_sum(), 2);

        let carry = carry_from_coins(&11u32.into(), 3);
        assert_eq!(carry.digits(), &[0, 0, 0]);
        assert_eq!(pca::carry_to_index(&carry), 0u32.into());
        assert_eq!(carry.digit_sum(), 0);
    }

    #[test]
    fn worked_example_digit_sum() {
        let digits = [10usize, 0, 8, 2, 5, 4, 1, 3, 0, 2, 1, 1, 0];
        let carry = FactorialCarry::from_digits(digits.to_vec()).unwrap();
        assert_eq!(carry.digit_sum(), 37);
    }

    #[test]
    fn carry_from_coins_matches_direct_formula() {
        let mut rng = ChaCha20Rng::seed_from_u64(73);
        for _ in 0..200 {
            let bits = rand::Rng::gen_range(&mut rng, 2..600usize);
            let value = BitString::random(bits, &mut rng).to_integer();
            let l = rand::Rng::gen_range(&mut rng, 2..600usize);
            let carry = carry_from_coins(&value, l);
            for i in 1..l {
                let modulus = BigUint::from((l - i) as u64);
                let expected = (&value + BigUint::from(i as u64)) % &modulus;
                assert_eq!(
                    BigUint::from(carry.digits()[i - 1] as u64),
                    expected,
                    "digit {i} of {l} for value with {bits} bits"
                );
            }
            assert_eq!(carry.digits()[l - 1], 0);
        }
    }

    #[test]
    fn blinding_arithmetic_example() {
        // y = 5, h = 2, r = 9, r̄ = 6, z = 3 gives C1 = (2·5+6)·9+3 = 147.
        let c1 = (BigUint::from(2u32) * BigUint::from(5u32) + BigUint::from(6u32))
            * BigUint::from(9u32)
            + BigUint::from(3u32);
        assert_eq!(c1, 147u32.into());
        let y = recover_blinded(&c1, &9u32.into(), &6u32.into(), 2, 3, 4).unwrap();
        assert_eq!(y, "0101".parse().unwrap());
        // A perturbed blind fails the divisibility check.
        assert!(recover_blinded(&148u32.into(), &9u32.into(), &6u32.into(), 2, 3, 4).is_none());
        // A value needing expected_bits+1 bits fails the range check.
        let big = (BigUint::from(2u32) * BigUint::from(16u32) + BigUint::from(6u32))
            * BigUint::from(9u32)
            + BigUint::from(3u32);
        assert!(recover_blinded(&big, &9u32.into(), &6u32.into(), 2, 3, 4).is_none());
    }

    #[test]
    fn round_trip_across_message_lengths() {
        let (pk, sk) = tiny_keypair(74);
        let mut rng = ChaCha20Rng::seed_from_u64(75);
        for n in [1usize, 8, 40, 512] {
            for _ in 0..125 {
                let msg = BitString::random(n, &mut rng);
                let ct = encrypt(&pk, &msg, &mut rng).unwrap();
                let back = decrypt(&sk, &ct).expect("honest ciphertext decrypts");
                assert_eq!(back, msg, "round trip at n={n}");
            }
        }
    }

    #[test]
    fn probabilistic_encryption() {
        let (pk, _) = tiny_keypair(76);
        let mut rng = ChaCha20Rng::seed_from_u64(77);
        let msg = BitString::random(64, &mut rng);
        let a = encrypt(&pk, &msg, &mut rng).unwrap();
        let b = encrypt(&pk, &msg, &mut rng).unwrap();
        assert_ne!(a.c1, b.c1);
        assert_ne!(a.c2, b.c2);
    }

    #[test]
    fn empty_message_rejected() {
        let (pk, _) = tiny_keypair(78);
        let mut rng = ChaCha20Rng::seed_from_u64(79);
        assert!(matches!(
            encrypt(&pk, &BitString::empty(), &mut rng),
            Err(SchemeError::EmptyMessage)
        ));
    }

    #[test]
    fn every_c2_bit_flip_is_rejected() {
        let (pk, sk) = tiny_keypair(80);
        let mut rng = ChaCha20Rng::seed_from_u64(81);
        let msg = BitString::random(24, &mut rng);
        let ct = encrypt(&pk, &msg, &mut rng).unwrap();
        for i in 0..ct.c2.len() {
            let mut mauled = ct.clone();
            mauled.c2.flip(i);
            assert!(
                decrypt(&sk, &mauled).is_none(),
                "single C2 bit flip at {i} was accepted"
            );
        }
    }

    #[test]
    fn small_c1_offsets_fail_divisibility() {
        let (pk, sk) = tiny_keypair(82);
        let mut rng = ChaCha20Rng::seed_from_u64(83);
        let msg = BitString::random(32, &mut rng);
        let (ct, trace) = encrypt_with_trace(&pk, &msg, &mut rng).unwrap();
        let r = trace.coins.to_integer().to_u64().unwrap();
        assert!(r >= 2);
        for delta in 1..r {
            let mut mauled = ct.clone();
            mauled.c1 = &ct.c1 + BigUint::from(delta);
            assert_eq!(
                decrypt_diag(&sk, &mauled),
                Err(RejectReason::Eq3Fail),
                "offset {delta} slipped past the divisibility check"
            );
        }
    }

    #[test]
    fn pipeline_inversion_white_box() {
        let (pk, sk) = tiny_keypair(84);
        let mut rng = ChaCha20Rng::seed_from_u64(85);
        for n in [8usize, 40, 100] {
            let msg = BitString::random(n, &mut rng);
            let (ct, enc) = encrypt_with_trace(&pk, &msg, &mut rng).unwrap();
            let dec = decrypt_with_trace(&sk, &ct);
            assert_eq!(dec.coins.as_ref(), Some(&enc.coins));
            assert_eq!(dec.error_vec.as_ref(), Some(&enc.error_vec));
            assert_eq!(dec.recovered.as_ref(), Some(&enc.shifted));
            assert_eq!(dec.unshifted.as_ref(), Some(&enc.encoded));
            assert_eq!(
                dec.padded.as_ref().map(|p| p.msb(n).unwrap()),
                Some(enc.masked.clone())
            );
            assert_eq!(dec.outcome.as_ref(), Ok(&msg));
        }
    }

    #[test]
    fn trace_permutation_index_round_trips() {
        let (pk, _) = tiny_keypair(86);
        let mut rng = ChaCha20Rng::seed_from_u64(87);
        let msg = BitString::random(64, &mut rng);
        let (_, trace) = encrypt_with_trace(&pk, &msg, &mut rng).unwrap();
        let carry = pca::index_to_carry(&trace.perm_index, trace.block_count).unwrap();
        assert_eq!(carry, trace.carry);
    }

    #[test]
    fn degenerate_keygen_rejected() {
        // m=3, t=1 gives a [7,4] code: fine. m=4, t=3 gives dimension 4,
        // fine. The refusal triggers only below dimension 3.
        let mut rng = ChaCha20Rng::seed_from_u64(88);
        assert!(keygen(4, 2, &mut rng).is_ok());
        assert!(keygen(3, 2, &mut rng).is_err());
    }
}
