//! Randomness-driven block-permutation encoding and its inverse.
//!
//! Encoding a message of n bits under coins r of k bits works in four steps:
//! the coin weight h fixes the block count l (l = h when 2h ≥ k, else
//! l = k − h, so ⌈k/2⌉ ≤ l ≤ k−1 for non-degenerate coins); the message is
//! right-padded with the leftmost l·⌈n/l⌉ − n coin bits and split into l
//! equal blocks; an index s < l! is written in the factorial number system
//! and its digit sequence — the factorial carry value — drives a
//! select-and-remove (Lehmer code) permutation of the blocks; the permuted
//! blocks are concatenated.
//!
//! Every step is a bijection for fixed (n, r, s), so decoding replays the
//! selection to invert the block order.

use crate::bits::BitString;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PcaError {
    /// All-zero or all-one coins leave the block count undefined.
    #[error("degenerate randomness (all-zero or all-one coins)")]
    DegenerateRandomness,
    /// Index s outside [0, l!).
    #[error("permutation index out of range for {blocks} blocks")]
    IndexRange { blocks: usize },
    /// A carry digit exceeds its positional bound.
    #[error("carry digit {digit} at position {position} exceeds bound {bound}")]
    CarryRange {
        digit: usize,
        position: usize,
        bound: usize,
    },
    /// Operand length does not match the layout.
    #[error("operand length {got} does not match expected {expected}")]
    Length { expected: usize, got: usize },
    /// Shift amount outside [0, len).
    #[error("shift {shift} out of range for length {len}")]
    ShiftRange { shift: usize, len: usize },
}

/// The block split induced by a message length and coins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcaLayout {
    pub msg_len: usize,
    /// Coin length k.
    pub coin_bits: usize,
    /// Coin weight h.
    pub weight: usize,
    /// Block count l.
    pub block_count: usize,
    /// Block length v = ⌈n/l⌉.
    pub block_len: usize,
    /// l·v − n.
    pub pad_len: usize,
    /// The leftmost pad_len coin bits, appended to the message before the
    /// split; empty exactly when l divides n.
    pub pad_bits: BitString,
}

impl PcaLayout {
    /// Total encoded length l·v.
    pub fn padded_len(&self) -> usize {
        self.block_count * self.block_len
    }
}

/// Computes the layout for an n-bit message under the given coins.
pub fn derive_layout(msg_len: usize, coins: &BitString) -> Result<PcaLayout, PcaError> {
    assert!(msg_len >= 1, "message must be non-empty");
    let k = coins.len();
    let h = coins.weight();
    if h == 0 || h == k {
        return Err(PcaError::DegenerateRandomness);
    }
    let l = if 2 * h >= k { h } else { k - h };
    let v = msg_len.div_ceil(l);
    let pad_len = l * v - msg_len;
    debug_assert!(pad_len < l && l < k);
    let pad_bits = coins.msb(pad_len).expect("pad_len < k");
    Ok(PcaLayout {
        msg_len,
        coin_bits: k,
        weight: h,
        block_count: l,
        block_len: v,
        pad_len,
        pad_bits,
    })
}

/// The factorial carry value of an index s: digits (u_1, …, u_l) with
/// 0 ≤ u_i ≤ l−i and s = Σ u_i·(l−i)!. The map is a bijection between
/// [0, l!) and digit sequences, and equivalently the Lehmer code of a
/// permutation of l items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialCarry {
    digits: Vec<usize>,
}

impl FactorialCarry {
    /// Validates the positional bounds (the last digit must be zero).
    pub fn from_digits(digits: Vec<usize>) -> Result<FactorialCarry, PcaError> {
        let l = digits.len();
        for (idx, &d) in digits.iter().enumerate() {
            let bound = l - (idx + 1);
            if d > bound {
                return Err(PcaError::CarryRange {
                    digit: d,
                    position: idx + 1,
                    bound,
                });
            }
        }
        Ok(FactorialCarry { digits })
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Sum of the digits (the z term of the blinding value).
    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().map(|&d| d as u64).sum()
    }

    /// Decodes the Lehmer code: position map `perm` with `perm[i]` the
    /// zero-based index of the source block emitted at output position i.
    pub fn to_permutation(&self) -> Vec<usize> {
        let mut remaining: Vec<usize> = (0..self.digits.len()).collect();
        self.digits.iter().map(|&d| remaining.remove(d)).collect()
    }
}

fn factorials(upto: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(upto + 1);
    let mut acc = BigUint::from(1u32);
    out.push(acc.clone());
    for i in 1..=upto {
        acc *= i as u64;
        out.push(acc.clone());
    }
    out
}

/// Writes s in the factorial number system for l blocks. The index 0 (the
/// identity permutation) is accepted; see the module notes.
pub fn index_to_carry(s: &BigUint, l: usize) -> Result<FactorialCarry, PcaError> {
    assert!(l >= 1);
    let facts = factorials(l - 1);
    let full = &facts[l - 1] * l as u64;
    if *s >= full {
        return Err(PcaError::IndexRange { blocks: l });
    }
    let mut digits = Vec::with_capacity(l);
    let mut rem = s.clone();
    for i in 1..=l {
        let (d, r) = rem.div_rem(&facts[l - i]);
        digits.push(d.to_usize().expect("digit bounded by l"));
        rem = r;
    }
    debug_assert_eq!(rem, BigUint::default());
    Ok(FactorialCarry { digits })
}

/// Evaluates Σ u_i·(l−i)!, the inverse of [`index_to_carry`].
pub fn carry_to_index(carry: &FactorialCarry) -> BigUint {
    let l = carry.len();
    let facts = factorials(l.saturating_sub(1));
    let mut acc = BigUint::default();
    for (idx, &d) in carry.digits.iter().enumerate() {
        acc += &facts[l - (idx + 1)] * d as u64;
    }
    acc
}

/// Applies the Lehmer-code selection to a block sequence: at step i the
/// block at zero-based index u_i of the unused list is emitted and removed.
pub fn permute_blocks<T: Clone>(blocks: &[T], carry: &FactorialCarry) -> Result<Vec<T>, PcaError> {
    if blocks.len() != carry.len() {
        return Err(PcaError::Length {
            expected: carry.len(),
            got: blocks.len(),
        });
    }
    Ok(carry
        .to_permutation()
        .into_iter()
        .map(|src| blocks[src].clone())
        .collect())
}

/// Exact inverse of [`permute_blocks`]: replays the selection to rebuild the
/// position map and scatters the blocks back.
pub fn unpermute_blocks<T: Clone>(blocks: &[T], carry: &FactorialCarry) -> Result<Vec<T>, PcaError> {
    if blocks.len() != carry.len() {
        return Err(PcaError::Length {
            expected: carry.len(),
            got: blocks.len(),
        });
    }
    let perm = carry.to_permutation();
    let mut out: Vec<Option<T>> = vec![None; blocks.len()];
    for (dst, src) in perm.into_iter().enumerate() {
        out[src] = Some(blocks[dst].clone());
    }
    Ok(out.into_iter().map(|b| b.expect("permutation is total")).collect())
}

/// Pads, splits and permutes in one pass over the output.
pub fn encode_with_carry(
    msg: &BitString,
    layout: &PcaLayout,
    carry: &FactorialCarry,
) -> Result<BitString, PcaError> {
    if msg.len() != layout.msg_len {
        return Err(PcaError::Length {
            expected: layout.msg_len,
            got: msg.len(),
        });
    }
    if carry.len() != layout.block_count {
        return Err(PcaError::Length {
            expected: layout.block_count,
            got: carry.len(),
        });
    }
    let padded = msg.concat(&layout.pad_bits);
    let v = layout.block_len;
    let mut out = BitString::zeros(layout.padded_len());
    for (dst, src) in carry.to_permutation().into_iter().enumerate() {
        out.copy_bits_from(dst * v, &padded, src * v, v);
    }
    Ok(out)
}

/// Inverse of [`encode_with_carry`]; returns the padded string
/// (message ∥ pad bits) for the caller to strip and check.
pub fn decode_with_carry(
    encoded: &BitString,
    layout: &PcaLayout,
    carry: &FactorialCarry,
) -> Result<BitString, PcaError> {
    if encoded.len() != layout.padded_len() {
        return Err(PcaError::Length {
            expected: layout.padded_len(),
            got: encoded.len(),
        });
    }
    if carry.len() != layout.block_count {
        return Err(PcaError::Length {
            expected: layout.block_count,
            got: carry.len(),
        });
    }
    let v = layout.block_len;
    let mut out = BitString::zeros(layout.padded_len());
    for (dst, src) in carry.to_permutation().into_iter().enumerate() {
        out.copy_bits_from(src * v, encoded, dst * v, v);
    }
    Ok(out)
}

/// Full encoder: layout from (|msg|, coins), carry from s, then pad, split,
/// permute, concatenate. Output has l·⌈n/l⌉ bits.
pub fn pca_encode(msg: &BitString, coins: &BitString, s: &BigUint) -> Result<BitString, PcaError> {
    let layout = derive_layout(msg.len(), coins)?;
    let carry = index_to_carry(s, layout.block_count)?;
    encode_with_carry(msg, &layout, &carry)
}

/// Full decoder; `msg_len` is needed to reconstruct the layout. Returns the
/// padded string of l·⌈n/l⌉ bits.
pub fn pca_decode(
    encoded: &BitString,
    msg_len: usize,
    coins: &BitString,
    s: &BigUint,
) -> Result<BitString, PcaError> {
    let layout = derive_layout(msg_len, coins)?;
    let carry = index_to_carry(s, layout.block_count)?;
    decode_with_carry(encoded, &layout, &carry)
}

/// Circular q-shift: output position i holds input position (i+q) mod n
/// (a left rotation).
pub fn circular_shift(x: &BitString, q: usize) -> Result<BitString, PcaError> {
    if q >= x.len() {
        return Err(PcaError::ShiftRange { shift: q, len: x.len() });
    }
    Ok(x.rotate_left(q))
}

/// Inverse of [`circular_shift`].
pub fn circular_unshift(x: &BitString, q: usize) -> Result<BitString, PcaError> {
    if q >= x.len() {
        return Err(PcaError::ShiftRange { shift: q, len: x.len() });
    }
    Ok(x.rotate_right(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    const WORKED_CARRY: [usize; 13] = [10, 0, 8, 2, 5, 4, 1, 3, 0, 2, 1, 1, 0];
    const WORKED_INDEX: u64 = 4_819_995_015;
    /// Block order of the worked example, one-based.
    const WORKED_ORDER: [usize; 13] = [11, 1, 10, 4, 8, 7, 3, 9, 2, 12, 6, 13, 5];

    #[test]
    fn worked_example_carry() {
        let carry = index_to_carry(&WORKED_INDEX.into(), 13).unwrap();
        assert_eq!(carry.digits(), &WORKED_CARRY);
        assert_eq!(carry_to_index(&carry), WORKED_INDEX.into());
    }

    #[test]
    fn worked_example_permutation() {
        let blocks: Vec<usize> = (1..=13).collect();
        let carry = FactorialCarry::from_digits(WORKED_CARRY.to_vec()).unwrap();
        let permuted = permute_blocks(&blocks, &carry).unwrap();
        assert_eq!(permuted, WORKED_ORDER);
        let restored = unpermute_blocks(&permuted, &carry).unwrap();
        assert_eq!(restored, blocks);
    }

    #[test]
    fn worked_example_layout() {
        // n = 512, k = 25, h = 12: thirteen 40-bit blocks, 8 pad bits.
        let mut coins = BitString::zeros(25);
        for i in 0..12 {
            coins.set(2 * i, true);
        }
        assert_eq!(coins.weight(), 12);
        let layout = derive_layout(512, &coins).unwrap();
        assert_eq!(layout.block_count, 13);
        assert_eq!(layout.block_len, 40);
        assert_eq!(layout.pad_len, 8);
        assert_eq!(layout.pad_bits, coins.msb(8).unwrap());
    }

    #[test]
    fn worked_example_block_content() {
        // Block 13 of the padded message is the last 32 message bits
        // followed by the first 8 coin bits, and after permuting with the
        // worked carry it lands at output position 12.
        let mut rng = ChaCha20Rng::seed_from_u64(60);
        let msg = BitString::random(512, &mut rng);
        let mut coins = BitString::zeros(25);
        for i in 0..12 {
            coins.set(2 * i, true);
        }
        let encoded = pca_encode(&msg, &coins, &WORKED_INDEX.into()).unwrap();
        assert_eq!(encoded.len(), 520);
        let b13 = msg.lsb(32).unwrap().concat(&coins.msb(8).unwrap());
        assert_eq!(encoded.slice(11 * 40, 40), b13);
        let b11 = msg.slice(10 * 40, 40);
        assert_eq!(encoded.slice(0, 40), b11);
    }

    #[test]
    fn layout_branches() {
        // 2h ≥ k picks l = h; h | n leaves no pad.
        let coins: BitString = "10110101".parse().unwrap();
        let layout = derive_layout(40, &coins).unwrap();
        assert_eq!(layout.block_count, 5);
        assert_eq!(layout.block_len, 8);
        assert_eq!(layout.pad_len, 0);
        assert!(layout.pad_bits.is_empty());
        // 2h < k picks l = k − h.
        let coins: BitString = "1000".parse().unwrap();
        assert_eq!(derive_layout(9, &coins).unwrap().block_count, 3);
        // Boundary 2h = k: both readings of the comparison agree.
        let coins: BitString = "11110000".parse().unwrap();
        let layout = derive_layout(16, &coins).unwrap();
        assert_eq!(layout.block_count, 4);
    }

    #[test]
    fn degenerate_coins_are_rejected() {
        assert_eq!(
            derive_layout(8, &BitString::zeros(6)),
            Err(PcaError::DegenerateRandomness)
        );
        assert_eq!(
            derive_layout(8, &BitString::ones(6)),
            Err(PcaError::DegenerateRandomness)
        );
    }

    #[test]
    fn layout_depends_only_on_weight_and_msb() {
        let a: BitString = "1101000011".parse().unwrap();
        let b: BitString = "1100001011".parse().unwrap();
        assert_eq!(a.weight(), b.weight());
        let la = derive_layout(17, &a).unwrap();
        let lb = derive_layout(17, &b).unwrap();
        // Same weight: same split. Same msb(pad_len): same pad bits.
        assert_eq!(la.block_count, lb.block_count);
        assert_eq!(la.pad_len, lb.pad_len);
        assert_eq!(la.pad_bits, lb.pad_bits);
        assert_eq!(derive_layout(17, &a).unwrap(), la);
    }

    #[test]
    fn carry_corners() {
        let zero = index_to_carry(&0u32.into(), 5).unwrap();
        assert_eq!(zero.digits(), &[0, 0, 0, 0, 0]);
        assert_eq!(carry_to_index(&zero), 0u32.into());
        let five = index_to_carry(&5u32.into(), 3).unwrap();
        assert_eq!(five.digits(), &[2, 1, 0]);
        assert_eq!(carry_to_index(&five), 5u32.into());
        // l! is out of range.
        assert!(index_to_carry(&6u32.into(), 3).is_err());
        assert!(index_to_carry(&120u32.into(), 5).is_err());
        // Digit bounds are enforced.
        assert!(FactorialCarry::from_digits(vec![3, 0, 0]).is_err());
        assert!(FactorialCarry::from_digits(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn carry_bijection_exhaustive() {
        for l in 1usize..=6 {
            let fact: u64 = (1..=l as u64).product();
            let mut seen = std::collections::HashSet::new();
            for s in 0..fact {
                let carry = index_to_carry(&s.into(), l).unwrap();
                assert_eq!(carry_to_index(&carry), s.into());
                assert!(seen.insert(carry.to_permutation()), "duplicate permutation for s={s}");
            }
            assert_eq!(seen.len(), fact as usize);
        }
    }

    #[test]
    fn lehmer_semantics_by_exhaustion() {
        // For l = 3 the six decodings cover all orders; s = 5 reverses.
        let blocks = vec![1, 2, 3];
        let carry = index_to_carry(&5u32.into(), 3).unwrap();
        assert_eq!(permute_blocks(&blocks, &carry).unwrap(), vec![3, 2, 1]);
        let carry = index_to_carry(&0u32.into(), 3).unwrap();
        assert_eq!(permute_blocks(&blocks, &carry).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn permuted_multiset_is_preserved() {
        let mut rng = ChaCha20Rng::seed_from_u64(61);
        for _ in 0..200 {
            let l = rng.gen_range(1..=13usize);
            let fact: u64 = (1..=l as u64).product();
            let s = rng.gen_range(0..fact);
            let carry = index_to_carry(&s.into(), l).unwrap();
            let blocks: Vec<u32> = (0..l as u32).collect();
            let mut permuted = permute_blocks(&blocks, &carry).unwrap();
            permuted.sort_unstable();
            assert_eq!(permuted, blocks);
        }
    }

    #[test]
    fn encode_identity_when_l_divides_n_and_s_zero() {
        let coins: BitString = "10110101".parse().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(62);
        let msg = BitString::random(40, &mut rng);
        let out = pca_encode(&msg, &coins, &0u32.into()).unwrap();
        assert_eq!(out, msg);
        let back = pca_decode(&out, 40, &coins, &0u32.into()).unwrap();
        assert_eq!(back, msg);
    }

    #[test]
    fn encode_decode_round_trip_random() {
        let mut rng = ChaCha20Rng::seed_from_u64(63);
        for _ in 0..1000 {
            let k = rng.gen_range(3..=20usize);
            let mut coins = BitString::random(k, &mut rng);
            while coins.weight() == 0 || coins.weight() == k {
                coins = BitString::random(k, &mut rng);
            }
            let n = rng.gen_range(1..=200usize);
            let msg = BitString::random(n, &mut rng);
            let layout = derive_layout(n, &coins).unwrap();
            let fact: u64 = (1..=layout.block_count as u64).product();
            let s = BigUint::from(rng.gen_range(0..fact));
            let encoded = pca_encode(&msg, &coins, &s).unwrap();
            assert_eq!(encoded.len(), layout.padded_len());
            let padded = pca_decode(&encoded, n, &coins, &s).unwrap();
            assert_eq!(padded.msb(n).unwrap(), msg);
            assert_eq!(padded.lsb(layout.pad_len).unwrap(), layout.pad_bits);
        }
    }

    #[test]
    fn injectivity_exhaustive_small() {
        // For fixed (r, s), encoding is injective on 12-bit messages.
        let coins: BitString = "10010".parse().unwrap();
        let layout = derive_layout(12, &coins).unwrap();
        let s = BigUint::from(4u32);
        let mut seen = std::collections::HashSet::new();
        for value in 0u32..1 << 12 {
            let msg = BitString::from_integer(&value.into(), 12).unwrap();
            let out = pca_encode(&msg, &coins, &s).unwrap();
            assert!(seen.insert(out.to_bytes()), "collision at message {value}");
        }
        assert_eq!(seen.len(), 1 << 12);
        assert_eq!(layout.block_count, 3);
    }

    #[test]
    fn wrong_coins_still_decode_to_something() {
        // Decoding under coins with a different layout (here 4 blocks of 15
        // versus 5 blocks of 12, same total) yields a well-formed but
        // unrelated string; no error is raised.
        let mut rng = ChaCha20Rng::seed_from_u64(64);
        let msg = BitString::random(60, &mut rng);
        let coins: BitString = "11110000".parse().unwrap();
        let other: BitString = "11111000".parse().unwrap();
        let s = BigUint::from(3u32);
        let encoded = pca_encode(&msg, &coins, &s).unwrap();
        let decoded = pca_decode(&encoded, 60, &other, &s).unwrap();
        assert_eq!(decoded.len(), encoded.len());
        assert_ne!(decoded.msb(60).unwrap(), msg);
    }

    #[test]
    fn decode_length_check() {
        let coins: BitString = "10110101".parse().unwrap();
        let bad = BitString::zeros(41);
        assert!(matches!(
            pca_decode(&bad, 40, &coins, &0u32.into()),
            Err(PcaError::Length { expected: 40, got: 41 })
        ));
    }

    #[test]
    fn shift_examples() {
        let x: BitString = "10110".parse().unwrap();
        assert_eq!(circular_shift(&x, 0).unwrap(), x);
        assert_eq!(circular_shift(&x, 2).unwrap(), "11010".parse().unwrap());
        assert!(circular_shift(&x, 5).is_err());
        let mut rng = ChaCha20Rng::seed_from_u64(65);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=128usize);
            let q = rng.gen_range(0..n);
            let x = BitString::random(n, &mut rng);
            assert_eq!(
                circular_unshift(&circular_shift(&x, q).unwrap(), q).unwrap(),
                x
            );
        }
    }
}
