//! Bit strings with explicit length and their integer correspondence.
//!
//! A [`BitString`] is an ordered sequence of bits; position 0 is the
//! leftmost bit and carries the highest weight when the string is read as
//! an integer, so a string `x` of length `n` has value `Σ x_i · 2^(n-1-i)`.
//! The empty string is valid and reads as zero.
//!
//! Bits are packed into 64-bit words, most significant bit first. Every
//! operation keeps the unused tail of the last word zeroed, so word-level
//! xor, popcount and equality are exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;

const WORD_BITS: usize = 64;

/// Errors from bit-string and binary-matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BitsError {
    /// A value does not fit in the requested number of bits.
    #[error("value needs {needed} bits but only {len} are available")]
    Overflow { needed: usize, len: usize },
    /// More bits were requested than the string holds.
    #[error("requested {count} bits from a string of length {len}")]
    Length { count: usize, len: usize },
    /// Two operands have incompatible dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: String, right: String },
    /// An index or shift is out of range.
    #[error("index {index} out of range for length {len}")]
    Range { index: usize, len: usize },
    /// Encoded padding bits were not zero.
    #[error("nonzero padding bits in packed encoding")]
    Padding,
}

/// An ordered sequence of bits with an explicit length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

impl BitString {
    /// The empty string (length 0).
    pub fn empty() -> Self {
        Self::default()
    }

    /// All-zero string of the given length.
    pub fn zeros(len: usize) -> Self {
        BitString {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// All-one string of the given length.
    pub fn ones(len: usize) -> Self {
        let mut s = BitString {
            words: vec![!0u64; words_for(len)],
            len,
        };
        s.mask_tail();
        s
    }

    /// Uniformly random string.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut s = BitString {
            words: (0..words_for(len)).map(|_| rng.next_u64()).collect(),
            len,
        };
        s.mask_tail();
        s
    }

    /// Uniformly random string with exactly `weight` one-bits (Floyd's
    /// subset sampling).
    pub fn random_of_weight<R: Rng + ?Sized>(len: usize, weight: usize, rng: &mut R) -> Self {
        assert!(weight <= len, "weight {weight} exceeds length {len}");
        let mut chosen: Vec<usize> = Vec::with_capacity(weight);
        for j in (len - weight)..len {
            let pick = rng.gen_range(0..=j);
            if chosen.contains(&pick) {
                chosen.push(j);
            } else {
                chosen.push(pick);
            }
        }
        let mut s = Self::zeros(len);
        for i in chosen {
            s.set(i, true);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn mask_tail(&mut self) {
        let used = self.len % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 << (WORD_BITS - used);
            }
        }
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD_BITS] >> (WORD_BITS - 1 - index % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (WORD_BITS - 1 - index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        let v = self.get(index);
        self.set(index, !v);
    }

    /// Appends one bit at the right end.
    pub fn push(&mut self, value: bool) {
        if self.len % WORD_BITS == 0 {
            self.words.push(0);
        }
        self.len += 1;
        if value {
            self.set(self.len - 1, true);
        }
    }

    /// Number of one-bits.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bitwise complement (same length).
    pub fn complement(&self) -> BitString {
        let mut out = BitString {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        out.mask_tail();
        out
    }

    /// Bitwise xor of two equal-length strings.
    pub fn xor(&self, other: &BitString) -> Result<BitString, BitsError> {
        if self.len != other.len {
            return Err(BitsError::Dimension {
                left: format!("{} bits", self.len),
                right: format!("{} bits", other.len),
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitString { words, len: self.len })
    }

    pub fn xor_assign(&mut self, other: &BitString) -> Result<(), BitsError> {
        if self.len != other.len {
            return Err(BitsError::Dimension {
                left: format!("{} bits", self.len),
                right: format!("{} bits", other.len),
            });
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Reads up to 64 bits starting at `offset`, right-aligned in the result.
    fn extract_word(&self, offset: usize, count: usize) -> u64 {
        debug_assert!(count >= 1 && count <= WORD_BITS && offset + count <= self.len);
        let wi = offset / WORD_BITS;
        let b = offset % WORD_BITS;
        let mut v = self.words[wi] << b;
        if b > 0 && b + count > WORD_BITS {
            v |= self.words[wi + 1] >> (WORD_BITS - b);
        }
        v >> (WORD_BITS - count)
    }

    /// Copies `len` bits from `src` starting at `src_off` into `self`
    /// starting at `dst_off`.
    pub fn copy_bits_from(&mut self, dst_off: usize, src: &BitString, src_off: usize, len: usize) {
        assert!(src_off + len <= src.len, "source range out of bounds");
        assert!(dst_off + len <= self.len, "destination range out of bounds");
        let mut done = 0;
        while done < len {
            let d = dst_off + done;
            let dw = d / WORD_BITS;
            let dbit = d % WORD_BITS;
            let chunk = (WORD_BITS - dbit).min(len - done);
            let bits = src.extract_word(src_off + done, chunk);
            let mask = if chunk == WORD_BITS {
                !0u64
            } else {
                ((1u64 << chunk) - 1) << (WORD_BITS - dbit - chunk)
            };
            let val = (bits << (WORD_BITS - chunk)) >> dbit;
            self.words[dw] = (self.words[dw] & !mask) | val;
            done += chunk;
        }
    }

    /// The `len` bits starting at `start`, as a new string.
    pub fn slice(&self, start: usize, len: usize) -> BitString {
        assert!(start + len <= self.len, "slice out of bounds");
        let mut out = Self::zeros(len);
        if len > 0 {
            out.copy_bits_from(0, self, start, len);
        }
        out
    }

    /// The leftmost `count` bits.
    pub fn msb(&self, count: usize) -> Result<BitString, BitsError> {
        if count > self.len {
            return Err(BitsError::Length { count, len: self.len });
        }
        Ok(self.slice(0, count))
    }

    /// The rightmost `count` bits.
    pub fn lsb(&self, count: usize) -> Result<BitString, BitsError> {
        if count > self.len {
            return Err(BitsError::Length { count, len: self.len });
        }
        Ok(self.slice(self.len - count, count))
    }

    /// Concatenation `self ∥ other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = Self::zeros(self.len + other.len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.mask_tail();
        if !other.is_empty() {
            out.copy_bits_from(self.len, other, 0, other.len);
        }
        out
    }

    /// Left rotation: output position `i` holds input position `(i + q) mod len`.
    pub fn rotate_left(&self, q: usize) -> BitString {
        assert!(q <= self.len);
        if q == 0 || q == self.len {
            return self.clone();
        }
        self.slice(q, self.len - q).concat(&self.slice(0, q))
    }

    /// Right rotation, the inverse of [`BitString::rotate_left`].
    pub fn rotate_right(&self, q: usize) -> BitString {
        assert!(q <= self.len);
        if q == 0 || q == self.len {
            return self.clone();
        }
        self.rotate_left(self.len - q)
    }

    /// The value `Σ x_i · 2^(n-1-i)`; the empty string reads as zero.
    pub fn to_integer(&self) -> BigUint {
        let bytes = self.to_bytes();
        let pad = bytes.len() * 8 - self.len;
        BigUint::from_bytes_be(&bytes) >> pad
    }

    /// Inverse of [`BitString::to_integer`], padding with leading zeros to
    /// exactly `len` bits.
    pub fn from_integer(value: &BigUint, len: usize) -> Result<BitString, BitsError> {
        let needed = value.bits() as usize;
        if needed > len {
            return Err(BitsError::Overflow { needed, len });
        }
        let nbytes = len.div_ceil(8);
        let shifted = value << (nbytes * 8 - len);
        let be = shifted.to_bytes_be();
        let mut bytes = vec![0u8; nbytes];
        if *value != BigUint::default() {
            bytes[nbytes - be.len()..].copy_from_slice(&be);
        }
        Self::from_bytes(&bytes, len)
    }

    /// Wrapper for `2^n - 1 - to_integer(x)`: the value of the bitwise
    /// complement.
    pub fn complement_value(&self) -> BigUint {
        self.complement().to_integer()
    }

    /// Packs into bytes, most significant bit first; the final partial byte
    /// is padded with zero bits on the right.
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = vec![0u8; nbytes];
        for (j, byte) in out.iter_mut().enumerate() {
            let chunk = (self.len - 8 * j).min(8);
            *byte = (self.extract_word(8 * j, chunk) << (8 - chunk)) as u8;
        }
        out
    }

    /// Inverse of [`BitString::to_bytes`]. Fails if the byte count is wrong
    /// or the padding bits are nonzero.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<BitString, BitsError> {
        if bytes.len() != len.div_ceil(8) {
            return Err(BitsError::Length {
                count: bytes.len() * 8,
                len,
            });
        }
        if len % 8 != 0 {
            let tail = bytes[bytes.len() - 1];
            if tail & (0xffu8 >> (len % 8)) != 0 {
                return Err(BitsError::Padding);
            }
        }
        let mut s = Self::zeros(len);
        for (j, &byte) in bytes.iter().enumerate() {
            let chunk = (len - 8 * j).min(8);
            for b in 0..chunk {
                if byte >> (7 - b) & 1 == 1 {
                    s.set(8 * j + b, true);
                }
            }
        }
        Ok(s)
    }

    /// Iterates over bits from position 0.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Iterates over the positions of one-bits in ascending order.
    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> BitString {
        debug_assert_eq!(words.len(), words_for(len));
        let mut s = BitString { words, len };
        s.mask_tail();
        s
    }
}

/// Iterator over one-bit positions.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let lz = self.current.leading_zeros() as usize;
        self.current &= !(1u64 << (WORD_BITS - 1 - lz));
        Some(self.index * WORD_BITS + lz)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, BitsError> {
        let mut out = BitString::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                _ => {
                    return Err(BitsError::Range {
                        index: i,
                        len: s.len(),
                    })
                }
            }
        }
        Ok(out)
    }
}
