//! Framed binary encodings for keys and ciphertexts.
//!
//! Every file starts with a four-byte magic ("PMCE" for keys, "PMCT" for
//! ciphertexts, "PTDF" for the trapdoor-function demo), a version byte and,
//! for keys, a type byte. Multi-byte integers are little-endian; bit strings
//! are length-prefixed in bits and packed most significant bit first with
//! zero padding; big integers are length-prefixed big-endian magnitudes with
//! no leading zero byte. Decoders are strict: bad framing is a format error,
//! a short read is an integrity error, and trailing bytes are refused.

use crate::bits::BitString;
use crate::cca2::{Cca2Ciphertext, Cca2PublicKey, Cca2SecretKey, HashId, PrgId};
use crate::gf2m::{FieldParams, FieldPoly, Gfe};
use crate::goppa::GoppaCode;
use crate::matrix::BinMatrix;
use crate::mceliece::{McEliecePublicKey, McElieceSecretKey};
use num_bigint::BigUint;
use num_traits::Zero;

pub const KEY_MAGIC: &[u8; 4] = b"PMCE";
pub const CIPHERTEXT_MAGIC: &[u8; 4] = b"PMCT";
pub const TDF_MAGIC: &[u8; 4] = b"PTDF";
pub const FORMAT_VERSION: u8 = 1;

const KEY_TYPE_PUBLIC: u8 = 0;
const KEY_TYPE_SECRET: u8 = 1;

/// Hard caps against absurd allocations from hostile headers. The spec
/// never states a ciphertext bound, so the cap below is implementer-chosen:
/// generous enough for any key this crate can produce.
const MAX_DIMENSION: usize = 1 << 14;
const MAX_MSG_BITS: usize = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodecError {
    /// Bad magic, version, type, or malformed field contents.
    #[error("format error: {0}")]
    Format(String),
    /// The byte stream ended before a declared field was complete.
    #[error("integrity error: {0}")]
    Integrity(String),
}

fn format_err<T>(msg: impl Into<String>) -> Result<T, CodecError> {
    Err(CodecError::Format(msg.into()))
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], CodecError> {
        if self.pos + n > self.buf.len() {
            return Err(CodecError::Integrity(format!(
                "needed {n} bytes at offset {}, only {} remain",
                self.pos,
                self.buf.len() - self.pos
            )));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, CodecError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, CodecError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, CodecError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, CodecError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn finish(self) -> Result<(), CodecError> {
        if self.pos != self.buf.len() {
            return format_err(format!("{} trailing bytes", self.buf.len() - self.pos));
        }
        Ok(())
    }
}

fn write_bitstring(out: &mut Vec<u8>, bits: &BitString) {
    out.extend_from_slice(&(bits.len() as u64).to_le_bytes());
    out.extend_from_slice(&bits.to_bytes());
}

fn read_bitstring(r: &mut Reader<'_>, max_bits: usize) -> Result<BitString, CodecError> {
    let len = r.u64()? as usize;
    if len > max_bits {
        return format_err(format!("bit string of {len} bits exceeds cap {max_bits}"));
    }
    let bytes = r.take(len.div_ceil(8))?;
    BitString::from_bytes(bytes, len).map_err(|e| CodecError::Format(e.to_string()))
}

fn write_matrix(out: &mut Vec<u8>, m: &BinMatrix) {
    out.extend_from_slice(&(m.rows() as u32).to_le_bytes());
    out.extend_from_slice(&(m.cols() as u32).to_le_bytes());
    for r in 0..m.rows() {
        out.extend_from_slice(&m.row(r).to_bytes());
    }
}

fn read_matrix(r: &mut Reader<'_>) -> Result<BinMatrix, CodecError> {
    let rows = r.u32()? as usize;
    let cols = r.u32()? as usize;
    if rows > MAX_DIMENSION || cols > MAX_DIMENSION {
        return format_err(format!("matrix {rows}x{cols} exceeds dimension cap"));
    }
    let mut strings = Vec::with_capacity(rows);
    for _ in 0..rows {
        let bytes = r.take(cols.div_ceil(8))?;
        strings
            .push(BitString::from_bytes(bytes, cols).map_err(|e| CodecError::Format(e.to_string()))?);
    }
    BinMatrix::from_rows(&strings).map_err(|e| CodecError::Format(e.to_string()))
}

fn write_biguint(out: &mut Vec<u8>, v: &BigUint) {
    let bytes = if v.is_zero() { Vec::new() } else { v.to_bytes_be() };
    out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    out.extend_from_slice(&bytes);
}

fn read_biguint(r: &mut Reader<'_>, max_bytes: usize) -> Result<BigUint, CodecError> {
    let len = r.u32()? as usize;
    if len > max_bytes {
        return format_err(format!("integer of {len} bytes exceeds cap {max_bytes}"));
    }
    let bytes = r.take(len)?;
    if bytes.first() == Some(&0) {
        return format_err("non-minimal integer encoding");
    }
    Ok(BigUint::from_bytes_be(bytes))
}

fn write_poly(out: &mut Vec<u8>, p: &FieldPoly) {
    out.extend_from_slice(&(p.coeffs().len() as u32).to_le_bytes());
    for &c in p.coeffs() {
        out.extend_from_slice(&c.to_le_bytes());
    }
}

fn read_poly(r: &mut Reader<'_>, field: &FieldParams) -> Result<FieldPoly, CodecError> {
    let count = r.u32()? as usize;
    if count > MAX_DIMENSION {
        return format_err("polynomial too long");
    }
    let mut coeffs = Vec::with_capacity(count);
    for _ in 0..count {
        let c = r.u16()?;
        if (c as usize) >= field.size() {
            return format_err(format!("coefficient {c} outside GF(2^{})", field.degree()));
        }
        coeffs.push(c as Gfe);
    }
    let poly = FieldPoly::from_coeffs(coeffs);
    if poly.coeffs().len() != count {
        return format_err("polynomial not normalized");
    }
    Ok(poly)
}

fn key_header(out: &mut Vec<u8>, key_type: u8, m: u32, t: usize, hash: HashId, prg: PrgId) {
    out.extend_from_slice(KEY_MAGIC);
    out.push(FORMAT_VERSION);
    out.push(key_type);
    out.push(m as u8);
    out.extend_from_slice(&(t as u16).to_le_bytes());
    out.push(hash.code());
    out.push(prg.code());
}

fn read_key_header(r: &mut Reader<'_>, expect_type: u8) -> Result<(u32, usize, HashId, PrgId), CodecError> {
    if r.take(4)? != KEY_MAGIC {
        return format_err("bad key magic");
    }
    let version = r.u8()?;
    if version != FORMAT_VERSION {
        return format_err(format!("unsupported version {version}"));
    }
    let key_type = r.u8()?;
    if key_type != expect_type {
        return format_err(format!("key type {key_type}, expected {expect_type}"));
    }
    let m = r.u8()? as u32;
    let t = r.u16()? as usize;
    let hash = HashId::from_code(r.u8()?).ok_or_else(|| CodecError::Format("unknown hash id".into()))?;
    let prg = PrgId::from_code(r.u8()?).ok_or_else(|| CodecError::Format("unknown prg id".into()))?;
    Ok((m, t, hash, prg))
}

pub fn write_public_key(pk: &Cca2PublicKey) -> Vec<u8> {
    let mut out = Vec::new();
    key_header(
        &mut out,
        KEY_TYPE_PUBLIC,
        0, // m is not part of the public key material
        pk.mce.t,
        pk.hash_id,
        pk.prg_id,
    );
    write_matrix(&mut out, &pk.mce.g_pub);
    out
}

pub fn read_public_key(bytes: &[u8]) -> Result<Cca2PublicKey, CodecError> {
    let mut r = Reader::new(bytes);
    let (_, t, hash_id, prg_id) = read_key_header(&mut r, KEY_TYPE_PUBLIC)?;
    let g_pub = read_matrix(&mut r)?;
    r.finish()?;
    if t == 0 || t >= g_pub.cols() {
        return format_err(format!("error weight {t} out of range"));
    }
    Ok(Cca2PublicKey {
        mce: McEliecePublicKey { g_pub, t },
        hash_id,
        prg_id,
    })
}

pub fn write_secret_key(sk: &Cca2SecretKey) -> Vec<u8> {
    let mut out = Vec::new();
    let code = &sk.mce_sk.code;
    key_header(
        &mut out,
        KEY_TYPE_SECRET,
        code.field().degree(),
        code.error_capacity(),
        sk.hash_id,
        sk.prg_id,
    );
    out.extend_from_slice(&(code.support().len() as u32).to_le_bytes());
    for &a in code.support() {
        out.extend_from_slice(&a.to_le_bytes());
    }
    write_poly(&mut out, code.goppa_poly());
    write_matrix(&mut out, &sk.mce_sk.s_inv);
    write_matrix(&mut out, &sk.mce_sk.p_inv);
    write_matrix(&mut out, &sk.mce_pk.g_pub);
    out
}

pub fn read_secret_key(bytes: &[u8]) -> Result<Cca2SecretKey, CodecError> {
    let mut r = Reader::new(bytes);
    let (m, t, hash_id, prg_id) = read_key_header(&mut r, KEY_TYPE_SECRET)?;
    let field = FieldParams::new(m).map_err(|e| CodecError::Format(e.to_string()))?;
    let count = r.u32()? as usize;
    if count > field.size() {
        return format_err("support larger than the field");
    }
    let mut support = Vec::with_capacity(count);
    for _ in 0..count {
        let a = r.u16()?;
        if (a as usize) >= field.size() {
            return format_err("support element outside the field");
        }
        support.push(a as Gfe);
    }
    let goppa_poly = read_poly(&mut r, &field)?;
    if goppa_poly.degree() != Some(t) {
        return format_err("Goppa polynomial degree disagrees with header");
    }
    let s_inv = read_matrix(&mut r)?;
    let p_inv = read_matrix(&mut r)?;
    let g_pub = read_matrix(&mut r)?;
    r.finish()?;

    // The derived parts (parity check, generator, information set, decoder
    // tables) are deterministic functions of (support, g).
    let code = GoppaCode::from_parts(field, support, goppa_poly)
        .map_err(|e| CodecError::Format(e.to_string()))?;
    let n = code.code_len();
    let k = code.code_dim();
    if s_inv.rows() != k || s_inv.cols() != k {
        return format_err("unscrambler dimensions disagree with the code");
    }
    if p_inv.rows() != n || p_inv.cols() != n || !p_inv.is_permutation() {
        return format_err("stored permutation is not a permutation matrix");
    }
    if g_pub.rows() != k || g_pub.cols() != n {
        return format_err("public generator dimensions disagree with the code");
    }
    Ok(Cca2SecretKey {
        mce_sk: McElieceSecretKey::from_parts(s_inv, code, p_inv),
        mce_pk: McEliecePublicKey { g_pub, t },
        hash_id,
        prg_id,
    })
}

pub fn write_ciphertext(ct: &Cca2Ciphertext) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(CIPHERTEXT_MAGIC);
    out.push(FORMAT_VERSION);
    out.extend_from_slice(&(ct.msg_len as u64).to_le_bytes());
    write_biguint(&mut out, &ct.c1);
    write_bitstring(&mut out, &ct.c2);
    out
}

pub fn read_ciphertext(bytes: &[u8]) -> Result<Cca2Ciphertext, CodecError> {
    let mut r = Reader::new(bytes);
    if r.take(4)? != CIPHERTEXT_MAGIC {
        return format_err("bad ciphertext magic");
    }
    let version = r.u8()?;
    if version != FORMAT_VERSION {
        return format_err(format!("unsupported version {version}"));
    }
    let msg_len = r.u64()? as usize;
    if msg_len == 0 || msg_len > MAX_MSG_BITS {
        return format_err(format!("message length {msg_len} out of range"));
    }
    // Loose sanity cap on C1 for legal ciphertexts: its bit length is below
    // msg_len + 2k + O(log) for any key, and k never exceeds MAX_DIMENSION.
    let c1_cap = (msg_len + 3 * MAX_DIMENSION + 64) / 8 + 2;
    let c1 = read_biguint(&mut r, c1_cap)?;
    let c2 = read_bitstring(&mut r, MAX_DIMENSION)?;
    r.finish()?;
    Ok(Cca2Ciphertext { c1, c2, msg_len })
}

/// Toy trapdoor-function key/ciphertext framing for the demo front end.
pub mod tdf_files {
    use super::*;
    use crate::tdf::{ToyEvalKey, ToyTrapdoor};

    const TDF_TYPE_EVAL: u8 = 0;
    const TDF_TYPE_TRAPDOOR: u8 = 1;
    const TDF_TYPE_CIPHERTEXT: u8 = 2;

    fn header(out: &mut Vec<u8>, file_type: u8, input_bits: usize) {
        out.extend_from_slice(TDF_MAGIC);
        out.push(FORMAT_VERSION);
        out.push(file_type);
        out.extend_from_slice(&(input_bits as u16).to_le_bytes());
    }

    fn read_header(r: &mut Reader<'_>, expect: u8) -> Result<usize, CodecError> {
        if r.take(4)? != TDF_MAGIC {
            return format_err("bad trapdoor-function magic");
        }
        if r.u8()? != FORMAT_VERSION {
            return format_err("unsupported version");
        }
        let t = r.u8()?;
        if t != expect {
            return format_err(format!("file type {t}, expected {expect}"));
        }
        Ok(r.u16()? as usize)
    }

    pub fn write_eval_key(ek: &ToyEvalKey) -> Vec<u8> {
        let mut out = Vec::new();
        header(&mut out, TDF_TYPE_EVAL, ek.input_bits);
        write_biguint(&mut out, &ek.modulus);
        write_biguint(&mut out, &ek.exponent);
        out
    }

    pub fn read_eval_key(bytes: &[u8]) -> Result<ToyEvalKey, CodecError> {
        let mut r = Reader::new(bytes);
        let input_bits = read_header(&mut r, TDF_TYPE_EVAL)?;
        let modulus = read_biguint(&mut r, 64)?;
        let exponent = read_biguint(&mut r, 64)?;
        r.finish()?;
        Ok(ToyEvalKey {
            input_bits,
            modulus,
            exponent,
        })
    }

    pub fn write_trapdoor(td: &ToyTrapdoor) -> Vec<u8> {
        let mut out = Vec::new();
        header(&mut out, TDF_TYPE_TRAPDOOR, td.input_bits);
        write_biguint(&mut out, &td.modulus);
        write_biguint(&mut out, &td.secret_exponent);
        out
    }

    pub fn read_trapdoor(bytes: &[u8]) -> Result<ToyTrapdoor, CodecError> {
        let mut r = Reader::new(bytes);
        let input_bits = read_header(&mut r, TDF_TYPE_TRAPDOOR)?;
        let modulus = read_biguint(&mut r, 64)?;
        let secret_exponent = read_biguint(&mut r, 64)?;
        r.finish()?;
        Ok(ToyTrapdoor {
            input_bits,
            modulus,
            secret_exponent,
        })
    }

    pub fn write_ciphertext(input_bits: usize, msg_len: usize, c1: &BigUint, c2: &BigUint) -> Vec<u8> {
        let mut out = Vec::new();
        header(&mut out, TDF_TYPE_CIPHERTEXT, input_bits);
        out.extend_from_slice(&(msg_len as u64).to_le_bytes());
        write_biguint(&mut out, c1);
        write_biguint(&mut out, c2);
        out
    }

    pub fn read_ciphertext(bytes: &[u8]) -> Result<(usize, usize, BigUint, BigUint), CodecError> {
        let mut r = Reader::new(bytes);
        let input_bits = read_header(&mut r, TDF_TYPE_CIPHERTEXT)?;
        let msg_len = r.u64()? as usize;
        if msg_len == 0 || msg_len > MAX_MSG_BITS {
            return format_err("message length out of range");
        }
        let c1 = read_biguint(&mut r, (msg_len + 3 * MAX_DIMENSION + 64) / 8 + 2)?;
        let c2 = read_biguint(&mut r, 64)?;
        r.finish()?;
        Ok((input_bits, msg_len, c1, c2))
    }
}
