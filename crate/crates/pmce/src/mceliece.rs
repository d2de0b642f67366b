//! The textbook McEliece public-key encryption scheme.
//!
//! Key generation masks a Goppa generator matrix G as G_pub = S·G·P with a
//! random non-singular S and a random permutation P; encryption is
//! c = m·G_pub ⊕ e with an error vector of weight exactly t; decryption
//! unpermutes, runs the algebraic decoder, reads the message off the
//! information set and unmixes S.
//!
//! The error vector is an explicit encryption input because the layered
//! scheme derives it from a hash rather than sampling it here.

use crate::bits::{BitsError, BitString};
use crate::goppa::{GoppaCode, GoppaError};
use crate::matrix::{vec_mat_mul, BinMatrix};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum McElieceError {
    #[error(transparent)]
    Goppa(#[from] GoppaError),
    #[error("error vector weight {got} differs from required {expected}")]
    Weight { expected: usize, got: usize },
    #[error("operand length {got} differs from required {expected}")]
    Length { expected: usize, got: usize },
}

/// Public key: the masked generator and the error weight.
#[derive(Clone, Debug)]
pub struct McEliecePublicKey {
    pub g_pub: BinMatrix,
    pub t: usize,
}

impl McEliecePublicKey {
    pub fn code_len(&self) -> usize {
        self.g_pub.cols()
    }

    pub fn code_dim(&self) -> usize {
        self.g_pub.rows()
    }
}

/// Secret key: the unscrambling matrices and the decodable code.
#[derive(Clone)]
pub struct McElieceSecretKey {
    pub s_inv: BinMatrix,
    pub code: GoppaCode,
    pub p_inv: BinMatrix,
    /// P itself, rederived from p_inv; maps decoder-domain error vectors
    /// back to ciphertext positions.
    p: BinMatrix,
}

impl McElieceSecretKey {
    /// Reassembles a secret key from its stored parts.
    pub fn from_parts(s_inv: BinMatrix, code: GoppaCode, p_inv: BinMatrix) -> Self {
        let p = p_inv.transpose();
        McElieceSecretKey { s_inv, code, p_inv, p }
    }
}

/// Generates a key pair over GF(2^m) with error weight t.
pub fn keygen<R: Rng + ?Sized>(
    m: u32,
    t: usize,
    rng: &mut R,
) -> Result<(McEliecePublicKey, McElieceSecretKey), McElieceError> {
    let code = GoppaCode::generate(m, t, rng)?;
    let (s, s_inv) = BinMatrix::random_invertible(code.code_dim(), rng);
    let (p, p_inv) = BinMatrix::random_permutation(code.code_len(), rng);
    Ok(assemble(code, s, s_inv, p, p_inv))
}

/// Key assembly from explicit masks; lets tests use S = P = I.
pub(crate) fn assemble(
    code: GoppaCode,
    s: BinMatrix,
    s_inv: BinMatrix,
    p: BinMatrix,
    p_inv: BinMatrix,
) -> (McEliecePublicKey, McElieceSecretKey) {
    let g_pub = s
        .mul(code.generator())
        .expect("S is code_dim x code_dim")
        .mul(&p)
        .expect("P is code_len x code_len");
    let t = code.error_capacity();
    (
        McEliecePublicKey { g_pub, t },
        McElieceSecretKey { s_inv, code, p_inv, p },
    )
}

/// c = m·G_pub ⊕ e. The caller supplies the weight-t error vector.
pub fn encrypt(
    pk: &McEliecePublicKey,
    msg: &BitString,
    error: &BitString,
) -> Result<BitString, McElieceError> {
    if msg.len() != pk.code_dim() {
        return Err(McElieceError::Length {
            expected: pk.code_dim(),
            got: msg.len(),
        });
    }
    if error.len() != pk.code_len() {
        return Err(McElieceError::Length {
            expected: pk.code_len(),
            got: error.len(),
        });
    }
    if error.weight() != pk.t {
        return Err(McElieceError::Weight {
            expected: pk.t,
            got: error.weight(),
        });
    }
    let cw = vec_mat_mul(msg, &pk.g_pub).expect("dimensions checked");
    Ok(cw.xor(error).expect("equal lengths"))
}

/// Decrypts to (message, error vector in ciphertext positions); `None` is
/// the decoder's ⊥ and must stay a value, not an error, because the layered
/// scheme branches on it.
pub fn decrypt(sk: &McElieceSecretKey, c: &BitString) -> Option<(BitString, BitString)> {
    if c.len() != sk.code.code_len() {
        return None;
    }
    let unpermuted = vec_mat_mul(c, &sk.p_inv).expect("dimensions checked");
    let (codeword, error) = sk.code.decode(&unpermuted)?;
    let masked = sk.code.message_bits(&codeword);
    let msg = vec_mat_mul(&masked, &sk.s_inv).expect("dimensions checked");
    let error_out = vec_mat_mul(&error, &sk.p).expect("dimensions checked");
    Some((msg, error_out))
}

/// Samples a uniformly random error vector of weight exactly t.
pub fn random_error<R: Rng + ?Sized>(pk_len: usize, t: usize, rng: &mut R) -> BitString {
    BitString::random_of_weight(pk_len, t, rng)
}
