//! Binary irreducible Goppa codes: construction, generator derivation, the
//! efficient algebraic decoder, and a brute-force decoding oracle.
//!
//! A code is built from a support of distinct GF(2^m) elements and a monic
//! irreducible polynomial g of degree t with g(α) ≠ 0 on the support. The
//! parity-check matrix over the field has entries α_j^i / g(α_j); its binary
//! expansion (m rows per field row) defines the code, and the generator is a
//! nullspace basis whose restriction to the recorded information set is the
//! identity.
//!
//! Decoding follows the standard split for binary Goppa codes:
//!
//! 1. syndrome S(x) = Σ c_i·(x + α_i)^{-1} mod g (zero means codeword);
//! 2. T = S^{-1} mod g, then R = sqrt(T + x) mod g via the even/odd
//!    coefficient split and a precomputed sqrt(x);
//! 3. stop the extended Euclidean algorithm on (g, R) at the first
//!    remainder of degree ≤ t/2, giving σ = a² + x·b²;
//! 4. scan the support for roots of σ; the root positions are the error
//!    positions. A root-count/degree mismatch or a nonzero post-correction
//!    syndrome is a decoding failure.
//!
//! Up to t planted errors this recovers the codeword exactly; words farther
//! than t from every codeword fail.

use crate::bits::BitString;
use crate::gf2m::{self, FieldParams, FieldPoly, Gfe};
use crate::matrix::BinMatrix;
use rand::Rng;

/// Errors from code construction and the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GoppaError {
    #[error("invalid code parameters: {0}")]
    Parameter(String),
    #[error("brute-force decoding infeasible for dimension {0} (limit 16)")]
    Infeasible(usize),
    #[error(transparent)]
    Field(#[from] gf2m::FieldError),
}

/// A binary irreducible Goppa code with its decoder state.
#[derive(Clone)]
pub struct GoppaCode {
    field: FieldParams,
    support: Vec<Gfe>,
    goppa_poly: FieldPoly,
    t: usize,
    parity: BinMatrix,
    generator: BinMatrix,
    info_set: Vec<usize>,
    /// Row j holds the t coefficients of (x + α_j)^{-1} mod g.
    inv_table: Vec<Gfe>,
    sqrt_x: FieldPoly,
}

impl GoppaCode {
    /// Generates a code over GF(2^m) correcting t errors. The support is the
    /// full field in a fixed enumeration order (0, 1, α, α², …); for t = 1
    /// the root of the degree-one Goppa polynomial is excluded, since no
    /// support element may be a root of g.
    pub fn generate<R: Rng + ?Sized>(m: u32, t: usize, rng: &mut R) -> Result<GoppaCode, GoppaError> {
        if t < 1 {
            return Err(GoppaError::Parameter("t must be at least 1".into()));
        }
        let field = FieldParams::new(m)?;
        let code_len = field.size() - usize::from(t == 1);
        let dim = code_len as isize - (m as usize * t) as isize;
        if dim < 1 {
            return Err(GoppaError::Parameter(format!(
                "dimension {dim} = {code_len} - {m}*{t} is not positive"
            )));
        }
        // Binary rank of the parity-check matrix can fall short of m·t for an
        // unlucky g; resample until it does not.
        for _ in 0..200 {
            let g = gf2m::random_irreducible(t, &field, rng);
            let support: Vec<Gfe> = field.elements().filter(|&a| g.eval(a, &field) != 0).collect();
            debug_assert_eq!(support.len(), code_len);
            match Self::from_parts(field.clone(), support, g) {
                Ok(code) => return Ok(code),
                Err(GoppaError::Parameter(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(GoppaError::Parameter(
            "no full-rank parity-check matrix found after 200 attempts".into(),
        ))
    }

    /// Builds the code (parity check, generator, decoder state) from a
    /// support and Goppa polynomial. Deterministic, so a serialized key
    /// reconstructs the identical code.
    pub fn from_parts(
        field: FieldParams,
        support: Vec<Gfe>,
        goppa_poly: FieldPoly,
    ) -> Result<GoppaCode, GoppaError> {
        let t = goppa_poly
            .degree()
            .ok_or_else(|| GoppaError::Parameter("zero Goppa polynomial".into()))?;
        let n = support.len();
        let m = field.degree() as usize;
        if n == 0 || n > field.size() {
            return Err(GoppaError::Parameter(format!("bad support size {n}")));
        }
        let mut seen = vec![false; field.size()];
        for &a in &support {
            if std::mem::replace(&mut seen[a as usize], true) {
                return Err(GoppaError::Parameter("support elements not distinct".into()));
            }
            if goppa_poly.eval(a, &field) == 0 {
                return Err(GoppaError::Parameter("support element is a root of g".into()));
            }
        }

        // Parity check over the field: row i, column j is α_j^i / g(α_j),
        // expanded into m binary rows per field row.
        let mut parity = BinMatrix::zeros(m * t, n);
        for (j, &alpha) in support.iter().enumerate() {
            let ginv = field.inv(goppa_poly.eval(alpha, &field))?;
            let mut entry = ginv;
            for i in 0..t {
                for b in 0..m {
                    if entry >> b & 1 == 1 {
                        parity.set(i * m + b, j, true);
                    }
                }
                entry = field.mul(entry, alpha);
            }
        }

        let rank = parity.rank();
        if rank < m * t {
            return Err(GoppaError::Parameter(format!(
                "parity rank {rank} below {}",
                m * t
            )));
        }
        let (generator, info_set) = parity.nullspace();
        debug_assert_eq!(generator.rows(), n - m * t);
        debug_assert!(generator
            .mul(&parity.transpose())
            .map(|p| p.is_zero())
            .unwrap_or(false));

        // Decoder state: (x + α)^{-1} mod g is q_α(x)/g(α) where q_α is the
        // quotient of g by (x + α), computed by synthetic division.
        let mut inv_table = vec![0 as Gfe; n * t];
        for (j, &alpha) in support.iter().enumerate() {
            let mut q = vec![0 as Gfe; t];
            q[t - 1] = goppa_poly.coeff(t);
            for i in (1..t).rev() {
                q[i - 1] = goppa_poly.coeff(i) ^ field.mul(alpha, q[i]);
            }
            let rem = goppa_poly.coeff(0) ^ field.mul(alpha, q[0]);
            let scale = field.inv(rem)?;
            for (dst, &c) in inv_table[j * t..(j + 1) * t].iter_mut().zip(&q) {
                *dst = field.mul(c, scale);
            }
        }
        let sqrt_x = gf2m::sqrt_mod(&FieldPoly::x(), &goppa_poly, &field)?;

        Ok(GoppaCode {
            field,
            support,
            goppa_poly,
            t,
            parity,
            generator,
            info_set,
            inv_table,
            sqrt_x,
        })
    }

    pub fn code_len(&self) -> usize {
        self.support.len()
    }

    pub fn code_dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn error_capacity(&self) -> usize {
        self.t
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn support(&self) -> &[Gfe] {
        &self.support
    }

    pub fn goppa_poly(&self) -> &FieldPoly {
        &self.goppa_poly
    }

    pub fn generator(&self) -> &BinMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BinMatrix {
        &self.parity
    }

    /// Columns where the generator restricts to the identity; reading a
    /// codeword at these positions recovers the message.
    pub fn info_set(&self) -> &[usize] {
        &self.info_set
    }

    /// Encodes a message of `code_dim` bits into a codeword.
    pub fn encode(&self, msg: &BitString) -> Result<BitString, crate::bits::BitsError> {
        crate::matrix::vec_mat_mul(msg, &self.generator)
    }

    /// Reads the message bits of a codeword off the information set.
    pub fn message_bits(&self, codeword: &BitString) -> BitString {
        let mut msg = BitString::zeros(self.code_dim());
        for (i, &col) in self.info_set.iter().enumerate() {
            if codeword.get(col) {
                msg.set(i, true);
            }
        }
        msg
    }

    /// Syndrome polynomial Σ word_i · (x + α_i)^{-1} mod g.
    pub fn syndrome(&self, word: &BitString) -> FieldPoly {
        let mut coeffs = vec![0 as Gfe; self.t];
        for j in word.iter_ones() {
            for (c, &v) in coeffs.iter_mut().zip(&self.inv_table[j * self.t..(j + 1) * self.t]) {
                *c ^= v;
            }
        }
        FieldPoly::from_coeffs(coeffs)
    }

    /// Decodes a word within Hamming distance t of a codeword into
    /// (codeword, error); `None` when no such codeword exists.
    pub fn decode(&self, word: &BitString) -> Option<(BitString, BitString)> {
        assert_eq!(word.len(), self.code_len(), "word length mismatch");
        let f = &self.field;
        let g = &self.goppa_poly;
        let syndrome = self.syndrome(word);
        if syndrome.is_zero() {
            return Some((word.clone(), BitString::zeros(self.code_len())));
        }

        let t_poly = gf2m::inv_mod(&syndrome, g, f).ok()?;
        let u = t_poly.add(&FieldPoly::x()).rem(g, f).ok()?;
        let locator = if u.is_zero() {
            // S^{-1} ≡ x (mod g): the single error sits at the position of α = 0.
            FieldPoly::x()
        } else {
            // sqrt via even/odd split: u = A(x²) + x·B(x²) gives
            // sqrt(u) = Â + sqrt(x)·B̂ with per-coefficient field roots.
            let deg = u.degree().unwrap_or(0);
            let mut even = Vec::with_capacity(deg / 2 + 1);
            let mut odd = Vec::with_capacity(deg / 2 + 1);
            for i in 0..=deg {
                let r = f.sqrt(u.coeff(i));
                if i % 2 == 0 {
                    even.push(r);
                } else {
                    odd.push(r);
                }
            }
            let root = FieldPoly::from_coeffs(even)
                .add(&FieldPoly::from_coeffs(odd).mul(&self.sqrt_x, f))
                .rem(g, f)
                .ok()?;
            if root.is_zero() {
                return None;
            }
            let (a, b) = gf2m::eea_below(g, &root, self.t / 2, f);
            a.mul(&a, f).add(&FieldPoly::x().mul(&b.mul(&b, f), f))
        };

        let deg = locator.degree()?;
        if deg == 0 || deg > self.t {
            return None;
        }
        let mut error = BitString::zeros(self.code_len());
        let mut roots = 0;
        for (j, &alpha) in self.support.iter().enumerate() {
            if locator.eval(alpha, f) == 0 {
                error.set(j, true);
                roots += 1;
            }
        }
        if roots != deg {
            return None;
        }
        // The corrected word must have a zero syndrome.
        let mut check = syndrome;
        for j in error.iter_ones() {
            let row = FieldPoly::from_coeffs(self.inv_table[j * self.t..(j + 1) * self.t].to_vec());
            check = check.add(&row);
        }
        if !check.is_zero() {
            return None;
        }
        let codeword = word.xor(&error).expect("equal lengths");
        Some((codeword, error))
    }
}

impl std::fmt::Debug for GoppaCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GoppaCode[n={}, k={}, t={}, m={}]",
            self.code_len(),
            self.code_dim(),
            self.t,
            self.field.degree()
        )
    }
}

/// Exhaustive decoder: scans every message and returns one whose codeword is
/// within distance t of `word`. Codewords are enumerated in Gray-code order
/// so each step is a single row xor.
pub fn brute_force_decode(
    generator: &BinMatrix,
    word: &BitString,
    t: usize,
) -> Result<Option<BitString>, GoppaError> {
    let k = generator.rows();
    if k > 16 {
        return Err(GoppaError::Infeasible(k));
    }
    assert_eq!(word.len(), generator.cols(), "word length mismatch");
    let wpr = word.words().len();
    let rows: Vec<&[u64]> = (0..k).map(|_| &[] as &[u64]).collect();
    let mut row_words: Vec<Vec<u64>> = Vec::with_capacity(k);
    for r in 0..k {
        row_words.push(generator.row(r).words().to_vec());
    }
    drop(rows);

    let weight_to = |cw: &[u64]| -> usize {
        cw.iter()
            .zip(word.words())
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    };

    let mut codeword = vec![0u64; wpr];
    if weight_to(&codeword) <= t {
        return Ok(Some(BitString::zeros(k)));
    }
    for counter in 1u32..1 << k {
        let flip = counter.trailing_zeros() as usize;
        // Integer bit `flip` is message position k-1-flip.
        for (a, b) in codeword.iter_mut().zip(&row_words[k - 1 - flip]) {
            *a ^= b;
        }
        if weight_to(&codeword) <= t {
            let gray = counter ^ (counter >> 1);
            let msg = BitString::from_integer(&gray.into(), k).expect("fits in k bits");
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vec_mat_mul;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn dimensions_match_parameters() {
        let mut rng = ChaCha20Rng::seed_from_u64(30);
        let code = GoppaCode::generate(4, 2, &mut rng).unwrap();
        assert_eq!(code.code_len(), 16);
        assert_eq!(code.code_dim(), 8);
        let code = GoppaCode::generate(6, 4, &mut rng).unwrap();
        assert_eq!(code.code_len(), 64);
        assert_eq!(code.code_dim(), 40);
    }

    #[test]
    fn degree_one_goppa_code_is_a_hamming_code() {
        // A degree-one g always has its root in the field, so the full
        // support is impossible; the root is excluded and the [2^m−1, 2^m−1−m]
        // Hamming parameters come out.
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let code = GoppaCode::generate(3, 1, &mut rng).unwrap();
        assert_eq!(code.code_len(), 7);
        assert_eq!(code.code_dim(), 4);
        for _ in 0..50 {
            let msg = BitString::random(4, &mut rng);
            let cw = code.encode(&msg).unwrap();
            let mut corrupted = cw.clone();
            corrupted.flip(rng.gen_range(0..7));
            let (decoded, err) = code.decode(&corrupted).unwrap();
            assert_eq!(decoded, cw);
            assert_eq!(err.weight(), 1);
        }
    }

    #[test]
    fn generator_annihilated_by_parity() {
        let mut rng = ChaCha20Rng::seed_from_u64(32);
        for (m, t) in [(4u32, 2usize), (5, 2), (6, 4)] {
            let code = GoppaCode::generate(m, t, &mut rng).unwrap();
            let prod = code.generator().mul(&code.parity_check().transpose()).unwrap();
            assert!(prod.is_zero());
            assert_eq!(code.generator().rank(), code.code_dim());
        }
    }

    #[test]
    fn codeword_decodes_to_itself() {
        let mut rng = ChaCha20Rng::seed_from_u64(33);
        let code = GoppaCode::generate(4, 2, &mut rng).unwrap();
        for _ in 0..100 {
            let msg = BitString::random(8, &mut rng);
            let cw = code.encode(&msg).unwrap();
            let (decoded, err) = code.decode(&cw).unwrap();
            assert_eq!(decoded, cw);
            assert_eq!(err.weight(), 0);
            assert_eq!(code.message_bits(&cw), msg);
        }
    }

    #[test]
    fn corrects_planted_errors_up_to_t() {
        let mut rng = ChaCha20Rng::seed_from_u64(34);
        for (m, t) in [(4u32, 2usize), (6, 4)] {
            let code = GoppaCode::generate(m, t, &mut rng).unwrap();
            for trial in 0..500 {
                let msg = BitString::random(code.code_dim(), &mut rng);
                let cw = code.encode(&msg).unwrap();
                let weight = trial % (t + 1);
                let err = BitString::random_of_weight(code.code_len(), weight, &mut rng);
                let noisy = cw.xor(&err).unwrap();
                let (decoded, recovered) = code
                    .decode(&noisy)
                    .unwrap_or_else(|| panic!("decode failed at weight {weight}"));
                assert_eq!(decoded, cw);
                assert_eq!(recovered, err);
            }
        }
    }

    #[test]
    fn decode_is_deterministic() {
        let mut rng = ChaCha20Rng::seed_from_u64(35);
        let code = GoppaCode::generate(4, 2, &mut rng).unwrap();
        let word = BitString::random(16, &mut rng);
        assert_eq!(code.decode(&word), code.decode(&word));
    }

    #[test]
    fn brute_force_agrees_with_decoder() {
        let mut rng = ChaCha20Rng::seed_from_u64(36);
        let code = GoppaCode::generate(4, 2, &mut rng).unwrap();
        for _ in 0..500 {
            let msg = BitString::random(8, &mut rng);
            let cw = code.encode(&msg).unwrap();
            let err = BitString::random_of_weight(16, rng.gen_range(0..=2), &mut rng);
            let noisy = cw.xor(&err).unwrap();
            let brute = brute_force_decode(code.generator(), &noisy, 2).unwrap().unwrap();
            assert_eq!(brute, msg);
            let (decoded, _) = code.decode(&noisy).unwrap();
            assert_eq!(code.message_bits(&decoded), brute);
        }
    }

    #[test]
    fn brute_force_failure_cases() {
        let mut rng = ChaCha20Rng::seed_from_u64(37);
        let code = GoppaCode::generate(4, 2, &mut rng).unwrap();
        // Codeword at distance zero.
        let msg = BitString::random(8, &mut rng);
        let cw = code.encode(&msg).unwrap();
        assert_eq!(brute_force_decode(code.generator(), &cw, 2).unwrap(), Some(msg));
        // A word farther than t from every codeword fails both decoders.
        let mut found_undecodable = false;
        for _ in 0..200 {
            let word = BitString::random(16, &mut rng);
            let brute = brute_force_decode(code.generator(), &word, 2).unwrap();
            assert_eq!(brute.is_some(), code.decode(&word).is_some());
            found_undecodable |= brute.is_none();
        }
        assert!(found_undecodable, "random scan never left the decoding balls");
        // Infeasible dimension is refused.
        let wide = BinMatrix::identity(17);
        assert!(matches!(
            brute_force_decode(&wide, &BitString::zeros(17), 2),
            Err(GoppaError::Infeasible(17))
        ));
    }

    #[test]
    fn brute_force_messages_reencode() {
        let mut rng = ChaCha20Rng::seed_from_u64(38);
        let code = GoppaCode::generate(4, 2, &mut rng).unwrap();
        for _ in 0..100 {
            let word = BitString::random(16, &mut rng);
            if let Some(msg) = brute_force_decode(code.generator(), &word, 2).unwrap() {
                let cw = vec_mat_mul(&msg, code.generator()).unwrap();
                assert!(cw.xor(&word).unwrap().weight() <= 2);
            }
        }
    }

    #[test]
    fn rejects_impossible_parameters() {
        let mut rng = ChaCha20Rng::seed_from_u64(39);
        assert!(matches!(
            GoppaCode::generate(4, 4, &mut rng),
            Err(GoppaError::Parameter(_))
        ));
        assert!(matches!(
            GoppaCode::generate(4, 0, &mut rng),
            Err(GoppaError::Parameter(_))
        ));
    }
}
