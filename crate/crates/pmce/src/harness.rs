//! Executable security experiments: the two-phase chosen-ciphertext game
//! with a decryption oracle, the one-wayness experiment for trapdoor
//! families, the general-decoding experiment, and a library of ciphertext
//! mauls with a total outcome classification.
//!
//! Empirical advantages are reported with a binomial sigma, never as bare
//! point estimates; desk-scale trial counts are noisy.

use std::collections::BTreeMap;
use std::fmt;

use crate::bits::BitString;
use crate::cca2::{self, Cca2Ciphertext, Cca2PublicKey, Cca2SecretKey, RejectReason};
use crate::matrix::{vec_mat_mul, BinMatrix};
use crate::tdf::{self, TdfCiphertext, TdfPublicKey, TdfSecretKey, TrapdoorFamily};
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    /// The phase-2 oracle was asked for the challenge ciphertext.
    #[error("adversary queried the challenge ciphertext")]
    ForbiddenQuery,
    #[error("challenge messages must have equal length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("experiment parameter out of range: {0}")]
    Range(String),
    #[error("scheme failure inside the experiment: {0}")]
    Scheme(String),
}

/// The Gen/Enc/Dec interface the experiments run against.
pub trait PkeScheme {
    type PublicKey;
    type SecretKey;
    type Ciphertext: Clone + PartialEq;

    fn keygen<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(Self::PublicKey, Self::SecretKey), HarnessError>;

    fn encrypt<R: Rng + ?Sized>(
        &self,
        pk: &Self::PublicKey,
        msg: &BitString,
        rng: &mut R,
    ) -> Result<Self::Ciphertext, HarnessError>;

    fn decrypt(&self, sk: &Self::SecretKey, ct: &Self::Ciphertext) -> Option<BitString>;
}

/// The layered code-based scheme under its (m, t) parameters.
#[derive(Clone, Copy, Debug)]
pub struct CcaMcElieceScheme {
    pub m: u32,
    pub t: usize,
}

impl PkeScheme for CcaMcElieceScheme {
    type PublicKey = Cca2PublicKey;
    type SecretKey = Cca2SecretKey;
    type Ciphertext = Cca2Ciphertext;

    fn keygen<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(Cca2PublicKey, Cca2SecretKey), HarnessError> {
        cca2::keygen(self.m, self.t, rng).map_err(|e| HarnessError::Scheme(e.to_string()))
    }

    fn encrypt<R: Rng + ?Sized>(
        &self,
        pk: &Cca2PublicKey,
        msg: &BitString,
        rng: &mut R,
    ) -> Result<Cca2Ciphertext, HarnessError> {
        cca2::encrypt(pk, msg, rng).map_err(|e| HarnessError::Scheme(e.to_string()))
    }

    fn decrypt(&self, sk: &Cca2SecretKey, ct: &Cca2Ciphertext) -> Option<BitString> {
        cca2::decrypt(sk, ct)
    }
}

/// A deliberately broken scheme whose ciphertext is the plaintext;
/// calibrates the experiment's ceiling.
#[derive(Clone, Copy, Debug)]
pub struct IdentityScheme;

impl PkeScheme for IdentityScheme {
    type PublicKey = ();
    type SecretKey = ();
    type Ciphertext = BitString;

    fn keygen<R: Rng + ?Sized>(&self, _rng: &mut R) -> Result<((), ()), HarnessError> {
        Ok(((), ()))
    }

    fn encrypt<R: Rng + ?Sized>(
        &self,
        _pk: &(),
        msg: &BitString,
        _rng: &mut R,
    ) -> Result<BitString, HarnessError> {
        Ok(msg.clone())
    }

    fn decrypt(&self, _sk: &(), ct: &BitString) -> Option<BitString> {
        Some(ct.clone())
    }
}

/// The trapdoor-function construction as a scheme under test.
#[derive(Clone, Debug)]
pub struct TdfPkeScheme<F: TrapdoorFamily + Clone> {
    pub family: F,
}

impl<F: TrapdoorFamily + Clone> PkeScheme for TdfPkeScheme<F> {
    type PublicKey = TdfPublicKey<F>;
    type SecretKey = TdfSecretKey<F>;
    type Ciphertext = TdfCiphertext<F::Image>;

    fn keygen<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(TdfPublicKey<F>, TdfSecretKey<F>), HarnessError> {
        tdf::keygen(&self.family, rng).map_err(|e| HarnessError::Scheme(e.to_string()))
    }

    fn encrypt<R: Rng + ?Sized>(
        &self,
        pk: &TdfPublicKey<F>,
        msg: &BitString,
        rng: &mut R,
    ) -> Result<TdfCiphertext<F::Image>, HarnessError> {
        tdf::encrypt(&self.family, pk, msg, rng).map_err(|e| HarnessError::Scheme(e.to_string()))
    }

    fn decrypt(&self, sk: &TdfSecretKey<F>, ct: &TdfCiphertext<F::Image>) -> Option<BitString> {
        tdf::decrypt(&self.family, sk, ct)
    }
}

/// Decryption oracle handed to the adversary. In phase two it refuses the
/// exact challenge ciphertext and logs every answered query.
pub struct DecOracle<'a, S: PkeScheme> {
    scheme: &'a S,
    sk: &'a S::SecretKey,
    forbidden: Option<&'a S::Ciphertext>,
    answered: Vec<S::Ciphertext>,
}

impl<'a, S: PkeScheme> DecOracle<'a, S> {
    fn new(scheme: &'a S, sk: &'a S::SecretKey, forbidden: Option<&'a S::Ciphertext>) -> Self {
        DecOracle {
            scheme,
            sk,
            forbidden,
            answered: Vec::new(),
        }
    }

    pub fn query(&mut self, ct: &S::Ciphertext) -> Result<Option<BitString>, HarnessError> {
        if self.forbidden.is_some_and(|c| c == ct) {
            return Err(HarnessError::ForbiddenQuery);
        }
        self.answered.push(ct.clone());
        Ok(self.scheme.decrypt(self.sk, ct))
    }

    pub fn queries_answered(&self) -> usize {
        self.answered.len()
    }
}

/// A two-phase adversary: pick two equal-length messages, then guess which
/// one the challenge encrypts (`false` for the first, `true` for the
/// second). Both phases get oracle access.
pub trait Cca2Adversary<S: PkeScheme> {
    fn choose<R: Rng + ?Sized>(
        &mut self,
        pk: &S::PublicKey,
        oracle: &mut DecOracle<'_, S>,
        rng: &mut R,
    ) -> Result<(BitString, BitString), HarnessError>;

    fn guess<R: Rng + ?Sized>(
        &mut self,
        pk: &S::PublicKey,
        challenge: &S::Ciphertext,
        oracle: &mut DecOracle<'_, S>,
        rng: &mut R,
    ) -> Result<bool, HarnessError>;
}

/// Outcome of a chosen-ciphertext experiment run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CcaReport {
    pub trials: usize,
    pub wins: usize,
}

impl CcaReport {
    pub fn win_rate(&self) -> f64 {
        self.wins as f64 / self.trials as f64
    }

    /// |Pr[b' = b] − 1/2|.
    pub fn advantage(&self) -> f64 {
        (self.win_rate() - 0.5).abs()
    }

    /// Binomial standard deviation of the win rate under the null p = 1/2.
    pub fn sigma(&self) -> f64 {
        (0.25 / self.trials as f64).sqrt()
    }
}

impl fmt::Display for CcaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trials={} wins={} win_rate={:.4} advantage={:.4} sigma={:.4}",
            self.trials,
            self.wins,
            self.win_rate(),
            self.advantage(),
            self.sigma()
        )
    }
}

/// Runs the two-phase experiment `trials` times with fresh keys per trial.
pub fn run_cca2_experiment<S, A, R>(
    scheme: &S,
    adversary: &mut A,
    trials: usize,
    rng: &mut R,
) -> Result<CcaReport, HarnessError>
where
    S: PkeScheme,
    A: Cca2Adversary<S>,
    R: Rng + ?Sized,
{
    if trials < 1 {
        return Err(HarnessError::Range("at least one trial required".into()));
    }
    let mut wins = 0;
    for _ in 0..trials {
        let (pk, sk) = scheme.keygen(rng)?;
        let (m0, m1) = {
            let mut oracle = DecOracle::new(scheme, &sk, None);
            adversary.choose(&pk, &mut oracle, rng)?
        };
        if m0.len() != m1.len() {
            return Err(HarnessError::LengthMismatch {
                left: m0.len(),
                right: m1.len(),
            });
        }
        let b: bool = rng.gen();
        let challenge = scheme.encrypt(&pk, if b { &m1 } else { &m0 }, rng)?;
        let guess = {
            let mut oracle = DecOracle::new(scheme, &sk, Some(&challenge));
            let guess = adversary.guess(&pk, &challenge, &mut oracle, rng)?;
            // Oracle hygiene: asserted, not assumed.
            assert!(
                oracle.answered.iter().all(|q| q != &challenge),
                "challenge leaked into the answered-query log"
            );
            guess
        };
        if guess == b {
            wins += 1;
        }
    }
    Ok(CcaReport { trials, wins })
}

/// Null-calibration adversary: random messages, random guess.
pub struct RandomGuessAdversary {
    pub msg_len: usize,
}

impl<S: PkeScheme> Cca2Adversary<S> for RandomGuessAdversary {
    fn choose<R: Rng + ?Sized>(
        &mut self,
        _pk: &S::PublicKey,
        _oracle: &mut DecOracle<'_, S>,
        rng: &mut R,
    ) -> Result<(BitString, BitString), HarnessError> {
        Ok((
            BitString::random(self.msg_len, rng),
            BitString::random(self.msg_len, rng),
        ))
    }

    fn guess<R: Rng + ?Sized>(
        &mut self,
        _pk: &S::PublicKey,
        _challenge: &S::Ciphertext,
        _oracle: &mut DecOracle<'_, S>,
        rng: &mut R,
    ) -> Result<bool, HarnessError> {
        Ok(rng.gen())
    }
}

/// Ceiling-calibration adversary for [`IdentityScheme`]: distinguishes the
/// all-zero from the all-one message by reading the "ciphertext".
pub struct BitReadingAdversary {
    pub msg_len: usize,
}

impl Cca2Adversary<IdentityScheme> for BitReadingAdversary {
    fn choose<R: Rng + ?Sized>(
        &mut self,
        _pk: &(),
        _oracle: &mut DecOracle<'_, IdentityScheme>,
        _rng: &mut R,
    ) -> Result<(BitString, BitString), HarnessError> {
        Ok((BitString::zeros(self.msg_len), BitString::ones(self.msg_len)))
    }

    fn guess<R: Rng + ?Sized>(
        &mut self,
        _pk: &(),
        challenge: &BitString,
        _oracle: &mut DecOracle<'_, IdentityScheme>,
        _rng: &mut R,
    ) -> Result<bool, HarnessError> {
        Ok(challenge.get(0))
    }
}

/// Replays two-bit-swapped variants of the challenge's C2 against the
/// oracle, then guesses at random: the hash recheck answers ⊥ to every
/// probe, so no information flows.
pub struct MaulReplayAdversary {
    pub msg_len: usize,
    pub probes: usize,
    /// Oracle answers other than ⊥ observed across all trials.
    pub informative_answers: usize,
}

impl Cca2Adversary<CcaMcElieceScheme> for MaulReplayAdversary {
    fn choose<R: Rng + ?Sized>(
        &mut self,
        _pk: &Cca2PublicKey,
        _oracle: &mut DecOracle<'_, CcaMcElieceScheme>,
        rng: &mut R,
    ) -> Result<(BitString, BitString), HarnessError> {
        Ok((
            BitString::random(self.msg_len, rng),
            BitString::random(self.msg_len, rng),
        ))
    }

    fn guess<R: Rng + ?Sized>(
        &mut self,
        _pk: &Cca2PublicKey,
        challenge: &Cca2Ciphertext,
        oracle: &mut DecOracle<'_, CcaMcElieceScheme>,
        rng: &mut R,
    ) -> Result<bool, HarnessError> {
        let n = challenge.c2.len();
        for _ in 0..self.probes {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let mauled = maul_c2_bitswap(challenge, i, j).expect("indices distinct and in range");
            if oracle.query(&mauled)?.is_some() {
                self.informative_answers += 1;
            }
        }
        Ok(rng.gen())
    }
}

/// Outcome of a one-wayness experiment run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OwReport {
    pub trials: usize,
    pub successes: usize,
}

impl OwReport {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// The one-wayness experiment: fresh keys and a uniform input per trial;
/// success when the inverter returns the exact preimage. The trapdoor is
/// passed alongside so completeness checks can cheat; honest inverters
/// must ignore it.
pub fn run_ow_experiment<F, I, R>(
    family: &F,
    mut inverter: I,
    trials: usize,
    rng: &mut R,
) -> Result<OwReport, HarnessError>
where
    F: TrapdoorFamily,
    I: FnMut(&F::EvalKey, &F::Image, &F::Trapdoor) -> Option<BitString>,
    R: Rng + ?Sized,
{
    if trials < 1 {
        return Err(HarnessError::Range("at least one trial required".into()));
    }
    let mut successes = 0;
    for _ in 0..trials {
        let (ek, td) = family
            .generate(rng)
            .map_err(|e| HarnessError::Scheme(e.to_string()))?;
        let x = BitString::random(family.input_bits(), rng);
        let image = family
            .forward(&ek, &x)
            .map_err(|e| HarnessError::Scheme(e.to_string()))?;
        if inverter(&ek, &image, &td) == Some(x) {
            successes += 1;
        }
    }
    Ok(OwReport { trials, successes })
}

/// The general-decoding experiment: the solver proposes a message, and the
/// experiment returns 1 exactly when its codeword lies within distance t of
/// the word.
pub fn run_gdp_experiment<S>(
    generator: &BinMatrix,
    t: usize,
    word: &BitString,
    solver: S,
) -> bool
where
    S: FnOnce(&BinMatrix, &BitString) -> BitString,
{
    let candidate = solver(generator, word);
    if candidate.len() != generator.rows() {
        return false;
    }
    let codeword = vec_mat_mul(&candidate, generator).expect("dimensions checked");
    codeword.xor(word).map(|d| d.weight() <= t).unwrap_or(false)
}

/// Classification of a mauled ciphertext's decryption outcome. Total: every
/// decryption lands in exactly one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MaulOutcome {
    RejectDecode,
    RejectEq2,
    RejectEq3,
    RejectEq4,
    RejectDegenerate,
    AcceptChanged,
    AcceptUnchanged,
}

impl MaulOutcome {
    pub fn label(self) -> &'static str {
        match self {
            MaulOutcome::RejectDecode => "reject-decode",
            MaulOutcome::RejectEq2 => "reject-eq2",
            MaulOutcome::RejectEq3 => "reject-eq3",
            MaulOutcome::RejectEq4 => "reject-eq4",
            MaulOutcome::RejectDegenerate => "reject-degenerate",
            MaulOutcome::AcceptChanged => "accept-changed",
            MaulOutcome::AcceptUnchanged => "accept-unchanged",
        }
    }
}

/// Decrypts a (usually mauled) ciphertext and classifies the outcome
/// against the original plaintext.
pub fn classify_maul(
    sk: &Cca2SecretKey,
    original: &BitString,
    ct: &Cca2Ciphertext,
) -> MaulOutcome {
    match cca2::decrypt_diag(sk, ct) {
        Err(RejectReason::DecodeFail) => MaulOutcome::RejectDecode,
        Err(RejectReason::Eq2Fail) => MaulOutcome::RejectEq2,
        Err(RejectReason::Eq3Fail) => MaulOutcome::RejectEq3,
        Err(RejectReason::Eq4Fail) => MaulOutcome::RejectEq4,
        Err(RejectReason::DegenerateR) => MaulOutcome::RejectDegenerate,
        Ok(msg) if msg == *original => MaulOutcome::AcceptUnchanged,
        Ok(_) => MaulOutcome::AcceptChanged,
    }
}

/// Flips bits i and j of C2 (the weight-preserving two-bit swap when one
/// index is inside the error support and the other outside).
pub fn maul_c2_bitswap(
    ct: &Cca2Ciphertext,
    i: usize,
    j: usize,
) -> Result<Cca2Ciphertext, HarnessError> {
    if i == j {
        return Err(HarnessError::Range("bit-swap indices must differ".into()));
    }
    if i >= ct.c2.len() || j >= ct.c2.len() {
        return Err(HarnessError::Range(format!(
            "indices ({i}, {j}) out of range for {} bits",
            ct.c2.len()
        )));
    }
    let mut out = ct.clone();
    out.c2.flip(i);
    out.c2.flip(j);
    Ok(out)
}

/// Adds a nonzero offset to C1.
pub fn maul_c1_additive(ct: &Cca2Ciphertext, delta: &BigUint) -> Result<Cca2Ciphertext, HarnessError> {
    if delta == &BigUint::default() {
        return Err(HarnessError::Range("offset must be nonzero".into()));
    }
    let mut out = ct.clone();
    out.c1 = &ct.c1 + delta;
    Ok(out)
}

/// White-box maul C1 ± 2^bit·h·r: the one C1 forgery family that flips a
/// single recovered bit. Takes the secrets (coin weight and value), so it
/// belongs to targeted probes only; the black-box experiment cannot build it.
pub fn maul_c1_offset(
    ct: &Cca2Ciphertext,
    bit: usize,
    positive: bool,
    weight: usize,
    coin_value: &BigUint,
) -> Result<Cca2Ciphertext, HarnessError> {
    let delta = (BigUint::one() << bit) * BigUint::from(weight as u64) * coin_value;
    let mut out = ct.clone();
    if positive {
        out.c1 = &ct.c1 + delta;
    } else if ct.c1 >= delta {
        out.c1 = &ct.c1 - delta;
    } else {
        return Err(HarnessError::Range("subtractive offset exceeds C1".into()));
    }
    Ok(out)
}

/// Per-class counts of a maul campaign, with stable text rendering.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MaulCensus {
    counts: BTreeMap<MaulOutcome, usize>,
}

impl MaulCensus {
    pub fn record(&mut self, outcome: MaulOutcome) {
        *self.counts.entry(outcome).or_insert(0) += 1;
    }

    pub fn count(&self, outcome: MaulOutcome) -> usize {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn accepted(&self) -> usize {
        self.count(MaulOutcome::AcceptChanged) + self.count(MaulOutcome::AcceptUnchanged)
    }

    pub fn entries(&self) -> impl Iterator<Item = (MaulOutcome, usize)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }
}

impl fmt::Display for MaulCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (outcome, count) in &self.counts {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}={}", outcome.label(), count)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goppa;
    use crate::tdf::ToyModularTdf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn bit_reader_always_wins_against_identity() {
        let mut rng = ChaCha20Rng::seed_from_u64(110);
        let mut adversary = BitReadingAdversary { msg_len: 8 };
        let report = run_cca2_experiment(&IdentityScheme, &mut adversary, 500, &mut rng).unwrap();
        assert_eq!(report.wins, 500);
        assert!((report.advantage() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn random_guess_has_null_advantage() {
        let mut rng = ChaCha20Rng::seed_from_u64(111);
        let scheme = CcaMcElieceScheme { m: 4, t: 2 };
        let mut adversary = RandomGuessAdversary { msg_len: 16 };
        let report = run_cca2_experiment(&scheme, &mut adversary, 600, &mut rng).unwrap();
        assert!(
            report.advantage() <= 3.0 * report.sigma(),
            "advantage {} above 3 sigma {}",
            report.advantage(),
            report.sigma()
        );
    }

    #[test]
    fn experiment_transcript_is_seed_deterministic() {
        let scheme = CcaMcElieceScheme { m: 4, t: 2 };
        let run = |seed: u64| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let mut adversary = RandomGuessAdversary { msg_len: 16 };
            run_cca2_experiment(&scheme, &mut adversary, 50, &mut rng).unwrap()
        };
        assert_eq!(run(7), run(7));
    }

    #[test]
    fn forbidden_query_is_surfaced() {
        struct Cheater;
        impl Cca2Adversary<IdentityScheme> for Cheater {
            fn choose<R: Rng + ?Sized>(
                &mut self,
                _pk: &(),
                _oracle: &mut DecOracle<'_, IdentityScheme>,
                _rng: &mut R,
            ) -> Result<(BitString, BitString), HarnessError> {
                Ok((BitString::zeros(4), BitString::ones(4)))
            }
            fn guess<R: Rng + ?Sized>(
                &mut self,
                _pk: &(),
                challenge: &BitString,
                oracle: &mut DecOracle<'_, IdentityScheme>,
                _rng: &mut R,
            ) -> Result<bool, HarnessError> {
                oracle.query(challenge)?;
                Ok(false)
            }
        }
        let mut rng = ChaCha20Rng::seed_from_u64(112);
        let result = run_cca2_experiment(&IdentityScheme, &mut Cheater, 1, &mut rng);
        assert_eq!(result, Err(HarnessError::ForbiddenQuery));
    }

    #[test]
    fn unequal_challenge_lengths_are_refused() {
        struct Sloppy;
        impl Cca2Adversary<IdentityScheme> for Sloppy {
            fn choose<R: Rng + ?Sized>(
                &mut self,
                _pk: &(),
                _oracle: &mut DecOracle<'_, IdentityScheme>,
                _rng: &mut R,
            ) -> Result<(BitString, BitString), HarnessError> {
                Ok((BitString::zeros(4), BitString::ones(5)))
            }
            fn guess<R: Rng + ?Sized>(
                &mut self,
                _pk: &(),
                _challenge: &BitString,
                _oracle: &mut DecOracle<'_, IdentityScheme>,
                _rng: &mut R,
            ) -> Result<bool, HarnessError> {
                Ok(false)
            }
        }
        let mut rng = ChaCha20Rng::seed_from_u64(113);
        assert!(matches!(
            run_cca2_experiment(&IdentityScheme, &mut Sloppy, 1, &mut rng),
            Err(HarnessError::LengthMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn maul_replay_learns_nothing() {
        // At k = 40 the hash recheck's 2^-k soundness makes an answered
        // probe effectively impossible. (At k = 8 collisions do occur at
        // observable rates; that is the toy parameter set, not a bug.)
        let mut rng = ChaCha20Rng::seed_from_u64(114);
        let scheme = CcaMcElieceScheme { m: 6, t: 4 };
        let mut adversary = MaulReplayAdversary {
            msg_len: 24,
            probes: 10,
            informative_answers: 0,
        };
        let report = run_cca2_experiment(&scheme, &mut adversary, 100, &mut rng).unwrap();
        assert_eq!(adversary.informative_answers, 0, "some maul was answered");
        assert!(report.advantage() <= 3.0 * report.sigma());
    }

    #[test]
    fn ow_experiment_rates() {
        let family = ToyModularTdf::new(16).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(115);
        // Trivial inverter with the trapdoor: rate 1.
        let report = run_ow_experiment(
            &family,
            |_, image, td| family.invert(td, image),
            200,
            &mut rng,
        )
        .unwrap();
        assert_eq!(report.successes, 200);
        // Random guessing: negligible rate.
        let report = run_ow_experiment(
            &family,
            |_, _, _| Some(BitString::random(16, &mut ChaCha20Rng::seed_from_u64(116))),
            500,
            &mut rng,
        )
        .unwrap();
        assert!(report.successes <= 1);
    }

    #[test]
    fn ow_brute_force_inverter_at_8_bits() {
        let family = ToyModularTdf::new(8).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(117);
        let report = run_ow_experiment(
            &family,
            |ek, image, _| {
                (0u32..256).map(|v| BitString::from_integer(&v.into(), 8).unwrap()).find(|x| {
                    family.forward(ek, x).as_ref() == Ok(image)
                })
            },
            50,
            &mut rng,
        )
        .unwrap();
        assert_eq!(report.successes, 50);
    }

    #[test]
    fn gdp_experiment_checks() {
        let mut rng = ChaCha20Rng::seed_from_u64(118);
        let code = goppa::GoppaCode::generate(4, 2, &mut rng).unwrap();
        let gen = code.generator().clone();
        // Planted instance with the planted answer.
        let msg = BitString::random(8, &mut rng);
        let word = code
            .encode(&msg)
            .unwrap()
            .xor(&BitString::random_of_weight(16, 2, &mut rng))
            .unwrap();
        assert!(run_gdp_experiment(&gen, 2, &word, |_, _| msg.clone()));
        // The brute-force oracle solves every decodable word.
        for _ in 0..50 {
            let word = BitString::random(16, &mut rng);
            if let Some(solution) = goppa::brute_force_decode(&gen, &word, 2).unwrap() {
                assert!(run_gdp_experiment(&gen, 2, &word, |_, _| solution.clone()));
            }
        }
        // The constant-zero solver fails on a word far from zero.
        let far = BitString::ones(16);
        if goppa::brute_force_decode(&gen, &far, 2).unwrap() != Some(BitString::zeros(8)) {
            assert!(!run_gdp_experiment(&gen, 2, &far, |_, _| BitString::zeros(8)));
        }
    }

    #[test]
    fn maul_constructors_validate() {
        let ct = Cca2Ciphertext {
            c1: 100u32.into(),
            c2: BitString::zeros(16),
            msg_len: 8,
        };
        assert!(maul_c2_bitswap(&ct, 3, 3).is_err());
        assert!(maul_c2_bitswap(&ct, 3, 16).is_err());
        assert!(maul_c2_bitswap(&ct, 3, 5).is_ok());
        assert!(maul_c1_additive(&ct, &BigUint::default()).is_err());
        assert_ne!(maul_c1_additive(&ct, &3u32.into()).unwrap().c1, ct.c1);
        // Subtraction past zero is refused.
        assert!(maul_c1_offset(&ct, 10, false, 3, &9u32.into()).is_err());
        assert!(maul_c1_offset(&ct, 0, true, 3, &9u32.into()).is_ok());
    }

    #[test]
    fn census_totals() {
        let mut census = MaulCensus::default();
        census.record(MaulOutcome::RejectEq2);
        census.record(MaulOutcome::RejectEq2);
        census.record(MaulOutcome::AcceptChanged);
        assert_eq!(census.total(), 3);
        assert_eq!(census.count(MaulOutcome::RejectEq2), 2);
        assert_eq!(census.accepted(), 1);
        assert_eq!(census.to_string(), "reject-eq2=2 accept-changed=1");
    }
}
