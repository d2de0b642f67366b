//! Wall-clock comparison of the layered scheme against the plain McEliece
//! operations it wraps.
//!
//! The plain encryption timing includes sampling the weight-t error vector,
//! since the textbook operation chooses it internally; the layered timings
//! include coin derivation, masking, permutation and blinding. Medians are
//! reported because single runs jitter.

use std::time::Instant;

use crate::bits::BitString;
use crate::cca2::{self, SchemeError};
use crate::mceliece;
use crate::params::ParameterSet;
use rand::Rng;

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub param_name: String,
    pub trials: usize,
    pub msg_bits: usize,
    pub keygen_ms: f64,
    /// Medians in microseconds.
    pub mce_encrypt_us: f64,
    pub mce_decrypt_us: f64,
    pub cca2_encrypt_us: f64,
    pub cca2_decrypt_us: f64,
}

impl BenchReport {
    pub fn encrypt_ratio(&self) -> f64 {
        self.cca2_encrypt_us / self.mce_encrypt_us
    }

    pub fn decrypt_ratio(&self) -> f64 {
        self.cca2_decrypt_us / self.mce_decrypt_us
    }
}

impl std::fmt::Display for BenchReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "parameter set {} ({} trials, {}-bit messages, keygen {:.1} ms)",
            self.param_name, self.trials, self.msg_bits, self.keygen_ms
        )?;
        writeln!(f, "  {:<16} {:>12}", "operation", "median")?;
        writeln!(f, "  {:<16} {:>9.2} us", "mce-encrypt", self.mce_encrypt_us)?;
        writeln!(f, "  {:<16} {:>9.2} us", "mce-decrypt", self.mce_decrypt_us)?;
        writeln!(f, "  {:<16} {:>9.2} us", "cca2-encrypt", self.cca2_encrypt_us)?;
        writeln!(f, "  {:<16} {:>9.2} us", "cca2-decrypt", self.cca2_decrypt_us)?;
        writeln!(f, "  encrypt ratio cca2/mce: {:.3}", self.encrypt_ratio())?;
        write!(f, "  decrypt ratio cca2/mce: {:.3}", self.decrypt_ratio())
    }
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("no NaN timings"));
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2.0
    }
}

pub fn run<R: Rng + ?Sized>(
    param: &ParameterSet,
    trials: usize,
    msg_bits: usize,
    rng: &mut R,
) -> Result<BenchReport, SchemeError> {
    assert!(trials >= 1, "at least one trial");
    let keygen_start = Instant::now();
    let (pk, sk) = cca2::keygen(param.m, param.t, rng)?;
    let keygen_ms = keygen_start.elapsed().as_secs_f64() * 1e3;
    let n_code = pk.mce.code_len();
    let k = pk.mce.code_dim();
    let t = pk.mce.t;

    let mut mce_enc = Vec::with_capacity(trials);
    let mut mce_dec = Vec::with_capacity(trials);
    let mut cca_enc = Vec::with_capacity(trials);
    let mut cca_dec = Vec::with_capacity(trials);

    for _ in 0..trials {
        let mce_msg = BitString::random(k, rng);
        let start = Instant::now();
        let e = mceliece::random_error(n_code, t, rng);
        let c = mceliece::encrypt(&pk.mce, &mce_msg, &e)?;
        mce_enc.push(start.elapsed().as_secs_f64() * 1e6);
        let c = std::hint::black_box(c);

        let start = Instant::now();
        let out = mceliece::decrypt(&sk.mce_sk, &c);
        mce_dec.push(start.elapsed().as_secs_f64() * 1e6);
        assert!(std::hint::black_box(out).is_some());

        let msg = BitString::random(msg_bits, rng);
        let start = Instant::now();
        let ct = cca2::encrypt(&pk, &msg, rng)?;
        cca_enc.push(start.elapsed().as_secs_f64() * 1e6);
        let ct = std::hint::black_box(ct);

        let start = Instant::now();
        let out = cca2::decrypt(&sk, &ct);
        cca_dec.push(start.elapsed().as_secs_f64() * 1e6);
        assert_eq!(std::hint::black_box(out), Some(msg));
    }

    Ok(BenchReport {
        param_name: param.name.to_string(),
        trials,
        msg_bits,
        keygen_ms,
        mce_encrypt_us: median(&mut mce_enc),
        mce_decrypt_us: median(&mut mce_dec),
        cca2_encrypt_us: median(&mut cca_enc),
        cca2_decrypt_us: median(&mut cca_dec),
    })
}
