//! Known-answer-test vectors: seeded, deterministic, with every pipeline
//! intermediate recorded so an independent implementation can diff stage by
//! stage.
//!
//! The file is line-oriented `field=value` text. A header block pins the
//! format, parameter set, case count, seed and key digests; each `[case N]`
//! section records the message, the derived error vector and coins, the
//! permutation index and carry digits, the blinding terms, both ciphertext
//! components and the decryption result. Verification replays the whole
//! generation from the header seed and reports the first differing field.

use crate::bits::BitString;
use crate::cca2;
use crate::format;
use crate::params::{self, ParameterSet};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// Message bit lengths cycled across cases; deliberately not all multiples
/// of eight.
pub const MESSAGE_BITS_SCHEDULE: &[usize] = &[8, 64, 7, 40, 129, 256];

pub const KAT_FORMAT: &str = "pmce-kat-v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KatError {
    #[error("malformed vector file: {0}")]
    Malformed(String),
    #[error("mismatch at stage {stage}")]
    Mismatch { stage: String },
    #[error("generation failed: {0}")]
    Generation(String),
}

fn hex_bits(bits: &BitString) -> String {
    hex::encode(bits.to_bytes())
}

fn hex_uint(v: &BigUint) -> String {
    if v.is_zero() {
        "00".into()
    } else {
        hex::encode(v.to_bytes_be())
    }
}

fn digest_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// One `field=value` record with its diff-stage label.
type Field = (String, String);

fn generate_fields(
    param: &ParameterSet,
    count: usize,
    seed: [u8; 32],
) -> Result<Vec<Field>, KatError> {
    let mut rng = ChaCha20Rng::from_seed(seed);
    let (pk, sk) =
        cca2::keygen(param.m, param.t, &mut rng).map_err(|e| KatError::Generation(e.to_string()))?;
    let mut fields: Vec<Field> = vec![
        ("format".into(), KAT_FORMAT.into()),
        ("param".into(), param.name.into()),
        ("m".into(), param.m.to_string()),
        ("t".into(), param.t.to_string()),
        ("count".into(), count.to_string()),
        ("seed".into(), hex::encode(seed)),
        ("pk_sha256".into(), digest_hex(&format::write_public_key(&pk))),
        ("sk_sha256".into(), digest_hex(&format::write_secret_key(&sk))),
    ];
    for case in 0..count {
        let n = MESSAGE_BITS_SCHEDULE[case % MESSAGE_BITS_SCHEDULE.len()];
        let msg = BitString::random(n, &mut rng);
        let (ct, trace) = cca2::encrypt_with_trace(&pk, &msg, &mut rng)
            .map_err(|e| KatError::Generation(e.to_string()))?;
        let decrypted = cca2::decrypt(&sk, &ct)
            .ok_or_else(|| KatError::Generation(format!("case {case} failed to decrypt")))?;
        let tag = |f: &str| format!("case{case}/{f}");
        let digits: Vec<String> = trace.carry.digits().iter().map(|d| d.to_string()).collect();
        fields.extend([
            (tag("msg_bits"), n.to_string()),
            (tag("msg"), hex_bits(&msg)),
            (tag("e"), hex_bits(&trace.error_vec)),
            (tag("r"), hex_bits(&trace.coins)),
            (tag("s"), hex_uint(&trace.perm_index)),
            (tag("u"), digits.join(",")),
            (tag("z"), trace.carry_sum.to_string()),
            (tag("q"), trace.shift.to_string()),
            (tag("y_prime"), hex_bits(&trace.encoded)),
            (tag("y"), hex_bits(&trace.shifted)),
            (tag("c1"), hex_uint(&ct.c1)),
            (tag("c2"), hex_bits(&ct.c2)),
            (tag("decrypt"), hex_bits(&decrypted)),
        ]);
    }
    Ok(fields)
}

fn render(fields: &[Field]) -> String {
    let mut out = String::new();
    let mut current_case: Option<&str> = None;
    for (key, value) in fields {
        if let Some((case, field)) = key.split_once('/') {
            if current_case != Some(case) {
                let number = &case["case".len()..];
                out.push_str(&format!("\n[case {number}]\n"));
                current_case = Some(case);
            }
            out.push_str(&format!("{field}={value}\n"));
        } else {
            out.push_str(&format!("{key}={value}\n"));
        }
    }
    out
}

/// Generates the complete vector file.
pub fn generate(param: &ParameterSet, count: usize, seed: [u8; 32]) -> Result<String, KatError> {
    Ok(render(&generate_fields(param, count, seed)?))
}

fn parse(text: &str) -> Result<Vec<Field>, KatError> {
    let mut fields = Vec::new();
    let mut case: Option<String> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("[case ").and_then(|r| r.strip_suffix(']')) {
            let number: usize = rest
                .trim()
                .parse()
                .map_err(|_| KatError::Malformed(format!("bad case header at line {}", lineno + 1)))?;
            case = Some(format!("case{number}"));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| KatError::Malformed(format!("no '=' at line {}", lineno + 1)))?;
        let path = match &case {
            Some(c) => format!("{c}/{key}"),
            None => key.to_string(),
        };
        fields.push((path, value.to_string()));
    }
    Ok(fields)
}

fn header_value<'a>(fields: &'a [Field], key: &str) -> Result<&'a str, KatError> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| KatError::Malformed(format!("missing header field {key}")))
}

/// Re-runs the generation pinned by the header and compares every field;
/// returns the case count on success, or the first differing stage.
pub fn verify(text: &str) -> Result<usize, KatError> {
    let got = parse(text)?;
    if header_value(&got, "format")? != KAT_FORMAT {
        return Err(KatError::Malformed("unknown format identifier".into()));
    }
    let param = params::lookup(header_value(&got, "param")?)
        .ok_or_else(|| KatError::Malformed("unknown parameter set".into()))?;
    if header_value(&got, "m")? != param.m.to_string()
        || header_value(&got, "t")? != param.t.to_string()
    {
        return Err(KatError::Malformed("m/t disagree with the parameter set".into()));
    }
    let count: usize = header_value(&got, "count")?
        .parse()
        .map_err(|_| KatError::Malformed("bad count".into()))?;
    let seed_bytes =
        hex::decode(header_value(&got, "seed")?).map_err(|_| KatError::Malformed("bad seed hex".into()))?;
    let seed: [u8; 32] = seed_bytes
        .try_into()
        .map_err(|_| KatError::Malformed("seed must be 32 bytes".into()))?;

    let expected = generate_fields(param, count, seed)?;
    for (i, (exp, act)) in expected.iter().zip(&got).enumerate() {
        if exp.0 != act.0 {
            return Err(KatError::Mismatch {
                stage: format!("field order at {} (expected {}, found {})", i, exp.0, act.0),
            });
        }
        if exp.1 != act.1 {
            return Err(KatError::Mismatch { stage: exp.0.clone() });
        }
    }
    if expected.len() != got.len() {
        return Err(KatError::Mismatch {
            stage: format!("field count {} vs {}", got.len(), expected.len()),
        });
    }
    Ok(count)
}

/// Expands seed hex (up to 64 digits) into the 32-byte generator seed,
/// right-padding with zeros.
pub fn seed_from_hex(hex_str: &str) -> Result<[u8; 32], KatError> {
    let bytes = hex::decode(hex_str).map_err(|_| KatError::Malformed("bad seed hex".into()))?;
    if bytes.len() > 32 {
        return Err(KatError::Malformed("seed longer than 32 bytes".into()));
    }
    let mut seed = [0u8; 32];
    seed[..bytes.len()].copy_from_slice(&bytes);
    Ok(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> &'static ParameterSet {
        params::lookup("tiny").unwrap()
    }

    #[test]
    fn generate_then_verify() {
        let text = generate(tiny(), 4, [7u8; 32]).unwrap();
        assert_eq!(verify(&text).unwrap(), 4);
    }

    #[test]
    fn regeneration_is_byte_identical() {
        let a = generate(tiny(), 6, [9u8; 32]).unwrap();
        let b = generate(tiny(), 6, [9u8; 32]).unwrap();
        assert_eq!(a, b);
        let c = generate(tiny(), 6, [10u8; 32]).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn corrupted_intermediate_names_the_stage() {
        let text = generate(tiny(), 3, [8u8; 32]).unwrap();
        // Corrupt one hex digit of case 1's y field.
        let corrupted = {
            let mut lines: Vec<String> = Vec::new();
            let mut in_case1 = false;
            for line in text.lines() {
                let mut line = line.to_string();
                if line.starts_with("[case 1]") {
                    in_case1 = true;
                }
                if in_case1 && line.starts_with("y=") {
                    let flipped = if line.ends_with('0') { "1" } else { "0" };
                    line.truncate(line.len() - 1);
                    line.push_str(flipped);
                    in_case1 = false;
                }
                lines.push(line);
            }
            lines.join("\n")
        };
        match verify(&corrupted) {
            Err(KatError::Mismatch { stage }) => assert_eq!(stage, "case1/y"),
            other => panic!("expected stage-named mismatch, got {other:?}"),
        }
    }

    #[test]
    fn truncated_file_is_reported() {
        let text = generate(tiny(), 2, [5u8; 32]).unwrap();
        let cut = text.lines().take(12).collect::<Vec<_>>().join("\n");
        assert!(verify(&cut).is_err());
    }

    #[test]
    fn seed_expansion() {
        assert_eq!(seed_from_hex("ff").unwrap()[0], 0xff);
        assert_eq!(seed_from_hex("ff").unwrap()[1], 0);
        assert!(seed_from_hex("zz").is_err());
        assert!(seed_from_hex(&"00".repeat(33)).is_err());
    }
}
