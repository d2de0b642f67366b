//! Code-based public-key encryption over binary Goppa codes, with a
//! chosen-ciphertext-secure layer built from a randomness-driven block
//! permutation and an integer blinding.
//!
//! # Security warning
//!
//! **Do not use this library to protect real data.** It is an executable
//! study of a construction: nothing here is constant-time, the small
//! parameter sets are toys, and the scheme family has received no
//! independent cryptanalysis in this form.
//!
//! # Layout
//!
//! - [`bits`] / [`matrix`]: bit strings, their integer values, GF(2) linear
//!   algebra.
//! - [`gf2m`]: GF(2^m) and its polynomial ring.
//! - [`goppa`]: code construction, the algebraic decoder, and a brute-force
//!   decoding oracle.
//! - [`mceliece`]: the textbook scheme (Gen/Enc/Dec with S, G, P masking).
//! - [`pca`]: the block-permutation encoder (factorial carries, Lehmer
//!   selection, circular shift).
//! - [`cca2`]: the layered scheme with its three consistency checks.
//! - [`tdf`]: the same construction over any injective trapdoor function.
//! - [`harness`]: executable security experiments and ciphertext mauls.
//! - [`format`], [`kat`], [`params`], [`bench`]: files, vectors, named
//!   parameter sets, timing.
//!
//! # Example
//!
//! ```
//! use pmce::{bits::BitString, cca2};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(1);
//! let (pk, sk) = cca2::keygen(4, 2, &mut rng).unwrap();
//! let msg: BitString = "1100101001011110".parse().unwrap();
//! let ct = cca2::encrypt(&pk, &msg, &mut rng).unwrap();
//! assert_eq!(cca2::decrypt(&sk, &ct), Some(msg));
//! ```

pub mod bench;
pub mod bits;
pub mod cca2;
pub mod format;
pub mod gf2m;
pub mod goppa;
pub mod harness;
pub mod kat;
pub mod matrix;
pub mod mceliece;
pub mod params;
pub mod pca;
pub mod tdf;

pub use bits::{BitsError, BitString};
pub use matrix::{vec_mat_mul, BinMatrix};
pub use params::{ParameterSet, PARAMETER_SETS};
