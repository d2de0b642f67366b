use pmce::bits::BitString;
use pmce::{cca2, mceliece, pca, params};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::time::Instant;

fn time<F: FnMut()>(label: &str, iters: u32, mut f: F) {
    let start = Instant::now();
    for _ in 0..iters {
        f();
    }
    println!("{label:<28} {:>9.2} us", start.elapsed().as_secs_f64() * 1e6 / iters as f64);
}

fn main() {
    let param = params::lookup("classic").unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let (pk, _sk) = cca2::keygen(param.m, param.t, &mut rng).unwrap();
    let n = 512usize;
    let msg = BitString::random(n, &mut rng);
    let (e, coins) = cca2::derive_coins(&pk, &mut rng);
    let value = coins.to_integer();
    let layout = pca::derive_layout(n, &coins).unwrap();
    let carry = cca2::carry_from_coins(&value, layout.block_count);
    let mask = cca2::prg_expand(pk.prg_id, &coins, n);
    let masked = msg.xor(&mask).unwrap();
    let encoded = pca::encode_with_carry(&masked, &layout, &carry).unwrap();

    let iters = 2000;
    time("sample error", iters, || { std::hint::black_box(mceliece::random_error(1024, 50, &mut rng)); });
    time("tcr_hash(e)", iters, || { std::hint::black_box(cca2::tcr_hash(pk.hash_id, &e, 524)); });
    time("derive_coins (both)", iters, || { std::hint::black_box(cca2::derive_coins(&pk, &mut rng)); });
    time("coins.to_integer", iters, || { std::hint::black_box(coins.to_integer()); });
    time("derive_layout", iters, || { std::hint::black_box(pca::derive_layout(n, &coins).unwrap()); });
    time("carry_from_coins", iters, || { std::hint::black_box(cca2::carry_from_coins(&value, layout.block_count)); });
    time("carry.to_permutation", iters, || { std::hint::black_box(carry.to_permutation()); });
    time("prg_expand(512)", iters, || { std::hint::black_box(cca2::prg_expand(pk.prg_id, &coins, n)); });
    time("xor mask", iters, || { std::hint::black_box(msg.xor(&mask).unwrap()); });
    time("encode_with_carry", iters, || { std::hint::black_box(pca::encode_with_carry(&masked, &layout, &carry).unwrap()); });
    time("rotate_left", iters, || { std::hint::black_box(encoded.rotate_left(37)); });
    time("shifted.to_integer", iters, || { std::hint::black_box(encoded.to_integer()); });
    time("complement_value", iters, || { std::hint::black_box(coins.complement_value()); });
    let y = encoded.to_integer();
    let rbar = coins.complement_value();
    time("c1 arithmetic", iters, || {
        let c1 = (num_bigint::BigUint::from(layout.weight as u64) * &y + &rbar) * &value + 37u32;
        std::hint::black_box(c1);
    });
    time("mce matmul encrypt", iters, || { std::hint::black_box(mceliece::encrypt(&pk.mce, &coins, &e).unwrap()); });
    time("cca2::encrypt full", 500, || { std::hint::black_box(cca2::encrypt(&pk, &msg, &mut rng).unwrap()); });
}
