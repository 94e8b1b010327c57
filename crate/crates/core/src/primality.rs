//! Primality testing.
//!
//! Below 2^64 the test is a Miller-Rabin run over a witness set known to have
//! no strong pseudoprimes in that range, so the answer is exact. Above 2^64 the
//! test runs strong-pseudoprime rounds to the first 64 prime bases followed by
//! a strong Lucas test with Selfridge parameters. No composite is known to pass
//! that combination.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Natural;

const U64_WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u32; 64] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311,
];

/// Number of strong-pseudoprime rounds used above 2^64.
pub const BIG_MR_ROUNDS: usize = SMALL_PRIMES.len();

pub fn is_prime(n: &Natural) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => is_probable_prime_big(n),
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES[..12] {
        let p = p as u64;
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &U64_WITNESSES {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn is_probable_prime_big(n: &Natural) -> bool {
    if n < &Natural::from(2u32) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return n == &Natural::from(p);
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    for &a in &SMALL_PRIMES {
        if !strong_probable_prime(n, &n_minus_1, &d, s, &Natural::from(a)) {
            return false;
        }
    }
    strong_lucas_probable_prime(n)
}

fn strong_probable_prime(
    n: &Natural,
    n_minus_1: &Natural,
    d: &Natural,
    s: u64,
    a: &Natural,
) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a / n)` for odd `n`.
pub(crate) fn jacobi(a: &Natural, n: &Natural) -> i32 {
    debug_assert!(n.is_odd());
    let mut a = a % n;
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        let twos = a.trailing_zeros().unwrap_or(0);
        a >>= twos;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap_or(0);
        if twos % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            t = -t;
        }
        core::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == Natural::from(3u32) && (&n % 4u32) == Natural::from(3u32) {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn signed_mod(v: i64, n: &Natural) -> Natural {
    let r = Natural::from(v.unsigned_abs()) % n;
    if v < 0 && !r.is_zero() {
        n - r
    } else {
        r
    }
}

fn half_mod(x: Natural, n: &Natural) -> Natural {
    if x.is_odd() {
        (x + n) >> 1
    } else {
        x >> 1
    }
}

/// Strong Lucas probable-prime test, Selfridge method A (`P = 1`).
fn strong_lucas_probable_prime(n: &Natural) -> bool {
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }
    let mut d: i64 = 5;
    loop {
        let dn = signed_mod(d, n);
        match jacobi(&dn, n) {
            -1 => break,
            0 if Natural::from(d.unsigned_abs()) != *n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let q = (1 - d) / 4;
    let d_mod = signed_mod(d, n);
    let q_mod = signed_mod(q, n);
    let two_q = |qk: &Natural| (qk << 1u32) % n;
    let sub_mod = |a: Natural, b: Natural| if a >= b { a - b } else { a + n - b };

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let mut u = Natural::one();
    let mut v = Natural::one();
    let mut qk = q_mod.clone();
    for i in (0..k.bits() - 1).rev() {
        u = (&u * &v) % n;
        v = sub_mod((&v * &v) % n, two_q(&qk));
        qk = (&qk * &qk) % n;
        if k.bit(i) {
            let next_u = half_mod(&u + &v, n) % n;
            let next_v = half_mod(&d_mod * &u + &v, n) % n;
            u = next_u;
            v = next_v;
            qk = (&qk * &q_mod) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = sub_mod((&v * &v) % n, two_q(&qk));
        qk = (&qk * &qk) % n;
        if v.is_zero() {
            return true;
        }
    }
    false
}
