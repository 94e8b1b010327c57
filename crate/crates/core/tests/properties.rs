//! Property sweeps. Oracles here use plain machine integers so they stay
//! independent of the bignum code paths they check.

use num_integer::Integer;
use proptest::prelude::*;
use qf_core::factor::{is_perfect_nth_power, FactorConfig, Factorizer};
use qf_core::modular::{
    crt_combine, euler_phi_prime_power, mod_inverse, mod_pow, PrimePowerModulus, Residue,
};
use qf_core::primality::is_prime_u64;
use qf_core::primroot::{
    find_primitive_root_mod_p_squared, is_primitive_root, multiplicative_order, PrimitiveRootCert,
};
use qf_core::quotient::{power_sum, quotient};
use qf_core::witness::{
    c_values, construct_z, crt_construct, root_power_sum, xi_enumerate, CompositeSpec,
    ConstructionParams,
};
use qf_core::Natural;

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn fz() -> Factorizer {
    Factorizer::new(FactorConfig {
        trial_bound: 5000,
        ..FactorConfig::default()
    })
}

fn q_mod(z: u128, y: u128, n: u32, m: u128) -> u128 {
    let (mut acc, mut yp) = (0u128, 1u128 % m);
    for _ in 0..n {
        acc = (acc * (z % m) + yp) % m;
        yp = yp * (y % m) % m;
    }
    acc
}

#[test]
fn mod_pow_matches_repeated_multiplication() {
    for modulus in 2u64..1000 {
        let m = nat(modulus);
        for base in 0u64..50 {
            let b = nat(base);
            let mut acc = 1 % modulus;
            for e in 0u64..200 {
                assert_eq!(
                    mod_pow(&b, &nat(e), &m).unwrap().value(),
                    &nat(acc),
                    "{base}^{e} mod {modulus}"
                );
                acc = acc * base % modulus;
            }
        }
    }
}

proptest! {
    #[test]
    fn inverse_is_inverse(a in 1u64..1_000_000, m in 2u64..1_000_000) {
        match mod_inverse(&nat(a), &nat(m)) {
            Ok(x) => prop_assert_eq!((nat(a) * x.value()) % nat(m), nat(1 % m)),
            Err(_) => prop_assert!(a.gcd(&m) != 1),
        }
    }

    #[test]
    fn crt_reproduces_inputs(seeds in prop::collection::vec((2u64..500, 0u64..1_000_000), 1..6)) {
        let mut moduli: Vec<u64> = Vec::new();
        for (m, _) in &seeds {
            if moduli.iter().all(|x| x.gcd(m) == 1) {
                moduli.push(*m);
            }
        }
        let congruences: Vec<Residue> = moduli
            .iter()
            .zip(&seeds)
            .map(|(m, (_, v))| Residue::new(nat(*v), nat(*m)).unwrap())
            .collect();
        let combined = crt_combine(&congruences).unwrap();
        prop_assert_eq!(combined.modulus(), &moduli.iter().map(|&m| nat(m)).product::<Natural>());
        for r in &congruences {
            prop_assert_eq!(&(combined.value() % r.modulus()), r.value());
        }
    }

    #[test]
    fn factorization_recombines(n in 2u64..u64::MAX) {
        let f = fz().factorize(&nat(n)).unwrap();
        prop_assert!(f.is_complete());
        prop_assert_eq!(f.product(), nat(n));
        for (p, e) in f.factors() {
            prop_assert!(*e >= 1);
            prop_assert!(qf_core::primality::is_prime(p));
        }
        prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn perfect_power_roundtrip(x in 1u64..1_000_000, n in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let v = num_traits::pow(nat(x), n as usize);
        prop_assert_eq!(is_perfect_nth_power(&v, n), Some(nat(x)));
        if x > 1 {
            prop_assert_eq!(is_perfect_nth_power(&(v + 1u32), n), None);
        }
    }

    #[test]
    fn quotient_is_symmetric(z in 0u64..100_000, y in 0u64..100_000, n in prop::sample::select(vec![3u32, 5, 7, 11, 13])) {
        prop_assume!(z != y);
        let a = quotient(&nat(z), &nat(y), n).unwrap().value;
        let b = quotient(&nat(y), &nat(z), n).unwrap().value;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn phi_is_multiplicative_in_p() {
    for p in (3u64..200).filter(|&p| is_prime_u64(p)) {
        let base = euler_phi_prime_power(&PrimePowerModulus::new(nat(p), 1).unwrap());
        for m in 1..6u32 {
            let phi = euler_phi_prime_power(&PrimePowerModulus::new(nat(p), m).unwrap());
            assert_eq!(phi, &base * num_traits::pow(nat(p), (m - 1) as usize));
        }
    }
}

#[test]
fn found_root_orders_divide_phi() {
    let fz = fz();
    for p in (3u64..500).filter(|&p| is_prime_u64(p)) {
        let cert = find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap();
        for k in 1..=3 {
            let pp = PrimePowerModulus::new(nat(p), k).unwrap();
            let order = multiplicative_order(cert.root(), &pp, &fz).unwrap();
            assert!((euler_phi_prime_power(&pp) % order) == nat(0));
        }
    }
}

#[test]
fn level_two_roots_are_primitive_at_every_level() {
    let fz = fz();
    for p in (3u64..200).filter(|&p| is_prime_u64(p)) {
        let cert = find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap();
        assert_eq!(cert.verified_level(), 2);
        for k in 1..=3 {
            let pp = PrimePowerModulus::new(nat(p), k).unwrap();
            assert!(
                is_primitive_root(cert.root(), &pp, &fz).unwrap(),
                "p = {p}, k = {k}"
            );
        }
        assert_eq!(
            find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap(),
            cert
        );
    }
}

#[test]
fn division_and_power_sum_agree() {
    for n in [3u32, 5, 7] {
        for z in 0u64..200 {
            for y in 0u64..200 {
                if z != y {
                    assert_eq!(
                        quotient(&nat(z), &nat(y), n).unwrap().value,
                        power_sum(&nat(z), &nat(y), n)
                    );
                }
            }
        }
    }
}

#[test]
fn common_factor_scales_by_power() {
    for n in [3u32, 5, 7] {
        for q in 1u64..20 {
            for z in 0u64..50 {
                for y in 0u64..50 {
                    if z == y {
                        continue;
                    }
                    let scaled = quotient(&nat(q * z), &nat(q * y), n).unwrap().value;
                    let base = quotient(&nat(z), &nat(y), n).unwrap().value;
                    assert_eq!(scaled, num_traits::pow(nat(q), (n - 1) as usize) * base);
                }
            }
        }
    }
}

/// `(p, n)` with `n | p - 1` from the small parameter grid.
fn admissible_grid() -> Vec<(u64, u32)> {
    let mut grid = Vec::new();
    for p in [7u64, 13, 31, 43] {
        for n in [3u32, 5, 7] {
            if (p - 1) % n as u64 == 0 {
                grid.push((p, n));
            }
        }
    }
    grid
}

#[test]
fn constructed_witnesses_are_divisible() {
    let fz = fz();
    for (p, n) in admissible_grid() {
        let root = find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap();
        for m in 1..=3u32 {
            let modulus = (p as u128).pow(m);
            for y in (1u64..=30).filter(|y| y % p != 0) {
                for c in c_values(&nat(p), n).unwrap() {
                    let params =
                        ConstructionParams::new(nat(y), nat(p), n, m, c, root.clone()).unwrap();
                    let z = construct_z(&params).unwrap();
                    let z_u = u128::try_from(z.value()).unwrap();
                    assert_eq!(q_mod(z_u, y as u128, n, modulus), 0);
                    let exact = quotient(z.value(), &nat(y), n).unwrap().value;
                    assert_eq!(exact % nat(modulus as u64), nat(0));
                }
            }
        }
    }
}

#[test]
fn no_small_prime_below_two_n_plus_one_divides() {
    for n in [3u32, 5, 7, 11, 13] {
        for p in (3u64..(2 * n as u64 + 1)).filter(|&p| is_prime_u64(p) && p != n as u64) {
            for y in 1..p {
                for z in (0..p).filter(|&z| z != y) {
                    assert_ne!(
                        q_mod(z as u128, y as u128, n, p as u128),
                        0,
                        "p = {p}, n = {n}"
                    );
                }
            }
        }
    }
}

#[test]
fn higher_power_witnesses_nest() {
    let fz = fz();
    for (p, n) in admissible_grid() {
        let root = find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap();
        for y in (1u64..=30).filter(|y| y % p != 0) {
            let top = xi_enumerate(&nat(y), &nat(p), n, 3, &root).unwrap();
            for z in &top {
                let z_u = u128::try_from(z.value()).unwrap();
                for lower in 1..3u32 {
                    assert_eq!(q_mod(z_u, y as u128, n, (p as u128).pow(lower)), 0);
                }
            }
        }
    }
}

/// The next primitive root modulo `p^2` after `after`.
fn another_root(p: u64, after: &Natural, fz: &Factorizer) -> PrimitiveRootCert {
    let pp2 = PrimePowerModulus::new(nat(p), 2).unwrap();
    let mut r = after + 1u32;
    loop {
        if (&r % p) != nat(0) && is_primitive_root(&r, &pp2, fz).unwrap() {
            return PrimitiveRootCert::verify(&nat(p), &r, fz).unwrap();
        }
        r += 1u32;
    }
}

#[test]
fn solution_sets_do_not_depend_on_the_root() {
    let fz = fz();
    for p in [7u64, 13, 31] {
        let first = find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap();
        let second = another_root(p, first.root(), &fz);
        assert_ne!(first.root(), second.root());
        for n in [3u32, 5, 7].into_iter().filter(|&n| n as u64 != p) {
            for m in 1..=3u32 {
                for y in (1u64..=30).filter(|y| y % p != 0) {
                    let mut a: Vec<Natural> = xi_enumerate(&nat(y), &nat(p), n, m, &first)
                        .unwrap()
                        .into_iter()
                        .map(Residue::into_value)
                        .collect();
                    let mut b: Vec<Natural> = xi_enumerate(&nat(y), &nat(p), n, m, &second)
                        .unwrap()
                        .into_iter()
                        .map(Residue::into_value)
                        .collect();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b, "p = {p}, n = {n}, m = {m}, y = {y}");
                }
            }
        }
    }
}

#[test]
fn root_power_sums_vanish() {
    let fz = fz();
    for (p, n) in admissible_grid() {
        let root = find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap();
        for m in 1..=3u32 {
            for c in c_values(&nat(p), n).unwrap() {
                let s = root_power_sum(&nat(p), n, m, &c, &root).unwrap();
                assert_eq!(s.sum.value(), &nat(0));
                assert_eq!(s.terms.len(), n as usize);
            }
        }
    }
}

#[test]
fn composite_witness_reduces_to_parts() {
    let fz = fz();
    let root = |p: u64| find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap();
    let n = 3;
    let primes = [7u64, 13, 19, 31, 37, 43];
    for y in 1u64..=12 {
        for (i, &p1) in primes.iter().enumerate() {
            for &p2 in &primes[i + 1..] {
                if y % p1 == 0 || y % p2 == 0 {
                    continue;
                }
                for (m1, m2) in [(1u32, 1u32), (2, 1), (1, 2)] {
                    let c1 = c_values(&nat(p1), n).unwrap()[0].clone();
                    let c2 = c_values(&nat(p2), n).unwrap()[1].clone();
                    let a = ConstructionParams::new(nat(y), nat(p1), n, m1, c1, root(p1)).unwrap();
                    let b = ConstructionParams::new(nat(y), nat(p2), n, m2, c2, root(p2)).unwrap();
                    let spec = CompositeSpec::new(vec![a.clone(), b.clone()]).unwrap();
                    let w = crt_construct(&spec).unwrap();
                    for part in [&a, &b] {
                        let expected = construct_z(part).unwrap();
                        assert_eq!(&(w.z.value() % expected.modulus()), expected.value());
                    }
                    let product = u128::try_from(spec.product()).unwrap();
                    let z = u128::try_from(w.z.value()).unwrap();
                    assert_eq!(q_mod(z, y as u128, n, product), 0);
                }
            }
        }
    }
}
