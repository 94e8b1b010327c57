//! Multiplicative orders and primitive roots modulo odd prime powers.
//!
//! A primitive root modulo `p^2` is a primitive root modulo every `p^k`, so the
//! certificates produced here are always verified at level 2. The rare primes
//! where the smallest primitive root modulo `p` fails modulo `p^2` (for
//! example 10 is primitive modulo 487 but not modulo 487^2) are handled by
//! lifting `r` to `r + p`, which is checked rather than assumed.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::Factorizer;
use crate::modular::{euler_phi_prime_power, PrimePowerModulus};
use crate::Natural;

/// A primitive root `r` for the odd prime `p`, directly verified modulo
/// `p^verified_level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimitiveRootCert {
    p: Natural,
    r: Natural,
    verified_level: u8,
    lifted_from: Option<Natural>,
}

impl PrimitiveRootCert {
    /// Checks `r` modulo `p` and `p^2` and records the highest level at which
    /// it is primitive. Fails if `r` is not even primitive modulo `p`.
    pub fn verify(p: &Natural, r: &Natural, fz: &Factorizer) -> Result<Self> {
        let p1 = PrimePowerModulus::new(p.clone(), 1)?;
        if !is_primitive_root(r, &p1, fz)? {
            return Err(Error::InvalidInput(alloc::format!(
                "{r} is not a primitive root modulo {p}"
            )));
        }
        let p2 = PrimePowerModulus::new(p.clone(), 2)?;
        let verified_level = if is_primitive_root(r, &p2, fz)? { 2 } else { 1 };
        Ok(PrimitiveRootCert {
            p: p.clone(),
            r: r.clone(),
            verified_level,
            lifted_from: None,
        })
    }

    pub fn prime(&self) -> &Natural {
        &self.p
    }

    pub fn root(&self) -> &Natural {
        &self.r
    }

    pub fn verified_level(&self) -> u8 {
        self.verified_level
    }

    /// The primitive root modulo `p` that failed modulo `p^2` and was replaced
    /// by `r = lifted_from + p`.
    pub fn lifted_from(&self) -> Option<&Natural> {
        self.lifted_from.as_ref()
    }

    /// True if `r` generates the units modulo every power of `p`.
    pub fn is_primitive_for_all_powers(&self) -> bool {
        self.verified_level == 2
    }
}

fn check_unit(a: &Natural, pp: &PrimePowerModulus) -> Result<()> {
    if !a.gcd(pp.prime()).is_one() {
        return Err(Error::InvalidInput(alloc::format!(
            "{a} is not coprime to {}",
            pp.prime()
        )));
    }
    Ok(())
}

/// Prime factors of `φ(p^m)`, with `p` included when `m >= 2`.
fn phi_primes(pp: &PrimePowerModulus, fz: &Factorizer) -> Result<Vec<Natural>> {
    let p_minus_1 = pp.prime() - 1u32;
    let mut primes: Vec<Natural> = if p_minus_1.is_one() {
        Vec::new()
    } else {
        let f = fz.factorize(&p_minus_1)?;
        if let Some(c) = f.unfactored().first() {
            return Err(Error::EffortExceeded(c.clone()));
        }
        f.primes().cloned().collect()
    };
    if pp.exponent() >= 2 {
        primes.push(pp.prime().clone());
    }
    Ok(primes)
}

/// Least `d >= 1` with `a^d ≡ 1 (mod p^m)`, found by stripping prime factors
/// from `φ(p^m)` while the power stays 1.
pub fn multiplicative_order(
    a: &Natural,
    pp: &PrimePowerModulus,
    fz: &Factorizer,
) -> Result<Natural> {
    check_unit(a, pp)?;
    let modulus = pp.modulus();
    let mut order = euler_phi_prime_power(pp);
    for q in phi_primes(pp, fz)? {
        while (&order % &q).is_zero() {
            let candidate = &order / &q;
            if a.modpow(&candidate, modulus).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

pub fn is_primitive_root(r: &Natural, pp: &PrimePowerModulus, fz: &Factorizer) -> Result<bool> {
    check_unit(r, pp)?;
    let phi = euler_phi_prime_power(pp);
    let modulus = pp.modulus();
    for q in phi_primes(pp, fz)? {
        if r.modpow(&(&phi / &q), modulus).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Turns a primitive root `r` modulo `p` into one modulo `p^2`: `r` itself if
/// it already is, else `r + p`.
pub fn lift_primitive_root(p: &Natural, r: &Natural, fz: &Factorizer) -> Result<PrimitiveRootCert> {
    let cert = PrimitiveRootCert::verify(p, r, fz)?;
    if cert.verified_level == 2 {
        return Ok(cert);
    }
    let lifted = r + p;
    let mut cert = PrimitiveRootCert::verify(p, &lifted, fz)?;
    if cert.verified_level != 2 {
        return Err(Error::TheoryViolation(alloc::format!(
            "neither {r} nor {lifted} is a primitive root modulo {p}^2"
        )));
    }
    cert.lifted_from = Some(r.clone());
    Ok(cert)
}

/// The smallest primitive root modulo `p`, lifted to `p^2` if necessary.
pub fn find_primitive_root_mod_p_squared(
    p: &Natural,
    fz: &Factorizer,
) -> Result<PrimitiveRootCert> {
    let p1 = PrimePowerModulus::new(p.clone(), 1)?;
    let mut r = Natural::from(2u32);
    while &r < p {
        if is_primitive_root(&r, &p1, fz)? {
            return lift_primitive_root(p, &r, fz);
        }
        r += 1u32;
    }
    Err(Error::TheoryViolation(alloc::format!(
        "no primitive root modulo {p}"
    )))
}
