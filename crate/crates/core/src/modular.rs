//! Exact modular arithmetic over arbitrary-precision naturals.
//!
//! Residues are always stored as least nonnegative representatives so that
//! congruence tests reduce to plain equality.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primality::is_prime;
use crate::Natural;

/// An odd prime `p`, an exponent `m >= 1`, and `p^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePowerModulus {
    p: Natural,
    m: u32,
    modulus: Natural,
}

impl PrimePowerModulus {
    pub fn new(p: Natural, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "prime-power exponent must be at least 1".into(),
            ));
        }
        if p.is_even() || !is_prime(&p) {
            return Err(Error::InvalidInput(alloc::format!(
                "{p} is not an odd prime"
            )));
        }
        let modulus = num_traits::pow(p.clone(), m as usize);
        Ok(PrimePowerModulus { p, m, modulus })
    }

    pub fn prime(&self) -> &Natural {
        &self.p
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    /// `p^(m-1)`, the power of `p` that scales the exponent in the witness
    /// congruence.
    pub fn lower_power(&self) -> Natural {
        &self.modulus / &self.p
    }
}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.m)
    }
}

/// A congruence class `value (mod modulus)` with `0 <= value < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: Natural,
    modulus: Natural,
}

impl Residue {
    /// Reduces `value` into `[0, modulus)`.
    pub fn new(value: Natural, modulus: Natural) -> Result<Self> {
        check_modulus(&modulus)?;
        Ok(Residue {
            value: value % &modulus,
            modulus,
        })
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn into_value(self) -> Natural {
        self.value
    }

    /// True if `x ≡ self (mod self.modulus)`.
    pub fn contains(&self, x: &Natural) -> bool {
        x % &self.modulus == self.value
    }

    /// Reduces this class modulo a divisor of its modulus.
    pub fn reduce(&self, divisor: &Natural) -> Result<Residue> {
        if !(&self.modulus % divisor).is_zero() {
            return Err(Error::InvalidInput(alloc::format!(
                "{divisor} does not divide {}",
                self.modulus
            )));
        }
        Residue::new(self.value.clone(), divisor.clone())
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

fn check_modulus(modulus: &Natural) -> Result<()> {
    if modulus < &Natural::from(2u32) {
        return Err(Error::InvalidModulus(modulus.clone()));
    }
    Ok(())
}

/// `base^exponent mod modulus`.
pub fn mod_pow(base: &Natural, exponent: &Natural, modulus: &Natural) -> Result<Residue> {
    check_modulus(modulus)?;
    let value = match (modulus.to_u64(), exponent.to_u64()) {
        (Some(m), Some(e)) => {
            let b = (base % m).to_u64().unwrap_or(0);
            Natural::from(crate::primality::pow_mod(b, e, m))
        }
        _ => base.modpow(exponent, modulus),
    };
    Ok(Residue {
        value,
        modulus: modulus.clone(),
    })
}

pub fn gcd(a: &Natural, b: &Natural) -> Result<Natural> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedInput("gcd(0, 0)"));
    }
    Ok(a.gcd(b))
}

/// The `x` in `[0, modulus)` with `a * x ≡ 1 (mod modulus)`.
pub fn mod_inverse(a: &Natural, modulus: &Natural) -> Result<Residue> {
    check_modulus(modulus)?;
    match a.modinv(modulus) {
        Some(value) => Ok(Residue {
            value,
            modulus: modulus.clone(),
        }),
        None => Err(Error::NoInverse {
            value: a.clone(),
            modulus: modulus.clone(),
        }),
    }
}

/// `φ(p^m) = (p - 1) p^(m-1)`.
pub fn euler_phi_prime_power(pp: &PrimePowerModulus) -> Natural {
    (pp.prime() - 1u32) * pp.lower_power()
}

/// One modulus of a Chinese-remainder system together with its cofactor
/// `M_i = M / m_i` and an inverse `q_i` of `M_i` modulo `m_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtTerm {
    pub modulus: Natural,
    pub cofactor: Natural,
    pub inverse: Natural,
}

impl CrtTerm {
    /// `M_i * q_i`, which is `1 (mod m_i)` and `0` modulo every other modulus.
    pub fn basis(&self) -> Natural {
        &self.cofactor * &self.inverse
    }
}

/// Builds the `M_i`, `q_i` pairs for pairwise coprime moduli.
pub fn crt_terms(moduli: &[Natural]) -> Result<(Natural, Vec<CrtTerm>)> {
    if moduli.is_empty() {
        return Err(Error::InvalidInput("empty congruence system".into()));
    }
    for (i, a) in moduli.iter().enumerate() {
        check_modulus(a)?;
        for b in &moduli[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(Error::CoprimalityViolation(a.clone(), b.clone()));
            }
        }
    }
    let product: Natural = moduli.iter().product();
    let terms = moduli
        .iter()
        .map(|m| {
            let cofactor = &product / m;
            // A single modulus has cofactor 1, whose inverse is 1.
            let inverse = mod_inverse(&cofactor, m)?.into_value();
            Ok(CrtTerm {
                modulus: m.clone(),
                cofactor,
                inverse,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((product, terms))
}

/// The unique residue modulo the product of the moduli that satisfies every
/// input congruence. Computed as `Σ a_i M_i q_i`.
pub fn crt_combine(congruences: &[Residue]) -> Result<Residue> {
    let moduli: Vec<Natural> = congruences.iter().map(|r| r.modulus.clone()).collect();
    let (product, terms) = crt_terms(&moduli)?;
    let sum: Natural = congruences
        .iter()
        .zip(&terms)
        .map(|(r, t)| &r.value * t.basis())
        .sum();
    Residue::new(sum, product)
}
