//! The quotients `Q(z, y, n) = (z^n - y^n) / (z - y)` and their arithmetic
//! structure relative to `n` and to `z - y`.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modular::Residue;
use crate::primality::is_prime_u64;
use crate::Natural;

/// `Q(z, y, n)` with its inputs. `n` is an odd prime and `z != y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientInstance {
    pub z: Natural,
    pub y: Natural,
    pub n: u32,
    pub value: Natural,
}

impl QuotientInstance {
    /// `|z - y|`.
    pub fn difference(&self) -> Natural {
        abs_diff(&self.z, &self.y)
    }
}

pub(crate) fn abs_diff(a: &Natural, b: &Natural) -> Natural {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

pub(crate) fn check_exponent(n: u32) -> Result<()> {
    if n.is_multiple_of(2) || !is_prime_u64(n as u64) {
        return Err(Error::InvalidExponent(n));
    }
    Ok(())
}

fn check_coprime(z: &Natural, y: &Natural) -> Result<()> {
    if !z.gcd(y).is_one() {
        return Err(Error::PreconditionViolation(alloc::format!(
            "z = {z} and y = {y} are not coprime"
        )));
    }
    Ok(())
}

/// `Q(z, y, n)` by exact division of `z^n - y^n` by `z - y`.
pub fn quotient(z: &Natural, y: &Natural, n: u32) -> Result<QuotientInstance> {
    check_exponent(n)?;
    if z == y {
        return Err(Error::DegenerateInput);
    }
    let (hi, lo) = if z > y { (z, y) } else { (y, z) };
    let numerator =
        num_traits::pow(hi.clone(), n as usize) - num_traits::pow(lo.clone(), n as usize);
    let (value, remainder) = numerator.div_rem(&(hi - lo));
    if !remainder.is_zero() {
        return Err(Error::TheoryViolation(alloc::format!(
            "z - y does not divide z^n - y^n for z = {z}, y = {y}, n = {n}"
        )));
    }
    debug_assert_eq!(value, power_sum(z, y, n));
    Ok(QuotientInstance {
        z: z.clone(),
        y: y.clone(),
        n,
        value,
    })
}

/// `Σ_{k=0}^{n-1} z^k y^(n-1-k)`, the division-free form of `Q(z, y, n)`.
/// Defined for every `n >= 1`, including `z = y`.
pub fn power_sum(z: &Natural, y: &Natural, n: u32) -> Natural {
    let mut acc = Natural::zero();
    let mut y_power = Natural::one();
    for _ in 0..n {
        acc = acc * z + &y_power;
        y_power *= y;
    }
    acc
}

/// The power sum reduced modulo `modulus`; equals `Q(z, y, n) mod modulus`
/// for `z != y`.
pub fn power_sum_mod(z: &Natural, y: &Natural, n: u32, modulus: &Natural) -> Natural {
    let z = z % modulus;
    let y = y % modulus;
    let mut acc = Natural::zero();
    let mut y_power = Natural::one() % modulus;
    for _ in 0..n {
        acc = (acc * &z + &y_power) % modulus;
        y_power = (y_power * &y) % modulus;
    }
    acc
}

/// How `n`, `z - y`, and `Q` share factors when `gcd(z, y) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdStructure {
    /// `n | z - y`, and `gcd(z - y, Q) = n`.
    GcdIsN { gcd_diff_quotient: Natural },
    /// `n ∤ z - y`, and `n`, `z - y`, `Q` are pairwise coprime.
    PairwiseCoprime {
        gcd_n_diff: Natural,
        gcd_n_quotient: Natural,
        gcd_diff_quotient: Natural,
    },
}

/// Computes the gcds among `n`, `z - y` and `Q` and checks them against the
/// two possible shapes.
pub fn gcd_structure(z: &Natural, y: &Natural, n: u32) -> Result<GcdStructure> {
    let q = quotient(z, y, n)?;
    check_coprime(z, y)?;
    let n_nat = Natural::from(n);
    let diff = q.difference();
    let gcd_diff_quotient = diff.gcd(&q.value);
    if (&diff % &n_nat).is_zero() {
        if gcd_diff_quotient != n_nat {
            return Err(Error::TheoryViolation(alloc::format!(
                "gcd(z - y, Q) = {gcd_diff_quotient} instead of n = {n} for z = {z}, y = {y}"
            )));
        }
        return Ok(GcdStructure::GcdIsN { gcd_diff_quotient });
    }
    let gcd_n_diff = n_nat.gcd(&diff);
    let gcd_n_quotient = n_nat.gcd(&q.value);
    if !(gcd_n_diff.is_one() && gcd_n_quotient.is_one() && gcd_diff_quotient.is_one()) {
        return Err(Error::TheoryViolation(alloc::format!(
            "n, z - y, Q not pairwise coprime for z = {z}, y = {y}, n = {n}"
        )));
    }
    Ok(GcdStructure::PairwiseCoprime {
        gcd_n_diff,
        gcd_n_quotient,
        gcd_diff_quotient,
    })
}

/// Whether `n^2` fails to divide `Q(z, y, n)`, by direct division.
pub fn n_squared_check(z: &Natural, y: &Natural, n: u32) -> Result<bool> {
    let q = quotient(z, y, n)?;
    check_coprime(z, y)?;
    let n2 = Natural::from(n) * n;
    Ok(!(&q.value % n2).is_zero())
}

/// `Q mod n`, checked against `(z - y)^(n-1) mod n`.
pub fn quotient_residue_mod_n(z: &Natural, y: &Natural, n: u32) -> Result<Residue> {
    let q = quotient(z, y, n)?;
    let n_nat = Natural::from(n);
    let residue = Residue::new(q.value.clone(), n_nat.clone())?;
    let expected = q.difference().modpow(&Natural::from(n - 1), &n_nat);
    if residue.value() != &expected {
        return Err(Error::TheoryViolation(alloc::format!(
            "Q({z}, {y}, {n}) ≢ (z - y)^(n-1) (mod n)"
        )));
    }
    Ok(residue)
}

/// `Q mod n^2` when `n | z - y`, checked against `n y^(n-1) mod n^2`.
pub fn quotient_residue_mod_n2(z: &Natural, y: &Natural, n: u32) -> Result<Residue> {
    let q = quotient(z, y, n)?;
    check_coprime(z, y)?;
    let n_nat = Natural::from(n);
    if !(q.difference() % &n_nat).is_zero() {
        return Err(Error::PreconditionViolation(alloc::format!(
            "{n} does not divide z - y"
        )));
    }
    let n2 = &n_nat * &n_nat;
    let residue = Residue::new(q.value.clone(), n2.clone())?;
    let expected = (&n_nat * y.modpow(&Natural::from(n - 1), &n2)) % &n2;
    if residue.value() != &expected {
        return Err(Error::TheoryViolation(alloc::format!(
            "Q({z}, {y}, {n}) ≢ n y^(n-1) (mod n^2)"
        )));
    }
    Ok(residue)
}

/// Proof that a quotient was computed and found to be odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Odd {
    pub value: Natural,
}

/// `Q(z, y, n)` is odd whenever `z` and `y` are not both even.
pub fn parity(z: &Natural, y: &Natural, n: u32) -> Result<Odd> {
    if z.is_even() && y.is_even() {
        return Err(Error::PreconditionViolation("z and y are both even".into()));
    }
    let q = quotient(z, y, n)?;
    if q.value.is_even() {
        return Err(Error::TheoryViolation(alloc::format!(
            "Q({z}, {y}, {n}) is even"
        )));
    }
    Ok(Odd { value: q.value })
}
