//! Witness construction for prime-power divisibility of `Q(z, y, n)`.
//!
//! For an odd prime `p != n` with `p ∤ y` and a primitive root `r` modulo
//! `p^2`, `p^m` divides `Q(z, y, n)` exactly when `n | p - 1` and
//!
//! ```text
//! z ≡ y · r^(c · p^(m-1))  (mod p^m)
//! ```
//!
//! for one of the `n - 1` exponents `c = i (p - 1) / n`, `0 < i < n`. This
//! module builds those residues, tests membership both ways, and glues
//! several prime powers together by the Chinese remainder theorem.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modular::{crt_combine, crt_terms, CrtTerm, PrimePowerModulus, Residue};
use crate::primality::is_prime;
use crate::primroot::PrimitiveRootCert;
use crate::quotient::{check_exponent, power_sum_mod, quotient};
use crate::Natural;

fn check_odd_prime(p: &Natural) -> Result<()> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::InvalidInput(alloc::format!(
            "{p} is not an odd prime"
        )));
    }
    Ok(())
}

/// Shared checks on `(p, n, y)`: `n` and `p` odd primes, `p != n`, `p ∤ y`.
fn check_setting(p: &Natural, n: u32, y: &Natural) -> Result<()> {
    check_exponent(n)?;
    check_odd_prime(p)?;
    if p == &Natural::from(n) {
        return Err(Error::PreconditionViolation(alloc::format!("p = n = {n}")));
    }
    if (y % p).is_zero() {
        return Err(Error::PreconditionViolation(alloc::format!(
            "{p} divides y = {y}"
        )));
    }
    Ok(())
}

fn check_root(p: &Natural, root: &PrimitiveRootCert) -> Result<()> {
    if root.prime() != p || !root.is_primitive_for_all_powers() {
        return Err(Error::PreconditionViolation(alloc::format!(
            "{} is not a certified primitive root modulo {p}^2",
            root.root()
        )));
    }
    Ok(())
}

fn divides_p_minus_1(p: &Natural, n: u32) -> bool {
    ((p - 1u32) % n).is_zero()
}

/// The `n - 1` admissible exponents `c_i = i (p - 1) / n`, in increasing order.
pub fn c_values(p: &Natural, n: u32) -> Result<Vec<Natural>> {
    check_exponent(n)?;
    check_odd_prime(p)?;
    if p == &Natural::from(n) {
        return Err(Error::PreconditionViolation(alloc::format!("p = n = {n}")));
    }
    if !divides_p_minus_1(p, n) {
        return Err(Error::CharacterizationFails { p: p.clone(), n });
    }
    let c1 = (p - 1u32) / n;
    Ok((1..n).map(|i| &c1 * i).collect())
}

/// Validated inputs to the witness formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    y: Natural,
    modulus: PrimePowerModulus,
    n: u32,
    c: Natural,
    root: PrimitiveRootCert,
}

impl ConstructionParams {
    pub fn new(
        y: Natural,
        p: Natural,
        n: u32,
        m: u32,
        c: Natural,
        root: PrimitiveRootCert,
    ) -> Result<Self> {
        check_setting(&p, n, &y)?;
        check_root(&p, &root)?;
        let modulus = PrimePowerModulus::new(p.clone(), m)?;
        if !divides_p_minus_1(&p, n) {
            return Err(Error::CharacterizationFails { p, n });
        }
        let p_minus_1 = &p - 1u32;
        if c.is_zero() || c >= p_minus_1 || !((&c * n) % &p_minus_1).is_zero() {
            return Err(Error::PreconditionViolation(alloc::format!(
                "c = {c} must satisfy 0 < c < p - 1 and (p - 1) | n c"
            )));
        }
        if c.is_odd() || &c << 1u32 == p_minus_1 {
            return Err(Error::TheoryViolation(alloc::format!(
                "admissible c = {c} is odd or equals (p - 1)/2"
            )));
        }
        Ok(ConstructionParams {
            y,
            modulus,
            n,
            c,
            root,
        })
    }

    pub fn y(&self) -> &Natural {
        &self.y
    }

    pub fn p(&self) -> &Natural {
        self.modulus.prime()
    }

    pub fn m(&self) -> u32 {
        self.modulus.exponent()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> &Natural {
        &self.c
    }

    pub fn root(&self) -> &PrimitiveRootCert {
        &self.root
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    /// `r^(c p^(m-1)) mod p^m`.
    pub fn multiplier(&self) -> Natural {
        let exponent = &self.c * self.modulus.lower_power();
        self.root.root().modpow(&exponent, self.modulus.modulus())
    }
}

/// `z ≡ y r^(c p^(m-1)) (mod p^m)` as a least nonnegative residue, after
/// checking that `z ≢ y (mod p)` and that `p^m` divides `Q(z, y, n)`.
pub fn construct_z(params: &ConstructionParams) -> Result<Residue> {
    let modulus = params.modulus.modulus();
    let z = Residue::new(&params.y * params.multiplier(), modulus.clone())?;
    let p = params.p();
    if z.value() % p == &params.y % p {
        return Err(Error::TheoryViolation(alloc::format!(
            "constructed z = {} is congruent to y modulo {p}",
            z.value()
        )));
    }
    if !power_sum_mod(z.value(), &params.y, params.n, modulus).is_zero() {
        return Err(Error::TheoryViolation(alloc::format!(
            "{} does not divide Q({}, {}, {})",
            params.modulus,
            z.value(),
            params.y,
            params.n
        )));
    }
    Ok(z)
}

/// Outcome of testing `p^m | Q(z, y, n)` both directly and through the
/// witness congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characterization {
    pub divisible: bool,
    /// The unique admissible `c` with `z ≡ y r^(c p^(m-1))`, when divisible.
    pub c: Option<Natural>,
}

/// Decides `p^m | Q(z, y, n)` by exact division and, independently, by the
/// witness congruence; errors if the two disagree.
pub fn divisibility_characterization(
    z: &Natural,
    y: &Natural,
    n: u32,
    p: &Natural,
    m: u32,
    root: &PrimitiveRootCert,
) -> Result<Characterization> {
    check_setting(p, n, y)?;
    check_root(p, root)?;
    let pp = PrimePowerModulus::new(p.clone(), m)?;
    let q = quotient(z, y, n)?;
    let divisible = (&q.value % pp.modulus()).is_zero();

    let mut matches = Vec::new();
    if divides_p_minus_1(p, n) {
        let z_mod = z % pp.modulus();
        for c in c_values(p, n)? {
            let exponent = &c * pp.lower_power();
            let candidate = (y * root.root().modpow(&exponent, pp.modulus())) % pp.modulus();
            if candidate == z_mod {
                matches.push(c);
            }
        }
    }
    if matches.len() > 1 {
        return Err(Error::TheoryViolation(alloc::format!(
            "z = {z} matches {} distinct exponents",
            matches.len()
        )));
    }
    let c = matches.pop();
    if divisible != c.is_some() {
        return Err(Error::TheoryViolation(alloc::format!(
            "direct test says {divisible} but witness test says {} for z = {z}, y = {y}, n = {n}, {pp}",
            c.is_some()
        )));
    }
    Ok(Characterization { divisible, c })
}

/// The multipliers `r^(c_i p^(m-1)) mod p^m` for one `(p, n, m)`; applying
/// them to any admissible `y` yields the full solution set for that `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiFamily {
    modulus: PrimePowerModulus,
    n: u32,
    c_values: Vec<Natural>,
    multipliers: Vec<Natural>,
}

impl XiFamily {
    /// Empty when `n ∤ p - 1`.
    pub fn new(p: &Natural, n: u32, m: u32, root: &PrimitiveRootCert) -> Result<Self> {
        check_setting(p, n, &Natural::one())?;
        check_root(p, root)?;
        let modulus = PrimePowerModulus::new(p.clone(), m)?;
        let c_values = if divides_p_minus_1(p, n) {
            c_values(p, n)?
        } else {
            Vec::new()
        };
        let lower = modulus.lower_power();
        let multipliers = c_values
            .iter()
            .map(|c| root.root().modpow(&(c * &lower), modulus.modulus()))
            .collect();
        Ok(XiFamily {
            modulus,
            n,
            c_values,
            multipliers,
        })
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn c_values(&self) -> &[Natural] {
        &self.c_values
    }

    pub fn is_empty(&self) -> bool {
        self.multipliers.is_empty()
    }

    /// Residues `y r^(c_i p^(m-1))`, indexed like [`Self::c_values`].
    pub fn for_y(&self, y: &Natural) -> Result<Vec<Residue>> {
        check_setting(self.modulus.prime(), self.n, y)?;
        self.multipliers
            .iter()
            .map(|mult| Residue::new(y * mult, self.modulus.modulus().clone()))
            .collect()
    }

    /// The union over `y` as `(y, residue)` pairs, skipping `y` divisible by `p`.
    pub fn union<'a, I>(&'a self, ys: I) -> impl Iterator<Item = (Natural, Residue)> + 'a
    where
        I: IntoIterator<Item = Natural>,
        I::IntoIter: 'a,
    {
        let p = self.modulus.prime();
        ys.into_iter()
            .filter(move |y| !(y % p).is_zero())
            .flat_map(move |y| {
                let residues = self.for_y(&y).unwrap_or_default();
                residues.into_iter().map(move |r| (y.clone(), r))
            })
    }
}

/// Every residue `z (mod p^m)` with `p^m | Q(z, y, n)`: exactly `n - 1`
/// distinct classes when `n | p - 1`, otherwise none.
pub fn xi_enumerate(
    y: &Natural,
    p: &Natural,
    n: u32,
    m: u32,
    root: &PrimitiveRootCert,
) -> Result<Vec<Residue>> {
    let family = XiFamily::new(p, n, m, root)?;
    let residues = family.for_y(y)?;
    let mut sorted: Vec<&Natural> = residues.iter().map(Residue::value).collect();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != residues.len() {
        return Err(Error::TheoryViolation(alloc::format!(
            "solution classes for y = {y} modulo {} are not distinct",
            family.modulus
        )));
    }
    Ok(residues)
}

/// For a witness `z = y r^(c_i p^(m-1))`, the 1-based indices `(i, j)` with
/// `y ≡ z r^(c_j p^(m-1))`. Always `c_i + c_j = p - 1` and `i != j`.
pub fn swap_pairing(params: &ConstructionParams, z: &Residue) -> Result<(usize, usize)> {
    let family = XiFamily::new(params.p(), params.n, params.m(), &params.root)?;
    let modulus = family.modulus.modulus();
    let z_value = z.value() % modulus;
    let y = params.y() % modulus;
    let i = family
        .multipliers
        .iter()
        .position(|mult| (&y * mult) % modulus == z_value)
        .ok_or_else(|| Error::NotAWitness(z.value().clone()))?;
    let js: Vec<usize> = family
        .multipliers
        .iter()
        .enumerate()
        .filter(|(_, mult)| (&z_value * *mult) % modulus == y)
        .map(|(j, _)| j)
        .collect();
    let p_minus_1 = params.p() - 1u32;
    match js.as_slice() {
        [j] if *j != i && &family.c_values[i] + &family.c_values[*j] == p_minus_1 => {
            Ok((i + 1, j + 1))
        }
        _ => Err(Error::TheoryViolation(alloc::format!(
            "no valid swap partner for c = {}",
            family.c_values[i]
        ))),
    }
}

/// The terms `r^(k c p^(m-1)) mod p^m`, `k = 0..n-1`, and their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPowerSum {
    pub terms: Vec<Natural>,
    pub sum: Residue,
}

/// `Σ_{k=0}^{n-1} r^(k c p^(m-1)) mod p^m`, which must vanish.
pub fn root_power_sum(
    p: &Natural,
    n: u32,
    m: u32,
    c: &Natural,
    root: &PrimitiveRootCert,
) -> Result<RootPowerSum> {
    let params = ConstructionParams::new(Natural::one(), p.clone(), n, m, c.clone(), root.clone())?;
    let modulus = params.modulus.modulus();
    let step = params.multiplier();
    let mut terms = Vec::with_capacity(n as usize);
    let mut term = Natural::one();
    for _ in 0..n {
        terms.push(term.clone());
        term = (term * &step) % modulus;
    }
    let sum = Residue::new(terms.iter().sum(), modulus.clone())?;
    if !sum.value().is_zero() {
        return Err(Error::TheoryViolation(alloc::format!(
            "root power sum is {} modulo {}",
            sum.value(),
            params.modulus
        )));
    }
    Ok(RootPowerSum { terms, sum })
}

/// The unreduced integer `Σ_{k=0}^{count-1} base^(k · step)`.
pub fn geometric_power_sum(base: &Natural, step: u32, count: u32) -> Natural {
    let ratio = num_traits::pow(base.clone(), step as usize);
    let mut term = Natural::one();
    let mut sum = Natural::zero();
    for _ in 0..count {
        sum += &term;
        term *= &ratio;
    }
    sum
}

/// Several constructions sharing `y` and `n` over distinct primes, with the
/// Chinese-remainder cofactors `M_i` and inverses `q_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSpec {
    y: Natural,
    n: u32,
    parts: Vec<ConstructionParams>,
    product: Natural,
    terms: Vec<CrtTerm>,
}

impl CompositeSpec {
    pub fn new(parts: Vec<ConstructionParams>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("composite construction needs a part".into()))?;
        let (y, n) = (first.y.clone(), first.n);
        for (i, part) in parts.iter().enumerate() {
            if part.y != y || part.n != n {
                return Err(Error::PreconditionViolation(
                    "parts must share y and n".into(),
                ));
            }
            if parts[..i].iter().any(|other| other.p() == part.p()) {
                return Err(Error::PreconditionViolation(alloc::format!(
                    "prime {} appears twice",
                    part.p()
                )));
            }
        }
        let moduli: Vec<Natural> = parts.iter().map(|p| p.modulus.modulus().clone()).collect();
        let (product, terms) = crt_terms(&moduli)?;
        Ok(CompositeSpec {
            y,
            n,
            parts,
            product,
            terms,
        })
    }

    pub fn y(&self) -> &Natural {
        &self.y
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[ConstructionParams] {
        &self.parts
    }

    /// `M_i`, `q_i` per part, in part order.
    pub fn terms(&self) -> &[CrtTerm] {
        &self.terms
    }

    pub fn product(&self) -> &Natural {
        &self.product
    }
}

/// A composite witness and the per-prime-power witnesses it combines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtWitness {
    pub z: Residue,
    pub parts: Vec<Residue>,
}

/// `z ≡ y Σ M_i q_i r_i^(c_i p_i^(m_i - 1))` modulo `Π p_i^(m_i)`.
///
/// The formula is cross-checked against combining the individual
/// [`construct_z`] outputs, and `Q(z, y, n)` is checked to vanish modulo the
/// full product.
pub fn crt_construct(spec: &CompositeSpec) -> Result<CrtWitness> {
    let weighted: Natural = spec
        .parts
        .iter()
        .zip(&spec.terms)
        .map(|(part, term)| term.basis() * part.multiplier())
        .sum();
    let z = Residue::new(&spec.y * weighted, spec.product.clone())?;

    let parts = spec
        .parts
        .iter()
        .map(construct_z)
        .collect::<Result<Vec<_>>>()?;
    let combined = crt_combine(&parts)?;
    if combined != z {
        return Err(Error::TheoryViolation(alloc::format!(
            "formula gives {} but combining parts gives {}",
            z.value(),
            combined.value()
        )));
    }
    if !power_sum_mod(z.value(), &spec.y, spec.n, &spec.product).is_zero() {
        return Err(Error::TheoryViolation(alloc::format!(
            "{} does not divide Q({}, {}, {})",
            spec.product,
            z.value(),
            spec.y,
            spec.n
        )));
    }
    Ok(CrtWitness { z, parts })
}

/// Where a prime divisor `q` of `Q(z, y, n)` can come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorClass {
    /// `n | q - 1`.
    DividesPMinus1,
    /// `q = n` and `q | z - y`.
    EqualsNAndDividesDiff,
}

/// Classifies an odd prime divisor `q` of `Q(z, y, n)` for coprime `z`, `y`.
/// A divisor that fits neither class is reported as a theory violation.
pub fn classify_divisor(q: &Natural, z: &Natural, y: &Natural, n: u32) -> Result<DivisorClass> {
    check_odd_prime(q)?;
    let instance = quotient(z, y, n)?;
    if !z.gcd(y).is_one() {
        return Err(Error::PreconditionViolation(alloc::format!(
            "z = {z} and y = {y} are not coprime"
        )));
    }
    if !(&instance.value % q).is_zero() {
        return Err(Error::NotADivisor {
            q: q.clone(),
            value: instance.value,
        });
    }
    if divides_p_minus_1(q, n) {
        return Ok(DivisorClass::DividesPMinus1);
    }
    if q == &Natural::from(n) && (instance.difference() % q).is_zero() {
        return Ok(DivisorClass::EqualsNAndDividesDiff);
    }
    Err(Error::TheoryViolation(alloc::format!(
        "prime {q} divides Q({z}, {y}, {n}) but n ∤ q - 1 and q is not n dividing z - y"
    )))
}

/// For a prime `p = 2^k + 1`, checks by division that `p ∤ Q(z, y, n)`.
pub fn fermat_form_guard(p: &Natural, z: &Natural, y: &Natural, n: u32) -> Result<bool> {
    check_setting(p, n, y)?;
    let p_minus_1 = p - 1u32;
    if p_minus_1.count_ones() != 1 {
        return Err(Error::InvalidInput(alloc::format!(
            "{p} is not of the form 2^k + 1"
        )));
    }
    let instance = quotient(z, y, n)?;
    if (&instance.value % p).is_zero() {
        return Err(Error::TheoryViolation(alloc::format!(
            "Fermat-form prime {p} divides Q({z}, {y}, {n})"
        )));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{FactorConfig, Factorizer};
    use crate::primroot::find_primitive_root_mod_p_squared;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn root(p: u64) -> PrimitiveRootCert {
        let fz = Factorizer::new(FactorConfig {
            trial_bound: 1000,
            ..FactorConfig::default()
        });
        find_primitive_root_mod_p_squared(&nat(p), &fz).unwrap()
    }

    fn params(y: u64, p: u64, n: u32, m: u32, c: u64) -> ConstructionParams {
        ConstructionParams::new(nat(y), nat(p), n, m, nat(c), root(p)).unwrap()
    }

    fn values(rs: &[Residue]) -> Vec<Natural> {
        rs.iter().map(|r| r.value().clone()).collect()
    }

    #[test]
    fn c_value_examples() {
        assert_eq!(c_values(&nat(7), 3).unwrap(), [nat(2), nat(4)]);
        assert_eq!(c_values(&nat(13), 3).unwrap(), [nat(4), nat(8)]);
        assert_eq!(
            c_values(&nat(31), 5).unwrap(),
            [nat(6), nat(12), nat(18), nat(24)]
        );
        assert!(matches!(
            c_values(&nat(11), 3),
            Err(Error::CharacterizationFails { .. })
        ));
        assert!(c_values(&nat(7), 7).is_err());
    }

    #[test]
    fn construct_examples() {
        assert_eq!(
            construct_z(&params(1, 7, 3, 3, 2)).unwrap().value(),
            &nat(324)
        );
        assert_eq!(
            construct_z(&params(1, 7, 3, 1, 2)).unwrap().value(),
            &nat(2)
        );
        assert_eq!(
            construct_z(&params(1, 13, 3, 1, 4)).unwrap().value(),
            &nat(3)
        );
        // y above the modulus is reduced first.
        assert_eq!(
            construct_z(&params(8, 7, 3, 1, 2)).unwrap().value(),
            &nat(2)
        );
    }

    #[test]
    fn params_validation() {
        let r7 = root(7);
        let mk = |y: u64, p: u64, n: u32, c: u64, r: &PrimitiveRootCert| {
            ConstructionParams::new(nat(y), nat(p), n, 1, nat(c), r.clone())
        };
        assert!(matches!(
            mk(7, 7, 3, 2, &r7),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            mk(1, 7, 3, 3, &r7),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            mk(1, 7, 3, 0, &r7),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            mk(1, 7, 3, 6, &r7),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            mk(1, 7, 5, 2, &r7),
            Err(Error::CharacterizationFails { .. })
        ));
        assert!(matches!(
            mk(1, 7, 7, 2, &r7),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            mk(1, 13, 3, 4, &r7),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            mk(1, 7, 4, 2, &r7),
            Err(Error::InvalidExponent(4))
        ));
    }

    #[test]
    fn characterization_examples() {
        let r7 = root(7);
        let ch = divisibility_characterization(&nat(324), &nat(1), 3, &nat(7), 3, &r7).unwrap();
        assert_eq!(
            ch,
            Characterization {
                divisible: true,
                c: Some(nat(2))
            }
        );
        let ch = divisibility_characterization(&nat(3), &nat(1), 3, &nat(7), 1, &r7).unwrap();
        assert_eq!(
            ch,
            Characterization {
                divisible: false,
                c: None
            }
        );
        // 5 ∤ 7 - 1, so no z works.
        for z in 0..50u64 {
            if z == 2 {
                continue;
            }
            let ch = divisibility_characterization(&nat(z), &nat(2), 5, &nat(7), 1, &r7).unwrap();
            assert!(!ch.divisible);
        }
    }

    #[test]
    fn xi_examples() {
        let r7 = root(7);
        assert_eq!(
            values(&xi_enumerate(&nat(1), &nat(7), 3, 1, &r7).unwrap()),
            [nat(2), nat(4)]
        );
        assert_eq!(
            values(&xi_enumerate(&nat(1), &nat(7), 3, 3, &r7).unwrap()),
            [nat(324), nat(18)]
        );
        assert_eq!(
            values(&xi_enumerate(&nat(2), &nat(7), 3, 1, &r7).unwrap()),
            [nat(4), nat(1)]
        );
        assert!(xi_enumerate(&nat(1), &nat(7), 5, 1, &r7)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn xi_union_skips_multiples_of_p() {
        let family = XiFamily::new(&nat(7), 3, 1, &root(7)).unwrap();
        let pairs: Vec<(Natural, Residue)> = family.union((1u64..=8).map(nat)).collect();
        assert_eq!(pairs.len(), 14);
        assert!(pairs.iter().all(|(y, _)| y != &nat(7)));
    }

    #[test]
    fn swap_examples() {
        let p = params(1, 7, 3, 1, 2);
        let z = construct_z(&p).unwrap();
        assert_eq!(swap_pairing(&p, &z).unwrap(), (1, 2));
        let p = params(1, 13, 3, 1, 4);
        let z = construct_z(&p).unwrap();
        assert_eq!(z.value(), &nat(3));
        assert_eq!(swap_pairing(&p, &z).unwrap(), (1, 2));
        let not_witness = Residue::new(nat(3), nat(7)).unwrap();
        assert!(matches!(
            swap_pairing(&params(1, 7, 3, 1, 2), &not_witness),
            Err(Error::NotAWitness(_))
        ));
    }

    #[test]
    fn root_power_sum_examples() {
        let fz = Factorizer::new(FactorConfig {
            trial_bound: 1000,
            ..FactorConfig::default()
        });
        let r3 = root(7);
        let r5 = PrimitiveRootCert::verify(&nat(7), &nat(5), &fz).unwrap();
        let s = root_power_sum(&nat(7), 3, 1, &nat(2), &r3).unwrap();
        assert_eq!(s.terms, [nat(1), nat(2), nat(4)]);
        assert_eq!(geometric_power_sum(&nat(3), 2, 3), nat(91));
        assert!(root_power_sum(&nat(7), 3, 1, &nat(2), &r5)
            .unwrap()
            .sum
            .value()
            .is_zero());
        assert_eq!(geometric_power_sum(&nat(5), 2, 3), nat(651));
        let s = root_power_sum(&nat(7), 3, 3, &nat(2), &r3).unwrap();
        assert_eq!(s.terms, [nat(1), nat(324), nat(18)]);
        assert!(s.sum.value().is_zero());
    }

    #[test]
    fn crt_examples() {
        let spec =
            CompositeSpec::new(alloc::vec![params(1, 7, 3, 1, 2), params(1, 13, 3, 1, 4)]).unwrap();
        let w = crt_construct(&spec).unwrap();
        assert_eq!(w.z, Residue::new(nat(16), nat(91)).unwrap());
        assert_eq!(spec.terms()[0].cofactor, nat(13));
        assert_eq!(spec.terms()[0].inverse, nat(6));
        let single = CompositeSpec::new(alloc::vec![params(1, 7, 3, 3, 2)]).unwrap();
        assert_eq!(crt_construct(&single).unwrap().z.value(), &nat(324));
        let dup = CompositeSpec::new(alloc::vec![params(1, 7, 3, 1, 2), params(1, 7, 3, 2, 4)]);
        assert!(matches!(dup, Err(Error::PreconditionViolation(_))));
        let mixed = CompositeSpec::new(alloc::vec![params(1, 7, 3, 1, 2), params(2, 13, 3, 1, 4)]);
        assert!(matches!(mixed, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn classify_examples() {
        let classify = |q: u64, z: u64, y: u64, n| classify_divisor(&nat(q), &nat(z), &nat(y), n);
        assert_eq!(classify(13, 6, 5, 3).unwrap(), DivisorClass::DividesPMinus1);
        assert_eq!(
            classify(3, 4, 1, 3).unwrap(),
            DivisorClass::EqualsNAndDividesDiff
        );
        assert_eq!(
            classify(23, 2, 1, 11).unwrap(),
            DivisorClass::DividesPMinus1
        );
        assert!(matches!(
            classify(5, 6, 5, 3),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn fermat_examples() {
        let guard = |p: u64, z: u64, y: u64, n| fermat_form_guard(&nat(p), &nat(z), &nat(y), n);
        assert!(guard(5, 2, 1, 3).unwrap());
        assert!(guard(17, 3, 1, 5).unwrap());
        assert!(guard(3, 4, 1, 5).unwrap());
        assert!(matches!(guard(7, 2, 1, 3), Err(Error::InvalidInput(_))));
    }
}
