//! Integer factorization: trial division by a prime table, then Brent's
//! variant of Pollard rho under an iteration budget.
//!
//! When the budget runs out the composite cofactor is kept in
//! [`Factorization::unfactored`] and the result is marked incomplete instead of
//! being reported as prime.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primality::{is_prime, mul_mod};
use crate::Natural;

pub const DEFAULT_RHO_BUDGET: u64 = 1 << 22;
pub const DEFAULT_TRIAL_BOUND: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Total rho iterations allowed per composite cofactor.
    pub rho_budget: u64,
    /// Trial division uses every prime below this bound.
    pub trial_bound: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            rho_budget: DEFAULT_RHO_BUDGET,
            trial_bound: DEFAULT_TRIAL_BOUND,
        }
    }
}

/// Prime factors with multiplicities, in increasing order of prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
    unfactored: Vec<Natural>,
}

impl Factorization {
    /// Builds a complete factorization from arbitrary `(prime, exponent)` pairs,
    /// merging repeats. Fails if any base is not prime or any exponent is zero.
    pub fn from_factors(pairs: impl IntoIterator<Item = (Natural, u32)>) -> Result<Self> {
        let mut factors: Vec<(Natural, u32)> = Vec::new();
        for (p, e) in pairs {
            if e == 0 {
                return Err(Error::InvalidInput(alloc::format!("zero exponent on {p}")));
            }
            if !is_prime(&p) {
                return Err(Error::InvalidInput(alloc::format!("{p} is not prime")));
            }
            factors.push((p, e));
        }
        Ok(Self::normalize(factors, Vec::new()))
    }

    fn normalize(mut factors: Vec<(Natural, u32)>, mut unfactored: Vec<Natural>) -> Self {
        factors.sort();
        let mut merged: Vec<(Natural, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == p => *acc += e,
                _ => merged.push((p, e)),
            }
        }
        unfactored.sort();
        Factorization {
            factors: merged,
            unfactored,
        }
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    /// Composite cofactors that could not be split within the budget.
    pub fn unfactored(&self) -> &[Natural] {
        &self.unfactored
    }

    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// The largest prime found so far; for a complete factorization this is
    /// the largest prime factor.
    pub fn largest_prime(&self) -> Option<&Natural> {
        self.factors.last().map(|(p, _)| p)
    }

    /// Product of every listed prime power and every unfactored cofactor.
    pub fn product(&self) -> Natural {
        let primes: Natural = self
            .factors
            .iter()
            .map(|(p, e)| num_traits::pow(p.clone(), *e as usize))
            .product();
        primes * self.unfactored.iter().product::<Natural>()
    }

    pub fn is_prime_factorization(&self) -> bool {
        self.is_complete() && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// `7 * 13`, `19^2`, `3 * 7 * 19`. Unfactored cofactors are shown as `(c)`.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        for c in &self.unfactored {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

/// Parses products of prime powers. Accepts `*` or `x` between factors,
/// `^` for exponents, and repeated primes (`19*19`).
impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(alloc::format!("cannot parse factorization {s:?}"));
        let normalized: String = s.chars().map(|c| if c == 'x' { '*' } else { c }).collect();
        let mut pairs = Vec::new();
        for term in normalized.split('*') {
            let term = term.trim();
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| bad())?),
                None => (term, 1),
            };
            let base = Natural::parse_bytes(base.as_bytes(), 10).ok_or_else(bad)?;
            pairs.push((base, exp));
        }
        Factorization::from_factors(pairs)
    }
}

/// Factoring engine holding the trial-division prime table and the effort
/// budget. Cheap to share by reference across threads.
#[derive(Debug, Clone)]
pub struct Factorizer {
    config: FactorConfig,
    primes: Vec<u32>,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer::new(FactorConfig::default())
    }
}

impl Factorizer {
    pub fn new(config: FactorConfig) -> Self {
        Factorizer {
            config,
            primes: primes_below(config.trial_bound),
        }
    }

    pub fn config(&self) -> FactorConfig {
        self.config
    }

    pub fn factorize(&self, n: &Natural) -> Result<Factorization> {
        if n < &Natural::from(2u32) {
            return Err(Error::InvalidInput(alloc::format!("cannot factor {n}")));
        }
        let mut found: Vec<(Natural, u32)> = Vec::new();
        let rest = self.trial_divide(n, &mut found);
        let mut unfactored = Vec::new();
        if !rest.is_one() {
            let mut pending = alloc::vec![rest];
            while let Some(c) = pending.pop() {
                if is_prime(&c) {
                    found.push((c, 1));
                    continue;
                }
                let root = c.sqrt();
                if &root * &root == c {
                    pending.push(root.clone());
                    pending.push(root);
                    continue;
                }
                match self.split(&c) {
                    Some(d) => {
                        let other = &c / &d;
                        pending.push(d);
                        pending.push(other);
                    }
                    None => unfactored.push(c),
                }
            }
        }
        Ok(Factorization::normalize(found, unfactored))
    }

    pub fn largest_prime_factor(&self, n: &Natural) -> Result<Natural> {
        let f = self.factorize(n)?;
        if let Some(c) = f.unfactored().first() {
            return Err(Error::EffortExceeded(c.clone()));
        }
        Ok(f.largest_prime()
            .cloned()
            .expect("n >= 2 has a prime factor"))
    }

    /// Removes every prime below the trial bound; returns the cofactor.
    /// Stops early once the cofactor is known to be 1 or prime.
    fn trial_divide(&self, n: &Natural, found: &mut Vec<(Natural, u32)>) -> Natural {
        let mut rest = n.clone();
        let mut small = rest.to_u64();
        for &p in &self.primes {
            let p64 = p as u64;
            match small {
                Some(r) => {
                    if p64 * p64 > r {
                        break;
                    }
                    if r % p64 == 0 {
                        let mut r = r;
                        let mut e = 0;
                        while r % p64 == 0 {
                            r /= p64;
                            e += 1;
                        }
                        found.push((Natural::from(p), e));
                        small = Some(r);
                    }
                }
                None => {
                    if (&rest % p).is_zero() {
                        let mut e = 0;
                        while (&rest % p).is_zero() {
                            rest /= p;
                            e += 1;
                        }
                        found.push((Natural::from(p), e));
                        small = rest.to_u64();
                    }
                }
            }
        }
        match small {
            Some(r) => Natural::from(r),
            None => rest,
        }
    }

    /// A nontrivial divisor of the odd composite `n`, or `None` if the rho
    /// budget ran out.
    fn split(&self, n: &Natural) -> Option<Natural> {
        if n.is_even() {
            return Some(Natural::from(2u32));
        }
        let mut budget = self.config.rho_budget;
        let mut increment = 1u64;
        while budget > 0 {
            let d = match n.to_u64() {
                Some(v) => brent_u64(v, increment, &mut budget).map(Natural::from),
                None => brent_big(n, &Natural::from(increment), &mut budget),
            };
            if d.is_some() {
                return d;
            }
            increment += 1;
        }
        None
    }
}

const BRENT_BATCH: u64 = 128;

/// Brent's cycle-finding rho on `x -> x^2 + increment (mod n)`.
fn brent_u64(n: u64, increment: u64, budget: &mut u64) -> Option<u64> {
    let step = |x: u64| (mul_mod(x, x, n) + increment % n) % n;
    let (mut y, mut r, mut q, mut g) = (2u64 % n, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let batch = BRENT_BATCH.min(r - k);
            for _ in 0..batch {
                y = step(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += batch;
            *budget = budget.saturating_sub(batch);
            if *budget == 0 && g == 1 {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = step(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &Natural, increment: &Natural, budget: &mut u64) -> Option<Natural> {
    let step = |x: &Natural| (x * x + increment) % n;
    let diff = |a: &Natural, b: &Natural| if a > b { a - b } else { b - a };
    let mut y = Natural::from(2u32);
    let mut r = 1u64;
    let mut q = Natural::one();
    let mut g = Natural::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let batch = BRENT_BATCH.min(r - k);
            for _ in 0..batch {
                y = step(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += batch;
            *budget = budget.saturating_sub(batch);
            if *budget == 0 && g.is_one() {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// All primes strictly below `bound`.
pub fn primes_below(bound: u32) -> Vec<u32> {
    let bound = bound as usize;
    if bound < 3 {
        return Vec::new();
    }
    let mut composite = alloc::vec![false; bound];
    let mut primes = Vec::new();
    for i in 2..bound {
        if composite[i] {
            continue;
        }
        primes.push(i as u32);
        let mut j = i * i;
        while j < bound {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// The integer `n`-th root of `v` if `v` is a perfect `n`-th power.
pub fn is_perfect_nth_power(v: &Natural, n: u32) -> Option<Natural> {
    if n == 0 {
        return None;
    }
    let root = v.nth_root(n);
    (num_traits::pow(root.clone(), n as usize) == *v).then_some(root)
}
