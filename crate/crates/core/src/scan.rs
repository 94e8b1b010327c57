//! Factor tables and exhaustive scans over small `(y, z, n)`.

use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::factor::{is_perfect_nth_power, Factorization, Factorizer};
use crate::primality::is_prime;
use crate::quotient::{abs_diff, quotient};
use crate::witness::classify_divisor;
use crate::Natural;

/// One row of a factor table: `Q(z, y, n)`, its factorization, and whether
/// some prime factor exceeds `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub y: Natural,
    pub z: Natural,
    pub n: u32,
    pub q_value: Natural,
    pub factorization: Factorization,
    pub largest_prime: Option<Natural>,
    /// Some known prime factor exceeds `z`.
    pub conjecture_holds: bool,
    /// Every known prime factor exceeding `z`, increasing.
    pub witnesses_gt_z: Vec<Natural>,
}

impl ScanRow {
    pub fn is_complete(&self) -> bool {
        self.factorization.is_complete()
    }

    /// A fully factored row with no prime factor above `z`.
    pub fn is_counterexample(&self) -> bool {
        self.is_complete() && !self.conjecture_holds
    }
}

pub fn scan_row(y: &Natural, z: &Natural, n: u32, fz: &Factorizer) -> Result<ScanRow> {
    let q = quotient(z, y, n)?;
    let factorization = fz.factorize(&q.value)?;
    let witnesses_gt_z: Vec<Natural> = factorization.primes().filter(|p| *p > z).cloned().collect();
    Ok(ScanRow {
        y: y.clone(),
        z: z.clone(),
        n,
        largest_prime: factorization.largest_prime().cloned(),
        conjecture_holds: !witnesses_gt_z.is_empty(),
        witnesses_gt_z,
        factorization,
        q_value: q.value,
    })
}

/// Coprime pairs `(y, z)` with `1 <= y <= y_max` and `y < z <= z_max`, in
/// `(y, z)` order.
pub fn coprime_pairs(y_max: u64, z_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..=y_max).flat_map(move |y| {
        ((y + 1)..=z_max)
            .filter(move |z| y.gcd(z) == 1)
            .map(move |z| (y, z))
    })
}

/// Rows of an exhaustive conjecture scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConjectureScan {
    pub rows: Vec<ScanRow>,
}

impl ConjectureScan {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.is_counterexample())
    }

    /// Rows whose factorization ran out of budget; excluded from verdicts.
    pub fn incomplete(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| !r.is_complete())
    }
}

/// For every coprime `z > y` in range, checks that `Q(z, y, n)` has a prime
/// factor larger than `z`.
pub fn conjecture_scan(n: u32, y_max: u64, z_max: u64, fz: &Factorizer) -> Result<ConjectureScan> {
    let rows = coprime_pairs(y_max, z_max)
        .map(|(y, z)| scan_row(&Natural::from(y), &Natural::from(z), n, fz))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureScan { rows })
}

/// A row of the reference factor table, kept verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Table1Entry {
    pub y: u32,
    pub z: u32,
    pub n: u32,
    pub value: u64,
    /// The decomposition column verbatim: `"7*13"`, `"prime"`, `"11 x 42491"`.
    pub decomposition: &'static str,
    /// The primes listed as exceeding `z`. Not always exhaustive: some rows
    /// omit a smaller prime that also exceeds `z`.
    pub listed_primes: &'static [u64],
}

const fn row(
    y: u32,
    z: u32,
    n: u32,
    value: u64,
    decomposition: &'static str,
    listed_primes: &'static [u64],
) -> Table1Entry {
    Table1Entry {
        y,
        z,
        n,
        value,
        decomposition,
        listed_primes,
    }
}

/// `Q(z, 5, 3)` and `Q(z, 7, 5)` for the coprime `z` up to 31. The table
/// skips exactly the `z` sharing a factor with `y`.
pub const TABLE1: [Table1Entry; 42] = [
    row(5, 6, 3, 91, "7*13", &[13]),
    row(5, 7, 3, 109, "prime", &[109]),
    row(5, 8, 3, 129, "3*43", &[43]),
    row(5, 9, 3, 151, "prime", &[151]),
    row(5, 11, 3, 201, "3*67", &[67]),
    row(5, 12, 3, 229, "prime", &[229]),
    row(5, 13, 3, 259, "7*37", &[37]),
    row(5, 14, 3, 291, "3*97", &[97]),
    row(5, 16, 3, 361, "19*19", &[19]),
    row(5, 17, 3, 399, "3*7*19", &[19]),
    row(5, 18, 3, 439, "prime", &[439]),
    row(5, 19, 3, 481, "13*37", &[37]),
    row(5, 21, 3, 571, "prime", &[571]),
    row(5, 22, 3, 619, "prime", &[619]),
    row(5, 23, 3, 669, "3*223", &[223]),
    row(5, 24, 3, 721, "7*103", &[103]),
    row(5, 26, 3, 831, "3*277", &[277]),
    row(5, 27, 3, 889, "7*127", &[127]),
    row(5, 28, 3, 949, "13*73", &[73]),
    row(5, 29, 3, 1011, "3*337", &[337]),
    row(5, 31, 3, 1141, "7*163", &[163]),
    row(7, 8, 5, 15961, "11*1451", &[1451]),
    row(7, 9, 5, 21121, "prime", &[21121]),
    row(7, 10, 5, 27731, "11*2521", &[2521]),
    row(7, 11, 5, 36061, "prime", &[36061]),
    row(7, 12, 5, 46405, "5*9281", &[9281]),
    row(7, 13, 5, 59081, "11*41*131", &[131, 41]),
    row(7, 15, 5, 92821, "prime", &[92821]),
    row(7, 16, 5, 114641, "prime", &[114641]),
    row(7, 17, 5, 140305, "5*11*2551", &[2551]),
    row(7, 18, 5, 170251, "61*2791", &[2791]),
    row(7, 19, 5, 204941, "11*31*601", &[601, 31]),
    row(7, 20, 5, 244861, "prime", &[244861]),
    row(7, 22, 5, 342455, "5*68491", &[68491]),
    row(7, 23, 5, 401221, "71*5651", &[71, 5651]),
    row(7, 24, 5, 467401, "11 x 42491", &[42491]),
    row(7, 25, 5, 541601, "31 x 17471", &[31, 17471]),
    row(7, 26, 5, 624451, "prime", &[624451]),
    row(7, 27, 5, 716605, "5*251*571", &[251, 571]),
    row(7, 29, 5, 931561, "41*22721", &[41, 22721]),
    row(7, 30, 5, 1055791, "11*41*2341", &[41, 2341]),
    row(7, 31, 5, 1192181, "prime", &[1192181]),
];

impl Table1Entry {
    /// The decomposition column as a factorization; `"prime"` means the
    /// value itself.
    pub fn factorization(&self) -> Result<Factorization> {
        if self.decomposition.trim() == "prime" {
            return Factorization::from_factors([(Natural::from(self.value), 1)]);
        }
        self.decomposition.parse()
    }
}

fn mismatch(entry: &Table1Entry, detail: String) -> Error {
    Error::TableMismatch {
        y: entry.y,
        z: entry.z,
        detail,
    }
}

/// Compares a computed row with a fixture row.
pub fn check_table1_row(entry: &Table1Entry, row: &ScanRow) -> Result<()> {
    if row.q_value != Natural::from(entry.value) {
        return Err(mismatch(
            entry,
            alloc::format!("value {} != {}", row.q_value, entry.value),
        ));
    }
    let expected = entry
        .factorization()
        .map_err(|e| mismatch(entry, alloc::format!("{e}")))?;
    if expected.product() != Natural::from(entry.value) {
        return Err(mismatch(
            entry,
            alloc::format!("fixture decomposition {expected} != {}", entry.value),
        ));
    }
    if row.factorization != expected {
        return Err(mismatch(
            entry,
            alloc::format!("factorization {} != {}", row.factorization, expected),
        ));
    }
    if !row.conjecture_holds {
        return Err(mismatch(entry, "no prime factor exceeds z".into()));
    }
    for &p in entry.listed_primes {
        let p = Natural::from(p);
        if !row.witnesses_gt_z.contains(&p) {
            return Err(mismatch(
                entry,
                alloc::format!("listed prime {p} is not a factor above z"),
            ));
        }
    }
    let listed_max = entry.listed_primes.iter().max().map(|&p| Natural::from(p));
    if listed_max != row.largest_prime {
        return Err(mismatch(
            entry,
            "largest listed prime is not the largest factor".into(),
        ));
    }
    Ok(())
}

/// Recomputes every row of `fixture` and checks it.
pub fn reproduce_table(fixture: &[Table1Entry], fz: &Factorizer) -> Result<Vec<ScanRow>> {
    fixture
        .iter()
        .map(|entry| {
            let row = scan_row(
                &Natural::from(entry.y),
                &Natural::from(entry.z),
                entry.n,
                fz,
            )?;
            check_table1_row(entry, &row)?;
            Ok(row)
        })
        .collect()
}

pub fn reproduce_table1(fz: &Factorizer) -> Result<Vec<ScanRow>> {
    reproduce_table(&TABLE1, fz)
}

/// A named boolean check inside a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub holds: bool,
}

fn check(label: String, holds: bool) -> Check {
    Check { label, holds }
}

fn divides(n: u32, v: &Natural) -> bool {
    (v % n) == Natural::from(0u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoormaghtighReport {
    /// `(5^3 - 1)/4`, `(2^5 - 1)/1`, `(90^3 - 1)/89`, `(2^13 - 1)/1`.
    pub values: [Natural; 4],
    pub checks: Vec<Check>,
}

impl GoormaghtighReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// The two known coincidences `31` and `8191` between repunits in
/// different bases, and the `n | p - 1` conditions they satisfy.
pub fn goormaghtigh_check() -> Result<GoormaghtighReport> {
    let q = |z: u32, n: u32| quotient(&Natural::from(z), &Natural::one(), n).map(|q| q.value);
    let values = [q(5, 3)?, q(2, 5)?, q(90, 3)?, q(2, 13)?];
    let p31 = Natural::from(31u32);
    let p8191 = Natural::from(8191u32);
    let checks = alloc::vec![
        check("(5^3 - 1)/(5 - 1) = 31".into(), values[0] == p31),
        check("(2^5 - 1)/(2 - 1) = 31".into(), values[1] == p31),
        check("(90^3 - 1)/(90 - 1) = 8191".into(), values[2] == p8191),
        check("(2^13 - 1)/(2 - 1) = 8191".into(), values[3] == p8191),
        check("31 is prime".into(), is_prime(&p31)),
        check("8191 is prime".into(), is_prime(&p8191)),
        check("3 | 30".into(), divides(3, &(&p31 - 1u32))),
        check("5 | 30".into(), divides(5, &(&p31 - 1u32))),
        check("3 | 8190".into(), divides(3, &(&p8191 - 1u32))),
        check("13 | 8190".into(), divides(13, &(&p8191 - 1u32))),
    ];
    Ok(GoormaghtighReport { values, checks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MersenneReport {
    pub n: u32,
    pub value: Natural,
    pub factorization: Factorization,
    /// For each prime divisor `q`, whether `n | q - 1`.
    pub divisors: Vec<(Natural, bool)>,
}

impl MersenneReport {
    pub fn is_complete(&self) -> bool {
        self.factorization.is_complete()
    }

    pub fn all_hold(&self) -> bool {
        self.divisors.iter().all(|(_, holds)| *holds)
    }
}

/// Factors `2^n - 1` and checks `n | q - 1` for each prime divisor `q`.
pub fn mersenne_check(n: u32, fz: &Factorizer) -> Result<MersenneReport> {
    let value = quotient(&Natural::from(2u32), &Natural::one(), n)?.value;
    let factorization = fz.factorize(&value)?;
    let divisors = factorization
        .primes()
        .map(|q| (q.clone(), divides(n, &(q - 1u32))))
        .collect();
    Ok(MersenneReport {
        n,
        value,
        factorization,
        divisors,
    })
}

/// `Q(z, y, n)` that is a perfect power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerHit {
    pub z: Natural,
    pub y: Natural,
    pub value: Natural,
    /// Every `(k, root)` with `root^k = value`, `2 <= k <= log2 value`.
    pub powers: Vec<(u32, Natural)>,
    /// `value` is a perfect `n`-th power.
    pub is_nth_power: bool,
    /// `z - y` is a perfect `n`-th power.
    pub diff_is_nth_power: bool,
}

/// Checks a single pair. A perfect `n`-th power `Q` with `z - y` also an
/// `n`-th power would give `z^n = y^n + x^n`, so it is reported as a theory
/// violation.
pub fn probe_pair(z: &Natural, y: &Natural, n: u32) -> Result<Option<PowerHit>> {
    let value = quotient(z, y, n)?.value;
    let max_k = (value.bits().saturating_sub(1))
        .to_u32()
        .unwrap_or(u32::MAX);
    let powers: Vec<(u32, Natural)> = (2..=max_k)
        .filter_map(|k| is_perfect_nth_power(&value, k).map(|root| (k, root)))
        .collect();
    if powers.is_empty() {
        return Ok(None);
    }
    let is_nth_power = powers.iter().any(|(k, _)| *k == n);
    let diff_is_nth_power = is_perfect_nth_power(&abs_diff(z, y), n).is_some();
    if is_nth_power && diff_is_nth_power {
        return Err(Error::TheoryViolation(alloc::format!(
            "Q({z}, {y}, {n}) and z - y are both perfect {n}-th powers"
        )));
    }
    Ok(Some(PowerHit {
        z: z.clone(),
        y: y.clone(),
        value,
        powers,
        is_nth_power,
        diff_is_nth_power,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProbeReport {
    pub pairs_checked: u64,
    pub hits: Vec<PowerHit>,
}

impl ProbeReport {
    pub fn nth_power_hits(&self) -> impl Iterator<Item = &PowerHit> {
        self.hits.iter().filter(|h| h.is_nth_power)
    }
}

/// Every coprime `z > y` (with `y <= y_max`, `z <= z_max`) whose quotient is
/// a perfect power.
pub fn perfect_power_probe(n: u32, y_max: u64, z_max: u64) -> Result<ProbeReport> {
    probe_pairs(n, coprime_pairs(y_max, z_max))
}

/// The consecutive pairs `z - y = 1` up to `z_max`.
pub fn consecutive_probe(n: u32, z_max: u64) -> Result<ProbeReport> {
    probe_pairs(n, (2..=z_max).map(|z| (z - 1, z)))
}

fn probe_pairs(n: u32, pairs: impl Iterator<Item = (u64, u64)>) -> Result<ProbeReport> {
    let mut report = ProbeReport::default();
    for (y, z) in pairs {
        report.pairs_checked += 1;
        if let Some(hit) = probe_pair(&Natural::from(z), &Natural::from(y), n)? {
            report.hits.push(hit);
        }
    }
    Ok(report)
}

/// Classifies every odd prime factor of a complete row; fails on the first
/// factor that fits neither divisor class.
pub fn classify_row(row: &ScanRow) -> Result<()> {
    for p in row.factorization.primes().filter(|p| p.is_odd()) {
        classify_divisor(p, &row.z, &row.y, row.n)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::FactorConfig;

    fn fz() -> Factorizer {
        Factorizer::new(FactorConfig {
            trial_bound: 2000,
            ..FactorConfig::default()
        })
    }

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn table_rows_examples() {
        let fz = fz();
        let r = scan_row(&nat(5), &nat(6), 3, &fz).unwrap();
        assert_eq!(r.q_value, nat(91));
        assert_eq!(r.largest_prime, Some(nat(13)));
        assert_eq!(r.witnesses_gt_z, [nat(7), nat(13)]);
        let r = scan_row(&nat(7), &nat(8), 5, &fz).unwrap();
        assert_eq!(r.largest_prime, Some(nat(1451)));
        let r = scan_row(&nat(5), &nat(16), 3, &fz).unwrap();
        assert_eq!(r.factorization.factors(), &[(nat(19), 2)]);
    }

    #[test]
    fn fixture_skips_exactly_non_coprime_z() {
        for (y, n) in [(5u64, 3u32), (7, 5)] {
            let expected: Vec<u64> = coprime_pairs(y, 31)
                .filter(|(yy, _)| *yy == y)
                .map(|(_, z)| z)
                .collect();
            let fixture: Vec<u64> = TABLE1
                .iter()
                .filter(|e| e.y as u64 == y && e.n == n)
                .map(|e| e.z as u64)
                .collect();
            assert_eq!(fixture, expected);
        }
    }

    #[test]
    fn corrupted_fixture_is_reported() {
        let fz = fz();
        let mut fixture = TABLE1;
        fixture[8].decomposition = "19*17";
        let err = reproduce_table(&fixture, &fz).unwrap_err();
        assert!(
            matches!(err, Error::TableMismatch { y: 5, z: 16, .. }),
            "{err:?}"
        );
        let mut fixture = TABLE1;
        fixture[21].listed_primes = &[11];
        assert!(matches!(
            reproduce_table(&fixture, &fz).unwrap_err(),
            Error::TableMismatch { y: 7, z: 8, .. }
        ));
        let mut fixture = TABLE1;
        fixture[0].value = 92;
        assert!(reproduce_table(&fixture, &fz).is_err());
    }

    #[test]
    fn goormaghtigh() {
        let report = goormaghtigh_check().unwrap();
        assert!(report.all_hold());
        assert_eq!(report.values, [nat(31), nat(31), nat(8191), nat(8191)]);
    }

    #[test]
    fn mersenne_examples() {
        let fz = fz();
        let r = mersenne_check(11, &fz).unwrap();
        assert_eq!(r.value, nat(2047));
        assert_eq!(r.divisors, [(nat(23), true), (nat(89), true)]);
        let r = mersenne_check(5, &fz).unwrap();
        assert_eq!(r.divisors, [(nat(31), true)]);
        let r = mersenne_check(13, &fz).unwrap();
        assert_eq!(r.divisors, [(nat(8191), true)]);
        assert!(mersenne_check(4, &fz).is_err());
    }

    #[test]
    fn probe_finds_nineteen_squared() {
        let hit = probe_pair(&nat(16), &nat(5), 3).unwrap().unwrap();
        assert_eq!(hit.powers, [(2, nat(19))]);
        assert!(!hit.is_nth_power);
        assert!(probe_pair(&nat(6), &nat(5), 3).unwrap().is_none());
    }

    #[test]
    fn classify_table_rows() {
        let fz = fz();
        for row in reproduce_table1(&fz).unwrap() {
            classify_row(&row).unwrap();
        }
    }
}
