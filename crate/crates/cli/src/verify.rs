//! Reference numeric examples, kept as data so a test can corrupt one and
//! watch the verifier name it.

use num_traits::Zero;
use qf_core::modular::PrimePowerModulus;
use qf_core::primroot::{
    find_primitive_root_mod_p_squared, is_primitive_root, lift_primitive_root, PrimitiveRootCert,
};
use qf_core::quotient::quotient;
use qf_core::scan::{self, consecutive_probe, probe_pair, Table1Entry, TABLE1};
use qf_core::witness::{
    construct_z, crt_construct, root_power_sum, CompositeSpec, ConstructionParams,
};
use qf_core::Natural;

use crate::commands::{self, Context};
use crate::report::{FixtureOutcome, VerifyReport};

pub const FIXTURE_IDS: [&str; 8] = [
    "e1",
    "e2",
    "goormaghtigh",
    "mersenne",
    "probe",
    "table1",
    "primroot487",
    "crt",
];

/// `z = y r^(c p^(m-1)) mod p^m` and `Q(z, y, n) = cofactor * p^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFixture {
    pub y: u64,
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub c: u64,
    pub r: u64,
    pub z: u64,
    pub q: u64,
    pub cofactor: u64,
}

/// `Σ r^(k c p^(m-1))` written with the given representatives, which must
/// match the reduced terms modulo `p^m` and add up to `total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumFixture {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub c: u64,
    pub r: u64,
    pub terms: Vec<u64>,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MersenneFixture {
    pub n: u32,
    pub value: u64,
    pub factorization: &'static str,
}

/// A quotient that is a perfect `k`-th power but not an `n`-th power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerFixture {
    pub z: u64,
    pub y: u64,
    pub n: u32,
    pub value: u64,
    pub k: u32,
    pub root: u64,
    /// No `Q(y + 1, y, n)` with `y + 1 <= consecutive_bound` is an `n`-th power.
    pub consecutive_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftFixture {
    pub p: u64,
    /// Primitive modulo `p` but not `p^2`.
    pub r: u64,
    pub lifted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtFixture {
    pub y: u64,
    pub n: u32,
    /// `(p, m, c)` per part.
    pub parts: Vec<(u64, u32, u64)>,
    pub z: u64,
    pub modulus: u64,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixtures {
    pub e1: WitnessFixture,
    pub e2: Vec<SumFixture>,
    pub goormaghtigh: [u64; 4],
    pub mersenne: Vec<MersenneFixture>,
    pub probe: PowerFixture,
    pub table1: Vec<Table1Entry>,
    pub primroot487: LiftFixture,
    pub crt: CrtFixture,
}

impl Default for Fixtures {
    fn default() -> Self {
        Fixtures {
            e1: WitnessFixture {
                y: 1,
                p: 7,
                n: 3,
                m: 3,
                c: 2,
                r: 3,
                z: 324,
                q: 105301,
                cofactor: 307,
            },
            e2: vec![
                SumFixture {
                    p: 7,
                    n: 3,
                    m: 1,
                    c: 2,
                    r: 3,
                    terms: vec![1, 9, 81],
                    total: 91,
                },
                SumFixture {
                    p: 7,
                    n: 3,
                    m: 1,
                    c: 2,
                    r: 5,
                    terms: vec![1, 25, 625],
                    total: 651,
                },
                SumFixture {
                    p: 7,
                    n: 3,
                    m: 3,
                    c: 2,
                    r: 3,
                    terms: vec![1, 324, 361],
                    total: 686,
                },
            ],
            goormaghtigh: [31, 31, 8191, 8191],
            mersenne: vec![
                MersenneFixture {
                    n: 5,
                    value: 31,
                    factorization: "31",
                },
                MersenneFixture {
                    n: 11,
                    value: 2047,
                    factorization: "23 * 89",
                },
                MersenneFixture {
                    n: 13,
                    value: 8191,
                    factorization: "8191",
                },
            ],
            probe: PowerFixture {
                z: 16,
                y: 5,
                n: 3,
                value: 361,
                k: 2,
                root: 19,
                consecutive_bound: 200,
            },
            table1: TABLE1.to_vec(),
            primroot487: LiftFixture {
                p: 487,
                r: 10,
                lifted: 497,
            },
            crt: CrtFixture {
                y: 1,
                n: 3,
                parts: vec![(7, 1, 2), (13, 1, 4)],
                z: 16,
                modulus: 91,
                q: 273,
            },
        }
    }
}

type Check = Result<(), String>;

macro_rules! expect {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn msg(e: qf_core::Error) -> String {
    e.to_string()
}

fn cert(p: u64, r: u64, ctx: &Context) -> Result<PrimitiveRootCert, String> {
    PrimitiveRootCert::verify(&nat(p), &nat(r), &ctx.fz).map_err(msg)
}

fn check_e1(f: &WitnessFixture, ctx: &Context) -> Check {
    let root = cert(f.p, f.r, ctx)?;
    let params =
        ConstructionParams::new(nat(f.y), nat(f.p), f.n, f.m, nat(f.c), root).map_err(msg)?;
    let z = construct_z(&params).map_err(msg)?;
    expect!(
        z.value() == &nat(f.z),
        "z = {}, expected {}",
        z.value(),
        f.z
    );
    let q = quotient(z.value(), &nat(f.y), f.n).map_err(msg)?.value;
    expect!(
        q == nat(f.q),
        "Q({}, {}, {}) = {q}, expected {}",
        f.z,
        f.y,
        f.n,
        f.q
    );
    let divisor = params.modulus().modulus().clone();
    expect!(
        q == &divisor * nat(f.cofactor),
        "{q} != {divisor} * {}",
        f.cofactor
    );
    Ok(())
}

fn check_e2(fixtures: &[SumFixture], ctx: &Context) -> Check {
    for f in fixtures {
        let root = cert(f.p, f.r, ctx)?;
        let s = root_power_sum(&nat(f.p), f.n, f.m, &nat(f.c), &root).map_err(msg)?;
        let modulus = s.sum.modulus().clone();
        expect!(
            f.terms.len() == s.terms.len(),
            "r = {}: {} terms, expected {}",
            f.r,
            s.terms.len(),
            f.terms.len()
        );
        for (given, computed) in f.terms.iter().zip(&s.terms) {
            expect!(
                &(nat(*given) % &modulus) == computed,
                "r = {}: term {given} != {computed} (mod {modulus})",
                f.r
            );
        }
        let total: u64 = f.terms.iter().sum();
        expect!(
            total == f.total,
            "r = {}: terms add to {total}, expected {}",
            f.r,
            f.total
        );
        expect!(
            (nat(f.total) % &modulus).is_zero(),
            "{} is not 0 modulo {modulus}",
            f.total
        );
    }
    Ok(())
}

fn check_goormaghtigh(expected: &[u64; 4]) -> Check {
    let report = scan::goormaghtigh_check().map_err(msg)?;
    for (got, want) in report.values.iter().zip(expected) {
        expect!(got == &nat(*want), "value {got}, expected {want}");
    }
    if let Some(c) = report.checks.iter().find(|c| !c.holds) {
        return Err(format!("{} does not hold", c.label));
    }
    Ok(())
}

fn check_mersenne(fixtures: &[MersenneFixture], ctx: &Context) -> Check {
    for f in fixtures {
        let report = scan::mersenne_check(f.n, &ctx.fz).map_err(msg)?;
        expect!(
            report.value == nat(f.value),
            "2^{} - 1 = {}, expected {}",
            f.n,
            report.value,
            f.value
        );
        let expected = f.factorization.parse().map_err(msg)?;
        expect!(
            report.factorization == expected,
            "2^{} - 1 = {}, expected {}",
            f.n,
            report.factorization,
            f.factorization
        );
        if let Some((q, _)) = report.divisors.iter().find(|(_, holds)| !holds) {
            return Err(format!("{} does not divide {q} - 1", f.n));
        }
    }
    Ok(())
}

fn check_probe(f: &PowerFixture) -> Check {
    let hit = probe_pair(&nat(f.z), &nat(f.y), f.n)
        .map_err(msg)?
        .ok_or_else(|| format!("Q({}, {}, {}) is not a perfect power", f.z, f.y, f.n))?;
    expect!(
        hit.value == nat(f.value),
        "Q({}, {}, {}) = {}, expected {}",
        f.z,
        f.y,
        f.n,
        hit.value,
        f.value
    );
    expect!(
        hit.powers.contains(&(f.k, nat(f.root))),
        "{} is not {}^{}",
        hit.value,
        f.root,
        f.k
    );
    expect!(
        !hit.is_nth_power,
        "{} reported as a perfect {}-th power",
        hit.value,
        f.n
    );
    let consecutive = consecutive_probe(f.n, f.consecutive_bound).map_err(msg)?;
    if let Some(h) = consecutive.nth_power_hits().next() {
        return Err(format!(
            "Q({}, {}, {}) = {} is a perfect {}-th power",
            h.z, h.y, f.n, h.value, f.n
        ));
    }
    Ok(())
}

fn check_table1(fixture: &[Table1Entry], ctx: &Context) -> Check {
    expect!(
        fixture.len() == TABLE1.len(),
        "{} rows, expected {}",
        fixture.len(),
        TABLE1.len()
    );
    let report = commands::table(fixture, ctx).map_err(msg)?;
    if let Some(m) = report.mismatches.first() {
        return Err(format!("row y = {}, z = {}: {}", m.y, m.z, m.detail));
    }
    Ok(())
}

fn check_primroot(f: &LiftFixture, ctx: &Context) -> Check {
    let p = nat(f.p);
    let p1 = PrimePowerModulus::new(p.clone(), 1).map_err(msg)?;
    let p2 = PrimePowerModulus::new(p.clone(), 2).map_err(msg)?;
    expect!(
        is_primitive_root(&nat(f.r), &p1, &ctx.fz).map_err(msg)?,
        "{} is not primitive modulo {}",
        f.r,
        f.p
    );
    expect!(
        !is_primitive_root(&nat(f.r), &p2, &ctx.fz).map_err(msg)?,
        "{} is primitive modulo {}^2",
        f.r,
        f.p
    );
    let lifted = lift_primitive_root(&p, &nat(f.r), &ctx.fz).map_err(msg)?;
    expect!(
        lifted.root() == &nat(f.lifted),
        "{} lifts to {}, expected {}",
        f.r,
        lifted.root(),
        f.lifted
    );
    let found = commands::primroot(&p, None, ctx).map_err(msg)?;
    expect!(
        found.verified_level == 2,
        "certificate for {} has level {}",
        f.p,
        found.verified_level
    );
    Ok(())
}

fn check_crt(f: &CrtFixture, ctx: &Context) -> Check {
    let parts = f
        .parts
        .iter()
        .map(|&(p, m, c)| {
            let root = find_primitive_root_mod_p_squared(&nat(p), &ctx.fz).map_err(msg)?;
            ConstructionParams::new(nat(f.y), nat(p), f.n, m, nat(c), root).map_err(msg)
        })
        .collect::<Result<Vec<_>, String>>()?;
    let spec = CompositeSpec::new(parts).map_err(msg)?;
    let w = crt_construct(&spec).map_err(msg)?;
    expect!(
        w.z.modulus() == &nat(f.modulus),
        "modulus {}, expected {}",
        w.z.modulus(),
        f.modulus
    );
    expect!(
        w.z.value() == &nat(f.z),
        "z = {}, expected {}",
        w.z.value(),
        f.z
    );
    let q = quotient(&nat(f.z), &nat(f.y), f.n).map_err(msg)?.value;
    expect!(
        q == nat(f.q),
        "Q({}, {}, {}) = {q}, expected {}",
        f.z,
        f.y,
        f.n,
        f.q
    );
    expect!(
        (q % f.modulus).is_zero(),
        "{} does not divide {}",
        f.modulus,
        f.q
    );
    Ok(())
}

/// Runs every fixture, or just `only`. Returns `None` for an unknown id.
pub fn verify(fixtures: &Fixtures, only: Option<&str>, ctx: &Context) -> Option<VerifyReport> {
    if let Some(id) = only {
        if !FIXTURE_IDS.contains(&id) {
            return None;
        }
    }
    let outcomes = FIXTURE_IDS
        .iter()
        .filter(|id| only.is_none_or(|o| o == **id))
        .map(|&id| {
            let result = match id {
                "e1" => check_e1(&fixtures.e1, ctx),
                "e2" => check_e2(&fixtures.e2, ctx),
                "goormaghtigh" => check_goormaghtigh(&fixtures.goormaghtigh),
                "mersenne" => check_mersenne(&fixtures.mersenne, ctx),
                "probe" => check_probe(&fixtures.probe),
                "table1" => check_table1(&fixtures.table1, ctx),
                "primroot487" => check_primroot(&fixtures.primroot487, ctx),
                "crt" => check_crt(&fixtures.crt, ctx),
                _ => unreachable!("ids come from FIXTURE_IDS"),
            };
            FixtureOutcome {
                id: id.to_string(),
                passed: result.is_ok(),
                detail: result.err().unwrap_or_default(),
            }
        })
        .collect();
    Some(VerifyReport { fixtures: outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(2, qf_core::factor::DEFAULT_RHO_BUDGET).unwrap()
    }

    #[test]
    fn defaults_all_pass() {
        let report = verify(&Fixtures::default(), None, &ctx()).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.fixtures.len(), FIXTURE_IDS.len());
    }

    #[test]
    fn only_filters() {
        let report = verify(&Fixtures::default(), Some("e1"), &ctx()).unwrap();
        assert_eq!(report.fixtures.len(), 1);
        assert_eq!(report.fixtures[0].id, "e1");
        assert!(verify(&Fixtures::default(), Some("nope"), &ctx()).is_none());
    }

    #[test]
    fn each_corruption_is_named() {
        let c = ctx();
        let mut corrupted: Vec<(&str, Fixtures)> = Vec::new();
        let mut f = Fixtures::default();
        f.e1.z = 325;
        corrupted.push(("e1", f));
        let mut f = Fixtures::default();
        f.e2[2].terms[2] = 18;
        corrupted.push(("e2", f));
        let mut f = Fixtures::default();
        f.goormaghtigh[2] = 8193;
        corrupted.push(("goormaghtigh", f));
        let mut f = Fixtures::default();
        f.mersenne[1].factorization = "2047";
        corrupted.push(("mersenne", f));
        let mut f = Fixtures::default();
        f.probe.root = 20;
        corrupted.push(("probe", f));
        let mut f = Fixtures::default();
        f.table1[0].decomposition = "91";
        corrupted.push(("table1", f));
        let mut f = Fixtures::default();
        f.primroot487.lifted = 498;
        corrupted.push(("primroot487", f));
        let mut f = Fixtures::default();
        f.crt.z = 17;
        corrupted.push(("crt", f));

        for (id, fixtures) in corrupted {
            let report = verify(&fixtures, None, &c).unwrap();
            let failed: Vec<&str> = report
                .fixtures
                .iter()
                .filter(|f| !f.passed)
                .map(|f| f.id.as_str())
                .collect();
            assert_eq!(failed, [id]);
            assert!(!report
                .fixtures
                .iter()
                .find(|f| f.id == id)
                .unwrap()
                .detail
                .is_empty());
        }
    }
}
