//! One function per subcommand. Each returns a [`Render`] record; the row
//! scans fan out over the context's thread pool and keep `(y, z)` order.

use num_traits::Zero;
use qf_core::factor::{FactorConfig, Factorizer};
use qf_core::modular::PrimePowerModulus;
use qf_core::primroot::{
    find_primitive_root_mod_p_squared, is_primitive_root, lift_primitive_root, PrimitiveRootCert,
};
use qf_core::quotient::quotient;
use qf_core::scan::{
    self, check_table1_row, coprime_pairs, probe_pair, scan_row, ScanRow, Table1Entry,
};
use qf_core::witness::{
    c_values, construct_z, crt_construct, divisibility_characterization, root_power_sum,
    swap_pairing, xi_enumerate, CompositeSpec, ConstructionParams,
};
use qf_core::{Error, Natural, Result};
use rayon::prelude::*;

use crate::args::PartSpec;
use crate::report::*;

/// Shared configuration for one invocation.
pub struct Context {
    pub fz: Factorizer,
    pub pool: rayon::ThreadPool,
}

impl Context {
    /// `threads = 0` uses every available core.
    pub fn new(
        threads: usize,
        rho_budget: u64,
    ) -> std::result::Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        let fz = Factorizer::new(FactorConfig {
            rho_budget,
            ..FactorConfig::default()
        });
        Ok(Context { fz, pool })
    }
}

fn root_for(p: &Natural, ctx: &Context) -> Result<PrimitiveRootCert> {
    find_primitive_root_mod_p_squared(p, &ctx.fz)
}

pub fn construct(
    y: &Natural,
    p: &Natural,
    n: u32,
    m: u32,
    c: Option<&Natural>,
    ctx: &Context,
) -> Result<ConstructReport> {
    let root = root_for(p, ctx)?;
    let cs = match c {
        Some(c) => vec![c.clone()],
        None => c_values(p, n)?,
    };
    let mut witnesses = Vec::with_capacity(cs.len());
    for c in cs {
        let params = ConstructionParams::new(y.clone(), p.clone(), n, m, c.clone(), root.clone())?;
        let z = construct_z(&params)?;
        let q = quotient(z.value(), y, n)?.value;
        let divisor = params.modulus().modulus().clone();
        if !(&q % &divisor).is_zero() {
            return Err(Error::TheoryViolation(format!(
                "{divisor} does not divide Q({}, {y}, {n}) = {q}",
                z.value()
            )));
        }
        let swap = swap_pairing(&params, &z)?;
        witnesses.push(WitnessRecord {
            c: c.into(),
            z: z.value().into(),
            cofactor: (&q / &divisor).into(),
            q: q.into(),
            divisor: divisor.into(),
            swap,
        });
    }
    Ok(ConstructReport {
        y: y.into(),
        p: p.into(),
        n,
        m,
        r: root.root().into(),
        witnesses,
    })
}

pub fn check(
    z: &Natural,
    y: &Natural,
    n: u32,
    p: &Natural,
    m: u32,
    ctx: &Context,
) -> Result<CheckReport> {
    let root = root_for(p, ctx)?;
    let ch = divisibility_characterization(z, y, n, p, m, &root)?;
    let q = quotient(z, y, n)?.value;
    Ok(CheckReport {
        z: z.into(),
        y: y.into(),
        n,
        p: p.into(),
        m,
        r: root.root().into(),
        q: q.into(),
        divisible: ch.divisible,
        c: ch.c.map(Dec),
    })
}

pub fn xi(y: &Natural, p: &Natural, n: u32, m: u32, ctx: &Context) -> Result<XiReport> {
    let root = root_for(p, ctx)?;
    let residues = xi_enumerate(y, p, n, m, &root)?;
    let cs = if residues.is_empty() {
        Vec::new()
    } else {
        c_values(p, n)?
    };
    let modulus = PrimePowerModulus::new(p.clone(), m)?.modulus().clone();
    let classes = cs
        .into_iter()
        .zip(&residues)
        .map(|(c, z)| XiClass {
            c: c.into(),
            z: z.value().into(),
        })
        .collect();
    Ok(XiReport {
        y: y.into(),
        p: p.into(),
        n,
        m,
        r: root.root().into(),
        modulus: modulus.into(),
        classes,
    })
}

pub fn crt(y: &Natural, n: u32, parts: &[PartSpec], ctx: &Context) -> Result<CrtReport> {
    let mut params = Vec::with_capacity(parts.len());
    for part in parts {
        let root = root_for(&part.p, ctx)?;
        let c = match &part.c {
            Some(c) => c.clone(),
            None => c_values(&part.p, n)?.swap_remove(0),
        };
        params.push(ConstructionParams::new(
            y.clone(),
            part.p.clone(),
            n,
            part.m,
            c,
            root,
        )?);
    }
    let spec = CompositeSpec::new(params)?;
    let witness = crt_construct(&spec)?;
    let q = quotient(witness.z.value(), y, n)?.value;
    let parts = spec
        .parts()
        .iter()
        .zip(spec.terms())
        .zip(&witness.parts)
        .map(|((params, term), z)| CrtPartRecord {
            p: params.p().into(),
            m: params.m(),
            c: params.c().into(),
            r: params.root().root().into(),
            modulus: (&term.modulus).into(),
            cofactor: (&term.cofactor).into(),
            inverse: (&term.inverse).into(),
            z: z.value().into(),
        })
        .collect();
    Ok(CrtReport {
        y: y.into(),
        n,
        modulus: spec.product().into(),
        z: witness.z.value().into(),
        q: q.into(),
        parts,
    })
}

pub fn sum(
    p: &Natural,
    n: u32,
    m: u32,
    c: &Natural,
    r: Option<&Natural>,
    ctx: &Context,
) -> Result<SumReport> {
    let root = match r {
        Some(r) => PrimitiveRootCert::verify(p, r, &ctx.fz)?,
        None => root_for(p, ctx)?,
    };
    let s = root_power_sum(p, n, m, c, &root)?;
    let total: Natural = s.terms.iter().sum();
    Ok(SumReport {
        p: p.into(),
        n,
        m,
        c: c.into(),
        r: root.root().into(),
        modulus: s.sum.modulus().into(),
        terms: s.terms.iter().map(Dec::from).collect(),
        sum: total.into(),
        residue: s.sum.value().into(),
    })
}

pub fn primroot(p: &Natural, from: Option<&Natural>, ctx: &Context) -> Result<PrimrootReport> {
    let p1 = PrimePowerModulus::new(p.clone(), 1)?;
    let p2 = PrimePowerModulus::new(p.clone(), 2)?;
    let mut trace = Vec::new();
    let mut step = |candidate: &Natural| -> Result<bool> {
        let mod_p = is_primitive_root(candidate, &p1, &ctx.fz)?;
        let mod_p2 = if mod_p {
            Some(is_primitive_root(candidate, &p2, &ctx.fz)?)
        } else {
            None
        };
        trace.push(TraceStep {
            candidate: candidate.into(),
            primitive_mod_p: mod_p,
            primitive_mod_p2: mod_p2,
        });
        Ok(mod_p)
    };
    let start = match from {
        Some(r) => {
            step(r)?;
            r.clone()
        }
        None => {
            let mut r = Natural::from(2u32);
            while !step(&r)? {
                r += 1u32;
            }
            r
        }
    };
    let cert = lift_primitive_root(p, &start, &ctx.fz)?;
    if cert.lifted_from().is_some() {
        step(cert.root())?;
    }
    Ok(PrimrootReport {
        p: p.into(),
        r: cert.root().into(),
        verified_level: cert.verified_level(),
        lifted_from: cert.lifted_from().map(Dec::from),
        trace,
    })
}

pub fn q(z: &Natural, y: &Natural, n: u32, ctx: &Context) -> Result<QReport> {
    let value = quotient(z, y, n)?.value;
    let f = ctx.fz.factorize(&value)?;
    Ok(QReport {
        z: z.into(),
        y: y.into(),
        n,
        factorization: (&f).into(),
        value: value.into(),
    })
}

pub fn factor(n: &Natural, ctx: &Context) -> Result<FactorReport> {
    let f = ctx.fz.factorize(n)?;
    Ok(FactorReport {
        n: n.into(),
        factorization: (&f).into(),
    })
}

fn scan_rows(pairs: &[(u64, u64)], n: u32, ctx: &Context) -> Result<Vec<ScanRow>> {
    ctx.pool.install(|| {
        pairs
            .par_iter()
            .map(|&(y, z)| scan_row(&Natural::from(y), &Natural::from(z), n, &ctx.fz))
            .collect()
    })
}

/// Recomputes every fixture row in parallel, then compares in fixture order.
/// Mismatches are collected rather than aborting.
pub fn table(fixture: &[Table1Entry], ctx: &Context) -> Result<TableReport> {
    let rows: Vec<ScanRow> = ctx.pool.install(|| {
        fixture
            .par_iter()
            .map(|e| scan_row(&Natural::from(e.y), &Natural::from(e.z), e.n, &ctx.fz))
            .collect::<Result<_>>()
    })?;
    let mut mismatches = Vec::new();
    for (entry, row) in fixture.iter().zip(&rows) {
        match check_table1_row(entry, row) {
            Ok(()) => {}
            Err(Error::TableMismatch { y, z, detail }) => {
                mismatches.push(Mismatch { y, z, detail })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(TableReport {
        rows: rows.iter().map(RowRecord::from).collect(),
        mismatches,
    })
}

pub fn conjecture_scan(n: u32, y_max: u64, z_max: u64, ctx: &Context) -> Result<ScanReport> {
    let pairs: Vec<(u64, u64)> = coprime_pairs(y_max, z_max).collect();
    let rows = scan_rows(&pairs, n, ctx)?;
    Ok(ScanReport {
        n,
        y_max,
        z_max,
        counterexamples: rows.iter().filter(|r| r.is_counterexample()).count(),
        incomplete: rows.iter().filter(|r| !r.is_complete()).count(),
        rows: rows.iter().map(RowRecord::from).collect(),
    })
}

pub fn goormaghtigh() -> Result<GoormaghtighReport> {
    let report = scan::goormaghtigh_check()?;
    Ok(GoormaghtighReport {
        values: report.values.iter().map(Dec::from).collect(),
        checks: report
            .checks
            .into_iter()
            .map(|c| CheckRecord {
                label: c.label,
                holds: c.holds,
            })
            .collect(),
    })
}

pub fn mersenne(n: u32, ctx: &Context) -> Result<MersenneReport> {
    let report = scan::mersenne_check(n, &ctx.fz)?;
    Ok(MersenneReport {
        n,
        value: report.value.into(),
        factorization: (&report.factorization).into(),
        divisors: report
            .divisors
            .into_iter()
            .map(|(q, holds)| MersenneDivisor { q: q.into(), holds })
            .collect(),
    })
}

pub fn probe(n: u32, y_max: u64, z_max: u64, ctx: &Context) -> Result<ProbeReport> {
    let pairs: Vec<(u64, u64)> = coprime_pairs(y_max, z_max).collect();
    let hits: Vec<Option<scan::PowerHit>> = ctx.pool.install(|| {
        pairs
            .par_iter()
            .map(|&(y, z)| probe_pair(&Natural::from(z), &Natural::from(y), n))
            .collect::<Result<_>>()
    })?;
    let hits = hits
        .into_iter()
        .flatten()
        .map(|h| HitRecord {
            z: h.z.into(),
            y: h.y.into(),
            value: h.value.into(),
            powers: h
                .powers
                .into_iter()
                .map(|(k, root)| PowerRecord {
                    k,
                    root: root.into(),
                })
                .collect(),
            nth_power: h.is_nth_power,
            diff_nth_power: h.diff_is_nth_power,
        })
        .collect();
    Ok(ProbeReport {
        n,
        y_max,
        z_max,
        pairs_checked: pairs.len() as u64,
        hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(2, qf_core::factor::DEFAULT_RHO_BUDGET).unwrap()
    }

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn construct_single_c() {
        let r = construct(&nat(1), &nat(7), 3, 3, Some(&nat(2)), &ctx()).unwrap();
        let w = &r.witnesses[0];
        assert_eq!(
            (w.z.clone(), w.q.clone(), w.divisor.clone()),
            (324.into(), 105301.into(), 343.into())
        );
        assert_eq!(w.cofactor, 307.into());
    }

    #[test]
    fn construct_all_c_pairs_up() {
        let r = construct(&nat(2), &nat(13), 3, 2, None, &ctx()).unwrap();
        assert_eq!(r.witnesses.len(), 2);
        assert_eq!(r.witnesses[0].swap, (1, 2));
        assert_eq!(r.witnesses[1].swap, (2, 1));
    }

    #[test]
    fn primroot_trace_for_487() {
        let r = primroot(&nat(487), None, &ctx()).unwrap();
        assert_eq!(r.r, 3.into());
        assert_eq!(r.trace.len(), 2);
        let lifted = primroot(&nat(487), Some(&nat(10)), &ctx()).unwrap();
        assert_eq!(lifted.r, 497.into());
        assert_eq!(lifted.lifted_from, Some(10.into()));
        assert_eq!(lifted.trace[0].primitive_mod_p2, Some(false));
        assert_eq!(lifted.trace[1].primitive_mod_p2, Some(true));
    }

    #[test]
    fn parallel_scan_matches_sequential_order() {
        let c = ctx();
        let par = conjecture_scan(3, 6, 25, &c).unwrap();
        let seq = qf_core::scan::conjecture_scan(3, 6, 25, &c.fz).unwrap();
        let seq: Vec<RowRecord> = seq.rows.iter().map(RowRecord::from).collect();
        assert_eq!(par.rows, seq);
    }

    #[test]
    fn table_reports_corrupted_row() {
        let mut fixture = qf_core::scan::TABLE1;
        fixture[3].value += 1;
        let r = table(&fixture, &ctx()).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.status(), Status::VerificationFailed);
    }

    #[test]
    fn crt_default_c() {
        let parts = [
            PartSpec {
                p: nat(7),
                m: 1,
                c: None,
            },
            PartSpec {
                p: nat(13),
                m: 1,
                c: None,
            },
        ];
        let r = crt(&nat(1), 3, &parts, &ctx()).unwrap();
        assert_eq!((r.z.clone(), r.modulus.clone()), (16.into(), 91.into()));
        assert_eq!(r.q.0.clone() % 91u32, nat(0));
    }
}
