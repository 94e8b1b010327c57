//! Output records. Every integer crosses the boundary as a decimal string so
//! JSON consumers never lose precision.

use std::fmt;
use std::fmt::Write as _;

use qf_core::factor::Factorization;
use qf_core::scan::ScanRow;
use qf_core::Natural;
use serde::de::{self, DeserializeOwned, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A natural number serialized as a JSON string of decimal digits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dec(pub Natural);

impl From<Natural> for Dec {
    fn from(v: Natural) -> Self {
        Dec(v)
    }
}

impl From<&Natural> for Dec {
    fn from(v: &Natural) -> Self {
        Dec(v.clone())
    }
}

impl From<u64> for Dec {
    fn from(v: u64) -> Self {
        Dec(Natural::from(v))
    }
}

impl fmt::Display for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct DecVisitor;

        impl Visitor<'_> for DecVisitor {
            type Value = Dec;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a string of decimal digits")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Dec, E> {
                crate::args::parse_natural(s).map(Dec).map_err(E::custom)
            }
        }

        deserializer.deserialize_str(DecVisitor)
    }
}

/// Overall result of a subcommand, mapped onto the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

/// A subcommand result that can be printed in each output format.
pub trait Render: Serialize + DeserializeOwned {
    fn human(&self) -> String;

    /// Tab-separated rendering, for tabular results only.
    fn tsv(&self) -> Option<String> {
        None
    }

    fn status(&self) -> Status {
        Status::Ok
    }
}

/// Parses JSON produced by [`Render`] back into its record.
pub fn parse_json<R: DeserializeOwned>(text: &str) -> serde_json::Result<R> {
    serde_json::from_str(text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: Dec,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationRecord {
    pub text: String,
    pub factors: Vec<PrimePower>,
    /// Composite cofactors left over when the effort budget ran out.
    pub unfactored: Vec<Dec>,
    pub complete: bool,
}

impl From<&Factorization> for FactorizationRecord {
    fn from(f: &Factorization) -> Self {
        FactorizationRecord {
            text: f.to_string(),
            factors: f
                .factors()
                .iter()
                .map(|(p, e)| PrimePower {
                    prime: p.into(),
                    exponent: *e,
                })
                .collect(),
            unfactored: f.unfactored().iter().map(Dec::from).collect(),
            complete: f.is_complete(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub c: Dec,
    pub z: Dec,
    pub q: Dec,
    /// `p^m`, which divides `q`.
    pub divisor: Dec,
    pub cofactor: Dec,
    /// 1-based indices `(i, j)` with `c_i + c_j = p - 1`.
    pub swap: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub y: Dec,
    pub p: Dec,
    pub n: u32,
    pub m: u32,
    pub r: Dec,
    pub witnesses: Vec<WitnessRecord>,
}

impl Render for ConstructReport {
    fn human(&self) -> String {
        let mut out = format!(
            "y = {}, p = {}, n = {}, m = {}, r = {}\n",
            self.y, self.p, self.n, self.m, self.r
        );
        for w in &self.witnesses {
            let _ = writeln!(
                out,
                "c = {}: z = {}, Q = {} = {} * {}, divisor {}, swap c_{} <-> c_{}",
                w.c, w.z, w.q, w.divisor, w.cofactor, w.divisor, w.swap.0, w.swap.1
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub z: Dec,
    pub y: Dec,
    pub n: u32,
    pub p: Dec,
    pub m: u32,
    pub r: Dec,
    pub q: Dec,
    pub divisible: bool,
    pub c: Option<Dec>,
}

impl Render for CheckReport {
    fn human(&self) -> String {
        let rel = if self.divisible {
            "divides"
        } else {
            "does not divide"
        };
        let mut out = format!(
            "{}^{} {rel} Q({}, {}, {}) = {}\n",
            self.p, self.m, self.z, self.y, self.n, self.q
        );
        match &self.c {
            Some(c) => {
                let _ = writeln!(
                    out,
                    "witness: z = y * {}^({} * {}^{}) mod {}^{}",
                    self.r,
                    c,
                    self.p,
                    self.m - 1,
                    self.p,
                    self.m
                );
            }
            None => out.push_str("witness: none\n"),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiClass {
    pub c: Dec,
    pub z: Dec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiReport {
    pub y: Dec,
    pub p: Dec,
    pub n: u32,
    pub m: u32,
    pub r: Dec,
    pub modulus: Dec,
    pub classes: Vec<XiClass>,
}

impl Render for XiReport {
    fn human(&self) -> String {
        let mut out = format!(
            "z (mod {}) with {}^{} | Q(z, {}, {}):\n",
            self.modulus, self.p, self.m, self.y, self.n
        );
        if self.classes.is_empty() {
            let _ = writeln!(out, "  none ({} does not divide {} - 1)", self.n, self.p);
        }
        for class in &self.classes {
            let _ = writeln!(out, "  c = {}: z = {}", class.c, class.z);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtPartRecord {
    pub p: Dec,
    pub m: u32,
    pub c: Dec,
    pub r: Dec,
    pub modulus: Dec,
    /// `M_i`: the product of the other moduli.
    pub cofactor: Dec,
    /// `q_i`: an inverse of `M_i` modulo this part's modulus.
    pub inverse: Dec,
    pub z: Dec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtReport {
    pub y: Dec,
    pub n: u32,
    pub modulus: Dec,
    pub z: Dec,
    pub q: Dec,
    pub parts: Vec<CrtPartRecord>,
}

impl Render for CrtReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for part in &self.parts {
            let _ = writeln!(
                out,
                "{}^{}: c = {}, r = {}, z = {} (mod {}), M = {}, q = {}",
                part.p, part.m, part.c, part.r, part.z, part.modulus, part.cofactor, part.inverse
            );
        }
        let _ = writeln!(out, "z = {} (mod {})", self.z, self.modulus);
        let _ = writeln!(
            out,
            "Q({}, {}, {}) = {}, divisor {}",
            self.z, self.y, self.n, self.q, self.modulus
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumReport {
    pub p: Dec,
    pub n: u32,
    pub m: u32,
    pub c: Dec,
    pub r: Dec,
    pub modulus: Dec,
    /// `r^(k c p^(m-1)) mod p^m` for `k = 0..n-1`.
    pub terms: Vec<Dec>,
    pub sum: Dec,
    pub residue: Dec,
}

impl Render for SumReport {
    fn human(&self) -> String {
        let terms: Vec<String> = self.terms.iter().map(Dec::to_string).collect();
        format!(
            "{} = {} = {} (mod {})\n",
            terms.join(" + "),
            self.sum,
            self.residue,
            self.modulus
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub candidate: Dec,
    pub primitive_mod_p: bool,
    /// Only tested for candidates primitive modulo `p`.
    pub primitive_mod_p2: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimrootReport {
    pub p: Dec,
    pub r: Dec,
    pub verified_level: u8,
    pub lifted_from: Option<Dec>,
    pub trace: Vec<TraceStep>,
}

impl Render for PrimrootReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for step in &self.trace {
            let verdict = match (step.primitive_mod_p, step.primitive_mod_p2) {
                (false, _) => "not primitive mod p".to_string(),
                (true, Some(true)) => "primitive mod p and p^2".to_string(),
                (true, Some(false)) => "primitive mod p, not mod p^2".to_string(),
                (true, None) => "primitive mod p".to_string(),
            };
            let _ = writeln!(out, "  {}: {verdict}", step.candidate);
        }
        let _ = write!(out, "r = {} (level {})", self.r, self.verified_level);
        if let Some(from) = &self.lifted_from {
            let _ = write!(out, ", lifted from {} = {} - {}", from, self.r, self.p);
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QReport {
    pub z: Dec,
    pub y: Dec,
    pub n: u32,
    pub value: Dec,
    pub factorization: FactorizationRecord,
}

impl Render for QReport {
    fn human(&self) -> String {
        format!(
            "Q({}, {}, {}) = {}\n{} = {}\n",
            self.z, self.y, self.n, self.value, self.value, self.factorization.text
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub n: Dec,
    pub factorization: FactorizationRecord,
}

impl Render for FactorReport {
    fn human(&self) -> String {
        format!("{} = {}\n", self.n, self.factorization.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub y: Dec,
    pub z: Dec,
    pub n: u32,
    pub q: Dec,
    pub factorization: FactorizationRecord,
    pub largest_prime: Option<Dec>,
    /// Some known prime factor exceeds `z`.
    pub p_gt_z: bool,
    pub primes_gt_z: Vec<Dec>,
}

impl From<&ScanRow> for RowRecord {
    fn from(row: &ScanRow) -> Self {
        RowRecord {
            y: (&row.y).into(),
            z: (&row.z).into(),
            n: row.n,
            q: (&row.q_value).into(),
            factorization: (&row.factorization).into(),
            largest_prime: row.largest_prime.as_ref().map(Dec::from),
            p_gt_z: row.conjecture_holds,
            primes_gt_z: row.witnesses_gt_z.iter().map(Dec::from).collect(),
        }
    }
}

impl RowRecord {
    pub fn is_counterexample(&self) -> bool {
        self.factorization.complete && !self.p_gt_z
    }
}

pub const TSV_HEADER: &str = "y\tz\tn\tQ\tfactorization\tlargest_prime\tp_gt_z";

fn tsv_rows(rows: &[RowRecord]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in rows {
        let largest = r
            .largest_prime
            .as_ref()
            .map(Dec::to_string)
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.y, r.z, r.n, r.q, r.factorization.text, largest, r.p_gt_z
        );
    }
    out
}

fn human_row(out: &mut String, r: &RowRecord) {
    let largest = r
        .largest_prime
        .as_ref()
        .map(Dec::to_string)
        .unwrap_or_else(|| "?".into());
    let _ = writeln!(
        out,
        "Q({}, {}, {}) = {} = {}  largest {}{}",
        r.z,
        r.y,
        r.n,
        r.q,
        r.factorization.text,
        largest,
        if r.p_gt_z { "" } else { "  [no prime above z]" }
    );
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub y: u32,
    pub z: u32,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub rows: Vec<RowRecord>,
    pub mismatches: Vec<Mismatch>,
}

impl Render for TableReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            human_row(&mut out, r);
        }
        for m in &self.mismatches {
            let _ = writeln!(out, "MISMATCH y = {}, z = {}: {}", m.y, m.z, m.detail);
        }
        let _ = writeln!(
            out,
            "{} rows, {} mismatches",
            self.rows.len(),
            self.mismatches.len()
        );
        out
    }

    fn tsv(&self) -> Option<String> {
        Some(tsv_rows(&self.rows))
    }

    fn status(&self) -> Status {
        if self.mismatches.is_empty() {
            Status::Ok
        } else {
            Status::VerificationFailed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u32,
    pub y_max: u64,
    pub z_max: u64,
    pub rows: Vec<RowRecord>,
    pub counterexamples: usize,
    pub incomplete: usize,
}

impl Render for ScanReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for r in self
            .rows
            .iter()
            .filter(|r| r.is_counterexample() || !r.factorization.complete)
        {
            human_row(&mut out, r);
        }
        let _ = writeln!(
            out,
            "n = {}, y <= {}, z <= {}: {} pairs, {} without a prime factor above z, {} not fully factored",
            self.n,
            self.y_max,
            self.z_max,
            self.rows.len(),
            self.counterexamples,
            self.incomplete
        );
        out
    }

    fn tsv(&self) -> Option<String> {
        Some(tsv_rows(&self.rows))
    }

    fn status(&self) -> Status {
        if self.counterexamples == 0 {
            Status::Ok
        } else {
            Status::VerificationFailed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub label: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoormaghtighReport {
    pub values: Vec<Dec>,
    pub checks: Vec<CheckRecord>,
}

impl Render for GoormaghtighReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(out, "{} {}", if c.holds { "ok  " } else { "FAIL" }, c.label);
        }
        out
    }

    fn status(&self) -> Status {
        if self.checks.iter().all(|c| c.holds) {
            Status::Ok
        } else {
            Status::VerificationFailed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneDivisor {
    pub q: Dec,
    /// `n | q - 1`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MersenneReport {
    pub n: u32,
    pub value: Dec,
    pub factorization: FactorizationRecord,
    pub divisors: Vec<MersenneDivisor>,
}

impl Render for MersenneReport {
    fn human(&self) -> String {
        let mut out = format!(
            "2^{} - 1 = {} = {}\n",
            self.n, self.value, self.factorization.text
        );
        for d in &self.divisors {
            let rel = if d.holds { "|" } else { "does not divide" };
            let _ = writeln!(out, "  {} {rel} {} - 1", self.n, d.q);
        }
        if !self.factorization.complete {
            out.push_str("  factorization incomplete\n");
        }
        out
    }

    fn status(&self) -> Status {
        if self.divisors.iter().all(|d| d.holds) {
            Status::Ok
        } else {
            Status::VerificationFailed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRecord {
    pub k: u32,
    pub root: Dec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitRecord {
    pub z: Dec,
    pub y: Dec,
    pub value: Dec,
    pub powers: Vec<PowerRecord>,
    pub nth_power: bool,
    pub diff_nth_power: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: u32,
    pub y_max: u64,
    pub z_max: u64,
    pub pairs_checked: u64,
    pub hits: Vec<HitRecord>,
}

impl Render for ProbeReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for h in &self.hits {
            let powers: Vec<String> = h
                .powers
                .iter()
                .map(|p| format!("{}^{}", p.root, p.k))
                .collect();
            let _ = writeln!(
                out,
                "Q({}, {}, {}) = {} = {}{}",
                h.z,
                h.y,
                self.n,
                h.value,
                powers.join(" = "),
                if h.nth_power { "  [n-th power]" } else { "" }
            );
        }
        let nth = self.hits.iter().filter(|h| h.nth_power).count();
        let _ = writeln!(
            out,
            "{} pairs, {} perfect powers, {} with exponent {}",
            self.pairs_checked,
            self.hits.len(),
            nth,
            self.n
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub passed: bool,
    /// What diverged, empty on success.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub fixtures: Vec<FixtureOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.fixtures.iter().all(|f| f.passed)
    }
}

impl Render for VerifyReport {
    fn human(&self) -> String {
        let mut out = String::new();
        for f in &self.fixtures {
            if f.passed {
                let _ = writeln!(out, "ok   {}", f.id);
            } else {
                let _ = writeln!(out, "FAIL {}: {}", f.id, f.detail);
            }
        }
        let passed = self.fixtures.iter().filter(|f| f.passed).count();
        let _ = writeln!(out, "{passed}/{} fixtures reproduce", self.fixtures.len());
        out
    }

    fn status(&self) -> Status {
        if self.all_passed() {
            Status::Ok
        } else {
            Status::VerificationFailed
        }
    }
}
