use clap::{Args, Parser, Subcommand, ValueEnum};
use qf_core::Natural;

/// Decimal digits only; no sign, no separators.
pub fn parse_natural(s: &str) -> Result<Natural, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a nonnegative decimal integer"));
    }
    Natural::parse_bytes(s.as_bytes(), 10).ok_or_else(|| format!("cannot parse {s:?}"))
}

/// One `--part` of a composite construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartSpec {
    pub p: Natural,
    pub m: u32,
    pub c: Option<Natural>,
}

pub fn parse_part(s: &str) -> Result<PartSpec, String> {
    let fields: Vec<&str> = s.split(',').map(str::trim).collect();
    let m = |f: &str| {
        f.parse::<u32>()
            .map_err(|_| format!("bad exponent {f:?} in part {s:?}"))
    };
    match fields.as_slice() {
        [p, e] => Ok(PartSpec {
            p: parse_natural(p)?,
            m: m(e)?,
            c: None,
        }),
        [p, e, c] => Ok(PartSpec {
            p: parse_natural(p)?,
            m: m(e)?,
            c: Some(parse_natural(c)?),
        }),
        _ => Err(format!("part {s:?} must be p,m or p,m,c")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "qf",
    version,
    about = "Prime-power divisibility of (z^n - y^n)/(z - y)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,

    /// Worker threads for scans (0 = all cores).
    #[arg(long, global = true, env = "QF_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// Pollard rho iterations allowed per composite cofactor.
    #[arg(long, global = true, env = "QF_RHO_BUDGET", default_value_t = qf_core::factor::DEFAULT_RHO_BUDGET)]
    pub rho_budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build z with p^m | Q(z, y, n), for one c or for every admissible c.
    Construct {
        #[arg(long, value_parser = parse_natural)]
        y: Natural,
        #[arg(long, value_parser = parse_natural)]
        p: Natural,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = parse_natural)]
        c: Option<Natural>,
    },
    /// Decide p^m | Q(z, y, n) directly and by the witness congruence.
    Check {
        #[arg(long, value_parser = parse_natural)]
        z: Natural,
        #[arg(long, value_parser = parse_natural)]
        y: Natural,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_natural)]
        p: Natural,
        #[arg(long)]
        m: u32,
    },
    /// All residues z (mod p^m) with p^m | Q(z, y, n).
    Xi {
        #[arg(long, value_parser = parse_natural)]
        y: Natural,
        #[arg(long, value_parser = parse_natural)]
        p: Natural,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Combine several prime powers into one witness modulo their product.
    Crt {
        #[arg(long, value_parser = parse_natural)]
        y: Natural,
        #[arg(long)]
        n: u32,
        /// `p,m` or `p,m,c`; c defaults to (p - 1)/n.
        #[arg(long = "part", required = true, value_parser = parse_part)]
        parts: Vec<PartSpec>,
    },
    /// Sum of r^(k c p^(m-1)) for k < n, modulo p^m.
    Sum {
        #[arg(long, value_parser = parse_natural)]
        p: Natural,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = parse_natural)]
        c: Natural,
        /// Use this primitive root instead of the smallest one.
        #[arg(long, value_parser = parse_natural)]
        r: Option<Natural>,
    },
    /// Primitive root modulo p^2 with its verification trace.
    Primroot {
        #[arg(value_parser = parse_natural)]
        p: Natural,
        /// Lift this primitive root modulo p instead of searching.
        #[arg(long, value_parser = parse_natural)]
        from: Option<Natural>,
    },
    /// Q(z, y, n) and its factorization.
    Q {
        #[arg(value_parser = parse_natural)]
        z: Natural,
        #[arg(value_parser = parse_natural)]
        y: Natural,
        n: u32,
    },
    /// Factor an integer.
    Factor {
        #[arg(value_parser = parse_natural)]
        n: Natural,
    },
    /// Recompute the 42-row factor table and compare with the fixture.
    Table1,
    /// Search for coprime z > y whose quotient has no prime factor above z.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ymax: u64,
        #[arg(long)]
        zmax: u64,
        #[arg(long, conflicts_with = "json")]
        tsv: bool,
        #[arg(long)]
        json: bool,
    },
    /// The repunit coincidences 31 and 8191.
    Goormaghtigh,
    /// Check n | q - 1 for every prime q dividing 2^n - 1.
    Mersenne {
        #[arg(long)]
        n: u32,
    },
    /// Quotients that are perfect powers.
    Probe {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ymax: u64,
        #[arg(long)]
        zmax: u64,
    },
    /// Re-run every stored reference example.
    Verify {
        #[arg(long)]
        only: Option<String>,
    },
}
