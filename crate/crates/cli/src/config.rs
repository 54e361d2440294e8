use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lonesieve::fields::is_prime;

use crate::status::Failure;

#[derive(Parser, Debug)]
#[command(name = "lonesieve", version, about = "Atkin-Lehner sieve for degree-2 points on plane quartics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// More log output on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Only log warnings and errors.
    #[arg(short, long, global = true)]
    pub quiet: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute W_p at each prime and intersect.
    Sieve(SieveArgs),
    /// Splitting of primes in the quadratic and cubic fields.
    AnalyzeSplitting(SplittingArgs),
    /// Decide linear equivalence of two effective divisors.
    Lineq(LineqArgs),
    /// Check good reduction and the involution at each prime.
    CurveValidate(CurveArgs),
    /// List F_{p^k}-points of the reduction.
    Points(PointsArgs),
    /// Size and contents of the degree-2 effective divisors.
    Sym2(Sym2Args),
    /// Fixed points of the involution and the doom conditions.
    FixedPoints(FixedPointArgs),
}

#[derive(Args, Debug)]
pub struct SieveArgs {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub primes: String,
    #[arg(long)]
    pub lonely: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Cache directory; LONESIEVE_CACHE takes precedence.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Include wall-clock milliseconds in freshly computed reports.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct SplittingArgs {
    #[arg(long)]
    pub fields: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub pmax: u64,
}

#[derive(Args, Debug)]
pub struct LineqArgs {
    #[arg(long)]
    pub curve: PathBuf,
    /// A single prime.
    #[arg(long)]
    pub primes: String,
    pub a: String,
    pub b: String,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub primes: String,
}

#[derive(Args, Debug)]
pub struct PointsArgs {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub primes: String,
    /// Extension degree k of F_{p^k}.
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
}

#[derive(Args, Debug)]
pub struct Sym2Args {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub primes: String,
    /// Print every divisor, not just the counts.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct FixedPointArgs {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub primes: String,
    #[arg(long)]
    pub fields: Option<PathBuf>,
}

/// Parses `3,5,7` or ranges like `3-37`; the result is sorted and distinct.
pub fn parse_primes(s: &str, odd_only: bool) -> Result<Vec<u64>, Failure> {
    let mut out = vec![];
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let bad = || Failure::input(format!("--primes: cannot parse {part:?}"));
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
                out.extend((lo..=hi).filter(|&p| is_prime(p) && (!odd_only || p != 2)));
            }
            None => {
                let p: u64 = part.parse().map_err(|_| bad())?;
                if !is_prime(p) {
                    return Err(Failure::input(format!("--primes: {p} is not prime")));
                }
                out.push(p);
            }
        }
    }
    if odd_only && out.contains(&2) {
        return Err(Failure::input("odd primes required"));
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Failure::input("--primes: no primes given"));
    }
    Ok(out)
}

pub fn single_prime(s: &str) -> Result<u64, Failure> {
    match parse_primes(s, false)?.as_slice() {
        [p] => Ok(*p),
        _ => Err(Failure::input("--primes: exactly one prime expected")),
    }
}

/// The cache directory after applying LONESIEVE_CACHE.
pub fn cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    match std::env::var_os("LONESIEVE_CACHE") {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_lists() {
        assert_eq!(parse_primes("7,3,5,3", true).unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_primes("3-20", true).unwrap(), vec![3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(parse_primes("2-7", false).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(parse_primes("2,3", true).unwrap_err().message, "odd primes required");
        assert!(parse_primes("9", true).is_err());
        assert!(parse_primes("x", true).is_err());
        assert!(single_prime("3,5").is_err());
    }
}
