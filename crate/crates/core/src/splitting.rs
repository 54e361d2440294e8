//! Splitting of rational primes in an imaginary quadratic field K and a cubic field B,
//! and the resulting "sieve doomed at p" predicate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::prime::{is_prime, is_squarefree, isqrt, legendre_symbol, odd_primes};
use crate::fields::{factor_degree_profile, UnivariatePolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Inert,
    Split,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticFieldSpec {
    pub d: i64,
    pub class_number_one: bool,
}

impl QuadraticFieldSpec {
    pub fn new(d: i64, class_number_one: bool) -> Result<Self> {
        if d >= 0 {
            return Err(Error::NotImaginary(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(QuadraticFieldSpec { d, class_number_one })
    }

    /// Field discriminant: d if d = 1 mod 4, else 4d.
    pub fn discriminant(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }
}

/// B = Q[x]/(g) for a monic integer cubic g.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicFieldSpec {
    pub g: UnivariatePolynomial,
    pub disc: i128,
}

impl CubicFieldSpec {
    /// Builds the spec without checking irreducibility; see [`CubicFieldSpec::ensure_irreducible`].
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let g = UnivariatePolynomial::new(coeffs);
        let disc = g
            .cubic_discriminant()
            .ok_or_else(|| Error::InvalidInput("cubic must be monic of degree 3".into()))?;
        Ok(CubicFieldSpec { g, disc })
    }

    /// Rational roots of a monic integer polynomial divide the constant term.
    pub fn is_irreducible(&self) -> bool {
        let c0 = self.g.coeffs()[0];
        if c0 == 0 {
            return false;
        }
        let n = c0.unsigned_abs();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                for cand in [d, n / d] {
                    for s in [cand as i128, -(cand as i128)] {
                        if self.g.eval(s) == 0 {
                            return false;
                        }
                    }
                }
            }
            d += 1;
        }
        true
    }

    pub fn ensure_irreducible(self) -> Result<Self> {
        if self.is_irreducible() {
            Ok(self)
        } else {
            Err(Error::ReducibleCubic)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoomReport {
    pub p: u64,
    pub splitting_in_k: Splitting,
    pub profile_in_b: Vec<usize>,
    pub doomed: bool,
    pub reason: String,
}

pub fn quadratic_splitting(spec: &QuadraticFieldSpec, p: u64) -> Result<Splitting> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    if spec.discriminant().rem_euclid(p as i64) == 0 {
        return Ok(Splitting::Ramified);
    }
    Ok(if legendre_symbol(spec.d, p)? == 1 { Splitting::Split } else { Splitting::Inert })
}

/// Whether 4p = a^2 + |d| b^2 has a solution with b >= 1.
fn norm_form_solution(d: i64, p: u64) -> Option<(u64, u64)> {
    let n = 4 * p;
    let ad = d.unsigned_abs();
    let mut b = 1u64;
    while ad * b * b <= n {
        let rest = n - ad * b * b;
        let a = isqrt(rest);
        if a * a == rest {
            return Some((a, b));
        }
        b += 1;
    }
    None
}

/// Smallest odd prime that splits in K; relies on class number one.
pub fn min_split_prime(spec: &QuadraticFieldSpec) -> Result<u64> {
    min_split_prime_below(spec, 10 * spec.d.unsigned_abs())
}

pub fn min_split_prime_below(spec: &QuadraticFieldSpec, ceiling: u64) -> Result<u64> {
    if !spec.class_number_one {
        return Err(Error::ClassNumberUnknown);
    }
    let start = spec.d.unsigned_abs().div_ceil(4);
    for p in odd_primes(start, ceiling) {
        if quadratic_splitting(spec, p)? == Splitting::Split && norm_form_solution(spec.d, p).is_some() {
            // the norm bound rules out anything smaller; confirm
            for q in odd_primes(3, p - 1) {
                assert_ne!(
                    quadratic_splitting(spec, q)?,
                    Splitting::Split,
                    "odd prime {q} splits below the norm bound"
                );
            }
            return Ok(p);
        }
    }
    Err(Error::SearchExhausted(ceiling))
}

pub fn doomed_at(q: &QuadraticFieldSpec, c: &CubicFieldSpec, p: u64) -> Result<DoomReport> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if c.disc.rem_euclid(p as i128) == 0 || q.d.rem_euclid(p as i64) == 0 {
        return Err(Error::RamifiedPrime(p));
    }
    let k = quadratic_splitting(q, p)?;
    let profile = factor_degree_profile(&c.g, p)?;
    let doomed = profile.has_linear_factor();
    let reason = match (doomed, k) {
        (true, Splitting::Inert) => "inert in K",
        (true, _) if profile.degrees == [1, 1, 1] => "totally split in B",
        (true, _) => "degree-1 factor in B",
        (false, _) => "inert in B",
    };
    Ok(DoomReport { p, splitting_in_k: k, profile_in_b: profile.degrees, doomed, reason: reason.to_string() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoomRange {
    pub reports: Vec<DoomReport>,
    pub ramified: Vec<u64>,
    pub smallest_not_doomed: Option<u64>,
}

pub fn doom_range_report(q: &QuadraticFieldSpec, c: &CubicFieldSpec, pmax: u64) -> Result<DoomRange> {
    if pmax < 3 {
        return Err(Error::InvalidInput("pmax must be at least 3".into()));
    }
    let mut reports = vec![];
    let mut ramified = vec![];
    for p in odd_primes(3, pmax) {
        match doomed_at(q, c, p) {
            Ok(r) => reports.push(r),
            Err(Error::RamifiedPrime(_)) => ramified.push(p),
            Err(e) => return Err(e),
        }
    }
    let smallest_not_doomed = reports.iter().find(|r| !r.doomed).map(|r| r.p);
    Ok(DoomRange { reports, ramified, smallest_not_doomed })
}

/// Exact test that a/b is the square of a nonzero rational.
fn is_rational_square_ratio(a: i128, b: i128) -> bool {
    if a == 0 || b == 0 {
        return false;
    }
    // a/b square <=> a*b is a perfect square (and same sign)
    let prod = a * b;
    if prod < 0 {
        return false;
    }
    let r = (prod as f64).sqrt() as i128;
    (r - 2..=r + 2).any(|s| s >= 0 && s * s == prod)
}

/// True iff no odd unramified p <= pmax is inert in both K and B.
pub fn no_degree_six_check(q: &QuadraticFieldSpec, c: &CubicFieldSpec, pmax: u64) -> Result<bool> {
    if !is_rational_square_ratio(c.disc, q.d as i128) {
        return Err(Error::IncompatibleFields);
    }
    for p in odd_primes(3, pmax) {
        if c.disc.rem_euclid(p as i128) == 0 || q.d.rem_euclid(p as i64) == 0 {
            continue;
        }
        let k = quadratic_splitting(q, p)?;
        let prof = factor_degree_profile(&c.g, p)?;
        if k == Splitting::Inert && prof.degrees == [3] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numerator of (N - 1)/12.
pub fn x0_torsion_order(level: u64) -> Result<u64> {
    if !is_prime(level) {
        return Err(Error::CompositeLevel(level));
    }
    if level < 11 {
        return Err(Error::LevelTooSmall(level));
    }
    let n = level - 1;
    Ok(n / num_integer::gcd(n, 12))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k163() -> QuadraticFieldSpec {
        QuadraticFieldSpec::new(-163, true).unwrap()
    }

    fn b163() -> CubicFieldSpec {
        CubicFieldSpec::new(vec![10, -8, 0, 1]).unwrap().ensure_irreducible().unwrap()
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(quadratic_splitting(&k163(), 3).unwrap(), Splitting::Inert);
        assert_eq!(quadratic_splitting(&k163(), 41).unwrap(), Splitting::Split);
        assert_eq!(quadratic_splitting(&k163(), 163).unwrap(), Splitting::Ramified);
        assert_eq!(quadratic_splitting(&k163(), 2), Err(Error::EvenPrime));
    }

    #[test]
    fn split_bounds() {
        assert_eq!(min_split_prime(&k163()).unwrap(), 41);
        assert_eq!(min_split_prime(&QuadraticFieldSpec::new(-43, true).unwrap()).unwrap(), 11);
        assert_eq!(min_split_prime(&QuadraticFieldSpec::new(-67, true).unwrap()).unwrap(), 17);
        assert_eq!(norm_form_solution(-163, 41), Some((1, 1)));
        assert_eq!(
            min_split_prime(&QuadraticFieldSpec::new(-5, false).unwrap()),
            Err(Error::ClassNumberUnknown)
        );
    }

    #[test]
    fn doom_examples() {
        let r = doomed_at(&k163(), &b163(), 37).unwrap();
        assert!(r.doomed);
        assert_eq!(r.reason, "inert in K");
        let r = doomed_at(&k163(), &b163(), 41).unwrap();
        assert!(!r.doomed);
        assert_eq!(r.profile_in_b, vec![3]);
        let r = doomed_at(&k163(), &b163(), 167).unwrap();
        assert!(r.doomed);
        assert_eq!(r.profile_in_b, vec![1, 1, 1]);
        assert_eq!(r.splitting_in_k, Splitting::Split);
        assert_eq!(doomed_at(&k163(), &b163(), 163), Err(Error::RamifiedPrime(163)));
    }

    #[test]
    fn doom_ranges() {
        let r = doom_range_report(&k163(), &b163(), 40).unwrap();
        assert!(r.reports.iter().all(|x| x.doomed));
        assert_eq!(r.reports.len(), 11);
        assert_eq!(r.smallest_not_doomed, None);
        let r = doom_range_report(&k163(), &b163(), 200).unwrap();
        assert_eq!(r.smallest_not_doomed, Some(41));
        assert_eq!(r.ramified, vec![163]);
        let r167 = r.reports.iter().find(|x| x.p == 167).unwrap();
        assert!(r167.doomed);
    }

    #[test]
    fn degree_six() {
        assert!(no_degree_six_check(&k163(), &b163(), 1000).unwrap());
        let bad = CubicFieldSpec::new(vec![-1, 0, 0, 1]).unwrap();
        assert_eq!(no_degree_six_check(&k163(), &bad, 100), Err(Error::IncompatibleFields));
        assert!(!bad.is_irreducible());
    }

    #[test]
    fn inert_in_k_implies_doomed() {
        for p in odd_primes(3, 1000) {
            if p == 163 {
                continue;
            }
            let r = doomed_at(&k163(), &b163(), p).unwrap();
            if r.splitting_in_k == Splitting::Inert {
                assert!(r.doomed, "p = {p}");
            }
        }
    }

    #[test]
    fn torsion_orders() {
        assert_eq!(x0_torsion_order(163).unwrap(), 27);
        assert_eq!(x0_torsion_order(43).unwrap(), 7);
        assert_eq!(x0_torsion_order(67).unwrap(), 11);
        assert_eq!(x0_torsion_order(91), Err(Error::CompositeLevel(91)));
        for n in odd_primes(11, 500) {
            let t = x0_torsion_order(n).unwrap();
            assert_eq!(12 % (12 * t / (n - 1)).max(1), 0);
        }
    }

    #[test]
    fn split_prime_respects_norm_bound() {
        for d in [-43i64, -67, -163] {
            let s = QuadraticFieldSpec::new(d, true).unwrap();
            assert!(min_split_prime(&s).unwrap() >= d.unsigned_abs().div_ceil(4));
        }
    }
}
