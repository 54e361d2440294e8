use serde::{Deserialize, Serialize};

use super::fq::{ExtensionField, FieldTower};
use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnivariatePolynomial {
    coeffs: Vec<i64>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128)
    }

    pub fn reduce(&self, f: &ExtensionField) -> Poly {
        poly::trimmed(self.coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    /// Discriminant of a cubic (any leading coefficient 1).
    pub fn cubic_discriminant(&self) -> Option<i128> {
        if self.degree() != Some(3) || self.leading() != 1 {
            return None;
        }
        let (d, c, b) = (self.coeffs[0] as i128, self.coeffs[1] as i128, self.coeffs[2] as i128);
        Some(b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d)
    }
}

/// Degrees of the irreducible factors of g mod p (with multiplicity) and a squarefree flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

impl DegreeProfile {
    pub fn has_linear_factor(&self) -> bool {
        self.degrees.contains(&1)
    }
}

pub fn factor_degree_profile(g: &UnivariatePolynomial, p: u64) -> Result<DegreeProfile> {
    let n = g.degree().unwrap_or(0);
    if !(1..=6).contains(&n) {
        return Err(Error::PolynomialDegree(n));
    }
    let tower = FieldTower::get(p)?;
    let f = tower.prime_field();
    if f.from_i64(g.leading()).is_zero() {
        return Err(Error::LeadingCoefficientVanishes(p));
    }
    let gp = g.reduce(f);
    let squarefree = poly::degree(&poly::gcd(f, &gp, &poly::derivative(f, &gp))) == Some(0);
    let mut degrees = if n <= 3 { low_degree_profile(f, &gp) } else { ddf_profile(f, &gp) };
    degrees.sort_unstable();
    Ok(DegreeProfile { degrees, squarefree })
}

/// Root extraction with multiplicity, then a discriminant test on a quadratic cofactor.
fn low_degree_profile(f: &ExtensionField, g: &[super::fq::Fe]) -> Vec<usize> {
    let mut rest = poly::monic(f, g);
    let mut degrees = vec![];
    for r in poly::roots(f, &rest) {
        let lin = vec![f.neg(&r), f.one()];
        loop {
            let (q, rm) = poly::divrem(f, &rest, &lin);
            if !rm.is_empty() {
                break;
            }
            degrees.push(1);
            rest = q;
        }
    }
    match poly::degree(&rest).unwrap_or(0) {
        0 => {}
        2 => {
            // rootless quadratic: irreducible; for odd p the discriminant must be a non-square
            if f.p() != 2 {
                let disc = f.sub(&f.mul(&rest[1], &rest[1]), &f.scale(&rest[0], 4));
                debug_assert!(f.sqrt(&disc).is_none());
            }
            degrees.push(2);
        }
        d => degrees.push(d),
    }
    degrees
}

fn ddf_profile(f: &ExtensionField, g: &[super::fq::Fe]) -> Vec<usize> {
    let mut degrees = vec![];
    for (part, mult) in poly::squarefree_factorization(f, g) {
        for (prod, d) in poly::distinct_degree_factorization(f, &part) {
            let count = poly::degree(&prod).unwrap() / d;
            for _ in 0..count * mult {
                degrees.push(d);
            }
        }
    }
    degrees
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: count roots by scanning all residues.
    fn root_scan(g: &UnivariatePolynomial, p: i128) -> usize {
        (0..p).filter(|&x| g.eval(x).rem_euclid(p) == 0).count()
    }

    fn cubic() -> UnivariatePolynomial {
        UnivariatePolynomial::new(vec![10, -8, 0, 1])
    }

    #[test]
    fn cubic_examples() {
        let g = cubic();
        assert_eq!(factor_degree_profile(&g, 3).unwrap(), DegreeProfile { degrees: vec![1, 2], squarefree: true });
        assert_eq!(factor_degree_profile(&g, 41).unwrap(), DegreeProfile { degrees: vec![3], squarefree: true });
        assert_eq!(root_scan(&g, 41), 0);
        assert_eq!(factor_degree_profile(&g, 167).unwrap(), DegreeProfile { degrees: vec![1, 1, 1], squarefree: true });
        assert_eq!(root_scan(&g, 167), 3);
        assert_eq!(g.cubic_discriminant(), Some(-652));
    }

    #[test]
    fn leading_coefficient_guard() {
        let g = UnivariatePolynomial::new(vec![1, 0, 3]);
        assert_eq!(factor_degree_profile(&g, 3), Err(Error::LeadingCoefficientVanishes(3)));
    }

    #[test]
    fn non_squarefree_still_profiles() {
        // (x - 1)^2 (x + 1) (x^2 + 1) over F_3
        // (x^3 - x^2 - x + 1)(x^2 + 1)
        let g = UnivariatePolynomial::new(vec![1, -1, 0, 0, -1, 1]);
        let prof = factor_degree_profile(&g, 3).unwrap();
        assert!(!prof.squarefree);
        assert_eq!(prof.degrees.iter().sum::<usize>(), 5);
        assert_eq!(prof.degrees, vec![1, 1, 1, 2]);
    }

    #[test]
    fn both_paths_agree_with_root_scan() {
        for p in [3u64, 5, 7, 11, 13, 41, 43] {
            for seed in 0..40i64 {
                let n = 1 + (seed % 6) as usize;
                let mut c: Vec<i64> = (0..n).map(|i| (seed * 7 + i as i64 * 13) % 17 - 8).collect();
                c.push(1);
                let g = UnivariatePolynomial::new(c);
                let prof = factor_degree_profile(&g, p).unwrap();
                if prof.squarefree {
                    assert_eq!(prof.degrees.iter().sum::<usize>(), n);
                    assert_eq!(prof.degrees.iter().filter(|&&d| d == 1).count(), root_scan(&g, p as i128));
                }
            }
        }
    }
}
