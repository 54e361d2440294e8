use std::collections::HashSet;

use super::effective::EffectiveDivisor;
use crate::error::{Error, Result};
use crate::geometry::form::{monomial_count, Form};
use crate::geometry::{intersection_divisor, PlaneCurve};

/// Answer of the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    True,
    False,
    Unknown,
}

/// Largest number of forms of a single degree the search will enumerate.
pub const MAX_FORMS: u64 = 1 << 16;

/// Divisors of every form of degree 1..=mmax, one per projective class.
pub struct FormCatalog {
    by_degree: Vec<Vec<EffectiveDivisor>>,
    genus: u32,
    non_hyperelliptic: bool,
}

impl FormCatalog {
    pub fn build(curve: &PlaneCurve, mmax: u32) -> Result<Self> {
        let p = curve.p() as u64;
        if p > 4 || mmax > 3 {
            return Err(Error::SearchSpaceTooLarge);
        }
        let mut by_degree = vec![];
        for m in 1..=mmax {
            let n = monomial_count(m) as u32;
            let total = p.checked_pow(n).filter(|&t| t <= MAX_FORMS).ok_or(Error::SearchSpaceTooLarge)?;
            let mut divs = vec![];
            for idx in 1..total {
                let mut coeffs = vec![0u32; n as usize];
                let mut r = idx;
                for c in coeffs.iter_mut() {
                    *c = (r % p) as u32;
                    r /= p;
                }
                if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
                    continue;
                }
                let g = Form::from_coeffs(p as u32, m, coeffs);
                if g.is_divisible_by(curve.form()) {
                    continue;
                }
                divs.push(EffectiveDivisor::from_map(intersection_divisor(curve, &g)?));
            }
            by_degree.push(divs);
        }
        Ok(FormCatalog { by_degree, genus: curve.genus(), non_hyperelliptic: curve.degree() >= 4 })
    }

    /// Looks for forms F, G of equal degree with div F - B = div G - A.
    pub fn equiv(&self, a: &EffectiveDivisor, b: &EffectiveDivisor) -> Result<OracleAnswer> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch(a.degree(), b.degree()));
        }
        if a == b {
            return Ok(OracleAnswer::True);
        }
        for divs in &self.by_degree {
            let over_b: HashSet<EffectiveDivisor> = divs.iter().filter_map(|d| d.checked_sub(b)).collect();
            if divs.iter().filter_map(|d| d.checked_sub(a)).any(|r| over_b.contains(&r)) {
                return Ok(OracleAnswer::True);
            }
        }
        if (a.degree() == 1 && self.genus >= 1) || (a.degree() == 2 && self.non_hyperelliptic) {
            return Ok(OracleAnswer::False);
        }
        Ok(OracleAnswer::Unknown)
    }
}

pub fn brute_force_equiv(
    curve: &PlaneCurve,
    a: &EffectiveDivisor,
    b: &EffectiveDivisor,
    mmax: u32,
) -> Result<OracleAnswer> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    if a == b {
        return Ok(OracleAnswer::True);
    }
    FormCatalog::build(curve, mmax)?.equiv(a, b)
}
