use serde_json::{json, Value};

use super::effective::EffectiveDivisor;
use super::linalg::kernel;
use crate::error::{Error, Result};
use crate::geometry::form::{monomial_index, standard_monomials};
use crate::geometry::rational::parse_rational;
use crate::geometry::{intersection_divisor, Form, Monomial, PlaneCurve};

/// Largest torsion order the default auxiliary-degree cap accommodates.
pub const N_MAX: u32 = 27;

/// Default cap on the auxiliary degree.
pub fn default_aux_cap(d: u32, deg: u64) -> u32 {
    let n = (deg as u32).max(N_MAX);
    d + n.div_ceil(d)
}

/// Linear conditions over F_p for a degree-m form in the given basis to vanish on `div`.
pub fn conditions(curve: &PlaneCurve, basis: &[Monomial], div: &EffectiveDivisor) -> Result<Vec<Vec<u32>>> {
    let mut rows = vec![];
    for (pl, mu) in div.iter() {
        let mu = mu as usize;
        let br = curve.expansion(pl, mu)?;
        let series = br.monomial_series(curve, basis, mu)?;
        let e = pl.degree();
        for j in 0..mu {
            for comp in 0..e {
                rows.push(series.iter().map(|s| s[j].coeffs()[comp]).collect());
            }
        }
    }
    Ok(rows)
}

fn form_from_vector(p: u32, m: u32, basis: &[Monomial], v: &[u32]) -> Form {
    let mut coeffs = vec![0u32; crate::geometry::form::monomial_count(m)];
    for (mo, c) in basis.iter().zip(v) {
        coeffs[monomial_index(m, mo)] = *c;
    }
    Form::from_coeffs(p, m, coeffs)
}

/// First form of degree m (modulo the curve equation) vanishing on `div`.
pub fn vanishing_form(curve: &PlaneCurve, m: u32, div: &EffectiveDivisor) -> Result<Option<Form>> {
    let basis = standard_monomials(m, curve.form());
    let rows = conditions(curve, &basis, div)?;
    let ker = kernel(curve.p(), &rows, basis.len());
    Ok(ker.first().map(|v| form_from_vector(curve.p(), m, &basis, v)))
}

/// Witness that A ~ B: div F = B + R and div G = A + R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub m: u32,
    pub f: Form,
    pub g: Form,
    pub r: EffectiveDivisor,
}

impl EquivalenceCertificate {
    /// Recomputes both intersection divisors.
    pub fn verify(&self, curve: &PlaneCurve, a: &EffectiveDivisor, b: &EffectiveDivisor) -> Result<bool> {
        let df = EffectiveDivisor::from_map(intersection_divisor(curve, &self.f)?);
        let dg = EffectiveDivisor::from_map(intersection_divisor(curve, &self.g)?);
        Ok(df == b.add(&self.r) && dg == a.add(&self.r))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "F": form_to_json(&self.f),
            "G": form_to_json(&self.g),
            "R": self.r.to_json(),
        })
    }

    pub fn from_json(curve: &PlaneCurve, v: &Value) -> Result<Self> {
        let m = v["m"].as_u64().ok_or_else(|| Error::InvalidInput("certificate: m".into()))? as u32;
        Ok(EquivalenceCertificate {
            m,
            f: form_from_json(curve.p(), m, &v["F"])?,
            g: form_from_json(curve.p(), m, &v["G"])?,
            r: EffectiveDivisor::from_json(curve, &v["R"])?,
        })
    }
}

pub fn form_to_json(f: &Form) -> Value {
    Value::Array(f.terms().map(|(m, c)| json!([m[0], m[1], m[2], c])).collect())
}

pub fn form_from_json(p: u32, degree: u32, v: &Value) -> Result<Form> {
    let arr = v.as_array().ok_or_else(|| Error::InvalidInput("form: expected a list".into()))?;
    let mut terms = vec![];
    for t in arr {
        let row = t.as_array().filter(|r| r.len() == 4).ok_or_else(|| Error::InvalidInput("form term".into()))?;
        let m = [0, 1, 2].map(|i| row[i].as_u64().unwrap_or(0) as u32);
        let c = parse_rational(&row[3], "form term")?;
        let c = crate::geometry::rational::reduce_rational(&c, p).ok_or(Error::DenominatorClash(p as u64))?;
        terms.push((m, c as i64));
    }
    Ok(Form::from_terms(p, degree, &terms))
}

/// Residual data for one side of an equivalence test: F vanishing on B and R = div F - B.
#[derive(Clone, Debug)]
pub struct Residual {
    pub m: u32,
    pub f: Form,
    pub r: EffectiveDivisor,
}

/// Smallest admissible auxiliary degree with a form through `b`.
pub fn residual(curve: &PlaneCurve, b: &EffectiveDivisor, cap: u32) -> Result<Residual> {
    let d = curve.degree();
    let mut m = (b.degree() as u32).div_ceil(d).max(1);
    loop {
        if m > cap {
            return Err(Error::AuxiliaryDegreeOverflow(m));
        }
        if let Some(f) = vanishing_form(curve, m, b)? {
            let div = EffectiveDivisor::from_map(intersection_divisor(curve, &f)?);
            let r = div.checked_sub(b).ok_or_else(|| Error::InvalidInput("form does not vanish on divisor".into()))?;
            return Ok(Residual { m, f, r });
        }
        m += 1;
    }
}

/// Decides A ~ B against a precomputed residual of B.
pub fn equiv_with_residual(
    curve: &PlaneCurve,
    a: &EffectiveDivisor,
    res: &Residual,
) -> Result<Option<Form>> {
    vanishing_form(curve, res.m, &a.add(&res.r))
}

pub fn lin_equiv(
    curve: &PlaneCurve,
    a: &EffectiveDivisor,
    b: &EffectiveDivisor,
) -> Result<(bool, Option<EquivalenceCertificate>)> {
    lin_equiv_capped(curve, a, b, default_aux_cap(curve.degree(), b.degree()))
}

pub fn lin_equiv_capped(
    curve: &PlaneCurve,
    a: &EffectiveDivisor,
    b: &EffectiveDivisor,
    cap: u32,
) -> Result<(bool, Option<EquivalenceCertificate>)> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    let res = residual(curve, b, cap)?;
    if a == b {
        let cert = EquivalenceCertificate { m: res.m, f: res.f.clone(), g: res.f, r: res.r };
        return Ok((true, Some(cert)));
    }
    Ok(match equiv_with_residual(curve, a, &res)? {
        Some(g) => (true, Some(EquivalenceCertificate { m: res.m, f: res.f, g, r: res.r })),
        None => (false, None),
    })
}

/// Effective U with D ~ base + U, where deg U = deg D - deg base (at least the genus).
pub fn reduce(curve: &PlaneCurve, d: &EffectiveDivisor, base: &EffectiveDivisor) -> Result<EffectiveDivisor> {
    let cap = default_aux_cap(curve.degree(), d.degree());
    let res = residual(curve, d, cap)?;
    let target = res.r.add(base);
    let g = vanishing_form(curve, res.m, &target)?
        .ok_or_else(|| Error::InvalidInput("reduction target has no form; degree below genus".into()))?;
    let div = EffectiveDivisor::from_map(intersection_divisor(curve, &g)?);
    div.checked_sub(&target).ok_or_else(|| Error::InvalidInput("reduction form does not contain target".into()))
}
