use super::curve::PlaneCurve;
use super::form::{Form, Monomial};
use super::points::ProjectivePoint;
use super::series;
use crate::error::{Error, Result};
use crate::fields::{ExtensionField, Fe};

/// Largest number of series terms a branch expansion may carry.
pub const MAX_PRECISION: usize = 1024;

/// Local parametrization of the curve at a point, exact modulo t^precision.
#[derive(Clone, Debug)]
pub struct BranchExpansion {
    pub center: ProjectivePoint,
    /// Coordinate fixed to 1.
    pub chart: usize,
    /// Coordinate used as local parameter, shifted to vanish at the center.
    pub param: usize,
    pub dependent: usize,
    pub precision: usize,
    pub coords: [Vec<Fe>; 3],
}

pub fn local_expansion(curve: &PlaneCurve, center: &ProjectivePoint, precision: usize) -> Result<BranchExpansion> {
    if precision > MAX_PRECISION {
        return Err(Error::PrecisionOverflow(precision));
    }
    let k = center.field_degree();
    let f = curve.field(k)?;
    let c = center.coords();
    let form = curve.form();
    if !form.eval(f, c).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let chart = c.iter().position(|x| !x.is_zero()).ok_or(Error::PointNotOnCurve)?;
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let (i, j) = (others[0], others[1]);
    let gj = form.partial(j).eval(f, c);
    let (param, dependent) = if !gj.is_zero() { (i, j) } else { (j, i) };
    let fd = form.partial(dependent);
    let g = fd.eval(f, c);
    if g.is_zero() {
        return Err(Error::BadReduction { p: curve.p() as u64, reason: "singular point".into() });
    }
    let ginv = f.inv(&g);
    let n = precision.max(1);
    let mut coords: [Vec<Fe>; 3] = [vec![Fe::ZERO; n], vec![Fe::ZERO; n], vec![Fe::ZERO; n]];
    coords[chart][0] = f.one();
    coords[param][0] = c[param];
    if n > 1 {
        coords[param][1] = f.one();
    }
    coords[dependent][0] = c[dependent];
    for step in 1..n {
        let r = eval_series(f, form, &coords, step + 1);
        let cst = f.mul(&r[step], &ginv);
        coords[dependent][step] = f.sub(&coords[dependent][step], &cst);
    }
    Ok(BranchExpansion { center: *center, chart, param, dependent, precision: n, coords })
}

fn eval_series(f: &ExtensionField, form: &Form, coords: &[Vec<Fe>; 3], len: usize) -> Vec<Fe> {
    let d = form.degree() as usize;
    let pw: Vec<Vec<Vec<Fe>>> = coords.iter().map(|s| series::powers(f, &s[..len.min(s.len())], d, len)).collect();
    let mut out = vec![Fe::ZERO; len];
    for (m, c) in form.terms() {
        let t = monomial_series(f, &pw, &m, len);
        for (o, v) in out.iter_mut().zip(t.iter()) {
            *o = f.add(o, &f.scale(v, c));
        }
    }
    out
}

fn monomial_series(f: &ExtensionField, pw: &[Vec<Vec<Fe>>], m: &Monomial, len: usize) -> Vec<Fe> {
    let a = series::mul(f, &pw[0][m[0] as usize], &pw[1][m[1] as usize], len);
    series::mul(f, &a, &pw[2][m[2] as usize], len)
}

impl BranchExpansion {
    pub fn field<'a>(&self, curve: &'a PlaneCurve) -> Result<&'a ExtensionField> {
        curve.field(self.center.field_degree())
    }

    /// Series of a form along the branch, truncated to `len` terms.
    pub fn pullback(&self, curve: &PlaneCurve, g: &Form, len: usize) -> Result<Vec<Fe>> {
        let f = self.field(curve)?;
        let len = len.min(self.precision);
        Ok(eval_series(f, g, &self.coords, len))
    }

    /// Order of vanishing of `g` at the center; `None` if it vanishes to full precision.
    pub fn order(&self, curve: &PlaneCurve, g: &Form) -> Result<Option<usize>> {
        Ok(series::order(&self.pullback(curve, g, self.precision)?))
    }

    /// Leading `len` coefficients of every monomial of degree `deg` along the branch.
    pub fn monomial_series(&self, curve: &PlaneCurve, monos: &[Monomial], len: usize) -> Result<Vec<Vec<Fe>>> {
        let f = self.field(curve)?;
        let len = len.min(self.precision);
        let d = monos.iter().map(|m| m.iter().max().copied().unwrap_or(0)).max().unwrap_or(0) as usize;
        let pw: Vec<Vec<Vec<Fe>>> = self.coords.iter().map(|s| series::powers(f, &s[..len], d, len)).collect();
        Ok(monos.iter().map(|m| monomial_series(f, &pw, m, len)).collect())
    }
}
