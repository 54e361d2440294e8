use std::collections::BTreeMap;

use super::curve::PlaneCurve;
use super::form::Form;
use super::points::{Place, ProjectivePoint};
use crate::error::{Error, Result};
use crate::fields::{poly, ExtensionField, Fe, FieldTower, Poly};

/// `g(x, y, z)` as a polynomial in y, for fixed x and z.
pub fn specialize_y(f: &ExtensionField, g: &Form, x: &Fe, z: &Fe) -> Poly {
    let d = g.degree() as usize;
    let mut xp = vec![f.one()];
    let mut zp = vec![f.one()];
    for i in 0..d {
        xp.push(f.mul(&xp[i], x));
        zp.push(f.mul(&zp[i], z));
    }
    let mut out = vec![Fe::ZERO; d + 1];
    for (m, c) in g.terms() {
        let v = f.scale(&f.mul(&xp[m[0] as usize], &zp[m[2] as usize]), c);
        out[m[1] as usize] = f.add(&out[m[1] as usize], &v);
    }
    poly::trimmed(out)
}

/// Res_y(f(x,y,1), g(x,y,1)) as a polynomial in x over F_p; `f` must be monic-up-to-scalar in y of full degree.
/// The empty polynomial means the resultant vanishes identically.
pub fn resultant_in_y(tower: &FieldTower, f: &Form, g: &Form) -> Result<Poly> {
    let df = f.degree() as usize;
    let dg = g.degree() as usize;
    let lead = f.coeff(&[0, df as u32, 0]);
    if lead == 0 {
        return Err(Error::NoProjectionCenter);
    }
    let n = df * dg;
    let p = tower.p() as u128;
    let mut k = 1;
    while p.pow(k as u32) < (n + 1) as u128 {
        k += 1;
    }
    let fk = tower.field(k)?;
    let one = fk.one();
    let lead_fe = fk.from_u32(lead);
    let xs: Vec<Fe> = (0..=n).map(|i| fk.element_at(i as u128)).collect();
    let mut ys = Vec::with_capacity(n + 1);
    for x in &xs {
        let fa = specialize_y(fk, f, x, &one);
        let ga = specialize_y(fk, g, x, &one);
        let v = match poly::degree(&ga) {
            None => Fe::ZERO,
            Some(m) => {
                let r = if df == 0 { fk.pow(&ga[0], 0) } else { poly::resultant(fk, &fa, &ga) };
                fk.mul(&r, &fk.pow(&lead_fe, (dg - m) as u128))
            }
        };
        ys.push(v);
    }
    let coeffs = interpolate(fk, &xs, &ys);
    let fp = tower.prime_field();
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !c.is_prime_field() {
            return Err(Error::InvalidInput("resultant not defined over the prime field".into()));
        }
        out.push(fp.from_u32(c.constant()));
    }
    Ok(poly::trimmed(out))
}

/// Newton interpolation through distinct nodes.
fn interpolate(f: &ExtensionField, xs: &[Fe], ys: &[Fe]) -> Poly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&dd[i], &dd[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            dd[i] = f.div(&num, &den);
        }
    }
    let mut acc: Poly = vec![];
    for i in (0..n).rev() {
        acc = poly::mul(f, &acc, &[f.neg(&xs[i]), f.one()]);
        acc = poly::add(f, &acc, &[dd[i]]);
    }
    poly::trimmed(acc)
}

/// Geometric points of C ∩ {g = 0}, each listed once per Frobenius orbit.
fn intersection_points(curve: &PlaneCurve, g: &Form) -> Result<Vec<ProjectivePoint>> {
    let tower = curve.tower();
    let fp = tower.prime_field();
    let proj = curve.projection();
    let ft = curve.projected();
    let gt = g.compose(&proj.t);
    let n = (curve.degree() * g.degree()) as usize;
    let r = resultant_in_y(tower, ft, &gt)?;
    if r.is_empty() {
        return Err(Error::FormDivisibleByCurve);
    }
    let mut pts = vec![];
    let mut push = |fld: &ExtensionField, v: [Fe; 3]| {
        let w = proj.t.apply(fld, &v);
        if let Some(pt) = ProjectivePoint::new(fld, w) {
            pts.push(pt);
        }
    };
    if poly::degree(&r).unwrap_or(0) < n {
        let one = fp.one();
        let h = poly::gcd(fp, &specialize_y(fp, ft, &one, &Fe::ZERO), &specialize_y(fp, &gt, &one, &Fe::ZERO));
        for (v, _) in poly::factor(fp, &h) {
            let f = poly::degree(&v).unwrap_or(0);
            if f == 0 {
                continue;
            }
            let ff = tower.field(f)?;
            let ve: Poly = v.iter().map(|c| ff.from_u32(c.constant())).collect();
            let y0 = poly::roots(ff, &ve)[0];
            push(ff, [ff.one(), y0, Fe::ZERO]);
        }
    }
    for (u, _) in poly::factor(fp, &r) {
        let e = poly::degree(&u).unwrap_or(0);
        if e == 0 {
            continue;
        }
        let fe = tower.field(e).map_err(|_| Error::PlaceDegreeTooLarge(e as u32))?;
        let ue: Poly = u.iter().map(|c| fe.from_u32(c.constant())).collect();
        let x0 = poly::roots(fe, &ue)[0];
        let one = fe.one();
        let h = poly::gcd(fe, &specialize_y(fe, ft, &x0, &one), &specialize_y(fe, &gt, &x0, &one));
        for (v, _) in poly::factor(fe, &h) {
            let f = poly::degree(&v).unwrap_or(0);
            if f == 0 {
                continue;
            }
            if f == 1 {
                let y0 = fe.neg(&v[0]);
                push(fe, [x0, y0, one]);
            } else {
                let l = e * f;
                let fl = tower.field(l).map_err(|_| Error::PlaceDegreeTooLarge(l as u32))?;
                let vl: Vec<Fe> = v.iter().map(|c| tower.embed(c, e, l)).collect::<Result<_>>()?;
                let y0 = poly::roots(fl, &vl)[0];
                let x0l = tower.embed(&x0, e, l)?;
                push(fl, [x0l, y0, fl.one()]);
            }
        }
    }
    Ok(pts)
}

/// Intersection divisor of `g = 0` with the curve, as place multiplicities.
pub fn intersection_divisor(curve: &PlaneCurve, g: &Form) -> Result<BTreeMap<Place, u32>> {
    if g.is_zero() || g.is_divisible_by(curve.form()) {
        return Err(Error::FormDivisibleByCurve);
    }
    let pts = intersection_points(curve, g)?;
    let places = pts
        .iter()
        .map(|pt| Place::from_point(curve.tower(), pt))
        .collect::<Result<std::collections::BTreeSet<_>>>()?;
    match multiplicities(curve, g, &places, 1) {
        Err(Error::BezoutMismatch { .. }) => multiplicities(curve, g, &places, 2),
        r => r,
    }
}

fn multiplicities(
    curve: &PlaneCurve,
    g: &Form,
    places: &std::collections::BTreeSet<Place>,
    scale: usize,
) -> Result<BTreeMap<Place, u32>> {
    let expected = (curve.degree() * g.degree()) as u64;
    let mut out = BTreeMap::new();
    for place in places {
        let prec = scale * (expected as usize / place.degree() + 1);
        let br = curve.expansion(place, prec)?;
        let ord = br.order(curve, g)?.unwrap_or(prec) as u32;
        out.insert(*place, ord);
    }
    let found: u64 = out.iter().map(|(pl, m)| pl.degree() as u64 * *m as u64).sum();
    if found != expected {
        return Err(Error::BezoutMismatch { expected, found });
    }
    Ok(out)
}
