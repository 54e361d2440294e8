use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::data::{FixedPoint, MarkedCurveData};
use super::engine::PrimeContext;
use crate::error::{Error, Result};
use crate::fields::{poly, Fe};
use crate::geometry::points::{point_to_json, CoordJson};
use crate::geometry::rational::reduce_rational;
use crate::geometry::{enumerate_points, Mat3, PlaneCurve, ProjectivePoint};
use crate::splitting::{doomed_at, CubicFieldSpec, DoomReport, QuadraticFieldSpec};

/// F_p-points fixed by the reduced involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointScan {
    pub points: Vec<ProjectivePoint>,
    pub extra_fixed_point: bool,
}

fn is_fixed(curve: &PlaneCurve, m: &Mat3, pt: &ProjectivePoint) -> bool {
    let f = curve.tower().prime_field();
    let v = pt.coords();
    let w = m.apply(f, v);
    (0..3).all(|i| {
        let j = (i + 1) % 3;
        f.sub(&f.mul(&v[i], &w[j]), &f.mul(&v[j], &w[i])).is_zero()
    })
}

/// Reductions of a declared fixed point at the degree-1 primes above p.
pub fn reduce_fixed_point(ctx: &PrimeContext, fp: &FixedPoint) -> Result<Vec<ProjectivePoint>> {
    let p = ctx.curve.p();
    let f = ctx.curve.tower().prime_field();
    let alphas: Vec<Fe> = match &fp.field {
        None => vec![f.zero()],
        Some(g) => poly::roots(f, &g.reduce(f)),
    };
    let mut out = vec![];
    for a in alphas {
        // clear denominators over all coordinates before evaluating
        let l = fp.coords.iter().flatten().fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let lr = BigRational::from_integer(l);
        let mut coords = [Fe::ZERO; 3];
        for i in 0..3 {
            let mut acc = f.zero();
            let mut pw = f.one();
            for c in &fp.coords[i] {
                let v = reduce_rational(&(c * &lr), p).ok_or(Error::DenominatorClash(p as u64))?;
                acc = f.add(&acc, &f.mul(&pw, &f.from_u32(v)));
                pw = f.mul(&pw, &a);
            }
            coords[i] = acc;
        }
        if let Some(pt) = ProjectivePoint::new(f, coords) {
            out.push(pt);
        }
    }
    Ok(out)
}

/// F_p-points of the curve fixed by `m`, sorted.
pub fn fixed_points(curve: &PlaneCurve, m: &Mat3) -> Result<Vec<ProjectivePoint>> {
    Ok(enumerate_points(curve, 1)?.into_iter().filter(|pt| is_fixed(curve, m, pt)).collect())
}

pub fn fixed_points_mod_p(data: &MarkedCurveData, ctx: &PrimeContext) -> Result<FixedPointScan> {
    let points = fixed_points(&ctx.curve, &ctx.w)?;
    let mut declared = vec![];
    for fp in data.fixed_points.iter().filter(|f| f.is_rational()) {
        declared.extend(reduce_fixed_point(ctx, fp)?);
    }
    let extra_fixed_point = points.iter().any(|pt| !declared.contains(pt));
    Ok(FixedPointScan { points, extra_fixed_point })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coincidence {
    pub a: String,
    pub b: String,
    pub coincide: bool,
}

/// Status of the two conditions that force ±[D_t] into W_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoomCheck {
    pub p: u64,
    pub condition_i: String,
    pub condition_ii: bool,
    pub fixed_points: Vec<[CoordJson; 3]>,
    pub coincidences: Vec<Coincidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<DoomReport>,
}

pub fn doom_check(
    data: &MarkedCurveData,
    p: u64,
    fieldspecs: Option<(&QuadraticFieldSpec, &CubicFieldSpec)>,
) -> Result<DoomCheck> {
    let ctx = PrimeContext::new(data, p)?;
    let scan = fixed_points_mod_p(data, &ctx)?;
    let mut reduced = vec![];
    for fp in &data.fixed_points {
        let r = reduce_fixed_point(&ctx, fp)?;
        if !r.is_empty() {
            reduced.push((fp.label.clone(), r));
        }
    }
    let mut coincidences = vec![];
    for i in 0..reduced.len() {
        for j in i + 1..reduced.len() {
            let coincide = reduced[i].1.iter().any(|a| reduced[j].1.contains(a));
            coincidences.push(Coincidence { a: reduced[i].0.clone(), b: reduced[j].0.clone(), coincide });
        }
    }
    let splitting = match fieldspecs {
        Some((q, c)) => Some(doomed_at(q, c, p)?),
        None => None,
    };
    Ok(DoomCheck {
        p,
        condition_i: "external".into(),
        condition_ii: scan.extra_fixed_point,
        fixed_points: scan.points.iter().map(point_to_json).collect(),
        coincidences,
        splitting,
    })
}

