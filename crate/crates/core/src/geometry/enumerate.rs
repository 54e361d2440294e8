use std::collections::BTreeSet;

use super::curve::PlaneCurve;
use super::form::Mat3;
use super::intersect::specialize_y;
use super::points::{Place, ProjectivePoint};
use crate::error::{Error, Result};
use crate::fields::{poly, ExtensionField, Fe};

/// Default ceiling on the number of projective points scanned.
pub const ENUMERATION_CEILING: u128 = 1 << 24;

fn projective_size(q: u128) -> u128 {
    q * q + q + 1
}

/// All points of C over F_{p^k}, sorted.
pub fn enumerate_points(curve: &PlaneCurve, k: usize) -> Result<Vec<ProjectivePoint>> {
    enumerate_points_with_ceiling(curve, k, ENUMERATION_CEILING)
}

pub fn enumerate_points_with_ceiling(curve: &PlaneCurve, k: usize, ceiling: u128) -> Result<Vec<ProjectivePoint>> {
    let q = (curve.p() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let size = if q > 1 << 40 { u128::MAX } else { projective_size(q) };
    if size > ceiling {
        return Err(Error::EnumerationTooLarge(size));
    }
    let f = curve.field(k)?;
    let form = curve.form();
    let mut out = BTreeSet::new();
    let mut add = |fld: &ExtensionField, v: [Fe; 3]| {
        if let Some(pt) = ProjectivePoint::new(fld, v) {
            out.insert(pt);
        }
    };
    let one = f.one();
    for x in f.elements() {
        let h = specialize_y(f, form, &x, &one);
        if h.is_empty() {
            for y in f.elements() {
                add(f, [x, y, one]);
            }
        } else {
            for y in poly::roots(f, &h) {
                add(f, [x, y, one]);
            }
        }
    }
    // z = 0: (x:1:0) and (1:0:0)
    let mut hx: Vec<Fe> = vec![Fe::ZERO; form.degree() as usize + 1];
    for (m, c) in form.terms() {
        if m[2] == 0 {
            hx[m[0] as usize] = f.add(&hx[m[0] as usize], &f.from_u32(c));
        }
    }
    let hx = poly::trimmed(hx);
    if hx.is_empty() {
        for x in f.elements() {
            add(f, [x, one, Fe::ZERO]);
        }
    } else {
        for x in poly::roots(f, &hx) {
            add(f, [x, one, Fe::ZERO]);
        }
    }
    if form.eval(f, &[one, Fe::ZERO, Fe::ZERO]).is_zero() {
        add(f, [one, Fe::ZERO, Fe::ZERO]);
    }
    Ok(out.into_iter().collect())
}

/// Places of degree at most `dmax` (≤ 3), sorted by degree then representative.
pub fn places_up_to_degree(curve: &PlaneCurve, dmax: usize) -> Result<Vec<Place>> {
    if dmax == 0 || dmax > 3 {
        return Err(Error::DegreeOutOfRange(dmax));
    }
    let mut out = BTreeSet::new();
    for e in 1..=dmax {
        for pt in enumerate_points(curve, e)? {
            let pl = Place::from_point(curve.tower(), &pt)?;
            if pl.degree() == e {
                out.insert(pl);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Scalars of a validated involution: F∘M = λF and M² = μI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvolutionScalars {
    pub lambda: u32,
    pub mu: u32,
    pub trivial: bool,
}

pub fn validate_involution(m: &Mat3, curve: &PlaneCurve) -> Result<InvolutionScalars> {
    if m.inverse().is_none() {
        return Err(Error::SingularMatrix);
    }
    let composed = curve.form().compose(m);
    let lambda = composed.ratio_to(curve.form()).ok_or(Error::NotAnAutomorphism)?;
    let mu = m.mul(m).scalar_value().ok_or(Error::NotAnInvolution)?;
    let trivial = m.scalar_value().is_some();
    Ok(InvolutionScalars { lambda, mu, trivial })
}

/// Image of a place under a linear automorphism.
pub fn place_image(curve: &PlaneCurve, m: &Mat3, pl: &Place) -> Result<Place> {
    let pt = pl.point();
    let f = curve.field(pt.field_degree())?;
    let img = ProjectivePoint::new(f, m.apply(f, pt.coords())).ok_or(Error::SingularMatrix)?;
    Place::from_point(curve.tower(), &img)
}
