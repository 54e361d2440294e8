use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::branch::{local_expansion, BranchExpansion};
use super::points::Place;

use super::form::{Form, Mat3};
use super::intersect::{resultant_in_y, specialize_y};
use crate::error::{Error, Result};
use crate::fields::{poly, ExtensionField, Fe, FieldTower, Poly, MAX_EXT_DEGREE};

/// Linear change of coordinates moving a point off the curve to (0:1:0).
#[derive(Clone, Debug)]
pub struct Projection {
    pub t: Mat3,
    pub t_inv: Mat3,
}

impl Projection {
    /// Uses the first F_p-point (in a fixed order) where `f` does not vanish.
    pub fn for_form(f: &Form) -> Result<Self> {
        let p = f.p();
        let fp = ExtensionField::prime(p);
        let e = |i: usize| {
            let mut v = [0i64; 3];
            v[i] = 1;
            v
        };
        let mut candidates: Vec<[i64; 3]> = vec![e(1), e(0), e(2)];
        let pi = p as i64;
        for a in 0..pi {
            for b in 0..pi {
                candidates.push([1, a, b]);
            }
            candidates.push([0, 1, a]);
        }
        for o in candidates {
            let v = o.map(|c| fp.from_i64(c));
            if f.eval(&fp, &v).is_zero() {
                continue;
            }
            for (a, b) in [(0usize, 2usize), (2, 0), (0, 1), (1, 2)] {
                let ea = e(a);
                let eb = e(b);
                let rows = [[ea[0], o[0], eb[0]], [ea[1], o[1], eb[1]], [ea[2], o[2], eb[2]]];
                let t = Mat3::new(p, rows);
                if let Some(t_inv) = t.inverse() {
                    return Ok(Projection { t, t_inv });
                }
            }
        }
        Err(Error::NoProjectionCenter)
    }
}

/// Outcome of the singular-point search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Singular,
    Undecided,
}

/// Decides whether the plane curve `f = 0` is smooth over the algebraic closure of F_p.
pub fn smoothness(f: &Form) -> Smoothness {
    if f.is_zero() {
        return Smoothness::Singular;
    }
    if f.degree() == 1 {
        return Smoothness::Smooth;
    }
    let Ok(proj) = Projection::for_form(f) else { return Smoothness::Undecided };
    let Ok(tower) = FieldTower::get(f.p() as u64) else { return Smoothness::Undecided };
    let fp = tower.prime_field();
    let ft = f.compose(&proj.t);
    let partials: Vec<Form> = (0..3).map(|i| ft.partial(i)).filter(|g| !g.is_zero()).collect();
    if partials.is_empty() {
        return Smoothness::Singular;
    }
    let mut r: Poly = vec![];
    for g in &partials {
        let Ok(rg) = resultant_in_y(&tower, &ft, g) else { return Smoothness::Undecided };
        if rg.is_empty() {
            return Smoothness::Undecided;
        }
        r = poly::gcd(fp, &r, &rg);
    }
    let d = f.degree() as usize;
    let n: usize = d * (d - 1);
    let deg_r = poly::degree(&r).unwrap_or(0);
    // singular points on the line at infinity of the chart
    if deg_r < n {
        let one = fp.one();
        let mut h = specialize_y(fp, &ft, &one, &Fe::ZERO);
        for g in &partials {
            h = poly::gcd(fp, &h, &specialize_y(fp, g, &one, &Fe::ZERO));
        }
        if poly::degree(&h).unwrap_or(0) > 0 {
            return Smoothness::Singular;
        }
    }
    for (u, _) in poly::factor(fp, &r) {
        let e = poly::degree(&u).unwrap_or(0);
        if e == 0 {
            continue;
        }
        if e > MAX_EXT_DEGREE {
            return Smoothness::Undecided;
        }
        let Ok(fe) = tower.field(e) else { return Smoothness::Undecided };
        let ue: Poly = u.iter().map(|c| fe.from_u32(c.constant())).collect();
        let x0 = poly::roots(fe, &ue)[0];
        let one = fe.one();
        let mut h = specialize_y(fe, &ft, &x0, &one);
        for g in &partials {
            h = poly::gcd(fe, &h, &specialize_y(fe, g, &x0, &one));
        }
        if poly::degree(&h).unwrap_or(0) > 0 {
            return Smoothness::Singular;
        }
    }
    Smoothness::Smooth
}

pub fn is_smooth(f: &Form) -> bool {
    smoothness(f) == Smoothness::Smooth
}

/// A smooth plane curve over F_p.
#[derive(Clone)]
pub struct PlaneCurve {
    tower: Arc<FieldTower>,
    form: Form,
    projection: Projection,
    projected: Form,
    expansions: Arc<RwLock<HashMap<Place, Arc<BranchExpansion>>>>,
}

impl std::fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PlaneCurve").field("p", &self.p()).field("form", &self.form).finish()
    }
}

impl PlaneCurve {
    pub fn new(form: Form) -> Result<Self> {
        match smoothness(&form) {
            Smoothness::Smooth => Self::new_unchecked(form),
            Smoothness::Singular => Err(Error::BadReduction { p: form.p() as u64, reason: "singular".into() }),
            Smoothness::Undecided => {
                Err(Error::BadReduction { p: form.p() as u64, reason: "smoothness undecided".into() })
            }
        }
    }

    /// Skips the smoothness check.
    pub fn new_unchecked(form: Form) -> Result<Self> {
        if form.degree() < 1 {
            return Err(Error::PolynomialDegree(0));
        }
        let tower = FieldTower::get(form.p() as u64)?;
        let projection = Projection::for_form(&form)?;
        let projected = form.compose(&projection.t);
        Ok(PlaneCurve { tower, form, projection, projected, expansions: Default::default() })
    }

    pub fn p(&self) -> u32 {
        self.form.p()
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn genus(&self) -> u32 {
        let d = self.degree();
        (d - 1) * (d.saturating_sub(2)) / 2
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn field(&self, k: usize) -> Result<&ExtensionField> {
        self.tower.field(k)
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    pub(crate) fn projected(&self) -> &Form {
        &self.projected
    }

    /// Branch at a place with at least `precision` terms, memoized per curve.
    pub fn expansion(&self, place: &Place, precision: usize) -> Result<Arc<BranchExpansion>> {
        if let Some(b) = self.expansions.read().unwrap().get(place) {
            if b.precision >= precision {
                return Ok(b.clone());
            }
        }
        let b = Arc::new(local_expansion(self, place.point(), precision)?);
        let mut w = self.expansions.write().unwrap();
        let keep = w.get(place).map_or(true, |old| old.precision < b.precision);
        if keep {
            w.insert(*place, b.clone());
        }
        Ok(b)
    }

    pub fn contains(&self, pt: &super::points::ProjectivePoint) -> Result<bool> {
        let f = self.field(pt.field_degree())?;
        Ok(self.form.eval(f, pt.coords()).is_zero())
    }
}
