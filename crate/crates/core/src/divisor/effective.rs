use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::points::{point_from_json, point_to_json, CoordJson};
use crate::geometry::{place_image, Mat3, Place, PlaneCurve, ProjectivePoint};

/// Finite formal sum of places with positive multiplicities.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EffectiveDivisor {
    places: BTreeMap<Place, u32>,
}

impl EffectiveDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn place(pl: Place, mult: u32) -> Self {
        let mut d = Self::zero();
        d.add_place(pl, mult);
        d
    }

    pub fn from_map(places: BTreeMap<Place, u32>) -> Self {
        let mut d = Self::zero();
        for (pl, m) in places {
            d.add_place(pl, m);
        }
        d
    }

    pub fn add_place(&mut self, pl: Place, mult: u32) {
        if mult > 0 {
            *self.places.entry(pl).or_insert(0) += mult;
        }
    }

    pub fn degree(&self) -> u64 {
        self.places.iter().map(|(pl, m)| pl.degree() as u64 * *m as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.places.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, u32)> {
        self.places.iter().map(|(p, m)| (p, *m))
    }

    pub fn multiplicity(&self, pl: &Place) -> u32 {
        self.places.get(pl).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &EffectiveDivisor) -> EffectiveDivisor {
        let mut d = self.clone();
        for (pl, m) in other.iter() {
            d.add_place(*pl, m);
        }
        d
    }

    pub fn scaled(&self, k: u32) -> EffectiveDivisor {
        EffectiveDivisor { places: self.places.iter().filter(|_| k > 0).map(|(p, m)| (*p, m * k)).collect() }
    }

    /// `self - other` if it is effective.
    pub fn checked_sub(&self, other: &EffectiveDivisor) -> Option<EffectiveDivisor> {
        let mut d = self.clone();
        for (pl, m) in other.iter() {
            let cur = d.places.get_mut(pl)?;
            if *cur < m {
                return None;
            }
            *cur -= m;
            if *cur == 0 {
                d.places.remove(pl);
            }
        }
        Some(d)
    }

    pub fn image(&self, curve: &PlaneCurve, m: &Mat3) -> Result<EffectiveDivisor> {
        let mut d = Self::zero();
        for (pl, k) in self.iter() {
            d.add_place(place_image(curve, m, pl)?, k);
        }
        Ok(d)
    }

    /// `[[coords, degree, multiplicity], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.places
                .iter()
                .map(|(pl, m)| json!([point_to_json(pl.point()), pl.degree(), m]))
                .collect(),
        )
    }

    pub fn from_json(curve: &PlaneCurve, v: &Value) -> Result<Self> {
        let bad = |i: usize| Error::InvalidInput(format!("divisor[{i}]: expected [coords, degree, multiplicity]"));
        let arr = v.as_array().ok_or_else(|| Error::InvalidInput("divisor: expected a list".into()))?;
        let mut d = Self::zero();
        for (i, t) in arr.iter().enumerate() {
            let row = t.as_array().filter(|r| r.len() == 3).ok_or_else(|| bad(i))?;
            let coords: [CoordJson; 3] = serde_json::from_value(row[0].clone()).map_err(|_| bad(i))?;
            let k = row[1].as_u64().filter(|&k| k >= 1).ok_or_else(|| bad(i))? as usize;
            let m = row[2].as_u64().filter(|&m| m >= 1).ok_or_else(|| bad(i))? as u32;
            let pt = point_from_json(curve.tower(), &coords, k)?;
            if !curve.contains(&pt)? {
                return Err(Error::InvalidInput(format!("divisor[{i}]: point is not on the curve")));
            }
            d.add_place(Place::from_point(curve.tower(), &pt)?, m);
        }
        Ok(d)
    }

    /// Parses `3(0:1:0)+2*(1:0:0)+(0:0:1)` (rational points only) or the JSON form.
    pub fn parse(curve: &PlaneCurve, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let v: Value = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("divisor: {e}")))?;
            return Self::from_json(curve, &v);
        }
        let mut d = Self::zero();
        if s.is_empty() || s == "0" {
            return Ok(d);
        }
        for term in s.split('+') {
            let term = term.trim();
            let bad = || Error::InvalidInput(format!("divisor term '{term}'"));
            let open = term.find('(').ok_or_else(bad)?;
            let head = term[..open].trim().trim_end_matches('*').trim();
            let m: u32 = if head.is_empty() { 1 } else { head.parse().map_err(|_| bad())? };
            let body = term[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            let xs: Vec<i64> = body.split(':').map(|c| c.trim().parse::<i64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
            if xs.len() != 3 {
                return Err(bad());
            }
            let pt = ProjectivePoint::rational(curve.p(), [xs[0], xs[1], xs[2]]).ok_or_else(bad)?;
            if !curve.contains(&pt)? {
                return Err(Error::InvalidInput(format!("divisor term '{term}': point is not on the curve")));
            }
            d.add_place(Place::from_point(curve.tower(), &pt)?, m);
        }
        Ok(d)
    }
}

impl fmt::Debug for EffectiveDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.places.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.places.iter().map(|(p, m)| format!("{m}*{p:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
