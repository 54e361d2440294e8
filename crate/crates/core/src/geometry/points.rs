use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{ExtensionField, Fe, FieldTower};

/// A point of P^2 over F_{p^k}, first nonzero coordinate equal to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    k: u8,
    coords: [Fe; 3],
}

impl ProjectivePoint {
    /// Normalizes; `None` for the zero vector.
    pub fn new(f: &ExtensionField, coords: [Fe; 3]) -> Option<Self> {
        let i = coords.iter().position(|c| !c.is_zero())?;
        let inv = f.inv(&coords[i]);
        let coords = [f.mul(&coords[0], &inv), f.mul(&coords[1], &inv), f.mul(&coords[2], &inv)];
        Some(ProjectivePoint { k: f.degree() as u8, coords })
    }

    pub fn rational(p: u32, xyz: [i64; 3]) -> Option<Self> {
        let tower = FieldTower::get(p as u64).ok()?;
        let f = tower.prime_field();
        Self::new(f, [f.from_i64(xyz[0]), f.from_i64(xyz[1]), f.from_i64(xyz[2])])
    }

    /// Degree of the field the coordinates are written in.
    pub fn field_degree(&self) -> usize {
        self.k as usize
    }

    pub fn coords(&self) -> &[Fe; 3] {
        &self.coords
    }

    pub fn frobenius(&self, f: &ExtensionField) -> Self {
        ProjectivePoint { k: self.k, coords: self.coords.map(|c| f.frobenius(&c)) }
    }

    /// Rewrites the coordinates in F_{p^to}, which must contain or be contained in the current field.
    pub fn change_field(&self, tower: &FieldTower, to: usize) -> Result<Option<Self>> {
        let from = self.k as usize;
        if to == from {
            return Ok(Some(*self));
        }
        let mut c = [Fe::ZERO; 3];
        for i in 0..3 {
            c[i] = if to % from == 0 {
                tower.embed(&self.coords[i], from, to)?
            } else {
                match tower.descend(&self.coords[i], from, to)? {
                    Some(v) => v,
                    None => return Ok(None),
                }
            };
        }
        Ok(Some(ProjectivePoint { k: to as u8, coords: c }))
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}:{:?}:{:?})", self.coords[0], self.coords[1], self.coords[2])?;
        if self.k > 1 {
            write!(f, "/F{}", self.k)?;
        }
        Ok(())
    }
}

/// A closed point: a Frobenius orbit, represented by its smallest member written over F_{p^degree}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place(ProjectivePoint);

impl Place {
    /// Canonical place of any geometric point.
    pub fn from_point(tower: &FieldTower, pt: &ProjectivePoint) -> Result<Self> {
        let k = pt.field_degree();
        let f = tower.field(k)?;
        let mut orbit = 1;
        let mut q = pt.frobenius(f);
        while q != *pt {
            q = q.frobenius(f);
            orbit += 1;
        }
        let base = if orbit < k {
            pt.change_field(tower, orbit)?.ok_or_else(|| Error::InvalidInput("descent failed".into()))?
        } else {
            *pt
        };
        let fe = tower.field(orbit)?;
        let mut best = base;
        let mut q = base;
        for _ in 1..orbit {
            q = q.frobenius(fe);
            if q < best {
                best = q;
            }
        }
        Ok(Place(best))
    }

    pub fn degree(&self) -> usize {
        self.0.field_degree()
    }

    pub fn point(&self) -> &ProjectivePoint {
        &self.0
    }

    /// All geometric points of the orbit, written over F_{p^degree}.
    pub fn conjugates(&self, tower: &FieldTower) -> Result<Vec<ProjectivePoint>> {
        let f = tower.field(self.degree())?;
        let mut out = vec![self.0];
        for _ in 1..self.degree() {
            let next = out.last().unwrap().frobenius(f);
            out.push(next);
        }
        Ok(out)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// JSON form of a coordinate: an integer for prime-field values, else the coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordJson {
    Int(i64),
    Ext(Vec<i64>),
}

impl CoordJson {
    pub fn from_fe(a: &Fe, k: usize) -> Self {
        if k == 1 {
            CoordJson::Int(a.constant() as i64)
        } else {
            CoordJson::Ext(a.coeffs()[..k].iter().map(|&c| c as i64).collect())
        }
    }

    pub fn to_fe(&self, f: &ExtensionField) -> Result<Fe> {
        match self {
            CoordJson::Int(v) => Ok(f.from_i64(*v)),
            CoordJson::Ext(v) => {
                let c: Vec<u32> = v.iter().map(|&x| x.rem_euclid(f.p() as i64) as u32).collect();
                f.from_coeffs(&c)
            }
        }
    }
}

pub fn point_to_json(pt: &ProjectivePoint) -> [CoordJson; 3] {
    pt.coords().map(|c| CoordJson::from_fe(&c, pt.field_degree()))
}

pub fn point_from_json(tower: &FieldTower, coords: &[CoordJson; 3], k: usize) -> Result<ProjectivePoint> {
    let f = tower.field(k)?;
    let c = [coords[0].to_fe(f)?, coords[1].to_fe(f)?, coords[2].to_fe(f)?];
    ProjectivePoint::new(f, c).ok_or_else(|| Error::InvalidInput("zero coordinate vector".into()))
}
