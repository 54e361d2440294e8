use num_rational::BigRational;
use num_traits::{One, Zero};

/// a + b√d over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadElem {
    pub fn rational(a: BigRational) -> Self {
        QuadElem { a, b: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadElem { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadElem { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn mul(&self, o: &Self, d: i64) -> Self {
        let d = BigRational::from_integer(d.into());
        QuadElem { a: &self.a * &o.a + &self.b * &o.b * d, b: &self.a * &o.b + &self.b * &o.a }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadElem { a: &self.a * r, b: &self.b * r }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

/// Projective equality of two points over Q(√d).
pub fn proportional(u: &[QuadElem; 3], v: &[QuadElem; 3], d: i64) -> bool {
    (0..3).all(|i| {
        let j = (i + 1) % 3;
        u[i].mul(&v[j], d).sub(&u[j].mul(&v[i], d)).is_zero()
    })
}

/// Image of a point under a rational matrix.
pub fn apply(m: &crate::geometry::QMat3, v: &[QuadElem; 3]) -> [QuadElem; 3] {
    std::array::from_fn(|i| {
        let mut acc = QuadElem::rational(BigRational::zero());
        for j in 0..3 {
            acc = acc.add(&v[j].scale(&m.0[i][j]));
        }
        acc
    })
}
