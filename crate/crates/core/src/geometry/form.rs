//! Homogeneous ternary forms over F_p, dense in a fixed lexicographic monomial order.

use crate::fields::prime::{inv_mod, mul_mod};
use crate::fields::{ExtensionField, Fe};

/// Exponent triple (a, b, c) for x^a y^b z^c.
pub type Monomial = [u32; 3];

/// Monomials of degree d, lexicographic with x > y > z, largest first.
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn monomial_count(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

#[inline]
pub fn monomial_index(d: u32, m: &Monomial) -> usize {
    let r = d - m[0];
    (r * (r + 1) / 2 + (r - m[1])) as usize
}

pub fn divides(a: &Monomial, b: &Monomial) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    p: u32,
    degree: u32,
    coeffs: Vec<u32>,
}

impl Form {
    pub fn zero(p: u32, degree: u32) -> Self {
        Form { p, degree, coeffs: vec![0; monomial_count(degree)] }
    }

    pub fn from_coeffs(p: u32, degree: u32, coeffs: Vec<u32>) -> Self {
        assert_eq!(coeffs.len(), monomial_count(degree));
        Form { p, degree, coeffs: coeffs.into_iter().map(|c| c % p).collect() }
    }

    /// From (exponents, coefficient) terms; exponents must sum to the degree.
    pub fn from_terms(p: u32, degree: u32, terms: &[(Monomial, i64)]) -> Self {
        let mut f = Form::zero(p, degree);
        for (m, c) in terms {
            assert_eq!(m.iter().sum::<u32>(), degree, "inhomogeneous term");
            let i = monomial_index(degree, m);
            f.coeffs[i] = (f.coeffs[i] + c.rem_euclid(p as i64) as u32) % p;
        }
        f
    }

    pub fn monomial(p: u32, m: Monomial) -> Self {
        Form::from_terms(p, m.iter().sum(), &[(m, 1)])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.coeffs[monomial_index(self.degree, m)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u32)> + '_ {
        monomials(self.degree).into_iter().zip(self.coeffs.iter().copied()).filter(|(_, c)| *c != 0)
    }

    /// Leading monomial and coefficient in the lexicographic order.
    pub fn leading(&self) -> Option<(Monomial, u32)> {
        self.terms().next()
    }

    pub fn eval(&self, f: &ExtensionField, pt: &[Fe; 3]) -> Fe {
        let d = self.degree as usize;
        let mut pw = [[f.one(); 32]; 3];
        assert!(d < 32, "form degree too large");
        for v in 0..3 {
            for e in 1..=d {
                pw[v][e] = f.mul(&pw[v][e - 1], &pt[v]);
            }
        }
        let mut acc = f.zero();
        for (m, c) in self.terms() {
            let t = f.mul(&f.mul(&pw[0][m[0] as usize], &pw[1][m[1] as usize]), &pw[2][m[2] as usize]);
            acc = f.add(&acc, &f.scale(&t, c));
        }
        acc
    }

    pub fn partial(&self, var: usize) -> Form {
        if self.degree == 0 {
            return Form::zero(self.p, 0);
        }
        let mut out = Form::zero(self.p, self.degree - 1);
        for (m, c) in self.terms() {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = m;
            m2[var] -= 1;
            let i = monomial_index(self.degree - 1, &m2);
            out.coeffs[i] = (out.coeffs[i] + mul_mod(c, m[var] % self.p, self.p)) % self.p;
        }
        out
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.degree, other.degree);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % self.p).collect();
        Form { p: self.p, degree: self.degree, coeffs }
    }

    pub fn scale(&self, s: u32) -> Form {
        Form { p: self.p, degree: self.degree, coeffs: self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect() }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let d = self.degree + other.degree;
        let mut out = Form::zero(self.p, d);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                let i = monomial_index(d, &m);
                out.coeffs[i] = (out.coeffs[i] + mul_mod(c1, c2, self.p)) % self.p;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut r = Form::from_terms(self.p, 0, &[([0, 0, 0], 1)]);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// The form v -> F(M v).
    pub fn compose(&self, m: &Mat3) -> Form {
        let lin: Vec<Form> = (0..3)
            .map(|i| {
                Form::from_terms(
                    self.p,
                    1,
                    &[([1, 0, 0], m.m[i][0] as i64), ([0, 1, 0], m.m[i][1] as i64), ([0, 0, 1], m.m[i][2] as i64)],
                )
            })
            .collect();
        let powers: Vec<Vec<Form>> = lin
            .iter()
            .map(|l| {
                let mut v = vec![Form::from_terms(self.p, 0, &[([0, 0, 0], 1)])];
                for e in 1..=self.degree {
                    v.push(v[e as usize - 1].mul(l));
                }
                v
            })
            .collect();
        let mut out = Form::zero(self.p, self.degree);
        for (mo, c) in self.terms() {
            let t = powers[0][mo[0] as usize].mul(&powers[1][mo[1] as usize]).mul(&powers[2][mo[2] as usize]);
            out = out.add(&t.scale(c));
        }
        out
    }

    /// Normal form modulo the principal ideal (g); zero iff g divides self.
    pub fn reduce_modulo(&self, g: &Form) -> Form {
        if self.degree < g.degree {
            return self.clone();
        }
        let (lm, lc) = g.leading().expect("reduction by zero form");
        let inv = inv_mod(lc, self.p);
        let mut r = self.clone();
        let mons = monomials(self.degree);
        for (i, m) in mons.iter().enumerate() {
            let c = r.coeffs[i];
            if c == 0 || !divides(&lm, m) {
                continue;
            }
            let shift = [m[0] - lm[0], m[1] - lm[1], m[2] - lm[2]];
            let factor = mul_mod(c, inv, self.p);
            for (gm, gc) in g.terms() {
                let t = [gm[0] + shift[0], gm[1] + shift[1], gm[2] + shift[2]];
                let j = monomial_index(self.degree, &t);
                r.coeffs[j] = (r.coeffs[j] + self.p - mul_mod(factor, gc, self.p)) % self.p;
            }
        }
        r
    }

    pub fn is_divisible_by(&self, g: &Form) -> bool {
        self.degree >= g.degree && self.reduce_modulo(g).is_zero()
    }

    /// λ with self = λ · other, if it exists and is nonzero.
    pub fn ratio_to(&self, other: &Form) -> Option<u32> {
        if self.degree != other.degree || other.is_zero() {
            return None;
        }
        let (m, c) = other.leading()?;
        let lambda = mul_mod(self.coeff(&m), inv_mod(c, self.p), self.p);
        if lambda == 0 {
            return None;
        }
        (other.scale(lambda) == *self).then_some(lambda)
    }
}

/// Monomials of degree d not divisible by the leading monomial of g: a basis of forms modulo (g).
pub fn standard_monomials(d: u32, g: &Form) -> Vec<Monomial> {
    let (lm, _) = g.leading().expect("zero curve form");
    monomials(d).into_iter().filter(|m| !divides(&lm, m)).collect()
}

/// A 3x3 matrix over F_p acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3 {
    pub p: u32,
    pub m: [[u32; 3]; 3],
}

impl Mat3 {
    pub fn new(p: u32, rows: [[i64; 3]; 3]) -> Self {
        let mut m = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = rows[i][j].rem_euclid(p as i64) as u32;
            }
        }
        Mat3 { p, m }
    }

    pub fn identity(p: u32) -> Self {
        Mat3::new(p, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut m = [[0u32; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0u64;
                for k in 0..3 {
                    s += self.m[i][k] as u64 * o.m[k][j] as u64;
                }
                m[i][j] = (s % self.p as u64) as u32;
            }
        }
        Mat3 { p: self.p, m }
    }

    pub fn det(&self) -> u32 {
        let p = self.p as i64;
        let a = |i: usize, j: usize| self.m[i][j] as i64;
        let d = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        d.rem_euclid(p) as u32
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.det();
        if det == 0 {
            return None;
        }
        let p = self.p as i64;
        let a = |i: usize, j: usize| self.m[i][j] as i64;
        let inv = inv_mod(det, self.p) as i64;
        let mut m = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                // cofactor of (j, i)
                let (r0, r1) = ([1, 0, 0][j], [2, 2, 1][j]);
                let (c0, c1) = ([1, 0, 0][i], [2, 2, 1][i]);
                let minor = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                m[i][j] = (sign * minor).rem_euclid(p) * inv % p;
            }
        }
        Some(Mat3::new(self.p, m))
    }

    /// Nonzero μ with self = μ·I.
    pub fn scalar_value(&self) -> Option<u32> {
        let mu = self.m[0][0];
        let ok = (0..3).all(|i| (0..3).all(|j| self.m[i][j] == if i == j { mu } else { 0 }));
        (ok && mu != 0).then_some(mu)
    }

    pub fn apply(&self, f: &ExtensionField, v: &[Fe; 3]) -> [Fe; 3] {
        let mut out = [f.zero(); 3];
        for i in 0..3 {
            let mut s = f.zero();
            for j in 0..3 {
                s = f.add(&s, &f.scale(&v[j], self.m[i][j]));
            }
            out[i] = s;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_indexing() {
        for d in 0..8 {
            for (i, m) in monomials(d).iter().enumerate() {
                assert_eq!(monomial_index(d, m), i);
            }
        }
    }

    #[test]
    fn normal_form_detects_multiples() {
        let p = 7;
        let klein = Form::from_terms(p, 4, &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)]);
        let h = Form::from_terms(p, 2, &[([1, 0, 1], 3), ([0, 2, 0], 2), ([0, 0, 2], 1)]);
        let prod = klein.mul(&h);
        assert!(prod.is_divisible_by(&klein));
        assert!(!prod.add(&Form::monomial(p, [0, 0, 6])).is_divisible_by(&klein));
        assert_eq!(standard_monomials(4, &klein).len(), 14);
        assert_eq!(standard_monomials(6, &klein).len(), 28 - 6);
    }

    #[test]
    fn compose_and_inverse() {
        let p = 11;
        let f = Form::from_terms(p, 3, &[([3, 0, 0], 1), ([1, 1, 1], 2), ([0, 0, 3], 5)]);
        let m = Mat3::new(p, [[1, 2, 0], [0, 1, 3], [4, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat3::identity(p));
        assert_eq!(f.compose(&m).compose(&inv), f);
    }
}
