use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::curve::PlaneCurve;
use super::form::{Form, Mat3, Monomial};
use crate::error::{Error, Result};

pub fn parse_rational(v: &Value, at: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("{at}: expected an integer or \"a/b\""));
    match v {
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())).ok_or_else(bad),
        Value::String(s) => {
            let s = s.trim();
            let (a, b) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s, "1"),
            };
            let a: BigInt = a.parse().map_err(|_| bad())?;
            let b: BigInt = b.parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::InvalidInput(format!("{at}: zero denominator")));
            }
            Ok(BigRational::new(a, b))
        }
        _ => Err(bad()),
    }
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reduces a rational number mod p; `None` when p divides the denominator.
pub fn reduce_rational(r: &BigRational, p: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64()? as u32;
    let den = den.to_u64()? as u32;
    Some(crate::fields::prime::mul_mod(num, crate::fields::prime::inv_mod(den, p), p))
}

/// Scales a vector of rationals to a primitive integer vector.
pub fn primitive_integers(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| (r * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Homogeneous ternary form over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QForm {
    degree: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl QForm {
    pub fn new(degree: u32, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Result<Self> {
        let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if m.iter().sum::<u32>() != degree {
                return Err(Error::InvalidInput(format!("monomial {m:?} is not of degree {degree}")));
            }
            *out.entry(m).or_insert_with(BigRational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        if out.is_empty() {
            return Err(Error::InvalidInput("zero form".into()));
        }
        Ok(QForm { degree, terms: out })
    }

    /// Parses `[[e1, e2, e3, c], ...]`.
    pub fn from_json(degree: u32, coeffs: &Value) -> Result<Self> {
        let arr = coeffs.as_array().ok_or_else(|| Error::InvalidInput("coeffs: expected a list".into()))?;
        let mut terms = vec![];
        for (i, t) in arr.iter().enumerate() {
            let at = format!("coeffs[{i}]");
            let row = t.as_array().filter(|r| r.len() == 4).ok_or_else(|| {
                Error::InvalidInput(format!("{at}: expected [e1, e2, e3, c]"))
            })?;
            let mut m = [0u32; 3];
            for j in 0..3 {
                m[j] = row[j]
                    .as_u64()
                    .and_then(|v| u32::try_from(v).ok())
                    .ok_or_else(|| Error::InvalidInput(format!("{at}: exponents must be nonnegative integers")))?;
            }
            terms.push((m, parse_rational(&row[3], &at)?));
        }
        QForm::new(degree, terms).map_err(|e| match e {
            Error::InvalidInput(s) => Error::InvalidInput(format!("coeffs: {s}")),
            e => e,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn eval(&self, v: &[BigRational; 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                t *= num_traits::pow(v[i].clone(), m[i] as usize);
            }
            acc += t;
        }
        acc
    }

    /// F(Mv).
    pub fn compose(&self, m: &QMat3) -> QForm {
        let lin: Vec<BTreeMap<Monomial, BigRational>> = (0..3)
            .map(|i| {
                let mut t = BTreeMap::new();
                for j in 0..3 {
                    if !m.0[i][j].is_zero() {
                        let mut mo = [0u32; 3];
                        mo[j] = 1;
                        t.insert(mo, m.0[i][j].clone());
                    }
                }
                t
            })
            .collect();
        let mul = |a: &BTreeMap<Monomial, BigRational>, b: &BTreeMap<Monomial, BigRational>| {
            let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
            for (ma, ca) in a {
                for (mb, cb) in b {
                    let mo = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                    *out.entry(mo).or_insert_with(BigRational::zero) += ca * cb;
                }
            }
            out
        };
        let mut total: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (mo, c) in &self.terms {
            let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::from([([0, 0, 0], c.clone())]);
            for i in 0..3 {
                for _ in 0..mo[i] {
                    acc = mul(&acc, &lin[i]);
                }
            }
            for (k, v) in acc {
                *total.entry(k).or_insert_with(BigRational::zero) += v;
            }
        }
        total.retain(|_, c| !c.is_zero());
        QForm { degree: self.degree, terms: total }
    }

    /// Scalar λ with self = λ·other, if any.
    pub fn ratio_to(&self, other: &QForm) -> Option<BigRational> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, c) = other.terms.iter().next()?;
        let lambda = self.terms.get(m)? / c;
        other.terms.iter().all(|(k, v)| self.terms.get(k) == Some(&(v * &lambda))).then_some(lambda)
    }

    /// Primitive integral model reduced mod p.
    pub fn reduce_mod_p(&self, p: u32) -> Result<Form> {
        if self.terms.values().any(|c| (c.denom() % BigInt::from(p)).is_zero()) {
            return Err(Error::DenominatorClash(p as u64));
        }
        let vals: Vec<BigRational> = self.terms.values().cloned().collect();
        let ints = primitive_integers(&vals);
        let pb = BigInt::from(p);
        let terms: Vec<(Monomial, i64)> = self
            .terms
            .keys()
            .zip(ints.iter())
            .map(|(m, c)| (*m, c.mod_floor(&pb).to_i64().unwrap_or(0)))
            .collect();
        let f = Form::from_terms(p, self.degree, &terms);
        if f.is_zero() {
            return Err(Error::BadReduction { p: p as u64, reason: "degree drops".into() });
        }
        Ok(f)
    }
}

/// The smooth reduction of a rational plane curve.
pub fn reduce_mod_p(f: &QForm, p: u64) -> Result<PlaneCurve> {
    if !crate::fields::is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    if p >= crate::fields::prime::MAX_PRIME {
        return Err(Error::FieldTooLarge { p, k: 1 });
    }
    PlaneCurve::new(f.reduce_mod_p(p as u32)?)
}

/// 3x3 matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat3(pub [[BigRational; 3]; 3]);

impl QMat3 {
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::InvalidInput("involution: expected a 3x3 matrix".into());
        let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
        let mut m: [[BigRational; 3]; 3] = Default::default();
        for i in 0..3 {
            let row = rows[i].as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
            for j in 0..3 {
                m[i][j] = parse_rational(&row[j], &format!("involution[{i}][{j}]"))?;
            }
        }
        Ok(QMat3(m))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.0
                .iter()
                .map(|r| Value::Array(r.iter().map(|c| Value::String(rational_to_string(c))).collect()))
                .collect(),
        )
    }

    pub fn identity() -> Self {
        let mut m: [[BigRational; 3]; 3] = Default::default();
        for i in 0..3 {
            m[i][i] = BigRational::one();
        }
        QMat3(m)
    }

    pub fn mul(&self, o: &QMat3) -> QMat3 {
        let mut m: [[BigRational; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (0..3).map(|k| &self.0[i][k] * &o.0[k][j]).sum();
            }
        }
        QMat3(m)
    }

    pub fn det(&self) -> BigRational {
        let a = &self.0;
        &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1]) - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
            + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
    }

    pub fn scalar_value(&self) -> Option<BigRational> {
        let mu = self.0[0][0].clone();
        let ok = (0..3).all(|i| (0..3).all(|j| self.0[i][j] == if i == j { mu.clone() } else { BigRational::zero() }));
        (ok && !mu.is_zero()).then_some(mu)
    }

    pub fn apply(&self, v: &[BigRational; 3]) -> [BigRational; 3] {
        std::array::from_fn(|i| (0..3).map(|j| &self.0[i][j] * &v[j]).sum())
    }

    /// Reduction of a primitive integral multiple.
    pub fn reduce_mod_p(&self, p: u32) -> Result<Mat3> {
        let flat: Vec<BigRational> = self.0.iter().flatten().cloned().collect();
        if flat.iter().any(|c| (c.denom() % BigInt::from(p)).is_zero()) {
            return Err(Error::DenominatorClash(p as u64));
        }
        let ints = primitive_integers(&flat);
        let pb = BigInt::from(p);
        let r: Vec<i64> = ints.iter().map(|c| c.mod_floor(&pb).to_i64().unwrap_or(0)).collect();
        let m = Mat3::new(p, [[r[0], r[1], r[2]], [r[3], r[4], r[5]], [r[6], r[7], r[8]]]);
        if m.inverse().is_none() {
            return Err(Error::BadReduction { p: p as u64, reason: "involution degenerates".into() });
        }
        Ok(m)
    }
}

/// Scalars of an involution over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QInvolutionScalars {
    pub lambda: BigRational,
    pub mu: BigRational,
    pub trivial: bool,
}

pub fn validate_involution_q(m: &QMat3, f: &QForm) -> Result<QInvolutionScalars> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let lambda = f.compose(m).ratio_to(f).ok_or(Error::NotAnAutomorphism)?;
    let mu = m.mul(m).scalar_value().ok_or(Error::NotAnInvolution)?;
    Ok(QInvolutionScalars { lambda, mu, trivial: m.scalar_value().is_some() })
}

/// Reduction of a rational projective point.
pub fn reduce_point(v: &[BigRational; 3], p: u32) -> Result<[i64; 3]> {
    let ints = primitive_integers(v);
    let pb = BigInt::from(p);
    let r: Vec<i64> = ints.iter().map(|c| c.mod_floor(&pb).to_i64().unwrap_or(0)).collect();
    if r.iter().all(|&c| c == 0) {
        return Err(Error::BadReduction { p: p as u64, reason: "point reduces to zero".into() });
    }
    Ok([r[0], r[1], r[2]])
}

pub fn is_negative(r: &BigRational) -> bool {
    r.is_negative()
}
